"""Uniformly discrete target families and exact nearest-point queries."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from schmidtgame.targets import (
    TargetFamily,
    dist2_to_targets,
    dist_to_targets,
    points_near,
)

coords = st.fractions(min_value=F(-5), max_value=F(5), max_denominator=1000)


class TestLatticeFamily:
    def test_shifted_integers(self):
        fam = TargetFamily.lattice([F(1, 2)])
        assert fam.delta == F(1)
        assert points_near(fam, 3, (F(2, 5),), F(1, 5)) == [(F(1, 2),)]

    def test_point_outside_radius_excluded(self):
        fam = TargetFamily.lattice([F(0), F(0)])
        # nearest lattice point (0,0) is at distance sqrt(0.32) > 1/2
        assert points_near(fam, 1, (F(2, 5), F(2, 5)), F(1, 2)) == []
        assert points_near(fam, 1, (F(2, 5), F(2, 5)), F(3, 5)) == [
            (F(0), F(0))
        ]

    def test_dist2_separable(self):
        fam = TargetFamily.lattice([F(1, 2)])
        assert dist2_to_targets(fam, 1, (F(3, 10),)) == F(1, 25)

    @given(coords)
    def test_dist2_matches_scan(self, x):
        fam = TargetFamily.lattice([F(0)])
        d2 = dist2_to_targets(fam, 1, (x,))
        best = min((x - m) ** 2 for m in range(-6, 7))
        assert d2 == best

    @given(coords, coords)
    def test_points_near_complete(self, x, y):
        fam = TargetFamily.lattice([F(0), F(0)])
        pts = points_near(fam, 1, (x, y), F(2))
        for m in range(-7, 8):
            for n in range(-7, 8):
                d2 = (x - m) ** 2 + (y - n) ** 2
                if d2 <= 4:
                    assert (F(m), F(n)) in pts
                else:
                    assert (F(m), F(n)) not in pts


class TestExplicitFamily:
    def test_lookup_and_missing_index(self):
        fam = TargetFamily.explicit({1: [(F(0),), (F(2),)]}, F(3, 2))
        assert points_near(fam, 1, (F(1, 10),), F(1, 2)) == [(F(0),)]
        assert dist2_to_targets(fam, 5, (F(0),)) is None

    def test_separation_validated(self):
        with pytest.raises(Exception):
            TargetFamily.explicit({1: [(F(0),), (F(1, 2),)]}, F(2))


class TestDistInterval:
    def test_encloses_exact_distance(self):
        fam = TargetFamily.lattice([F(1, 2)])
        enc = dist_to_targets(fam, 1, (F(1, 4),))
        assert enc.lo <= F(1, 4) <= enc.hi
