"""Play spaces: Euclidean space or a self-similar IFS attractor.

The support carries the measure-decay parameters (C, gamma, rho0) that the
avoidance strategy consumes, plus empirical estimators for them.  IFS
supports use exact cell arithmetic: a depth-d cell is the image of the
bounding box under a composition of d similarity maps, and every candidate
center is an exact code-word evaluation, so membership never relies on
rounding.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .exact import Interval, frac, nthroot_interval, pow_interval, sqrt_interval, sqrt_upper
from .geometry import Ball, Vec, as_vec, dist2, vadd, vscale

_MAX_ALPHA_REL = Fraction(1, 10 ** 7)


class ParameterError(ValueError):
    pass


class SupportError(ValueError):
    """Invalid game state relative to the support (e.g. ball off the attractor)."""


@dataclass(frozen=True)
class DecayParams:
    C: Fraction
    gamma: Fraction
    rho0: Optional[Fraction] = None  # None means +infinity
    federer_D: Optional[Fraction] = None
    power_law: Optional[Tuple[Fraction, Fraction, Fraction]] = None  # (delta, c1, c2)
    ambient_dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "C", frac(self.C))
        object.__setattr__(self, "gamma", frac(self.gamma))
        if self.rho0 is not None:
            object.__setattr__(self, "rho0", frac(self.rho0))
            if self.rho0 <= 0:
                raise ParameterError("rho0 must be positive")
        if self.C <= 0 or self.gamma <= 0:
            raise ParameterError("C and gamma must be positive")
        if self.power_law is not None:
            delta, c1, c2 = (frac(x) for x in self.power_law)
            object.__setattr__(self, "power_law", (delta, c1, c2))
            n = self.ambient_dim
            if delta > n - 1 and self.gamma != delta - n + 1:
                raise ParameterError(
                    "power-law exponent requires gamma = delta - n + 1"
                )


def max_alpha(decay: DecayParams) -> Fraction:
    """Largest admissible Alice ratio bound 1/(2 C^{1/gamma} + 1).

    Exact when C^{1/gamma} is rational; otherwise a certified rational
    lower bound with relative error below 1e-6.
    """
    rel_bits = 24
    while True:
        root = pow_interval(decay.C, 1 / decay.gamma, rel_bits)
        lo = 1 / (2 * root.hi + 1)
        hi = 1 / (2 * root.lo + 1)
        if root.is_point() or (hi - lo) / lo < _MAX_ALPHA_REL:
            return lo
        rel_bits *= 2


def epsilon_for(decay: DecayParams, alpha: Fraction) -> Fraction:
    """Certified lower bound on 1 - C(2 alpha/(1-alpha))^gamma, in (0,1)."""
    alpha = frac(alpha)
    if not (0 < alpha < max_alpha(decay)):
        raise ParameterError(f"alpha={alpha} outside (0, max_alpha)")
    ratio = 2 * alpha / (1 - alpha)
    rel_bits = 48
    while rel_bits <= 3072:
        powed = pow_interval(ratio, decay.gamma, rel_bits)
        eps = 1 - decay.C * powed.hi
        if eps > 0:
            return eps
        rel_bits *= 2
    raise ParameterError("epsilon not certifiably positive for this alpha")


@dataclass(frozen=True)
class Similarity:
    """x -> ratio * x + translation (uniform scaling, no rotation)."""

    ratio: Fraction
    translation: Vec

    def __post_init__(self):
        object.__setattr__(self, "ratio", frac(self.ratio))
        object.__setattr__(self, "translation", as_vec(self.translation))
        if not 0 < self.ratio < 1:
            raise ParameterError("similarity ratio must be in (0,1)")

    def apply(self, x: Vec) -> Vec:
        return vadd(vscale(self.ratio, x), self.translation)


@dataclass(frozen=True)
class _Cell:
    """Image of the bounding box under a word of similarities."""

    word: Tuple[int, ...]
    scale: Fraction  # product of ratios along the word
    shift: Vec       # accumulated translation

    def apply(self, x: Vec) -> Vec:
        return vadd(vscale(self.scale, x), self.shift)

    def child(self, branch: int, maps: Sequence[Similarity]) -> "_Cell":
        m = maps[branch]
        return _Cell(
            word=self.word + (branch,),
            scale=self.scale * m.ratio,
            shift=vadd(vscale(self.scale, m.translation), self.shift),
        )


def _box_dist2(lo: Vec, hi: Vec, x: Vec) -> Fraction:
    total = Fraction(0)
    for a, b, xi in zip(lo, hi, x):
        if xi < a:
            d = a - xi
        elif xi > b:
            d = xi - b
        else:
            continue
        total += d * d
    return total


@dataclass
class SupportModel:
    kind: str  # "euclidean" | "ifs"
    dim: int
    decay: DecayParams
    maps: Tuple[Similarity, ...] = ()
    box_lo: Vec = ()
    box_hi: Vec = ()
    resolution_depth: int = 0

    @staticmethod
    def euclidean(dim: int, decay: DecayParams) -> "SupportModel":
        return SupportModel(kind="euclidean", dim=dim, decay=decay)

    @staticmethod
    def ifs(
        maps: Sequence[Similarity],
        box_lo,
        box_hi,
        decay: DecayParams,
        resolution_depth: int = 20,
    ) -> "SupportModel":
        maps = tuple(maps)
        if len(maps) < 2:
            raise ParameterError("an IFS support needs at least two maps")
        box_lo, box_hi = as_vec(box_lo), as_vec(box_hi)
        if len(box_lo) != len(box_hi) or any(a >= b for a, b in zip(box_lo, box_hi)):
            raise ParameterError("degenerate bounding box")
        if decay.rho0 is None:
            diam = sqrt_upper(dist2(box_lo, box_hi))
            decay = replace(decay, rho0=diam)
        model = SupportModel(
            kind="ifs",
            dim=len(box_lo),
            decay=decay,
            maps=maps,
            box_lo=box_lo,
            box_hi=box_hi,
            resolution_depth=resolution_depth,
        )
        model._check_open_set_condition()
        return model

    # -- IFS cell structure -------------------------------------------------

    def _check_open_set_condition(self):
        images = []
        for m in self.maps:
            lo = m.apply(self.box_lo)
            hi = m.apply(self.box_hi)
            if any(a < b for a, b in zip(lo, self.box_lo)) or any(
                a > b for a, b in zip(hi, self.box_hi)
            ):
                raise ParameterError("IFS map image leaves the bounding box")
            images.append((lo, hi))
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                overlaps = all(
                    images[i][0][a] < images[j][1][a] and images[j][0][a] < images[i][1][a]
                    for a in range(self.dim)
                )
                if overlaps:
                    raise ParameterError(
                        f"open set condition fails for maps {i} and {j}"
                    )

    def root_cell(self) -> _Cell:
        return _Cell(word=(), scale=Fraction(1), shift=as_vec([0] * self.dim))

    @property
    def base_point(self) -> Vec:
        """Fixed point of map 0: every finite word evaluated here is on K."""
        m = self.maps[0]
        return tuple(t / (1 - m.ratio) for t in m.translation)

    def cell_point(self, word: Sequence[int]) -> Vec:
        cell = self.root_cell()
        for b in word:
            cell = cell.child(b, self.maps)
        return cell.apply(self.base_point)

    def cell_box(self, cell: _Cell) -> Tuple[Vec, Vec]:
        return cell.apply(self.box_lo), cell.apply(self.box_hi)

    def _diam2(self) -> Fraction:
        return dist2(self.box_lo, self.box_hi)

    def cells_meeting_ball(self, ball: Ball, mesh: Fraction) -> List[_Cell]:
        """All cells of diameter <= mesh whose box meets the ball (exact tests)."""
        mesh = Fraction(mesh)
        r2 = ball.radius * ball.radius
        diam2 = self._diam2()
        out: List[_Cell] = []
        stack = [self.root_cell()]
        while stack:
            cell = stack.pop()
            lo, hi = self.cell_box(cell)
            if _box_dist2(lo, hi, ball.center) > r2:
                continue
            if cell.scale * cell.scale * diam2 <= mesh * mesh:
                out.append(cell)
            else:
                for b in range(len(self.maps)):
                    stack.append(cell.child(b, self.maps))
        return out

    def _descend_toward(self, cell: _Cell, x: Vec, extra_depth: int) -> _Cell:
        """Walk into subcells, each step picking the child box nearest x."""
        for _ in range(extra_depth):
            best = None
            best_d = None
            for b in range(len(self.maps)):
                child = cell.child(b, self.maps)
                lo, hi = self.cell_box(child)
                d = _box_dist2(lo, hi, x)
                if best_d is None or d < best_d:
                    best, best_d = child, d
            cell = best
            if best_d == 0 and cell.apply(self.base_point) == x:
                break
        return cell

    # -- public queries -----------------------------------------------------

    def on_support(self, x) -> bool:
        """Membership check at the working resolution depth (exact for Euclidean)."""
        x = as_vec(x)
        if len(x) != self.dim:
            return False
        if self.kind == "euclidean":
            return True
        stack = [self.root_cell()]
        while stack:
            cell = stack.pop()
            lo, hi = self.cell_box(cell)
            if _box_dist2(lo, hi, x) > 0:
                continue
            if len(cell.word) >= self.resolution_depth:
                return True
            for b in range(len(self.maps)):
                stack.append(cell.child(b, self.maps))
        return False


def nearest_on_support(K: SupportModel, x, scale: Fraction) -> Vec:
    """A point of K within d(x, K) + scale/1000 of x; exact code word for IFS."""
    x = as_vec(x)
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if K.kind == "euclidean":
        return x
    tol = scale / 1000
    diam2 = K._diam2()
    # branch and bound over cells until the winner's diameter is below tol
    best_cell = K.root_cell()
    frontier = [best_cell]
    while True:
        scored = []
        for cell in frontier:
            lo, hi = K.cell_box(cell)
            scored.append((_box_dist2(lo, hi, x), cell))
        scored.sort(key=lambda t: t[0])
        bound = scored[0][0]
        keep = [c for d, c in scored if d == bound or d <= bound + tol * tol]
        lead = keep[0]
        if lead.scale * lead.scale * diam2 <= tol * tol:
            return lead.apply(K.base_point)
        frontier = [c.child(b, K.maps) for c in keep[:8] for b in range(len(K.maps))]


def candidate_centers(K: SupportModel, ball: Ball, alpha: Fraction) -> List[Vec]:
    """Finite mesh of points of K inside B(center, (1-alpha) * radius).

    Mesh size alpha*radius/4: any point of K in the shrunken ball has a
    candidate within that distance, which is the slack the avoidance move
    budgets for.
    """
    alpha = Fraction(alpha)
    rho = ball.radius
    reach = (1 - alpha) * rho
    reach2 = reach * reach
    mesh = alpha * rho / 4
    if K.kind == "euclidean":
        n = K.dim
        # per-axis step so the grid covering radius stays within the mesh
        root_n = 1 if n == 1 else 2  # ceil(sqrt(n)) for n <= 4
        step = mesh / root_n
        span = math.floor(reach / step)
        out = []
        ranges = [range(-span, span + 1)] * n
        for z in itertools.product(*ranges):
            off = tuple(step * zi for zi in z)
            if sum(o * o for o in off) <= reach2:
                out.append(vadd(ball.center, off))
        return sorted(out)
    # IFS: cells of diameter <= mesh meeting the shrunken ball, one exact
    # representative each, pushed toward the ball center until it lands
    # inside the shrunken ball.
    shrunk = Ball(ball.center, reach)
    cells = K.cells_meeting_ball(shrunk, mesh)
    out = []
    for cell in cells:
        p = cell.apply(K.base_point)
        if dist2(p, ball.center) > reach2:
            deeper = K._descend_toward(cell, ball.center, 64)
            p = deeper.apply(K.base_point)
            if dist2(p, ball.center) > reach2:
                continue
        out.append(p)
    out = sorted(set(out))
    if not out:
        raise SupportError("no support points found inside the ball")
    return out


# -- empirical measure estimators (floating point by design) ---------------


def _euclidean_slab_fraction(n: int, u: float) -> float:
    """Mass fraction of a central slab of half-width u*rho in the unit ball."""
    u = min(u, 1.0)
    if n == 1:
        return u
    if n == 2:
        return (2 / math.pi) * (math.asin(u) + u * math.sqrt(1 - u * u))
    if n == 3:
        return (3 * u - u ** 3) / 2
    raise ValueError("closed forms implemented for n <= 3")


def _ifs_interval_mass(K: SupportModel, a: float, b: float, depth_cap: int) -> float:
    """Natural-measure mass of [a, b] for a 1-D IFS (uniform branch weights)."""
    m = len(K.maps)
    maps = [(float(s.ratio), float(s.translation[0])) for s in K.maps]
    lo0, hi0 = float(K.box_lo[0]), float(K.box_hi[0])

    def rec(scale: float, shift: float, depth: int) -> float:
        lo = scale * lo0 + shift
        hi = scale * hi0 + shift
        if hi <= a or lo >= b:
            return 0.0
        if a <= lo and hi <= b:
            return m ** -depth if depth else 1.0
        if depth >= depth_cap:
            frac_cover = max(0.0, (min(hi, b) - max(lo, a))) / (hi - lo)
            return (m ** -depth) * frac_cover
        return sum(rec(scale * r, scale * t + shift, depth + 1) for r, t in maps)

    return rec(1.0, 0.0, 0)


def _mass_ball(K: SupportModel, x: float, rho: float, depth_cap: int = 48) -> float:
    if K.kind == "euclidean":
        return rho ** K.dim  # constant factors cancel in every ratio we take
    if K.dim != 1:
        raise ValueError("IFS mass estimation implemented in dimension 1")
    return _ifs_interval_mass(K, x - rho, x + rho, depth_cap)


@dataclass(frozen=True)
class DecayEstimate:
    C_hat: float
    gamma_hat: float
    D_hat: float


def _fit_line(xs: List[float], ys: List[float]) -> Tuple[float, float]:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, my - slope * mx


def _random_ifs_point(K: SupportModel, rng: random.Random, depth: int = 16) -> float:
    word = [rng.randrange(len(K.maps)) for _ in range(depth)]
    return float(K.cell_point(word)[0])


def estimate_decay(K: SupportModel, trials: int, seed: int) -> DecayEstimate:
    """Fit the hyperplane-decay exponent by regressing log mass ratios.

    Samples (x in K, rho, eps) with the hyperplane through x (the worst
    case), computes mu(B cap L^eps)/mu(B), and regresses against
    log(eps/rho).  The intercept carries a documented safety factor 2.
    """
    if trials < 10:
        raise ValueError("insufficient samples")
    rng = random.Random(seed)
    xs: List[float] = []
    ys: List[float] = []
    if K.kind == "euclidean":
        n = K.dim
        for _ in range(trials):
            u = 10 ** rng.uniform(-3, -1)
            ratio = _euclidean_slab_fraction(n, u)
            xs.append(math.log(u))
            ys.append(math.log(ratio))
        D_hat = 2.0 ** n
    else:
        if K.dim != 1:
            raise ValueError("decay estimation implemented for 1-D IFS")
        for _ in range(trials):
            x = _random_ifs_point(K, rng)
            rho = 3.0 ** -rng.uniform(2, 6)
            u = 3.0 ** -rng.uniform(1, 5)
            eps = u * rho
            mb = _mass_ball(K, x, rho)
            ms = _mass_ball(K, x, eps)
            if mb <= 0 or ms <= 0:
                continue
            xs.append(math.log(u))
            ys.append(math.log(ms / mb))
        # doubling constant from sampled ratios
        ratios = []
        for _ in range(min(trials, 200)):
            x = _random_ifs_point(K, rng)
            rho = 3.0 ** -rng.uniform(2, 8)
            m1 = _mass_ball(K, x, rho)
            m2 = _mass_ball(K, x, 2 * rho)
            if m1 > 0:
                ratios.append(m2 / m1)
        D_hat = max(ratios) * 1.05 if ratios else float("nan")
    slope, intercept = _fit_line(xs, ys)
    return DecayEstimate(C_hat=2.0 * math.exp(intercept), gamma_hat=slope, D_hat=D_hat)


def pointwise_dim_lower(K: SupportModel, region: Ball, trials: int, seed: int) -> float:
    """Empirical lower-dimension estimate: inf over samples of the mass slope."""
    rng = random.Random(seed)
    slopes = []
    n_pts = max(5, min(trials, 40))
    for _ in range(n_pts):
        if K.kind == "euclidean":
            # mu(B) ~ rho^n exactly; every sample gives slope n
            x = 0.0
            ladder = [2.0 ** -j for j in range(1, 15)]
            masses = [_mass_ball(K, x, r) for r in ladder]
        else:
            x = _random_ifs_point(K, rng, depth=24)
            ladder = [3.0 ** -j for j in range(2, 22)]
            masses = [_mass_ball(K, x, r, depth_cap=52) for r in ladder]
        pairs = [
            (math.log(r), math.log(m)) for r, m in zip(ladder, masses) if m > 0
        ]
        if len(pairs) < 4:
            continue
        slope, _ = _fit_line([p[0] for p in pairs], [p[1] for p in pairs])
        slopes.append(slope)
    if not slopes:
        raise ValueError("insufficient samples")
    return min(slopes)
