"""Matrix sequences: certified operator norms, lacunarity, Kronecker orders.

Certification never relies on floating point: eigenvalue bounds come from
exact characteristic polynomials plus Sturm-sequence root counting, with
float eigensolvers used only to seed good rational guesses.  The spectral
radius test for power sequences goes through the resultant trick: the
squared moduli |z_i|^2 of the eigenvalues are among the real roots of
Res_x(p(x), x^d p(y/x)), so "radius <= 1" reduces to counting real roots
above 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exact import Interval, frac, sqrt_interval
from .geometry import Vec, as_vec, norm2

Matrix = Tuple[Tuple[Fraction, ...], ...]

# ---------------------------------------------------------------------------
# exact matrix helpers


def as_matrix(rows) -> Matrix:
    out = tuple(tuple(frac(x) for x in row) for row in rows)
    if not out or any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def mat_shape(M: Matrix) -> Tuple[int, int]:
    return len(M), len(M[0])


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k = mat_shape(A)
    k2, m = mat_shape(B)
    if k != k2:
        raise ValueError("shape mismatch")
    Bt = tuple(zip(*B))
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt)
        for row in A
    )


def mat_vec(A: Matrix, x: Vec) -> Vec:
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A)


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_pow(M: Matrix, k: int) -> Matrix:
    n, m = mat_shape(M)
    if n != m:
        raise ValueError("matrix power needs a square matrix")
    result = identity(n)
    base = M
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def is_integer_matrix(M: Matrix) -> bool:
    return all(x.denominator == 1 for row in M for x in row)


def rref(M: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Q; returns (R, pivot_columns)."""
    rows = [list(r) for r in M]
    n, m = len(rows), len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return tuple(tuple(row) for row in rows), pivots


def kernel_basis(M: Matrix) -> List[Vec]:
    """Basis of the null space over Q, one vector per free column."""
    R, pivots = rref(M)
    n, m = mat_shape(M)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(tuple(v))
    return basis


def solve_square(A: Matrix, b: Vec) -> Optional[Vec]:
    """Solve A x = b for square invertible A; None when singular."""
    n, m = mat_shape(A)
    aug = tuple(row + (bi,) for row, bi in zip(A, b))
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(R[i][m] for i in range(n))


# ---------------------------------------------------------------------------
# exact polynomial helpers (ascending coefficient lists)

Poly = List[Fraction]


def poly_trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_interval(p: Poly, x: Interval) -> Interval:
    acc = Interval.point(0)
    for c in reversed(p):
        acc = acc * x + Interval.point(c)
    return acc


def poly_deriv(p: Poly) -> Poly:
    return [i * c for i, c in enumerate(p)][1:]


def poly_divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    a = list(a)
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(poly_trim(a)) >= len(b):
        d = len(a) - len(b)
        f = a[-1] / b[-1]
        q[d] = f
        for i, c in enumerate(b):
            a[i + d] -= f * c
        a.pop()
    return poly_trim(q), poly_trim(a)


def sturm_chain(p: Poly) -> List[Poly]:
    chain = [poly_trim(list(p))]
    d = poly_trim(poly_deriv(chain[0]))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        _, rem = poly_divmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_variations(chain: List[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(chain: List[Poly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]."""
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def cauchy_bound(p: Poly) -> Fraction:
    p = poly_trim(list(p))
    lead = abs(p[-1])
    if len(p) == 1:
        return Fraction(1)
    return 1 + max(abs(c) for c in p[:-1]) / lead


def charpoly(A: Matrix) -> Poly:
    """Characteristic polynomial det(xI - A), monic, via Faddeev-LeVerrier."""
    n, m = mat_shape(A)
    if n != m:
        raise ValueError("square matrix required")
    cs = [Fraction(1)]  # leading coefficient of x^n
    Mk = identity(n)
    for k in range(1, n + 1):
        AM = mat_mul(A, Mk)
        tr = sum(AM[i][i] for i in range(n))
        ck = -tr / k
        cs.append(ck)
        Mk = tuple(
            tuple(AM[i][j] + (ck if i == j else 0) for j in range(n)) for i in range(n)
        )
    # cs holds [1, c1, ..., cn] for x^n + c1 x^{n-1} + ... + cn
    return list(reversed(cs))


def determinant(M: Matrix) -> Fraction:
    rows = [list(r) for r in M]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def _modulus_squared_poly(p: Poly) -> Poly:
    """Polynomial (in y) whose real roots include all |z_i|^2 for roots z_i of p.

    Built as the resultant Res_x(p(x), x^d p(y/x)), computed by evaluating
    Sylvester determinants at integer points and Lagrange-interpolating.
    Zero roots of p must be deflated by the caller.
    """
    p = poly_trim(list(p))
    d = len(p) - 1
    if d == 0:
        return [Fraction(1)]

    def sylvester_det_at(y: Fraction) -> Fraction:
        # q_y(x) = sum_i p_i y^i x^{d-i}; ascending in x: coeff of x^j is
        # p_{d-j} y^{d-j}
        q = [p[d - j] * y ** (d - j) for j in range(d + 1)]
        size = 2 * d
        rows = []
        pa = list(reversed(p))  # descending
        qa = list(reversed(q))
        for i in range(d):
            rows.append(
                tuple(
                    pa[j - i] if 0 <= j - i <= d else Fraction(0)
                    for j in range(size)
                )
            )
        for i in range(d):
            rows.append(
                tuple(
                    qa[j - i] if 0 <= j - i <= d else Fraction(0)
                    for j in range(size)
                )
            )
        return determinant(tuple(rows))

    deg = d * d
    xs = [Fraction(i) for i in range(deg + 1)]
    ys = [sylvester_det_at(x) for x in xs]
    # Lagrange interpolation via Newton divided differences
    coeffs = _newton_interpolate(xs, ys)
    return poly_trim(coeffs)


def _newton_interpolate(xs: List[Fraction], ys: List[Fraction]) -> Poly:
    n = len(xs)
    table = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - j])
    # expand newton form
    poly: Poly = [Fraction(0)]
    basis: Poly = [Fraction(1)]
    for i in range(n):
        poly = _poly_add(poly, [table[i] * c for c in basis])
        basis = _poly_mul(basis, [-xs[i], Fraction(1)])
    return poly


def _poly_add(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def spectral_radius_gt_one(M: Matrix) -> bool:
    """Certified decision: is the spectral radius strictly greater than 1?"""
    p = charpoly(M)
    # deflate eigenvalues at 0
    while p and p[0] == 0:
        p = p[1:]
    if len(p) <= 1:
        return False
    s = _modulus_squared_poly(p)
    # deflate roots exactly at 1 (moduli exactly 1 do not exceed the disk)
    one = Fraction(1)
    while poly_eval(s, one) == 0:
        s, _ = poly_divmod(s, [-one, Fraction(1)])
        if len(s) <= 1:
            break
    if len(s) <= 1:
        return False
    chain = sturm_chain(s)
    bound = cauchy_bound(s) + 1
    return sturm_count(chain, one, bound) > 0


# ---------------------------------------------------------------------------
# operator norm with certified enclosures

_REL_BITS = 48  # 2^-48 < 1e-14 relative width, beats the 1e-9 contract


class DegenerateDirection(RuntimeError):
    pass


def _largest_root_bisect(p: Poly, rel_bits: int) -> Interval:
    """Isolate the largest real root of p (assumed >= 0 present) by bisection."""
    chain = sturm_chain(p)
    hi = cauchy_bound(p) + 1
    lo = Fraction(0)
    if poly_eval(p, lo) == 0 and sturm_count(chain, lo, hi) == 0:
        return Interval.point(lo)
    if sturm_count(chain, lo, hi) == 0:
        raise ValueError("no positive real root")
    # shrink [lo, hi] keeping the largest root inside
    for _ in range(4 * rel_bits + hi.numerator.bit_length()):
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0 and sturm_count(chain, mid, hi) == 0:
            return Interval.point(mid)
        if sturm_count(chain, mid, hi) > 0:
            lo = mid
        else:
            hi = mid
        if lo > 0 and (hi - lo) / lo < Fraction(1, 1 << rel_bits):
            break
    return Interval(lo, hi)


def _float_top_eig(A: Matrix) -> Tuple[float, List[float]]:
    arr = np.array([[float(x) for x in row] for row in A], dtype=float)
    s = max(1.0, np.abs(arr).max())
    w, V = np.linalg.eigh(arr / s)
    idx = int(np.argmax(w))
    return float(w[idx] * s), [float(v) for v in V[:, idx]]


def _poly_matrix_adjugate(A: Matrix) -> List[List[Poly]]:
    """Adjugate of (A - xI) as a matrix of polynomials in x."""
    n = len(A)
    # entries of A - xI as polys
    ent = [
        [
            [A[i][j], Fraction(-1)] if i == j else [A[i][j]]
            for j in range(n)
        ]
        for i in range(n)
    ]

    def poly_det(rows: List[List[Poly]]) -> Poly:
        k = len(rows)
        if k == 1:
            return list(rows[0][0])
        out: Poly = [Fraction(0)]
        for j in range(k):
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = _poly_mul(rows[0][j], poly_det(minor))
            if j % 2:
                term = [-c for c in term]
            out = _poly_add(out, term)
        return out

    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [ent[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = poly_det(minor) if minor else [Fraction(1)]
            if (i + j) % 2:
                cof = [-c for c in cof]
            adj[i][j] = cof  # adj[i][j] = cofactor_{j i}
    return adj


def _normalize_direction(entries: List[Interval]) -> Tuple[Interval, ...]:
    nrm2 = Interval.point(0)
    for e in entries:
        nrm2 = nrm2 + e * e
    lo = sqrt_interval(nrm2.lo).lo
    hi = sqrt_interval(nrm2.hi).hi
    nrm = Interval(lo, hi)
    out = [e / nrm for e in entries]
    for e in out:
        if e.lo > 0:
            break
        if e.hi < 0:
            out = [-x for x in out]
            break
    return tuple(out)


def operator_norm(M, rel_bits: int = _REL_BITS) -> Tuple[Interval, Tuple[Interval, ...]]:
    """Certified enclosure of the largest singular value and a top direction.

    Returns (t, v) with t enclosing ||M||_op at relative width < 2^-rel_bits
    and v a unit top right singular direction, sign-normalized so the first
    certainly-nonzero coordinate is positive.
    """
    M = as_matrix(M)
    rows, cols = mat_shape(M)
    if all(x == 0 for row in M for x in row):
        raise ValueError("zero matrix has no direction")
    if rows == 1:
        row = M[0]
        t = sqrt_interval(norm2(row))
        first = next(x for x in row if x != 0)
        if first < 0:
            row = tuple(-x for x in row)
        v = tuple(Interval.point(x) / t for x in row)
        return t, v
    A = mat_mul(transpose(M), M)
    n = len(A)
    lam, exact = _top_eigenvalue(A, rel_bits)
    if exact:
        basis = kernel_basis(
            mat_sub(A, tuple(tuple(lam.lo if i == j else Fraction(0) for j in range(n)) for i in range(n)))
        )
        if not basis:
            raise DegenerateDirection("exact eigenvalue with empty kernel")
        b = basis[0]
        first = next(x for x in b if x != 0)
        if first < 0:
            b = tuple(-x for x in b)
        nrm = sqrt_interval(norm2(b))
        v = tuple(Interval.point(x) / nrm for x in b)
        t = sqrt_interval(lam.lo)
        return t, v
    # irrational top eigenvalue: adjugate columns of (A - lambda I)
    adj = _poly_matrix_adjugate(A)
    for attempt in range(6):
        cols_iv = []
        for j in range(n):
            col = [poly_eval_interval(adj[i][j], lam) for i in range(n)]
            score = max((e.abs().lo for e in col), default=Fraction(0))
            cols_iv.append((score, col))
        score, col = max(cols_iv, key=lambda t: t[0])
        if score > 0:
            v = _normalize_direction(col)
            t = Interval(sqrt_interval(lam.lo).lo, sqrt_interval(lam.hi).hi)
            return t, v
        lam = _refine_eigenvalue(A, lam, rel_bits * (2 + attempt))
    raise DegenerateDirection(
        "could not certify a nonzero adjugate column; top singular value "
        "may be a repeated irrational eigenvalue"
    )


def _top_eigenvalue(A: Matrix, rel_bits: int) -> Tuple[Interval, bool]:
    """Enclose the top eigenvalue of symmetric PSD A; flag exact rationals."""
    n = len(A)
    p = charpoly(A)
    if all(A[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        lam = max(A[i][i] for i in range(n))
        return Interval.point(lam), True
    lam_f, u_f = _float_top_eig(A)
    u = tuple(Fraction(x).limit_denominator(10 ** 17) for x in u_f)
    uu = norm2(u)
    chain = sturm_chain(p)
    bound = cauchy_bound(p) + 1
    if uu > 0:
        rayleigh = sum(
            u[i] * A[i][j] * u[j] for i in range(n) for j in range(n)
        ) / uu
        if poly_eval(p, rayleigh) == 0 and sturm_count(chain, rayleigh, bound) == 0:
            return Interval.point(rayleigh), True
        upper = rayleigh * (1 + Fraction(1, 1 << rel_bits)) + Fraction(
            1, 1 << (2 * rel_bits)
        )
        if rayleigh > 0 and sturm_count(chain, upper, bound) == 0:
            if sturm_count(chain, rayleigh, upper) > 0 or poly_eval(p, upper) == 0:
                return Interval(rayleigh, upper), False
    enc = _largest_root_bisect(p, rel_bits)
    if enc.is_point():
        return enc, True
    return enc, False


def _refine_eigenvalue(A: Matrix, lam: Interval, rel_bits: int) -> Interval:
    p = charpoly(A)
    chain = sturm_chain(p)
    lo, hi = lam.lo, lam.hi
    for _ in range(rel_bits):
        if lo > 0 and (hi - lo) / lo < Fraction(1, 1 << rel_bits):
            break
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0:
            eps = (hi - lo) / (1 << rel_bits)
            return Interval(mid - eps, mid + eps)
        if sturm_count(chain, mid, hi) > 0:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)


# ---------------------------------------------------------------------------
# matrix sequences


@dataclass
class MatrixSequence:
    kind: str  # "powers" | "explicit" | "rows"
    base: Optional[Matrix] = None
    matrices: Optional[List[Matrix]] = None
    _pow_cache: List[Matrix] = field(default_factory=list, repr=False)
    _t_cache: Dict[int, Interval] = field(default_factory=dict, repr=False)
    _v_cache: Dict[int, Tuple[Interval, ...]] = field(default_factory=dict, repr=False)

    @staticmethod
    def powers(M) -> "MatrixSequence":
        M = as_matrix(M)
        n, m = mat_shape(M)
        if n != m:
            raise ValueError("powers sequence needs a square matrix")
        return MatrixSequence(kind="powers", base=M)

    @staticmethod
    def explicit(mats: Sequence) -> "MatrixSequence":
        out = [as_matrix(m) for m in mats]
        if not out:
            raise ValueError("empty sequence")
        return MatrixSequence(kind="explicit", matrices=out)

    @staticmethod
    def rows(vectors: Sequence[Sequence[int]]) -> "MatrixSequence":
        mats = [as_matrix([list(v)]) for v in vectors]
        if not mats:
            raise ValueError("empty sequence")
        for m in mats:
            if all(x == 0 for x in m[0]):
                raise ValueError("zero row vector")
        return MatrixSequence(kind="rows", matrices=mats)

    def __len__(self) -> int:
        if self.kind == "powers":
            raise TypeError("powers sequences are unbounded")
        return len(self.matrices)

    @property
    def finite(self) -> bool:
        return self.kind != "powers"

    @property
    def input_dim(self) -> int:
        if self.kind == "powers":
            return mat_shape(self.base)[1]
        return mat_shape(self.matrices[0])[1]

    @property
    def output_dim(self) -> int:
        if self.kind == "powers":
            return mat_shape(self.base)[0]
        return mat_shape(self.matrices[0])[0]

    def matrix(self, k: int) -> Matrix:
        """M_k, 1-indexed."""
        if k < 1:
            raise IndexError("sequence indices start at 1")
        if self.kind == "powers":
            while len(self._pow_cache) < k:
                prev = self._pow_cache[-1] if self._pow_cache else None
                self._pow_cache.append(
                    self.base if prev is None else mat_mul(prev, self.base)
                )
            return self._pow_cache[k - 1]
        return self.matrices[k - 1]

    def t(self, k: int) -> Interval:
        if k not in self._t_cache:
            t, v = operator_norm(self.matrix(k))
            self._t_cache[k] = t
            self._v_cache[k] = v
        return self._t_cache[k]

    def v(self, k: int) -> Tuple[Interval, ...]:
        if k not in self._v_cache:
            self.t(k)
        return self._v_cache[k]


def log_norm_sequence(M, horizon: int) -> List[float]:
    """log ||M^k||_op for k = 1..horizon via multiply-and-renormalize."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    M = as_matrix(M)
    base = np.array([[float(x) for x in row] for row in M], dtype=float)
    acc = base.copy()
    shift = 0.0
    out = []
    for _ in range(horizon):
        out.append(shift + math.log(np.linalg.norm(acc, 2)))
        acc = acc @ base
        s = np.abs(acc).max()
        if s > 0:
            acc /= s
            shift += math.log(s)
    return out


@dataclass(frozen=True)
class LacunarityReport:
    lacunary: Optional[bool]  # None = undecided
    Q: Optional[Fraction]
    decomposition: Optional[Tuple[int, int]]  # (l, N)
    horizon: int
    note: str = ""


def analyze_lacunarity(seq: MatrixSequence, horizon: int) -> LacunarityReport:
    """Certified lacunarity analysis over a finite horizon.

    Never reports a false positive: every claimed ratio Q > 1 is backed by
    exact enclosure comparisons, and for power sequences a certified
    spectral-radius test rules out rotations and unipotent growth first.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    if seq.finite:
        count = min(len(seq), horizon)
        ratio_lo = None
        undecided = False
        for k in range(1, count):
            lo = seq.t(k + 1).lo / seq.t(k).hi
            hi = seq.t(k + 1).hi / seq.t(k).lo
            if hi <= 1:
                return LacunarityReport(False, None, None, horizon, f"ratio <= 1 at k={k}")
            if lo <= 1:
                undecided = True
            ratio_lo = lo if ratio_lo is None else min(ratio_lo, lo)
        if undecided or ratio_lo is None:
            return LacunarityReport(None, None, None, horizon, "ratio enclosure straddles 1")
        return LacunarityReport(True, ratio_lo, (1, 1), horizon)
    # Powers(M)
    M = seq.base
    if not spectral_radius_gt_one(M):
        return LacunarityReport(
            False, None, None, horizon, "spectral radius <= 1 (certified)"
        )
    n = mat_shape(M)[0]
    max_l = max(1, (n * horizon) // 4)
    for ell in range(1, max_l + 1):
        if horizon - ell < 1:
            break
        ratios = []
        for k in range(1, horizon - ell + 1):
            ratios.append(seq.t(k + ell).lo / seq.t(k).hi)
        # smallest N whose suffix min exceeds 1
        best_n = None
        suffix_min = None
        for idx in range(len(ratios) - 1, -1, -1):
            suffix_min = ratios[idx] if suffix_min is None else min(suffix_min, ratios[idx])
            if suffix_min > 1:
                best_n = idx + 1
                best_q = suffix_min
        if best_n is not None and best_n <= max(1, horizon // 2):
            return LacunarityReport(
                lacunary=(ell == 1 and best_n == 1),
                Q=best_q,
                decomposition=(ell, best_n),
                horizon=horizon,
            )
    return LacunarityReport(None, None, None, horizon, "no certificate found on horizon")


# ---------------------------------------------------------------------------
# Kronecker orders and invariant hyperplanes


def _unipotent(P: Matrix) -> bool:
    n = mat_shape(P)[0]
    p = charpoly(P)
    target = [
        Fraction(math.comb(n, i) * (-1) ** (n - i)) for i in range(n + 1)
    ]
    return p == target


def kronecker_order(M) -> Optional[int]:
    """Least N >= 1 with M^N unipotent, for nonsingular integer M with all
    eigenvalue moduli <= 1; None when the precondition fails."""
    M = as_matrix(M)
    if not is_integer_matrix(M):
        raise ValueError("integer matrix required")
    n = mat_shape(M)[0]
    if determinant(M) == 0:
        return None
    if spectral_radius_gt_one(M):
        return None
    # admissible cyclotomic orders d have phi(d) <= n
    def phi(d: int) -> int:
        out = d
        x = d
        p = 2
        while p * p <= x:
            if x % p == 0:
                while x % p == 0:
                    x //= p
                out -= out // p
            p += 1
        if x > 1:
            out -= out // x
        return out

    orders = [d for d in range(1, 6 * n * n + 7) if phi(d) <= n]
    bound = 1
    for d in orders:
        bound = bound * d // math.gcd(bound, d)
    P = M
    for N in range(1, bound + 1):
        if _unipotent(P):
            return N
        P = mat_mul(P, M)
    return None


def invariant_hyperplane_family(M, N: int) -> Tuple[Vec, Interval]:
    """Rational hyperplane V (through 0) invariant under M^N, as a primitive
    integer normal, plus the separation 1/||normal|| of the family V + Z^n."""
    M = as_matrix(M)
    n = mat_shape(M)[0]
    U = mat_pow(M, N)
    if not _unipotent(U):
        raise ValueError("M^N is not unipotent")
    W = mat_sub(transpose(U), identity(n))
    basis = kernel_basis(W)
    if not basis:
        raise ValueError("no invariant normal found (not unipotent?)")
    if len(basis) == n:
        normal = tuple(Fraction(1 if i == n - 1 else 0) for i in range(n))
    else:
        normal = basis[-1]
    # scale to a primitive integer vector
    den = 1
    for x in normal:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in normal]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    normal = tuple(Fraction(x) for x in ints)
    separation = Interval.point(1) / sqrt_interval(norm2(normal))
    return normal, separation


def jordan_dominance_check(M, horizon: int) -> dict:
    """Check ||B^k||_op / |binom(k, m-1) lambda^{k-m+1}| -> 1 at k = horizon."""
    M = as_matrix(M)
    n = mat_shape(M)[0]
    lam = M[0][0]
    for i in range(n):
        for j in range(n):
            expect = lam if i == j else (Fraction(1) if j == i + 1 else Fraction(0))
            if M[i][j] != expect:
                raise ValueError("not a single Jordan block")
    if lam == 0:
        raise ValueError("need |lambda| > 0")
    k = horizon
    lam_f = float(lam)
    dom = math.comb(k, n - 1)
    # entries scaled by the dominant one: binom(k, j-i)/binom(k, m-1) * lam^{(m-1)-(j-i)}
    E = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            E[i][j] = (
                math.comb(k, j - i) / dom * lam_f ** ((n - 1) - (j - i))
            )
    ratio = float(np.linalg.norm(E, 2))
    tol = 10 * n * n / horizon
    return {"ratio": ratio, "tolerance": tol, "ok": abs(ratio - 1) <= tol, "k": k}
