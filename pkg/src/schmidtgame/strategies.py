"""Alice's constructive strategies and Bob adversaries.

The avoidance move realizes the measure-theoretic existence argument as a
finite search: candidate centers on the support are scored by how many
forbidden slabs the shrunken ball clears (with a slack of alpha*rho/4 that
pays for the candidate mesh), floats pre-screen the candidates and the
winner's clearances are re-certified exactly.  The scheduled strategy plays
epochs of r avoidance rounds, each epoch retiring every constraint whose
norm t_k falls in the current window, and emits exact disjointness
certificates at epoch boundaries.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import GameConfig, GameTranscript, Variant
from .exact import Interval, frac, sqrt_interval
from .geometry import (
    Ball,
    SlabConstraint,
    Vec,
    as_vec,
    dist2,
    dot,
    norm2,
    schmidt_leq,
    slab_ball_distance,
    slab_disjoint_certificate,
    slab_distance_exceeds,
    vadd,
    vscale,
    vsub,
)
from .matseq import MatrixSequence, kernel_basis, mat_mul, mat_shape, mat_vec, rref, transpose
from .supports import (
    DecayParams,
    ParameterError,
    SupportModel,
    candidate_centers,
    epsilon_for,
    max_alpha,
)
from .targets import TargetFamily, points_near


class NoFeasibleCenter(RuntimeError):
    """The finite search found no center meeting the avoidance guarantee."""


class MoreThanOneTarget(RuntimeError):
    """Two targets in reach at one index: the uniqueness bound is violated."""


class CertificateError(RuntimeError):
    def __init__(self, message: str, dump: Optional[dict] = None):
        super().__init__(message)
        self.dump = dump or {}


# ---------------------------------------------------------------------------
# schedule parameters


@dataclass(frozen=True)
class ScheduleParams:
    Q: Fraction
    epsilon: Fraction
    N: int
    r: int
    rho: Fraction
    c: Fraction
    delta: Fraction


def _floor_log(value: int, base: Fraction) -> int:
    """Largest i >= 0 with base**i <= value, for base > 1 (exact)."""
    i = 0
    acc = base
    while acc <= value:
        i += 1
        acc *= base
    return i


def schedule_params(
    alpha: Fraction,
    beta: Fraction,
    Q: Fraction,
    decay: DecayParams,
    delta: Fraction,
    rho: Fraction,
    max_N: int = 100000,
) -> ScheduleParams:
    """Derive (epsilon, N, r, c) for the scheduled avoidance strategy."""
    alpha, beta, Q, delta, rho = (frac(x) for x in (alpha, beta, Q, delta, rho))
    if Q <= 1:
        raise ParameterError("need a certified ratio Q > 1")
    if alpha >= max_alpha(decay):
        raise ParameterError(
            f"alpha={alpha} >= admissible bound {max_alpha(decay)}"
        )
    eps = epsilon_for(decay, alpha)
    ab = alpha * beta
    cap = ab * delta / 4
    if decay.rho0 is not None:
        cap = min(cap, decay.rho0)
    if not rho < cap:
        raise ParameterError(f"rho={rho} must be below {cap}")
    base = 1 / (1 - eps)
    for N in range(1, max_N + 1):
        r = _floor_log(N, base) + 1
        if (1 / ab) ** r <= Q ** N:
            c = min(rho * ab ** (2 * r - 1), delta / 4)
            return ScheduleParams(Q=Q, epsilon=eps, N=N, r=r, rho=rho, c=c, delta=delta)
    raise ParameterError("no feasible N found below the scan bound")


# ---------------------------------------------------------------------------
# avoidance search


def _slab_tables(ball: Ball, slabs: Sequence[SlabConstraint], alpha: Fraction):
    """Per-slab float data in ball-relative units (offsets divided by rho).

    Working relative to the ball keeps the floats in range even when the
    radius itself underflows a double.
    """
    import numpy as np

    rho = ball.radius
    units = []
    offs = []
    thresh = []
    for s in slabs:
        nn = math.sqrt(float(norm2(s.normal)))
        units.append([float(x) / nn for x in s.normal])
        offs.append(float((s.offset - dot(s.normal, ball.center)) / rho) / nn)
        thresh.append(float(s.halfwidth / rho) + 1.75 * float(alpha))
    return np.array(units), np.array(offs), np.array(thresh)


def _exact_avoided(
    ball_small: Ball, slabs: Sequence[SlabConstraint], margin: Fraction
) -> List[int]:
    return [
        i for i, s in enumerate(slabs) if slab_distance_exceeds(ball_small, s, margin)
    ]


def _grid_step(alpha: Fraction, rho: Fraction, n: int) -> Fraction:
    # same covering grid as candidate_centers on a Euclidean support
    return alpha * rho / (4 * math.ceil(math.sqrt(n)))


def _avoid_euclidean(
    K: SupportModel, ball: Ball, slabs: Sequence[SlabConstraint],
    alpha: Fraction, need: int,
) -> Tuple[Vec, List[int]]:
    """Prescreen the covering grid with numpy, certify the winner exactly."""
    import numpy as np

    rho = ball.radius
    n = ball.dim
    margin = 3 * alpha * rho / 4
    step = _grid_step(alpha, rho, n)
    span = (1 - alpha) * rho
    m = int(span / step)
    axis = np.arange(-m, m + 1)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1).astype(float)
    h = float(step / rho)
    w = pts * h  # grid offsets in units of rho
    inside = (w * w).sum(axis=1) <= float(span / rho) ** 2 + 1e-12
    units, offs, thresh = _slab_tables(ball, slabs, alpha)
    dists = np.abs(w @ units.T - offs)
    counts = (dists > thresh).sum(axis=1)
    counts[~inside] = -1
    order = np.argsort(-counts, kind="stable")
    best: Optional[Tuple[int, Vec, List[int]]] = None
    span2 = span * span
    for rank in range(min(len(order), 200)):
        idx = int(order[rank])
        if counts[idx] < 0:
            break
        off = tuple(step * int(pts[idx][d]) for d in range(n))
        if norm2(off) > span2:
            continue  # float inclusion was optimistic; drop the point
        u = vadd(ball.center, off)
        avoided = _exact_avoided(Ball(u, alpha * rho), slabs, margin)
        if best is None or len(avoided) > best[0]:
            best = (len(avoided), u, avoided)
        if len(avoided) >= need:
            return u, avoided
    raise NoFeasibleCenter(
        f"best candidate clears {0 if best is None else best[0]} of "
        f"{len(slabs)} slabs, needed {need}"
    )


def _avoid_on_cells(
    K: SupportModel, ball: Ball, slabs: Sequence[SlabConstraint],
    alpha: Fraction, need: int,
) -> Tuple[Vec, List[int]]:
    """Scan the enumerated candidate points (IFS supports).

    Floats order the candidates by estimated clearance count; winners are
    certified exactly, falling back to a full exact scan if the ordering
    was misleading.
    """
    import numpy as np

    rho = ball.radius
    margin = 3 * alpha * rho / 4
    cands = candidate_centers(K, ball, alpha)
    units, offs, thresh = _slab_tables(ball, slabs, alpha)
    w = np.array(
        [[float((ui - ci) / rho) for ui, ci in zip(u, ball.center)] for u in cands]
    )
    counts = (np.abs(w @ units.T - offs) > thresh).sum(axis=1)
    order = np.argsort(-counts, kind="stable")
    best: Optional[Tuple[int, Vec, List[int]]] = None
    checked = 0
    for idx in order:
        u = cands[int(idx)]
        avoided = _exact_avoided(Ball(u, alpha * rho), slabs, margin)
        if best is None or len(avoided) > best[0]:
            best = (len(avoided), u, avoided)
        if len(avoided) >= need:
            return u, avoided
        checked += 1
        if checked >= 48 and len(cands) > 96:
            break
    if best is not None and best[0] < need and len(cands) > 96:
        # full exact scan as a last resort
        for u in cands:
            avoided = _exact_avoided(Ball(u, alpha * rho), slabs, margin)
            if best is None or len(avoided) > best[0]:
                best = (len(avoided), u, avoided)
    if best is not None and best[0] >= need:
        return best[1], best[2]
    raise NoFeasibleCenter(
        f"best candidate clears {0 if best is None else best[0]} of "
        f"{len(slabs)} slabs, needed {need}"
    )


def avoidance_move(
    K: SupportModel, ball: Ball, slabs: Sequence[SlabConstraint], alpha: Fraction
) -> Tuple[Vec, List[int]]:
    """Pick a center whose shrunken ball clears many slabs, certified exactly.

    Clearance is tested with margin 3*alpha*rho/4: the full alpha*rho minus
    the alpha*rho/4 mesh slack of the covering grid.  The returned index
    list is verified exactly and has size >= ceil(epsilon * N).
    """
    alpha = frac(alpha)
    if not slabs:
        return ball.center, []
    eps = epsilon_for(K.decay, alpha)
    need = math.ceil(eps * len(slabs))
    if K.kind == "euclidean":
        return _avoid_euclidean(K, ball, slabs, alpha, need)
    return _avoid_on_cells(K, ball, slabs, alpha, need)


def single_escape(
    K: SupportModel, ball: Ball, slab: SlabConstraint, alpha: Fraction
) -> Vec:
    center, avoided = avoidance_move(K, ball, [slab], alpha)
    if avoided != [0]:
        raise NoFeasibleCenter("single slab not escaped")
    return center


# ---------------------------------------------------------------------------
# epoch constraints


@dataclass(frozen=True)
class EpochConstraint:
    k: int
    y: Vec
    slab: SlabConstraint       # halfwidth zeta (play-time avoidance)
    cert_slab: SlabConstraint  # halfwidth c/t_k (final certificate)


def _preimage_min_norm(M, y: Vec) -> Optional[Vec]:
    """Minimum-norm least-squares solution of M x = y over Q."""
    Mt = transpose(M)
    A = mat_mul(Mt, M)
    b = mat_vec(Mt, y)
    n = len(A)
    aug = tuple(row + (bi,) for row, bi in zip(A, b))
    R, pivots = rref(aug)
    if n in pivots:
        return None  # inconsistent; cannot happen for normal equations
    x0 = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x0[i if False else pc] = R[i][n]
    x0 = tuple(x0)
    null = kernel_basis(M)
    if not null:
        return x0
    # remove the null-space component: solve the Gram system
    g = len(null)
    gram = tuple(tuple(dot(null[i], null[j]) for j in range(g)) for i in range(g))
    rhs = tuple(dot(null[i], x0) for i in range(g))
    aug2 = tuple(row + (ri,) for row, ri in zip(gram, rhs))
    R2, piv2 = rref(aug2)
    coef = [Fraction(0)] * g
    for i, pc in enumerate(piv2):
        coef[pc] = R2[i][g]
    out = list(x0)
    for ci, nv in zip(coef, null):
        out = [o - ci * nvi for o, nvi in zip(out, nv)]
    return tuple(out)


def _window_indices(
    seq: MatrixSequence, lo_cap: Fraction, hi_cap: Fraction, guard: int = 8
) -> List[int]:
    """Indices k whose norm enclosure meets [lo_cap, hi_cap)."""
    out = []
    k = 0
    beyond = 0
    while True:
        k += 1
        if seq.finite and k > len(seq):
            break
        t = seq.t(k)
        if t.hi >= lo_cap and t.lo < hi_cap:
            out.append(k)
        if t.lo >= hi_cap:
            beyond += 1
            if not seq.finite and beyond >= guard:
                break
        else:
            beyond = 0
        if seq.finite:
            continue
        if k > 100000:
            raise CertificateError("window scan did not terminate")
    return out


def _constraint_for_index(
    ball: Ball,
    seq: MatrixSequence,
    targets: TargetFamily,
    c: Fraction,
    zeta: Fraction,
    k: int,
) -> Optional[EpochConstraint]:
    t = seq.t(k)
    M = seq.matrix(k)
    img = mat_vec(M, ball.center)
    reach = c + t.hi * ball.radius
    ys = points_near(targets, k, img, reach)
    if len(ys) > 1:
        raise MoreThanOneTarget(
            f"{len(ys)} targets within {float(reach):.3g} at index {k}"
        )
    if not ys:
        return None
    y = ys[0]
    xstar = _preimage_min_norm(M, y)
    if xstar is None:
        return None
    resid2 = dist2(mat_vec(M, xstar), y)
    if resid2 > c * c:
        return None  # the c-neighborhood of y misses the range of M entirely
    # |v.(x - x*)| <= (c + residual)/t for every x with ||Mx - y|| <= c
    base = (c + sqrt_interval(resid2).hi) / t.lo
    v = seq.v(k)
    vm = tuple(iv.mid for iv in v)
    err2 = sum(((iv.hi - iv.lo) / 2) ** 2 for iv in v)
    e_hi = sqrt_interval(err2).hi
    R = sqrt_interval(dist2(ball.center, xstar)).hi + ball.radius
    nrm_lo = sqrt_interval(norm2(vm)).lo
    if nrm_lo <= 0:
        raise CertificateError(f"degenerate direction enclosure at index {k}")
    hw_cert = (base + e_hi * R) / nrm_lo
    if base > zeta:
        raise CertificateError(
            f"c/t_k = {float(base):.3g} exceeds zeta = {float(zeta):.3g} at k={k}"
        )
    hw_play = (zeta + e_hi * R) / nrm_lo
    offset = dot(vm, xstar)
    return EpochConstraint(
        k=k,
        y=y,
        slab=SlabConstraint(vm, offset, hw_play, label=f"k={k}"),
        cert_slab=SlabConstraint(vm, offset, hw_cert, label=f"k={k} cert"),
    )


def epoch_constraints(
    ball: Ball,
    seq: MatrixSequence,
    targets: TargetFamily,
    params: ScheduleParams,
    j: int,
    alpha: Fraction,
    beta: Fraction,
) -> List[EpochConstraint]:
    """Constraint slabs for epoch j >= 1: indices with t_k in the window
    [(ab)^{-r(j-1)}, (ab)^{-rj}), at most N of them."""
    ab = frac(alpha) * frac(beta)
    r = params.r
    lo_cap = (1 / ab) ** (r * (j - 1))
    hi_cap = (1 / ab) ** (r * j)
    zeta = ab ** (r * (j + 1) - 1) * params.rho
    out = []
    for k in _window_indices(seq, lo_cap, hi_cap):
        ec = _constraint_for_index(ball, seq, targets, params.c, zeta, k)
        if ec is not None:
            out.append(ec)
    if len(out) > params.N:
        raise CertificateError(
            f"epoch {j} produced {len(out)} constraints, schedule allows {params.N}"
        )
    return out


# ---------------------------------------------------------------------------
# the scheduled strategy


class Theorem42Alice:
    """Scheduled avoidance strategy with exact epoch certificates.

    Pre-stage rounds (1 .. r-1) escape the finitely many constraints with
    t_k < 1 that meet the initial ball, one per round.  Epoch j occupies
    rounds r*j .. r*(j+1)-1: its constraints are computed on Bob's ball at
    round r*j and retired by avoidance moves; at the last round of the epoch
    every retired constraint is re-certified disjoint from the current ball.
    """

    def __init__(
        self,
        params: ScheduleParams,
        seq: MatrixSequence,
        targets: TargetFamily,
        support: SupportModel,
        alpha: Fraction,
        beta: Fraction,
    ):
        self.params = params
        self.seq = seq
        self.targets = targets
        self.support = support
        self.alpha = frac(alpha)
        self.beta = frac(beta)
        self._reset()

    def _reset(self):
        self.round_no = 0
        self.pending: List[EpochConstraint] = []
        self.resolved: List[EpochConstraint] = []
        self.handled_k: set = set()
        self.pre_slabs: Optional[List[EpochConstraint]] = None
        self.epochs_certified = 0

    def start(self, config: GameConfig, seed: int):
        self._reset()

    def _initial_escapes(self, ball: Ball) -> List[EpochConstraint]:
        """Constraints with t_k certainly below 1 that meet the initial ball."""
        out = []
        k = 0
        while True:
            k += 1
            if self.seq.finite and k > len(self.seq):
                break
            t = self.seq.t(k)
            if t.lo >= 1:
                if not self.seq.finite:
                    break
                continue
            if t.hi >= 1:
                continue  # straddles 1; epoch 1's window picks it up
            ec = _constraint_for_index(
                ball, self.seq, self.targets, self.params.c, ball.radius, k
            )
            if ec is not None:
                out.append(ec)
                self.handled_k.add(k)
        return out

    def propose(self, transcript: GameTranscript, outer: Ball) -> Tuple[Ball, Dict]:
        self.round_no += 1
        i = self.round_no
        r = self.params.r
        a = self.alpha
        rho = outer.radius
        ann: Dict = {}
        if self.pre_slabs is None:
            self.pre_slabs = self._initial_escapes(outer)
        if i % r == 0:
            j = i // r
            fresh = [
                ec
                for ec in epoch_constraints(
                    outer, self.seq, self.targets, self.params, j, a, self.beta
                )
                if ec.k not in self.handled_k
            ]
            for ec in fresh:
                self.handled_k.add(ec.k)
            self.pending.extend(fresh)
            ann["epoch_start"] = j
            ann["new_constraints"] = [ec.k for ec in fresh]
        if i < r and self.pre_slabs:
            ec = self.pre_slabs.pop(0)
            center = single_escape(self.support, outer, ec.slab, a)
            self.resolved.append(ec)
            ann["pre_escape"] = ec.k
        elif self.pending:
            center, avoided = avoidance_move(
                self.support, outer, [ec.slab for ec in self.pending], a
            )
            hit = set(avoided)
            newly = [ec for x, ec in enumerate(self.pending) if x in hit]
            self.pending = [ec for x, ec in enumerate(self.pending) if x not in hit]
            self.resolved.extend(newly)
            ann["avoided"] = [ec.k for ec in newly]
        elif self.support.kind == "ifs":
            # keep position, but on an exact code-word point of the attractor
            cands = candidate_centers(self.support, outer, a)
            center = min(cands, key=lambda u: (dist2(u, outer.center), u))
        else:
            center = outer.center
        ball = Ball(center, a * rho)
        nxt = i + 1
        if nxt % r == 0 and nxt // r >= 2:
            j_done = nxt // r - 1
            if self.pending or self.pre_slabs:
                raise CertificateError(
                    f"epoch {j_done} ends with unresolved constraints",
                    dump={
                        "pending": [ec.k for ec in self.pending],
                        "pre": [ec.k for ec in self.pre_slabs or []],
                    },
                )
            certs = []
            for ec in self.resolved:
                if not slab_disjoint_certificate(ball, ec.cert_slab, Fraction(0)):
                    raise CertificateError(
                        f"certificate failed at k={ec.k} after epoch {j_done}",
                        dump={"k": ec.k, "round": i},
                    )
                certs.append(
                    {
                        "k": ec.k,
                        "epoch": j_done,
                        "margin_lb": str(slab_ball_distance(ball, ec.cert_slab)),
                    }
                )
            self.epochs_certified = j_done
            ann["certificates"] = certs
        return ball, ann


def alice_theorem42(
    params: ScheduleParams,
    seq: MatrixSequence,
    targets: TargetFamily,
    K: SupportModel,
    alpha: Fraction,
    beta: Fraction,
) -> Theorem42Alice:
    rep_note = params  # parameters already validated by schedule_params
    return Theorem42Alice(rep_note, seq, targets, K, alpha, beta)


class CenteredAlice:
    """Keeps the center, shrinking at the required rate."""

    def __init__(self, alpha: Fraction):
        self.alpha = frac(alpha)

    def start(self, config, seed):
        pass

    def propose(self, transcript, outer: Ball):
        return Ball(outer.center, self.alpha * outer.radius), {}


class GreedyAlice:
    """Maximizes realized clearance each round, ignoring the schedule.

    No a-priori guarantee; useful for exploration.  Constraints are gathered
    for every index whose preimage spacing is comparable to the current ball.
    """

    def __init__(self, seq, targets, support, alpha, c: Fraction, horizon: int = 40):
        self.seq = seq
        self.targets = targets
        self.support = support
        self.alpha = frac(alpha)
        self.c = frac(c)
        self.horizon = horizon

    def start(self, config, seed):
        pass

    def propose(self, transcript, outer: Ball):
        slabs = []
        for k in range(1, self.horizon + 1):
            if self.seq.finite and k > len(self.seq):
                break
            t = self.seq.t(k)
            if t.lo * outer.radius > 4 * self.targets.delta:
                break
            try:
                ec = _constraint_for_index(
                    outer, self.seq, self.targets, self.c, outer.radius, k
                )
            except MoreThanOneTarget:
                # ball still too coarse at this index; nothing to dodge yet
                continue
            if ec is not None:
                slabs.append(ec.cert_slab)
        if not slabs:
            return Ball(outer.center, self.alpha * outer.radius), {}
        cands = candidate_centers(self.support, outer, self.alpha)
        best = None
        for u in cands:
            small = Ball(u, self.alpha * outer.radius)
            score = min(float(slab_ball_distance(small, s)) for s in slabs)
            if best is None or score > best[0]:
                best = (score, u)
        return Ball(best[1], self.alpha * outer.radius), {"greedy_clearance": best[0]}


# ---------------------------------------------------------------------------
# strong-game wrapper and intersection combinator


class StrongWrapper:
    """Runs a Classic-schedule strategy inside the Strong variant.

    Dummy moves shrink at the maximal legal rate alpha; the inner strategy
    is consulted exactly when the real radius hits its virtual-Classic grid,
    so its observed ball sequence satisfies the Classic rule with its own
    beta.  Supports adversaries whose radius choices stay on that grid (the
    maximal adversary, or exact-Classic Bobs with matching beta); any other
    radius pattern is detected and aborts rather than miscertifying.
    """

    def __init__(self, inner, alpha: Fraction):
        self.inner = inner
        self.alpha = frac(alpha)
        self.inner_beta = frac(getattr(inner, "beta"))
        self.next_trigger: Optional[Fraction] = None
        self.observed: List[Ball] = []

    def start(self, config: GameConfig, seed: int):
        start = getattr(self.inner, "start", None)
        if start is not None:
            start(config, seed)
        self.next_trigger = None
        self.observed = []

    def propose(self, transcript: GameTranscript, outer: Ball):
        rho = outer.radius
        if self.next_trigger is None or rho == self.next_trigger:
            self.observed.append(outer)
            ball, ann = self.inner.propose(transcript, outer)
            self.next_trigger = self.alpha * self.inner_beta * rho
            ann = dict(ann)
            ann["virtual_round"] = True
            self.observed.append(ball)
            return ball, ann
        if rho < self.next_trigger:
            raise CertificateError(
                "adversary left the virtual-Classic radius grid; "
                f"saw {rho}, expected to pass {self.next_trigger}"
            )
        return Ball(outer.center, self.alpha * rho), {"dummy": True}


def strong_wrapper(inner, alpha: Fraction) -> StrongWrapper:
    return StrongWrapper(inner, alpha)


def virtual_beta(alpha: Fraction, beta: Fraction) -> Tuple[int, Fraction]:
    """Stride s and inner beta for wrapping under the maximal adversary.

    s = ceil(log(alpha*beta)/log(alpha)) real rounds per virtual round; the
    inner game runs at (alpha, alpha^{s-1})."""
    alpha, beta = frac(alpha), frac(beta)
    s = 1
    while alpha ** s > alpha * beta:
        s += 1
    return s, alpha ** (s - 1)


class RoundRobinAlice:
    """Finite intersection combinator: sub-strategy i acts on rounds == i (mod s).

    Each sub-strategy must be built for the slowed game (alpha, beta_i) with
    beta_i = beta*(alpha*beta)^{s-1}, the net shrink between its turns.
    """

    def __init__(self, subs: Sequence, alpha: Fraction):
        if not subs:
            raise ValueError("need at least one strategy")
        self.subs = list(subs)
        self.alpha = frac(alpha)
        self.count = 0

    def start(self, config, seed):
        self.count = 0
        for s in self.subs:
            st = getattr(s, "start", None)
            if st is not None:
                st(config, seed)

    def propose(self, transcript, outer: Ball):
        idx = self.count % len(self.subs)
        self.count += 1
        ball, ann = self.subs[idx].propose(transcript, outer)
        ann = dict(ann)
        ann["robin_slot"] = idx
        return ball, ann


def intersect_strategies(strategies: Sequence, alpha: Fraction):
    if len(strategies) == 1:
        return strategies[0]
    return RoundRobinAlice(strategies, alpha)


def moshchevitin_feasible(alpha: Fraction, beta: Fraction) -> bool:
    """Parameter-validity predicate 1 + alpha*beta - 2*alpha > 0 (exact)."""
    alpha, beta = frac(alpha), frac(beta)
    return 1 + alpha * beta - 2 * alpha > 0


# ---------------------------------------------------------------------------
# Bob adversaries


class ChaseBob:
    """Drifts toward the nearest preimage point of the lowest constraint
    index still reachable under the remaining movement budget."""

    def __init__(self, seq: MatrixSequence, targets: TargetFamily, guard: int = 40):
        self.seq = seq
        self.targets = targets
        self.guard = guard
        self.k_target = 1
        self.beta = Fraction(1, 2)
        self.support: Optional[SupportModel] = None

    def start(self, config: GameConfig, seed: int):
        self.beta = config.beta
        self.alpha = config.alpha
        self.support = config.support
        self.k_target = 1

    def _nearest_preimage(self, k: int, center: Vec, rho: Fraction) -> Optional[Vec]:
        t = self.seq.t(k)
        M = self.seq.matrix(k)
        img = mat_vec(M, center)
        reach = t.hi * rho * 4 + self.targets.delta
        ys = points_near(self.targets, k, img, reach)
        if not ys:
            return None
        best = min(ys, key=lambda y: dist2(y, img))
        return _preimage_min_norm(M, best)

    def propose(self, transcript, outer: Ball):
        rho = outer.radius
        rad = self.beta * rho
        step = rho - rad
        c = outer.center
        budget = step / (1 - self.alpha * self.beta)  # total future movement
        p = None
        while self.k_target <= self.guard:
            if self.seq.finite and self.k_target > len(self.seq):
                break
            p = self._nearest_preimage(self.k_target, c, rho)
            if p is not None and dist2(p, c) <= budget * budget:
                break
            self.k_target += 1
            p = None
        if p is None:
            return Ball(c, rad), {"chase": "idle"}
        if self.support is not None and self.support.kind == "ifs":
            cands = candidate_centers(self.support, outer, self.beta)
            target = min(cands, key=lambda u: (dist2(u, p), u))
            return Ball(target, rad), {"chase": self.k_target}
        d2 = dist2(p, c)
        if d2 <= step * step:
            return Ball(p, rad), {"chase": self.k_target, "reached": True}
        inv = sqrt_interval(d2).hi
        tstep = step / inv  # <= step/||p-c||, keeps the move legal
        newc = vadd(c, vscale(tstep, vsub(p, c)))
        ball = Ball(newc, rad)
        if not schmidt_leq(ball, outer):  # numerical safety net, exact check
            ball = Ball(c, rad)
        return ball, {"chase": self.k_target}


class RandomBob:
    """Uniform feasible center each turn; bit-reproducible for a fixed seed."""

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self.rng = random.Random(seed or 0)
        self.beta = Fraction(1, 2)
        self.support: Optional[SupportModel] = None

    def start(self, config: GameConfig, seed: int):
        self.beta = config.beta
        self.support = config.support
        self.rng = random.Random(self.seed if self.seed is not None else seed)

    def propose(self, transcript, outer: Ball):
        rho = outer.radius
        rad = self.beta * rho
        step = rho - rad
        if self.support is not None and self.support.kind == "ifs":
            cands = candidate_centers(self.support, outer, self.beta)
            return Ball(self.rng.choice(cands), rad), {"random": True}
        n = outer.dim
        for _ in range(64):
            q = [
                Fraction(self.rng.randrange(-(1 << 20), (1 << 20) + 1), 1 << 20)
                for _ in range(n)
            ]
            w = tuple(qi * step for qi in q)
            if norm2(w) <= step * step:
                return Ball(vadd(outer.center, w), rad), {"random": True}
        return Ball(outer.center, rad), {"random": "centered"}


class MaximalBob:
    """Takes the full radius every turn (legal only in the Strong variant)."""

    def start(self, config, seed):
        pass

    def propose(self, transcript, outer: Ball):
        return Ball(outer.center, outer.radius), {"maximal": True}


def bob_adversaries(
    seq: Optional[MatrixSequence] = None,
    targets: Optional[TargetFamily] = None,
    seed: Optional[int] = None,
) -> Dict[str, object]:
    out: Dict[str, object] = {
        "random": RandomBob(seed),
        "maximal": MaximalBob(),
    }
    if seq is not None and targets is not None:
        out["chase"] = ChaseBob(seq, targets)
    return out
