"""Command-line harness: play, analyze-seq, estimate-decay, badapprox, verify.

Configuration is a JSON document with every exact rational written as a
"p/q" string; algebraic numbers as {"poly": [...], "lo": "p/q", "hi": "p/q"}.
Exit codes: 0 success/won, 2 lost or certificate failure, 3 infeasible
parameters, 4 I/O or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import badapprox as ba
from .engine import (
    GameConfig,
    GameTranscript,
    InvalidMove,
    Variant,
    limit_margin,
    load_transcript,
    run_game,
    save_transcript,
    validate_transcript,
)
from .exact import format_frac, frac
from .geometry import Ball, slab_disjoint_certificate
from .matseq import MatrixSequence, analyze_lacunarity, jordan_dominance_check
from .strategies import (
    CertificateError,
    GreedyAlice,
    MoreThanOneTarget,
    NoFeasibleCenter,
    Theorem42Alice,
    bob_adversaries,
    epoch_constraints,
    schedule_params,
    strong_wrapper,
    virtual_beta,
)
from .supports import (
    DecayParams,
    ParameterError,
    Similarity,
    SupportModel,
    estimate_decay,
    pointwise_dim_lower,
)
from .targets import TargetFamily

EXIT_OK = 0
EXIT_LOST = 2
EXIT_INFEASIBLE = 3
EXIT_CONFIG = 4


class ConfigError(ValueError):
    pass


def _load_config(path: str) -> Dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}")


def _vec(data) -> Tuple[Fraction, ...]:
    return tuple(frac(x) for x in data)


def _build_support(cfg: Dict) -> SupportModel:
    d = cfg.get("decay", {})
    decay = DecayParams(
        C=frac(d.get("C", 1)),
        gamma=frac(d.get("gamma", 1)),
        rho0=frac(d["rho0"]) if "rho0" in d else None,
        ambient_dim=int(cfg.get("dim", 1)),
    )
    kind = cfg.get("kind", "euclidean")
    if kind == "euclidean":
        return SupportModel.euclidean(int(cfg.get("dim", 1)), decay)
    if kind == "ifs":
        maps = [
            Similarity(frac(r), _vec(t))
            for r, t in zip(cfg["ratios"], cfg["translations"])
        ]
        return SupportModel.ifs(maps, _vec(cfg["box_lo"]), _vec(cfg["box_hi"]), decay)
    raise ConfigError(f"unknown support kind {kind!r}")


def _build_sequence(cfg: Dict) -> MatrixSequence:
    kind = cfg.get("kind")
    if kind == "powers":
        return MatrixSequence.powers(tuple(_vec(row) for row in cfg["base"]))
    if kind == "rows":
        return MatrixSequence.rows([_vec(r) for r in cfg["rows"]])
    if kind == "explicit":
        return MatrixSequence.explicit(
            [tuple(_vec(row) for row in m) for m in cfg["matrices"]]
        )
    raise ConfigError(f"unknown sequence kind {kind!r}")


def _build_targets(cfg: Dict) -> TargetFamily:
    kind = cfg.get("kind", "lattice")
    if kind == "lattice":
        return TargetFamily.lattice(_vec(cfg["base"]))
    if kind == "explicit":
        pts = {int(k): [_vec(p) for p in v] for k, v in cfg["points"].items()}
        return TargetFamily.explicit(pts, frac(cfg["delta"]))
    raise ConfigError(f"unknown target kind {kind!r}")


def _entry(e) -> ba.Entry:
    if isinstance(e, dict):
        return ba.AlgebraicReal(
            tuple(int(c) for c in e["poly"]), frac(e["lo"]), frac(e["hi"])
        )
    return frac(e)


def _build_affine(cfg: Dict) -> ba.AffineSystem:
    return ba.AffineSystem(tuple(tuple(_entry(e) for e in row) for row in cfg["A"]))


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SCHMIDT_SEED")
    return int(env) if env else 0


def _k_max(seq: MatrixSequence, cap: Fraction) -> int:
    out = 0
    k = 0
    misses = 0
    while True:
        k += 1
        if seq.finite and k > len(seq):
            break
        t = seq.t(k)
        if t.hi < cap:
            out = k
            misses = 0
        else:
            misses += 1
            if not seq.finite and misses >= 8:
                break
        if not seq.finite and k > 10000:
            break
    return out


def cmd_play(args) -> int:
    cfg = _load_config(args.config)
    game = cfg["game"]
    alpha, beta = frac(game["alpha"]), frac(game["beta"])
    variant = Variant(game.get("variant", "classic"))
    rho = frac(game["radius"])
    center = _vec(game["center"])
    epochs = args.epochs or int(game.get("epochs", 1))
    mode = args.mode or cfg.get("strategy", {}).get("mode", "certified")
    support = _build_support(cfg["support"])
    seq = _build_sequence(cfg["sequence"])
    targets = _build_targets(cfg["targets"])
    Q = frac(cfg.get("Q", 2))
    delta = targets.delta
    seed = _seed(args)

    if mode == "certified":
        if variant is Variant.STRONG:
            s, beta_v = virtual_beta(alpha, beta)
            params = schedule_params(alpha, beta_v, Q, support.decay, delta, rho)
            inner = Theorem42Alice(params, seq, targets, support, alpha, beta_v)
            alice = strong_wrapper(inner, alpha)
            beta_eff = beta_v
            max_rounds = s * ((epochs + 1) * params.r - 1) - 1
        else:
            params = schedule_params(alpha, beta, Q, support.decay, delta, rho)
            alice = Theorem42Alice(params, seq, targets, support, alpha, beta)
            beta_eff = beta
            max_rounds = (epochs + 1) * params.r - 1
        c_theory = params.c
    else:
        params = None
        beta_eff = beta
        alice = GreedyAlice(seq, targets, support, alpha, delta / 100)
        max_rounds = args.horizon or 24
        c_theory = Fraction(0)

    bob_name = cfg.get("strategy", {}).get("bob", "random")
    bobs = bob_adversaries(seq, targets, seed)
    if bob_name not in bobs:
        raise ConfigError(f"unknown adversary {bob_name!r}")
    bob = bobs[bob_name]

    game_config = GameConfig(
        alpha, beta, variant, support, Ball(center, rho), max_rounds
    )
    t0 = time.time()
    transcript = run_game(game_config, alice, bob, seed=seed)
    wall = time.time() - t0

    if params is not None:
        cap = (1 / (alpha * beta_eff)) ** (params.r * epochs)
        kmax = _k_max(seq, cap)
    else:
        kmax = args.horizon or 24
    margin = limit_margin(transcript, seq, targets, kmax)
    won = margin >= c_theory if params is not None else margin > 0

    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    tpath = os.path.join(out_dir, "transcript.jsonl")
    save_transcript(transcript, tpath)
    summary = {
        "won": won,
        "c_theory": format_frac(c_theory),
        "realized_margin": format_frac(margin),
        "epochs_completed": epochs if params is not None else 0,
        "k_max": kmax,
        "wall_time": round(wall, 3),
        "transcript": tpath,
        "certificates": len(transcript.certificates),
        "seed": seed,
        "mode": mode,
    }
    with open(os.path.join(out_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    print(json.dumps(summary))
    return EXIT_OK if won else EXIT_LOST


def cmd_analyze_seq(args) -> int:
    cfg = _load_config(args.config)
    seq = _build_sequence(cfg["sequence"])
    horizon = args.horizon or 60
    report = analyze_lacunarity(seq, horizon)
    out = {
        "lacunary": report.lacunary,
        "Q": format_frac(report.Q) if report.Q is not None else None,
        "decomposition": list(report.decomposition)
        if report.decomposition
        else None,
        "horizon": report.horizon,
        "note": report.note,
    }
    if args.jordan and seq.kind == "powers":
        out["jordan"] = jordan_dominance_check(seq.base, horizon)
    print(json.dumps(out))
    return EXIT_OK


def cmd_estimate_decay(args) -> int:
    cfg = _load_config(args.config)
    support = _build_support(cfg["support"])
    seed = _seed(args)
    est = estimate_decay(support, trials=args.trials, seed=seed)
    region = Ball(
        tuple(Fraction(0) for _ in range(support.dim)), Fraction(1)
    )
    dim_lower = pointwise_dim_lower(support, region, trials=args.trials, seed=seed)
    print(
        json.dumps(
            {
                "C_hat": est.C_hat,
                "gamma_hat": est.gamma_hat,
                "D_hat": est.D_hat,
                "pointwise_dim_lower": dim_lower,
                "seed": seed,
            }
        )
    )
    return EXIT_OK


def cmd_badapprox(args) -> int:
    cfg = _load_config(args.config)
    bcfg = cfg["badapprox"]
    A = _build_affine(bcfg)
    out: Dict = {}
    u = ba.rational_rank_check(A, int(bcfg.get("rank_bound", 100)))
    if u is not None:
        out["rational"] = True
        out["u"] = list(u)
        if "x" in bcfg:
            x = _vec(bcfg["x"])
            case = ba.rational_case_set(A, u)
            out["x_in_bad"] = case.in_bad_set(x)
            out["bad_margin"] = format_frac(
                ba.bad_margin(A, x, int(bcfg.get("q_bound", 10 ** 4)))
            )
    else:
        out["rational"] = False
        seq = ba.best_approx_sequence(A, int(bcfg.get("count", 10)))
        out["denominators"] = seq.denominators[: int(bcfg.get("count", 10))]
        out["thinned"] = [list(v) for v in seq.vectors]
        out["errors"] = [
            [format_frac(e.lo), format_frac(e.hi)] for e in seq.errors
        ]
        if "x" in bcfg:
            x = _vec(bcfg["x"])
            out["bad_margin"] = format_frac(
                ba.bad_margin(A, x, int(bcfg.get("q_bound", 10 ** 4)))
            )
    print(json.dumps(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    game = cfg["game"]
    alpha, beta = frac(game["alpha"]), frac(game["beta"])
    variant = Variant(game.get("variant", "classic"))
    support = _build_support(cfg["support"])
    seq = _build_sequence(cfg["sequence"])
    targets = _build_targets(cfg["targets"])
    Q = frac(cfg.get("Q", 2))
    rho = frac(game["radius"])
    center = _vec(game["center"])
    epochs = args.epochs or int(game.get("epochs", 1))
    transcript = load_transcript(args.transcript)
    checks: List[str] = []
    ok = True

    if variant is Variant.STRONG:
        _, beta_eff = virtual_beta(alpha, beta)
    else:
        beta_eff = beta
    params = schedule_params(alpha, beta_eff, Q, support.decay, targets.delta, rho)
    max_rounds = (len(transcript.moves) - 1) // 2
    game_config = GameConfig(alpha, beta, variant, support, Ball(center, rho), max_rounds)
    replay = validate_transcript(transcript, game_config)
    checks.append(f"replay: {'ok' if replay else 'FAIL'}")
    ok = ok and replay

    cap = (1 / (alpha * beta_eff)) ** (params.r * epochs)
    kmax = _k_max(seq, cap)
    margin = limit_margin(transcript, seq, targets, kmax)
    margin_ok = margin >= params.c
    checks.append(
        f"margin: {'ok' if margin_ok else 'FAIL'} "
        f"({format_frac(margin)} vs c={format_frac(params.c)})"
    )
    ok = ok and margin_ok

    if variant is Variant.CLASSIC and transcript.final_enclosure is not None:
        # re-derive every epoch's constraints and re-check disjointness
        final = transcript.final_enclosure
        bob_balls = {m.round_no: m.ball for m in transcript.moves if m.player.value == "bob"}
        for j in range(1, epochs + 1):
            start = params.r * j
            if start not in bob_balls:
                checks.append(f"epoch {j}: missing ball, skipped")
                continue
            try:
                ecs = epoch_constraints(
                    bob_balls[start], seq, targets, params, j, alpha, beta
                )
            except MoreThanOneTarget as e:
                checks.append(f"epoch {j}: FAIL ({e})")
                ok = False
                continue
            bad = [
                ec.k
                for ec in ecs
                if not slab_disjoint_certificate(final, ec.cert_slab, Fraction(0))
            ]
            if bad:
                checks.append(f"epoch {j}: FAIL at k={bad}")
                ok = False
            else:
                checks.append(f"epoch {j}: {len(ecs)} certificates ok")
    for line in checks:
        print(line)
    return EXIT_OK if ok else EXIT_LOST


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="schmidtgame")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--mode", choices=["certified", "greedy"], default=None)
        p.add_argument("--epochs", type=int, default=None)
        p.add_argument("--horizon", type=int, default=None)

    p = sub.add_parser("play", help="run one game end to end")
    common(p)
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("analyze-seq", help="lacunarity analysis of a sequence")
    common(p)
    p.add_argument("--jordan", action="store_true")
    p.set_defaults(fn=cmd_analyze_seq)

    p = sub.add_parser("estimate-decay", help="empirical decay parameters")
    common(p)
    p.add_argument("--trials", type=int, default=60)
    p.set_defaults(fn=cmd_estimate_decay)

    p = sub.add_parser("badapprox", help="badly approximable form analysis")
    common(p)
    p.set_defaults(fn=cmd_badapprox)

    p = sub.add_parser("verify", help="re-validate a transcript")
    p.add_argument("transcript")
    common(p)
    p.set_defaults(fn=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, KeyError, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ParameterError as e:
        print(f"infeasible parameters: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InvalidMove, NoFeasibleCenter, MoreThanOneTarget, CertificateError) as e:
        print(f"game failure: {e}", file=sys.stderr)
        return EXIT_LOST


if __name__ == "__main__":
    sys.exit(main())
