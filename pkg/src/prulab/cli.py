"""Batch experiment front end.

Every stochastic subcommand requires --seed and emits a machine-readable
report embedding the seed and a content hash of its own config, so any
report is reproducible bit for bit.  Exit codes: 0 success, 1 usage
error, 2 assertion-style property violation (for CI gating).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from prulab.linalg import (
    PropertyViolationError,
    RandomSeed,
    ResourceLimitError,
    set_memory_budget_bytes,
)
from prulab.util import config_hash


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(p: _Parser, stochastic: bool) -> None:
    p.add_argument("--seed", type=int, required=stochastic,
                   help="base seed" + (" (required)" if stochastic else ""))
    p.add_argument("--stream", type=int, default=0, help="seed stream id")
    p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--mem-budget", type=float, default=None,
                   help="working-set cap in GiB")


def build_parser() -> _Parser:
    top = _Parser(prog="prulab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pfc-distinguish", parents=[], help="collision test: permutation-phase-Clifford vs Haar")
    _add_common(p, stochastic=True)
    p.add_argument("--n", type=int, required=True, help="qubit count (d = 2^n), n <= 30")
    p.add_argument("--t", type=int, default=None, help="copies per block (default ceil(sqrt(d)))")
    p.add_argument("--k-blocks", type=int, default=100000)
    p.add_argument("--alpha", type=float, default=0.25)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--haar-mode", choices=("urn", "dense"), default="urn")
    p.add_argument("--estimator", choices=("mean", "median"), default="mean")

    p = sub.add_parser("design-distance", help="2->2 distance and diamond/relative bracket of an ensemble")
    _add_common(p, stochastic=False)
    p.add_argument("--ensemble-file", type=str, default=None, help="ensemble manifest JSON")
    p.add_argument("--ensemble", type=str, default=None,
                   help="builtin: pauli-1 | clifford-1")
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("net-coverage", help="Monte Carlo exposure of a finite net")
    _add_common(p, stochastic=True)
    p.add_argument("--net-file", type=str, default=None, help="net manifest JSON")
    p.add_argument("--haar-net-size", type=int, default=None,
                   help="instead of a file: sample this many Haar elements")
    p.add_argument("--dim", type=int, default=None, help="dimension for --haar-net-size")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--sweep-eps", type=str, default=None,
                   help="comma list of eps values; with --format csv, one row per value")

    p = sub.add_parser("truncate-diag", help="verify diagonal-truncation distance bounds")
    _add_common(p, stochastic=False)
    p.add_argument("--circuit-file", type=str, required=True)
    p.add_argument("--k", type=int, required=True, help="truncation bits")

    p = sub.add_parser("bounds", help="cardinality/entropy bound calculators")
    _add_common(p, stochastic=False)
    p.add_argument("formula", choices=(
        "prior-support", "improved-support", "rom-input-length",
        "trivial-rompru", "scalable-check", "net-size"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--kappa", type=int, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--m", type=float, default=None)
    p.add_argument("--alpha-impl", type=float, default=0.0)
    p.add_argument("--c-diamond", type=float, default=1.0)
    p.add_argument("--c-design", type=float, default=1.0)
    p.add_argument("--additive-slack", type=float, default=1.0)
    p.add_argument("--poly-budget", type=float, default=2.0)
    p.add_argument("--log", action="store_true", help="report natural logs")
    p.add_argument("--sweep-t", type=str, default=None,
                   help="comma list of t values; with --format csv, one row per value")

    p = sub.add_parser("tomo-demo", help="tomography contract demo on a hidden Haar unitary")
    _add_common(p, stochastic=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)

    return top


def _emit(args, config: dict, payload: dict, rows: list[dict] | None = None) -> None:
    if args.format == "csv":
        if rows is None:
            rows = [payload]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        report = {
            "config": config,
            "config_hash": config_hash(config),
            "result": payload if rows is None else {"rows": rows},
        }
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed_of(args) -> RandomSeed:
    return RandomSeed(args.seed, args.stream)


def _cmd_pfc_distinguish(args) -> None:
    from prulab.distinguisher import pfc_distinguish_experiment

    if args.n < 1 or args.n > 30:
        raise SystemExit(1)
    if args.n <= 4:
        print(f"warning: n={args.n} gives d={2**args.n}, far from the "
              "asymptotic regime the test is tuned for; running anyway",
              file=sys.stderr)
    rep = pfc_distinguish_experiment(
        args.n, args.trials, _seed_of(args), t=args.t,
        k_blocks=args.k_blocks, alpha=args.alpha, haar_mode=args.haar_mode,
        estimator=args.estimator,
    )
    config = {
        "command": "pfc-distinguish", "n": args.n, "t": rep.params.t,
        "k_blocks": args.k_blocks, "alpha": args.alpha, "trials": args.trials,
        "haar_mode": args.haar_mode, "estimator": args.estimator,
        "seed": [args.seed, args.stream],
    }
    _emit(args, config, rep.to_json_dict())


def _cmd_design_distance(args) -> None:
    from prulab.ensembles import reference_design
    from prulab.moments import diamond_design_bounds
    from prulab.serialize import ensemble_from_json_dict, load_json

    if (args.ensemble_file is None) == (args.ensemble is None):
        raise SystemExit(1)
    if args.ensemble_file:
        ens = ensemble_from_json_dict(load_json(args.ensemble_file))
    elif args.ensemble == "pauli-1":
        ens = reference_design("pauli-1-design", 1)
    elif args.ensemble == "clifford-1":
        ens = reference_design("single-qubit-clifford-3-design")
    else:
        raise SystemExit(1)
    rep = diamond_design_bounds(ens, args.t)
    config = {"command": "design-distance", "t": args.t,
              "ensemble": args.ensemble or args.ensemble_file}
    _emit(args, config, rep.to_json_dict())


def _cmd_net_coverage(args) -> None:
    from prulab.nets import NetSpec, exposure_estimate
    from prulab.serialize import load_json, net_from_json_dict

    seed = _seed_of(args)
    if args.net_file:
        net = net_from_json_dict(load_json(args.net_file))
    elif args.haar_net_size and args.dim:
        net = NetSpec.haar_sample(args.dim, args.haar_net_size, seed.child(999))
    else:
        raise SystemExit(1)
    eps_list = ([float(v) for v in args.sweep_eps.split(",")]
                if args.sweep_eps else [args.eps])
    rows = []
    for i, eps in enumerate(eps_list):
        rep = exposure_estimate(net, eps, args.samples, seed.child(i))
        rows.append(rep.to_json_dict())
    config = {"command": "net-coverage", "eps": eps_list, "samples": args.samples,
              "net": args.net_file or f"haar({args.dim},{args.haar_net_size})",
              "seed": [args.seed, args.stream]}
    if len(rows) == 1:
        _emit(args, config, rows[0])
    else:
        _emit(args, config, rows[0], rows=rows)


def _cmd_truncate_diag(args) -> None:
    from prulab.serialize import circuit_from_json_dict, load_json
    from prulab.truncation import circuit_truncation_bound

    circ = circuit_from_json_dict(load_json(args.circuit_file))
    rep = circuit_truncation_bound(circ, args.k)
    config = {"command": "truncate-diag", "circuit": args.circuit_file, "k": args.k}
    _emit(args, config, rep.to_json_dict())


def _cmd_bounds(args) -> None:
    from prulab import bounds as B
    from prulab.nets import net_size_lower_bound

    def one(t_val):
        if args.formula == "prior-support":
            return {"t": t_val, "value": B.prior_support_bound(
                args.d, int(t_val), args.delta, as_log=args.log)}
        if args.formula == "improved-support":
            return {"t": t_val, "value": B.improved_support_bound(
                args.d, t_val, args.delta, args.c_design, as_log=args.log)}
        if args.formula == "rom-input-length":
            return {"t": t_val, **B.rom_input_length_bounds(
                args.d, t_val, args.delta, args.eps if args.eps else 0.0,
                args.additive_slack).to_json_dict()}
        if args.formula == "trivial-rompru":
            return B.trivial_rompru_params(args.d, args.kappa).to_json_dict()
        if args.formula == "scalable-check":
            params = B.RomPruParams(args.d, args.kappa, args.q, args.m,
                                    args.alpha_impl, t_val, args.delta)
            return B.scalable_check(params, args.poly_budget).to_json_dict()
        if args.formula == "net-size":
            return {"value": net_size_lower_bound(args.d, args.eps, args.eta,
                                                  args.c_diamond)}
        raise SystemExit(1)

    needs_t = args.formula in ("prior-support", "improved-support",
                               "rom-input-length", "scalable-check")
    if needs_t and args.t is None and not args.sweep_t:
        raise SystemExit(1)
    if args.formula in ("trivial-rompru", "scalable-check") and args.kappa is None:
        raise SystemExit(1)
    config = {"command": "bounds", "formula": args.formula,
              "inputs": {k: v for k, v in vars(args).items()
                         if k not in ("command", "out", "format", "func") and v is not None}}
    if args.sweep_t:
        rows = [one(float(v)) for v in args.sweep_t.split(",")]
        _emit(args, config, rows[0], rows=rows)
    else:
        _emit(args, config, one(args.t))


def _cmd_tomo_demo(args) -> None:
    from prulab.linalg import diamond_distance_unitaries, haar_unitary
    from prulab.tomography import ChannelOracle, naive_process_tomography

    seed = _seed_of(args)
    hidden = haar_unitary(args.d, seed.child(0))
    oracle = ChannelOracle(hidden)
    res = naive_process_tomography(oracle, args.eps, args.eta, seed.child(1))
    err = diamond_distance_unitaries(hidden, res.u_hat)
    config = {"command": "tomo-demo", "d": args.d, "eps": args.eps,
              "eta": args.eta, "seed": [args.seed, args.stream]}
    _emit(args, config, {
        "queries_used": res.queries_used,
        "achieved_diamond_error": err,
        "within_target": bool(err <= args.eps),
    })


_DISPATCH = {
    "pfc-distinguish": _cmd_pfc_distinguish,
    "design-distance": _cmd_design_distance,
    "net-coverage": _cmd_net_coverage,
    "truncate-diag": _cmd_truncate_diag,
    "bounds": _cmd_bounds,
    "tomo-demo": _cmd_tomo_demo,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.mem_budget is not None:
        set_memory_budget_bytes(int(args.mem_budget * (1 << 30)))
    try:
        _DISPATCH[args.command](args)
    except PropertyViolationError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
