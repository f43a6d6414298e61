"""Command-line front end: runs, tables, scans, predictions, statistics.

Exit codes: 0 success, 2 argument error, 3 budget exhausted (partial output
is still emitted, flagged in the metadata).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import engine, experiments, primality, records
from .engine import RunConfig
from .generators import AffineMinus, PowerMinus, SpecParseError, parse_spec

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mr-rounds", type=int, default=40)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gcdlab", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", help="run a recursion and print its event trace")
    p.add_argument("--spec", required=True)
    p.add_argument("--initial", type=int, required=True)
    p.add_argument("--mode", choices=("abs", "signed", "forward"), default="abs")
    p.add_argument("--start-index", type=int, default=1)
    p.add_argument("--zeros", type=int, default=None, help="stop after this many zeros")
    _add_common(p)

    p = sub.add_parser("zeros", help="first zero indices of a recursion")
    p.add_argument("--spec", required=True)
    p.add_argument("--initial", type=int, default=1)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--mode", choices=("abs", "signed"), default="abs")
    p.add_argument("--start-index", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("table", help="reproduce a reference table")
    p.add_argument(
        "family",
        choices=["appendix1", "appendix2", "appendix3", "appendix4", "appendix5", "appendix6"]
        + [f"c{i}" for i in range(1, 11)]
        + ["c3bis", "c3ter"],
    )
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--start", type=int)
    p.add_argument("--key", help="appendix6 table key, e.g. beta2-1")
    p.add_argument("--spec")
    p.add_argument("--initial", type=int)
    p.add_argument("--n-hi", type=int)
    p.add_argument("--variant", choices=("prime", "twin"))
    _add_common(p)

    p = sub.add_parser("scan", help="threshold scan over starting values")
    p.add_argument("family", choices=sorted(experiments._SCAN_FAMILIES))
    p.add_argument("--n-hi", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("predict", help="record-jump prediction")
    p.add_argument("family", choices=("affine", "power"))
    p.add_argument("--m", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--record", type=int, required=True)
    p.add_argument("--tail", default="", help="comma-separated large negative steps")
    _add_common(p)

    p = sub.add_parser("stats", help="statistical series and estimators")
    p.add_argument(
        "kind",
        choices=(
            "lalpha",
            "upsilon",
            "upsilon-twin",
            "upsilon-v",
            "goldbach-constant",
            "gaps",
            "legendre",
        ),
    )
    p.add_argument("--alpha", default="1/2")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--lo", type=int, default=10**6)
    p.add_argument("--hi", type=int, default=10**7)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--n-hi", type=int, default=5000)
    p.add_argument("--count", type=int, default=140)
    _add_common(p)

    p = sub.add_parser("goldbach", help="Goldbach decomposition for one N")
    p.add_argument("N", type=int)
    p.add_argument("--variant", choices=("product", "alternating"), default="alternating")
    _add_common(p)

    return ap


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    return max(1, int(os.environ.get("GCDLAB_WORKERS", "1")))


def _policy(args) -> primality.PrimalityPolicy:
    return primality.PrimalityPolicy(rounds=args.mr_rounds, rng_seed=args.seed or 0x5EED_CAFE)


def _meta(args, **extra) -> dict:
    meta = {"argv": sys.argv[1:], "budget": args.budget, "seed": args.seed}
    meta.update(extra)
    return meta


def _json_report(args, rows, **extra) -> str:
    return json.dumps({"metadata": _meta(args, **extra), "rows": rows}, default=str) + "\n"


def _report_out(args, report) -> int:
    if args.format == "json":
        rows = [
            {"index": i, "claims": [str(c) for c in cl], "deltas": d, "all_prime": ap}
            for i, cl, d, ap in report.rows
        ]
        _emit(args, _json_report(args, rows, spec=report.spec, budget_exhausted=report.budget_exhausted))
    else:
        _emit(args, report.to_csv())
    return EXIT_BUDGET if report.budget_exhausted else EXIT_OK


def _cmd_run(args) -> int:
    cfg = RunConfig(
        initial=args.initial,
        arg=parse_spec(args.spec),
        mode={"abs": engine.ABS_BACKWARD, "signed": engine.SIGNED_BACKWARD, "forward": engine.FORWARD_ADD}[args.mode],
        start_index=args.start_index,
        stop_after_zeros=args.zeros,
        budget=args.budget,
    )
    trace = engine.run(cfg)
    if args.format == "json":
        _emit(
            args,
            _json_report(
                args,
                {
                    "zero_indices": trace.zero_indices,
                    "large_steps": [[n, str(d)] for n, d in trace.large_steps],
                    "forward_diffs": [str(d) for d in trace.forward_diffs[:10000]],
                    "final_index": trace.final_index,
                    "final_value": str(trace.final_value),
                    "iterations_used": trace.iterations_used,
                    "budget_exhausted": trace.budget_exhausted,
                },
                spec=args.spec,
            ),
        )
    else:
        lines = ["event,index,value"]
        for n in trace.zero_indices:
            lines.append(f"zero,{n},0")
        for n, d in trace.large_steps:
            lines.append(f"step,{n},{d}")
        lines.append(f"final,{trace.final_index},{trace.final_value}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_BUDGET if trace.budget_exhausted else EXIT_OK


def _cmd_zeros(args) -> int:
    cfg = RunConfig(
        initial=args.initial,
        arg=parse_spec(args.spec),
        mode=engine.ABS_BACKWARD if args.mode == "abs" else engine.SIGNED_BACKWARD,
        start_index=args.start_index,
        budget=args.budget,
    )
    zs = engine.zeros(cfg, args.count)
    if args.format == "json":
        _emit(args, _json_report(args, zs, spec=args.spec))
    else:
        _emit(args, ",".join(str(z) for z in zs) + "\n")
    return EXIT_OK if len(zs) >= args.count else EXIT_BUDGET


def _cmd_table(args) -> int:
    params = {}
    for key in ("m", "p", "b", "c", "start", "key", "spec", "initial", "variant"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.n_hi is not None:
        params["n_hi"] = args.n_hi
    if args.family == "appendix1":
        rows = experiments.appendix1(args.rows or 20, policy=_policy(args))
        if args.format == "json":
            _emit(args, _json_report(args, [[k, str(b), d, r] for k, b, d, r in rows]))
        else:
            lines = ["k,b1,delta,ratio"] + [f"{k},{b},{d},{r:.9f}" for k, b, d, r in rows]
            _emit(args, "\n".join(lines) + "\n")
        return EXIT_OK
    report = experiments.table(args.family, rows=args.rows, policy=_policy(args), **params)
    return _report_out(args, report)


def _cmd_scan(args) -> int:
    report = experiments.scan_threshold(args.family, args.n_hi, workers=_workers(args))
    if args.format == "json":
        _emit(
            args,
            _json_report(
                args,
                report.failing_N,
                family=report.family,
                largest_failure=report.largest_failure,
            ),
        )
    else:
        _emit(args, report.to_csv())
    return EXIT_OK


def _cmd_predict(args) -> int:
    tail = [int(t) for t in args.tail.split(",") if t.strip()]
    if args.family == "affine":
        if args.m is None:
            raise SpecParseError("predict affine requires --m")
        jump = records.RecordJump(args.record, tail, AffineMinus(m=args.m))
        value = records.predict_next_affine(args.m, jump)
    else:
        if args.b is None or args.c is None:
            raise SpecParseError("predict power requires --b and --c")
        jump = records.RecordJump(args.record, tail, PowerMinus(b=args.b, c=args.c))
        value = records.predict_next_power(args.b, args.c, jump)
    if args.format == "json":
        _emit(args, _json_report(args, [str(value)]))
    else:
        _emit(args, f"{value}\n")
    return EXIT_OK


def _cmd_stats(args) -> int:
    policy = _policy(args)
    workers = _workers(args)
    if args.kind == "lalpha":
        from fractions import Fraction

        alpha = Fraction(args.alpha)
        ms = records.sample_ms(args.samples, args.lo, args.hi, seed=args.seed)
        est = records.estimate_L_alpha(alpha, ms, policy=policy)
        if args.format == "json":
            _emit(args, _json_report(args, [float(est)], alpha=str(alpha)))
        else:
            _emit(args, f"{float(est)}\n")
        return EXIT_OK
    if args.kind == "upsilon":
        series = experiments.upsilon(args.n_hi, args.b, args.c, workers=workers)
    elif args.kind == "upsilon-twin":
        series = experiments.upsilon_twin(args.n_hi, workers=workers)
    elif args.kind == "upsilon-v":
        series = experiments.upsilon_v(args.count, policy=policy)
    elif args.kind == "goldbach-constant":
        series = experiments.goldbach_constant_series(args.n_hi)
    elif args.kind == "gaps":
        series = [(n, a) for n, a, _ in experiments.gap_diagnostics(args.n_hi, policy=policy)]
    else:  # legendre
        series = experiments.legendre_series(args.n_hi, workers=workers)
    if args.format == "json":
        _emit(args, _json_report(args, [[x, y] for x, y in series], kind=args.kind))
    else:
        _emit(args, experiments.series_to_csv(series))
    return EXIT_OK


def _cmd_goldbach(args) -> int:
    g, claims, ap = experiments.goldbach_g(args.N, args.variant, policy=_policy(args))
    if args.format == "json":
        _emit(args, _json_report(args, [{"g": g, "claims": claims, "all_prime": ap}]))
    else:
        _emit(args, "g,claim_1,claim_2,all_prime\n" + f"{g},{claims[0]},{claims[1]},{ap}\n")
    return EXIT_OK


_DISPATCH = {
    "run": _cmd_run,
    "zeros": _cmd_zeros,
    "table": _cmd_table,
    "scan": _cmd_scan,
    "predict": _cmd_predict,
    "stats": _cmd_stats,
    "goldbach": _cmd_goldbach,
}


def dispatch(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # join "--tail -3,-13" into "--tail=-3,-13" so argparse does not read the
    # leading minus of the value as an option
    argv = list(argv)
    for i, tok in enumerate(argv[:-1]):
        if tok == "--tail":
            argv[i : i + 2] = [f"--tail={argv[i + 1]}"]
            break
    args = ap.parse_args(argv)
    try:
        return _DISPATCH[args.cmd](args)
    except (SpecParseError, ValueError, KeyError) as exc:
        print(f"gcdlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
