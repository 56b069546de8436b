"""Command-line front end: estimate, optimize, sweep, verify, counts.

Exit codes: 0 success, 2 infeasible parameters, 3 verification failure,
64 usage error.  Identical invocation, config and seed produce byte-identical
CSV and JSON output.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from .builders import AlgoParams
from .counts import exact_counts, leading_order_counts
from .ftec import BelowThresholdError, CodeModel
from .optimizer import (DEFAULT_MODEL, N_E_TABLE, ROW_DEFAULTS,
                        NoFeasiblePointError, ResourceEstimate, SearchSpace,
                        SweepPoint, default_n_e, evaluate, optimize, sweep_n,
                        sweep_ratio)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_VERIFY = 3
EXIT_USAGE = 64

CONFIG_ENV = "QMEM_CONFIG"

CSV_COLUMNS = ("n", "n_e", "m", "w_e", "w_m", "d", "processor_qubits",
               "t_exp_seconds", "logical_qubits", "total_modes",
               "spatial_modes", "temporal_modes",
               "all_memory_correction_seconds")

DEFAULT_SWEEP_N = (6, 8, 16, 128, 256, 512, 829, 2048)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant reporting usage problems with exit code 64."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _physical_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=float, default=None,
                   help="physical error probability per qubit per cycle")
    p.add_argument("--pth", type=float, default=None,
                   help="fault-tolerance threshold")
    p.add_argument("--tc", type=float, default=None,
                   help="processor cycle time in seconds")
    p.add_argument("--fit-a", type=float, default=None, dest="fit_a")
    p.add_argument("--fit-alpha", type=float, default=None, dest="fit_alpha")
    p.add_argument("--fit-beta", type=float, default=None, dest="fit_beta")
    p.add_argument("--config", default=None, help="INI-style config file")
    p.add_argument("--format", choices=("human", "csv", "json"),
                   default="human")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verbose", "-v", action="count", default=0)


def build_parser() -> _Parser:
    parser = _Parser(prog="qmem", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="evaluate one parameter point")
    est.add_argument("--n", type=int, required=True)
    est.add_argument("--ne", type=int, default=None)
    est.add_argument("--we", type=int, default=None)
    est.add_argument("--wm", type=int, default=None)
    est.add_argument("--m", type=int, default=None)
    est.add_argument("--d", type=int, default=None)
    _physical_args(est)

    opt = sub.add_parser("optimize", help="grid search minimizing the volume")
    opt.add_argument("--n", type=int, required=True)
    opt.add_argument("--ne", type=int, default=None)
    _physical_args(opt)

    sw = sub.add_parser("sweep", help="optimize along an axis")
    sw.add_argument("--axis", choices=("n", "ratio"), required=True)
    sw.add_argument("--values", default=None,
                    help="comma-separated axis values")
    sw.add_argument("--n", type=int, default=2048,
                    help="modulus size for ratio sweeps")
    _physical_args(sw)

    ver = sub.add_parser("verify", help="run simulator-backed oracle suites")
    ver.add_argument("--suite", default="all",
                     choices=("ir", "adders", "lookup", "coset", "modexp",
                              "all"))
    ver.add_argument("--max-width", type=int, default=6)
    _physical_args(ver)

    cnt = sub.add_parser("counts", help="algorithm gate counts")
    cnt.add_argument("--n", type=int, required=True)
    cnt.add_argument("--ne", type=int, default=None)
    cnt.add_argument("--we", type=int, default=None)
    cnt.add_argument("--wm", type=int, default=None)
    cnt.add_argument("--m", type=int, default=None)
    cnt.add_argument("--mode", choices=("exact", "leading"), default="exact")
    _physical_args(cnt)
    return parser


# -- configuration -----------------------------------------------------------

_CONFIG_KEYS = {"tc": float, "p": float, "pth": float, "a": float,
                "alpha": float, "beta": float,
                "we_min": int, "we_max": int, "wm_min": int, "wm_max": int,
                "m_min": int, "m_max": int, "d_min": int, "d_max": int}


def load_config(path: str) -> dict:
    """Flat key/value INI document; a section header is optional."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
        items = {k: v for section in cp.sections()
                 for k, v in cp.items(section)}
        items.update(cp.defaults())
    except configparser.MissingSectionHeaderError:
        cp = configparser.ConfigParser()
        cp.read_string("[qmem]\n" + text)
        items = dict(cp.items("qmem"))
    out = {}
    for key, raw in items.items():
        key = key.strip().lower()
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r} in {path}")
        out[key] = _CONFIG_KEYS[key](raw)
    return out


def build_model(args: argparse.Namespace) -> tuple[CodeModel, SearchSpace]:
    cfg = {}
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        cfg = load_config(path)
    p = args.p if args.p is not None else cfg.get("p", 1e-3)
    p_th = args.pth if args.pth is not None else cfg.get("pth", 7.5e-3)
    tc = args.tc if args.tc is not None else cfg.get("tc", 1e-6)
    fit_a = args.fit_a if args.fit_a is not None else cfg.get("a", 0.033)
    alpha = (args.fit_alpha if args.fit_alpha is not None
             else cfg.get("alpha", 0.516))
    beta = (args.fit_beta if args.fit_beta is not None
            else cfg.get("beta", 0.822))
    model = CodeModel(d=getattr(args, "d", None) or 3, p=p, p_th=p_th,
                      coeff_a=fit_a, alpha=alpha, beta=beta,
                      t_c=Fraction(tc).limit_denominator(10**12))
    space = SearchSpace(
        w_e=tuple(range(cfg.get("we_min", 1), cfg.get("we_max", 6) + 1)),
        w_m=tuple(range(cfg.get("wm_min", 1), cfg.get("wm_max", 6) + 1)),
        m=tuple(range(cfg.get("m_min", 1), cfg.get("m_max", 64) + 1)),
        d=tuple(d for d in range(cfg.get("d_min", 3), cfg.get("d_max", 63) + 1)
                if d % 2 == 1),
    )
    return model, space


# -- output -------------------------------------------------------------------

def humanize_duration(seconds: float) -> str:
    """Paper granularity: microseconds up to days."""
    if seconds != seconds:  # NaN
        return "nan"
    if seconds < 1e-3:
        return f"{seconds * 1e6:.3g} us"
    if seconds < 1:
        return f"{seconds * 1e3:.3g} ms"
    if seconds < 60:
        return f"{seconds:.3g} s"
    if seconds < 3600:
        return f"{seconds / 60:.3g} min"
    if seconds < 24 * 3600:
        return f"{seconds / 3600:.3g} hours"
    return f"{seconds / (24 * 3600):.3g} days"


def estimate_row(est: ResourceEstimate) -> dict:
    p = est.params
    mem = est.memory
    return {
        "n": p.n, "n_e": p.n_e, "m": p.m, "w_e": p.w_e, "w_m": p.w_m,
        "d": est.d,
        "processor_qubits": est.processor_qubits,
        "t_exp_seconds": est.t_exp_seconds,
        "logical_qubits": est.logical_qubits,
        "total_modes": mem.total_modes,
        "spatial_modes": mem.spatial_modes,
        "temporal_modes": mem.temporal_modes,
        "all_memory_correction_seconds": float(mem.correction_seconds),
    }


def estimate_json(est: ResourceEstimate) -> dict:
    row = estimate_row(est)
    row.update({
        "p_logical": est.p_logical,
        "p_s": est.p_s,
        "t_seconds": float(est.t_seconds),
        "t_seconds_exact": str(est.t_seconds),
        "volume": est.volume,
        "logical_qubits_builder": est.logical_qubits_builder,
        "sequential_depth": est.cost.sequential_depth,
        "gates": {k: int(v) for k, v in
                  est.cost.converted.as_dict().items()},
        "max_storage_gap_seconds": est.memory.max_storage_gap_seconds,
        "all_memory_correction_seconds_exact":
            str(est.memory.correction_seconds),
    })
    return row


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows: Sequence[dict | None], notes: Sequence[str],
              out: TextIO) -> None:
    out.write(",".join(CSV_COLUMNS) + "\n")
    for row, note in zip(rows, notes):
        if row is None:
            out.write("," * (len(CSV_COLUMNS) - 1) + "\n")
        else:
            out.write(",".join(_csv_cell(row.get(c)) for c in CSV_COLUMNS)
                      + "\n")


def write_human(est: ResourceEstimate, out: TextIO) -> None:
    row = estimate_json(est)
    out.write(f"n = {row['n']}  n_e = {row['n_e']}  "
              f"(m = {row['m']}, w_e = {row['w_e']}, w_m = {row['w_m']}, "
              f"d = {row['d']})\n")
    out.write(f"  processor qubits      {row['processor_qubits']}\n")
    out.write(f"  logical qubits        {row['logical_qubits']}"
              f" (builder registers: {row['logical_qubits_builder']})\n")
    out.write(f"  success probability   {row['p_s']:.4f}"
              f"  (p_logical = {row['p_logical']:.3e})\n")
    out.write(f"  run-time / attempt    {humanize_duration(row['t_seconds'])}"
              f"  [{row['t_seconds']} s]\n")
    out.write(f"  expected run-time     "
              f"{humanize_duration(row['t_exp_seconds'])}"
              f"  [{row['t_exp_seconds']} s]\n")
    out.write(f"  volume                {row['volume']:.6e} qubit*s\n")
    out.write(f"  memory modes          {row['total_modes']} total = "
              f"{row['spatial_modes']} spatial x {row['temporal_modes']} "
              f"temporal\n")
    out.write(f"  memory correction     "
              f"{humanize_duration(row['all_memory_correction_seconds'])}"
              f"  [{row['all_memory_correction_seconds']} s]\n")
    gap = row["max_storage_gap_seconds"]
    if gap is not None:
        out.write(f"  max storage gap       {humanize_duration(gap)}"
                  f"  [{gap} s]\n")


# -- subcommands ---------------------------------------------------------------

def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_rows(args, points: list[SweepPoint]) -> str:
    import io

    buf = io.StringIO()
    if args.format == "csv":
        rows = [None if p.estimate is None else estimate_row(p.estimate)
                for p in points]
        write_csv(rows, [p.note for p in points], buf)
    elif args.format == "json":
        payload = [{"axis": p.axis, "value": p.value,
                    "estimate": None if p.estimate is None
                    else estimate_json(p.estimate),
                    "note": p.note}
                   for p in points]
        json.dump(payload, buf, indent=2, sort_keys=True)
        buf.write("\n")
    else:
        for p in points:
            if p.estimate is None:
                buf.write(f"{p.axis} = {p.value}: infeasible ({p.note})\n")
            else:
                write_human(p.estimate, buf)
                buf.write("\n")
    return buf.getvalue()


def cmd_estimate(args) -> int:
    model, _ = build_model(args)
    n = args.n
    n_e = args.ne if args.ne is not None else default_n_e(n)
    defaults = ROW_DEFAULTS.get(n)
    missing = [name for name, v in (("--m", args.m), ("--we", args.we),
                                    ("--wm", args.wm), ("--d", args.d))
               if v is None]
    if defaults is None and missing:
        raise UsageError(
            f"n={n} has no tabulated defaults; provide {' '.join(missing)} "
            "or use the optimize subcommand")
    m0, we0, wm0, d0 = defaults if defaults else (None,) * 4
    params = AlgoParams(n=n, n_e=n_e,
                        w_e=args.we if args.we is not None else we0,
                        w_m=args.wm if args.wm is not None else wm0,
                        m=args.m if args.m is not None else m0)
    d = args.d if args.d is not None else d0
    est = evaluate(params, model.with_distance(d))
    return _render_single(args, est)


def _render_single(args, est: ResourceEstimate) -> int:
    import io

    if args.format == "csv":
        buf = io.StringIO()
        write_csv([estimate_row(est)], [""], buf)
        _emit(args, buf.getvalue())
    elif args.format == "json":
        _emit(args, json.dumps(estimate_json(est), indent=2, sort_keys=True)
              + "\n")
    else:
        buf = io.StringIO()
        write_human(est, buf)
        _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_optimize(args) -> int:
    model, space = build_model(args)
    est = optimize(args.n, args.ne, model=model, space=space)
    return _render_single(args, est)


def cmd_sweep(args) -> int:
    model, space = build_model(args)
    if args.axis == "n":
        values = ([int(v) for v in args.values.split(",")] if args.values
                  else list(DEFAULT_SWEEP_N))
        points = sweep_n(values, model=model, space=space)
    else:
        if not args.values:
            raise UsageError("sweep --axis ratio requires --values")
        ratios = [float(v) for v in args.values.split(",")]
        points = sweep_ratio(ratios, n=args.n, model=model, space=space)
    _emit(args, _render_rows(args, points))
    return EXIT_OK if any(p.estimate for p in points) else EXIT_INFEASIBLE


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    lines = run_suites(names, max_width=args.max_width, seed=args.seed)
    buf = []
    for line in lines:
        status = "PASS" if line.passed else "FAIL"
        detail = f"  ({line.detail})" if line.detail else ""
        buf.append(f"[{status}] {line.name}{detail}\n")
    failed = sum(not line.passed for line in lines)
    buf.append(f"{len(lines) - failed}/{len(lines)} checks passed\n")
    _emit(args, "".join(buf))
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_counts(args) -> int:
    n = args.n
    n_e = args.ne if args.ne is not None else default_n_e(n)
    defaults = ROW_DEFAULTS.get(n, (max(1, n // 2), 3, 3, 3))
    params = AlgoParams(n=n, n_e=n_e,
                        w_e=args.we if args.we is not None else defaults[1],
                        w_m=args.wm if args.wm is not None else defaults[2],
                        m=args.m if args.m is not None else defaults[0])
    if args.mode == "leading":
        payload = {"mode": "leading",
                   "params": params.__dict__,
                   "counts": {k: str(v) for k, v in
                              leading_order_counts(params).as_dict().items()}}
    else:
        cost = exact_counts(params)
        payload = {"mode": "exact",
                   "params": params.__dict__,
                   "counts": {k: str(v) for k, v in
                              cost.counts.as_dict().items()},
                   "converted": {k: int(v) for k, v in
                                 cost.converted.as_dict().items()},
                   "sequential_depth": cost.sequential_depth}
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = [f"{k}: {v}" for k, v in payload["counts"].items()]
        if "sequential_depth" in payload:
            lines.append(f"sequential_depth: {payload['sequential_depth']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {"estimate": cmd_estimate, "optimize": cmd_optimize,
             "sweep": cmd_sweep, "verify": cmd_verify, "counts": cmd_counts}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verbose:
            warnings.simplefilter("always")
        return _COMMANDS[args.command](args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (BelowThresholdError, NoFeasiblePointError) as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
