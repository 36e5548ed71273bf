"""Command-line front end.

Subcommands cover every solver: ``schedule`` (breakpoints and sweep data),
``code`` (one alpha instance), ``limited`` (length-capped codes), ``exp``
(two-parameter pay-off), ``waterfill`` (level characterization), ``extend``
(block-coding bounds), and ``ingest`` (counts to a distribution file).

Every subcommand has an object form (json) and a tabular form (csv),
selected by ``--format``; the default is whichever is natural for the
subcommand.  Exit status: 0 on success, 2 when a constraint is infeasible,
1 for input or parameter errors.  Output is deterministic: identical inputs
and flags produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .codes import default_alpha_grid, lengths_from_weights, optimal_code
from .distributions import ProbabilityVector, from_counts, load_distribution
from .errors import Infeasible, MergeCodeError, NoConvergence
from .exponential import payoff_t, solve_two_parameter
from .extension import extension_bounds
from .limited import limited_code
from .merging import build_schedule, merged_cardinality, weights_at
from .waterfilling import alpha_for_level, water_level, waterfill_weights

log = logging.getLogger("mergecode")

# 12 significant digits so plotted kinks land where they were computed
FLOAT_FMT = "%.12g"


def _fmt(x) -> str:
    return FLOAT_FMT % float(x)


def _jsonable(obj):
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return float(_fmt(obj))
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc, output: str | None) -> None:
    _emit(json.dumps(_jsonable(doc), indent=2) + "\n", output)


def _csv_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return _fmt(v)
    return str(v)


def _emit_rows(rows: list[dict], args) -> None:
    """One result table, as CSV lines or a JSON array of row objects."""
    if args.format == "json":
        _emit_json(rows, args.output)
        return
    header = list(rows[0]) if rows else []
    lines = [",".join(header)]
    lines += [",".join(_csv_cell(row[k]) for k in header) for row in rows]
    _emit("\n".join(lines) + "\n", args.output)


def _emit_object(doc: dict, rows: list[dict], args) -> None:
    """Object-shaped result with a tabular alternative for --format csv."""
    if args.format == "csv":
        _emit_rows(rows, args)
    else:
        _emit_json(doc, args.output)


def _load_input(args) -> ProbabilityVector:
    path = Path(args.input)
    if not path.exists():
        raise MergeCodeError(f"input file not found: {path}")
    p = load_distribution(
        path, radix_override=args.radix, drop_zeros=args.drop_zeros
    )
    log.info("loaded %d symbols, radix %d", p.size, p.radix)
    return p


def _labels_of(p: ProbabilityVector) -> tuple[str, ...]:
    return p.labels if p.labels is not None else tuple(
        str(i) for i in range(p.size)
    )


def _symbol_rows(p, alpha, weights, lengths) -> list[dict]:
    labels = _labels_of(p)
    return [
        {
            "alpha": float(alpha),
            "symbol_index": int(p.perm[i]),
            "label": labels[i],
            "weight": float(weights[i]),
            "real_length": float(lengths.real_lengths[i]),
            "int_length": int(lengths.int_lengths[i]),
        }
        for i in range(p.size)
    ]


def cmd_schedule(args) -> int:
    p = _load_input(args)
    schedule = build_schedule(p)
    if args.grid is None:
        rows = [
            {
                "k": k,
                "alpha_k": float(schedule.alphas[k]),
                "cardinality": int(schedule.card[k]),
                "wstar": float(schedule.wstar_at_breakpoint[k]),
                "slope": float(schedule.slope[k]),
            }
            for k in range(schedule.size)
        ]
    elif args.per_symbol:
        rows = []
        for a in default_alpha_grid(schedule, args.grid):
            w = weights_at(schedule, p, float(a))
            lengths = lengths_from_weights(w, p.radix)
            rows += _symbol_rows(p, float(a), w.weights, lengths)
    else:
        rows = []
        for a in default_alpha_grid(schedule, args.grid):
            _, _, report = optimal_code(p, float(a), schedule)
            rows.append({
                "alpha": report.alpha,
                "payoff": report.payoff,
                "avg_length": report.avg_length,
                "max_length": report.max_length,
                "entropy_w": report.entropy_w,
                "cardinality": merged_cardinality(schedule, float(a)),
            })
    _emit_rows(rows, args)
    return 0


def cmd_code(args) -> int:
    p = _load_input(args)
    w, lengths, report = optimal_code(p, args.alpha)
    doc = {
        "alpha": report.alpha,
        "radix": p.radix,
        "labels": list(_labels_of(p)),
        "perm": [int(i) for i in p.perm],
        "weights": w.weights,
        "lengths_real": lengths.real_lengths,
        "lengths_int": lengths.int_lengths,
        "payoff": report.payoff,
        "avg_length": report.avg_length,
        "max_length": report.max_length,
        "entropy_w": report.entropy_w,
        "entropy_p": report.entropy_p,
        "kraft_real": lengths.kraft_real,
        "kraft_int": lengths.kraft_int,
    }
    _emit_object(doc, _symbol_rows(p, args.alpha, w.weights, lengths), args)
    return 0


def cmd_limited(args) -> int:
    p = _load_input(args)
    try:
        result = limited_code(p, args.llim)
    except Infeasible as exc:
        message = f"minimum achievable max length is {_fmt(exc.min_achievable)}"
        print(message, file=sys.stderr)
        _emit_json({
            "feasible": False,
            "min_achievable_max_length": exc.min_achievable,
            "message": message,
        }, args.output)
        return 2
    doc = {
        "feasible": True,
        "alpha": result.alpha_hat,
        "lengths_real": result.lengths.real_lengths,
        "lengths_int": result.lengths.int_lengths,
        "avg_length": result.avg_length,
        "max_length": result.lengths.max_length,
    }
    rows = _symbol_rows(p, result.alpha_hat, result.weights.weights, result.lengths)
    _emit_object(doc, rows, args)
    return 0


def cmd_exp(args) -> int:
    p = _load_input(args)
    try:
        sol = solve_two_parameter(
            p, args.t, args.alpha, tol=args.tol, max_iter=args.max_iter
        )
        converged = True
    except NoConvergence as exc:
        log.warning("%s", exc)
        sol = exc.best
        converged = False
    report = payoff_t(sol.lengths, p, args.t, args.alpha)
    doc = {
        "t": sol.t,
        "alpha": sol.alpha,
        "converged": converged,
        "iterations": sol.iterations,
        "residual": sol.residual,
        "lengths_real": sol.lengths.real_lengths,
        "lengths_int": sol.lengths.int_lengths,
        "nu": sol.nu,
        "payoff_t": report.payoff_t,
        "exp_term": report.exp_term,
        "avg_length": report.avg_length,
        "renyi": report.renyi,
    }
    labels = _labels_of(p)
    rows = [
        {
            "t": sol.t,
            "alpha": sol.alpha,
            "symbol_index": int(p.perm[i]),
            "label": labels[i],
            "nu": float(sol.nu[i]),
            "real_length": float(sol.lengths.real_lengths[i]),
            "int_length": int(sol.lengths.int_lengths[i]),
        }
        for i in range(p.size)
    ]
    _emit_object(doc, rows, args)
    return 0


def cmd_waterfill(args) -> int:
    p = _load_input(args)
    if (args.alpha is None) == (args.level is None):
        raise MergeCodeError("waterfill needs exactly one of --alpha / --level")
    alpha = args.alpha if args.level is None else alpha_for_level(p, args.level)
    wl = water_level(p, alpha)
    w = waterfill_weights(p, alpha)
    doc = {
        "level": wl.level,
        "alpha": wl.alpha,
        "flooded_count": len(wl.flooded),
        "weights": w.weights,
    }
    labels = _labels_of(p)
    rows = [
        {
            "alpha": wl.alpha,
            "symbol_index": int(p.perm[i]),
            "label": labels[i],
            "weight": float(w.weights[i]),
            "flooded": i in wl.flooded,
        }
        for i in range(p.size)
    ]
    _emit_object(doc, rows, args)
    return 0


def cmd_extend(args) -> int:
    p = _load_input(args)
    rows = []
    for m in range(1, args.n + 1):
        report = extension_bounds(p, args.alpha, m)
        rows.append({
            "n": m,
            "lower": report.lower,
            "per_symbol": report.per_symbol_payoff,
            "upper": report.upper,
        })
    _emit_rows(rows, args)
    return 0


def cmd_ingest(args) -> int:
    path = Path(args.input)
    if not path.exists():
        raise MergeCodeError(f"input file not found: {path}")
    if args.raw:
        data = path.read_bytes()
        counts: dict[str, int] = {}
        for byte in data:
            key = f"0x{byte:02x}"
            counts[key] = counts.get(key, 0) + 1
        p = from_counts(counts, args.radix or 2)
    else:
        p = load_distribution(
            path, radix_override=args.radix, drop_zeros=args.drop_zeros
        )
    if p.dropped_labels:
        log.info("dropped zero-count symbols: %s", ", ".join(p.dropped_labels))
    labels = _labels_of(p)
    doc = {
        "radix": p.radix,
        "probabilities": p.probs,
        "labels": list(labels),
    }
    rows = [
        {"label": labels[i], "probability": float(p.probs[i])}
        for i in range(p.size)
    ]
    _emit_object(doc, rows, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mergecode",
        description="Optimal real-valued prefix-code lengths for "
        "max/average length trade-offs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--input", required=True, help="distribution JSON file")
        sp.add_argument("--output", help="write results here instead of stdout")
        sp.add_argument("--format", choices=["json", "csv"], default=fmt_default,
                        help=f"output format (default {fmt_default})")
        sp.add_argument("--radix", type=int, help="override the input radix")
        sp.add_argument("--drop-zeros", action="store_true",
                        help="strip zero-probability symbols instead of rejecting")

    sp = sub.add_parser("schedule", help="breakpoint table or alpha sweep")
    common(sp, "csv")
    sp.add_argument("--grid", type=int, nargs="?", const=1001,
                    help="sweep this many uniform alphas (plus breakpoints)")
    sp.add_argument("--per-symbol", action="store_true",
                    help="emit per-symbol weight/length rows instead of the curve")
    sp.set_defaults(func=cmd_schedule)

    sp = sub.add_parser("code", help="optimal code at one alpha")
    common(sp)
    sp.add_argument("--alpha", type=float, required=True)
    sp.set_defaults(func=cmd_code)

    sp = sub.add_parser("limited", help="minimum average length under a length cap")
    common(sp)
    sp.add_argument("--llim", type=float, required=True, help="maximum length cap")
    sp.set_defaults(func=cmd_limited)

    sp = sub.add_parser("exp", help="exponential/average two-parameter pay-off")
    common(sp)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=int, default=10_000)
    sp.set_defaults(func=cmd_exp)

    sp = sub.add_parser("waterfill", help="water-level solution")
    common(sp)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--level", type=float)
    sp.set_defaults(func=cmd_waterfill)

    sp = sub.add_parser("extend", help="block-coding pay-off bounds")
    common(sp, "csv")
    sp.add_argument("--n", type=int, required=True, help="largest block size")
    sp.add_argument("--alpha", type=float, required=True)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("ingest", help="turn counts (or a raw file) into a distribution")
    common(sp)
    sp.add_argument("--raw", action="store_true",
                    help="treat the input as raw bytes and count them")
    sp.set_defaults(func=cmd_ingest)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("MERGECODE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except MergeCodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
