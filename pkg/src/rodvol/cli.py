"""Command-line front end.

Exit codes: 0 computed (possibly with applicability flags), 2 input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .contfrac import (
    ContinuedFraction,
    Rational,
    SearchExhausted,
    cf_length,
    default_cf,
    eval_cf,
    expand,
)
from .dehnfill import FillingError, nested_trace
from .rodmodel import ConfigError, Geometry, StackedConfig, classify, config_to_json, parse_config
from .volbounds import (
    V_OCT,
    V_TET,
    InapplicableBound,
    general_bounds,
    general_upper_table,
    intersection_functional,
    orthogonal_bounds,
    orthogonal_factor,
)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InputError(Exception):
    pass


def _fmt(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def make_report(command: list[str], input_bytes: bytes, result: dict) -> dict:
    return {
        "command": command,
        "input_digest": _digest(input_bytes),
        "result": _fmt(result),
        "version": __version__,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read_config(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_config(data.decode("utf-8", errors="replace")), data


def _parse_value(text: str):
    """A rational ``p/q`` or a continued fraction ``[...]``."""
    if text.strip().startswith("["):
        return ContinuedFraction.parse(text)
    return Rational.parse(text)


def _bounds_text(b: dict) -> str:
    lines = [
        f"  lower = {_fmt(b['lower'])}  ({b['lower_method']})",
        f"  upper = {_fmt(b['upper'])}  ({b['upper_method']})",
    ]
    extra = {k: b[k] for k in ("multiplier_tet", "multiplier_oct", "C", "sum_m") if b.get(k) is not None}
    if extra:
        lines.append("  " + "  ".join(f"{k}={v}" for k, v in extra.items()))
    if not b["applicable"]:
        lines.append("  (not applicable)")
    for note in b.get("notes", []):
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def cmd_classify(args) -> tuple[dict, bytes, str]:
    config, raw = _read_config(args.config)
    g = classify(config)
    result = {"config": config_to_json(config), **g.to_json()}
    return result, raw, f"{g.kind.value}: {g.reason}"


def cmd_bounds(args) -> tuple[dict, bytes, str]:
    config, raw = _read_config(args.config)
    geometry = classify(config)
    dirs = [tuple(d) for d in config.directions]
    result = {"config": config_to_json(config), "classification": geometry.to_json()}
    text = [f"classification: {geometry.kind.value}"]

    if args.optimize:
        chosen = None
    elif args.chosen is not None:
        if not 0 <= args.chosen < len(dirs):
            raise InputError(f"--chosen {args.chosen} out of range for {len(dirs)} rods")
        chosen = args.chosen
    else:
        chosen = next((i for i, d in enumerate(dirs) if d == (0, 0, 1)), 0)
    general = general_bounds(dirs, chosen, conditional=geometry.kind is Geometry.UNKNOWN)
    g = {**general.to_json(), "notes": list(general.notes)}
    if geometry.kind in (Geometry.SEIFERT_FIBRED, Geometry.TOROIDAL):
        g["applicable"] = False
        g["notes"].append(f"complement is {geometry.kind.value}, not hyperbolic")
    if args.optimize:
        g["table"] = general_upper_table(dirs)
    result["general"] = g
    text += ["general bounds:", _bounds_text(g)]

    want_orth = args.orthogonal or isinstance(config, StackedConfig)
    if want_orth:
        if not isinstance(config, StackedConfig) or len(config.vertical) != 1:
            o = {"applicable": False, "notes": ["needs a stacked configuration with one vertical rod"]}
            text += ["orthogonal bounds: not applicable (needs a stack with one vertical rod)"]
        else:
            cfs = [ContinuedFraction.parse(c) for c in args.cf] if args.cf else None
            try:
                ob = orthogonal_bounds(config, cfs)
                o = {**ob.to_json(), "notes": list(ob.notes), "cfs": [str(c) for c in ob.cfs]}
                text += ["orthogonal bounds:", _bounds_text(o),
                         "  expansions: " + " ".join(o["cfs"])]
            except FillingError as exc:
                o = {"applicable": False, "notes": [str(exc)]}
                text += [f"orthogonal bounds: not applicable ({exc})"]
        result["orthogonal"] = o
    return result, raw, "\n".join(text)


def cmd_cf(args) -> tuple[dict, bytes, str]:
    x = Rational.parse(args.rational)
    kwargs = {}
    if args.algo == "minimal":
        if args.bound is not None:
            kwargs["term_bound"] = args.bound
        if args.max_nodes is not None:
            kwargs["max_nodes"] = args.max_nodes
    try:
        cf = expand(x, args.algo, **kwargs)
    except SearchExhausted as exc:
        result = {"rational": str(x), "algo": args.algo, "exhausted": str(exc)}
        return result, args.rational.encode(), f"search exhausted: {exc}"
    result = {"rational": str(x), "algo": args.algo, "cf": str(cf), "terms": list(cf.terms),
              "length": cf_length(cf)}
    return result, args.rational.encode(), f"{x} = {cf}  (length {cf_length(cf)}, {args.algo})"


def cmd_trace(args) -> tuple[dict, bytes, str]:
    value = _parse_value(args.value)
    if isinstance(value, Rational):
        cf = default_cf(value)[0] if args.algo == "minimal" else expand(value, args.algo)
    else:
        cf = value
    trace = nested_trace(cf)
    result = {"cf": str(cf), "value": str(eval_cf(cf)), "trace": [list(v) for v in trace]}
    text = f"{cf} = {eval_cf(cf)}\n" + " -> ".join(f"({a},{b},{c})" for a, b, c in trace)
    return result, args.value.encode(), text


def _four_rod_rows(_args):
    dirs = [(2, 4, 3), (5, 7, 1), (9, 8, 6), (0, 0, 1)]
    table = general_upper_table(dirs)
    best = min(m for m in table if m is not None)
    return [
        {"rod": i, "direction": "(%d,%d,%d)" % d, "multiplier": m, "upper": 8 * V_TET * m,
         "is_min": m == best}
        for i, (d, m) in enumerate(zip(dirs, table))
    ]


def bad_upper_row(n: int) -> dict:
    stacked = StackedConfig.evenly_spaced([(n, 1), (0, 1)])
    ob = orthogonal_bounds(stacked, [ContinuedFraction([n]), ContinuedFraction([0])])
    dirs = [tuple(d) for d in stacked.directions]
    g = general_bounds(dirs, chosen=len(dirs) - 1)
    return {
        "n": n,
        "intersection": intersection_functional([(n, 1), (0, 1)]),
        "general_upper_multiplier_tet": g.multiplier_tet,
        "general_upper": g.upper,
        "sum_m": ob.sum_m,
        "orth_upper_multiplier_oct": ob.multiplier_oct,
        "orth_upper": ob.upper,
    }


def inf_vol_row(k: int) -> dict:
    cf = ContinuedFraction([k] * k)
    x = eval_cf(cf)
    stacked = StackedConfig.evenly_spaced([(x.p, x.q), (0, 1)])
    ob = orthogonal_bounds(stacked, [cf, ContinuedFraction([0])])
    return {
        "k": k,
        "p": x.p,
        "q": x.q,
        "sum_m": ob.sum_m,
        "C": ob.C,
        "lower": ob.lower,
        "upper": ob.upper,
        "per_k_constant": orthogonal_factor(6) * 2 * V_OCT,
    }


TABLE_KEYS = ("name", "n_min", "n_max", "k_min", "k_max")


def cmd_table(args) -> tuple[dict, bytes, str]:
    if args.name == "remark33":
        rows = _four_rod_rows(args)
    else:
        if args.name == "cor_bad_upper":
            lo, hi, fn = args.n_min, args.n_max, bad_upper_row
        else:
            lo, hi, fn = args.k_min, args.k_max, inf_vol_row
            if lo < 1:
                raise InputError("--k-min must be at least 1")
        if lo > hi:
            raise InputError(f"empty range {lo}..{hi}")
        with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
            rows = list(pool.map(fn, range(lo, hi + 1)))
    rows = [_fmt(r) for r in rows]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    csv_text = buf.getvalue()
    result = {"name": args.name, "rows": rows}
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.name}.csv").write_text(csv_text)
        (out / f"{args.name}.json").write_text(dumps(result))
    key = json.dumps({k: v for k, v in vars(args).items() if k in TABLE_KEYS}, sort_keys=True)
    return result, key.encode(), csv_text.rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rodvol", description="Rod complements in the 3-torus: "
                                     "classification, Dehn filling traces and volume bounds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="print the JSON report")

    p = sub.add_parser("classify", help="geometric type of a rod configuration")
    p.add_argument("config", help="path to a JSON configuration")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="volume bounds for a rod configuration")
    p.add_argument("config")
    p.add_argument("--optimize", action="store_true", help="minimize the general upper bound over rods")
    p.add_argument("--chosen", type=int, help="index of the rod sent to (0,0,1)")
    p.add_argument("--orthogonal", action="store_true", help="request the stacked-rod bounds")
    p.add_argument("--cf", action="append", metavar="CF",
                   help="expansion for each horizontal rod, top to bottom (repeat)")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("cf", help="continued fraction expansion of p/q")
    p.add_argument("rational")
    p.add_argument("--algo", choices=["euclid", "nicf", "minimal"], default="minimal")
    p.add_argument("--bound", type=int, help="term bound for --algo minimal")
    p.add_argument("--max-nodes", type=int, help="search budget for --algo minimal")
    common(p)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("trace", help="nested annular Dehn filling trace")
    p.add_argument("value", help="p/q or [c1;c2,...,cm]")
    p.add_argument("--algo", choices=["euclid", "nicf", "minimal"], default="minimal")
    common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("table", help="reproduce a worked example as CSV/JSON")
    p.add_argument("name", choices=["remark33", "cor_bad_upper", "cor_inf_vol"])
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--k-min", type=int, default=6)
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output-dir", help="also write <name>.csv and <name>.json here")
    common(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = list(sys.argv[1:] if argv is None else argv)
    try:
        result, raw, text = args.func(args)
    except (InputError, ConfigError, ValueError, ZeroDivisionError, InapplicableBound) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.json:
        sys.stdout.write(dumps(make_report(command, raw, result)))
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
