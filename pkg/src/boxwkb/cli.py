"""Command-line front end.

Potentials are written ``power:p=2,s=1`` or ``free`` and boxes ``sym:b=1`` or
``half:b=1``. A linear field ``V = F x`` maps onto the unit-strength problem
through ``E(F, b) = F**(2/3) * E(1, b * F**(1/3))``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .maf import maf_eigenvalue, maf_residual
from .model import BoxMode, BoxwkbError, DomainError, Geometry, Method, Parity, Potential
from .oracle import MeshSpec, oracle_convergence_report, oracle_eigenvalue
from .tables import TableSpec, render, run_table
from .wkb import wkb_eigenvalue, wkb_residual

DEFAULTS = {
    "tol": 1e-10,
    "mesh_points": 2048,
    "digits": 6,
    "format": "csv",
    "jobs": 1,
    "deterministic": False,
}
_CONFIG_TYPES = {
    "tol": float,
    "mesh_points": int,
    "digits": int,
    "format": str,
    "jobs": int,
    "deterministic": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
}
SOLVE_FIELDS = ("method", "parity", "n", "energy", "residual", "regime",
                "bracket_lo", "bracket_hi", "evaluations")


class UsageError(Exception):
    pass


def _key_values(text: str, what: str) -> dict[str, float]:
    out = {}
    for item in filter(None, text.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"malformed {what} parameter {item!r}; expected key=value")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise UsageError(f"{what} parameter {key!r} is not a number: {value!r}") from None
    return out


def parse_potential(text: str) -> Potential:
    kind, _, rest = text.partition(":")
    if kind == "free":
        if rest:
            raise UsageError("the free potential takes no parameters")
        return Potential.free()
    if kind != "power":
        raise UsageError(f"unknown potential kind {kind!r}; expected 'power' or 'free'")
    params = _key_values(rest, "potential")
    unknown = set(params) - {"p", "s"}
    if unknown:
        raise UsageError(f"unknown potential parameters {sorted(unknown)}")
    if "p" not in params:
        raise UsageError("power potential needs p=<exponent>")
    try:
        return Potential(strength=params.get("s", 1.0), exponent=params["p"])
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def parse_box(text: str) -> Geometry:
    kind, _, rest = text.partition(":")
    modes = {"sym": BoxMode.SYMMETRIC, "half": BoxMode.HALF_LINE}
    if kind not in modes:
        raise UsageError(f"unknown box kind {kind!r}; expected 'sym' or 'half'")
    params = _key_values(rest, "box")
    if set(params) != {"b"}:
        raise UsageError("box needs exactly one parameter, b=<size>")
    try:
        return Geometry(modes[kind], params["b"])
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def load_config(path: str) -> dict:
    """Read ``key=value`` lines; ``#`` starts a comment, unknown keys are errors."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    config = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        if key not in _CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            config[key] = _CONFIG_TYPES[key](value.strip())
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key!r}: {value.strip()!r}") from None
    return config


def _settings(args) -> dict:
    """Flags beat the config file, which beats the built-in defaults."""
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(load_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            merged[key] = value
    if not merged["tol"] > 0:
        raise UsageError(f"--tol must be > 0, got {merged['tol']}")
    if not 1 <= merged["digits"] <= 12:
        raise UsageError(f"--digits must lie in [1, 12], got {merged['digits']}")
    if merged["format"] not in ("csv", "json", "md"):
        raise UsageError(f"unknown format {merged['format']!r}")
    if merged["jobs"] < 1:
        raise UsageError(f"--jobs must be >= 1, got {merged['jobs']}")
    if merged["mesh_points"] < 64:
        raise UsageError(f"--mesh-points must be >= 64, got {merged['mesh_points']}")
    return merged


def _problem(args):
    pot = parse_potential(args.pot)
    geo = parse_box(args.box)
    if args.parity is None:
        parity = Parity.HALF_LINE if geo.mode is BoxMode.HALF_LINE else Parity.SYMMETRIC
    else:
        parity = Parity(args.parity)
    if parity not in geo.parities:
        raise UsageError(f"parity {parity.value!r} does not apply to a {geo.mode.value!r} box")
    method = Method(args.method)
    if method is Method.MAF and pot.is_free:
        raise UsageError("the MAF method needs a turning point; use wkb or oracle for the free box")
    return pot, geo, parity, method


def _records(fields, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows[0] if len(rows) == 1 else rows, indent=2) + "\n"
    cells = [["" if r[f] is None else str(r[f]) for f in fields] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        writer.writerows(cells)
        return buf.getvalue()
    lines = ["| " + " | ".join(fields) + " |", "|" + "|".join("---" for _ in fields) + "|"]
    lines.extend("| " + " | ".join(c) + " |" for c in cells)
    return "\n".join(lines) + "\n"


def _fmt(value: float, digits: int) -> float:
    return float(f"{value:.{digits}g}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> None:
    cfg = _settings(args)
    pot, geo, parity, method = _problem(args)
    if args.n < 0:
        raise UsageError(f"--n must be >= 0, got {args.n}")
    if method is Method.WKB:
        result = wkb_eigenvalue(pot, geo, parity, args.n, cfg["tol"])
    elif method is Method.MAF:
        result = maf_eigenvalue(pot, geo, parity, args.n, cfg["tol"])
    else:
        result = oracle_eigenvalue(pot, geo, parity, args.n, MeshSpec(cfg["mesh_points"]))
    d = cfg["digits"]
    record = {
        "method": result.method.value,
        "parity": result.parity.value,
        "n": result.index,
        "energy": _fmt(result.energy, d),
        "residual": _fmt(result.residual, 3),
        "regime": result.regime.value,
        "bracket_lo": _fmt(result.bracket[0], d),
        "bracket_hi": _fmt(result.bracket[1], d),
        "evaluations": result.evaluations,
    }
    _emit(_records(SOLVE_FIELDS, [record], cfg["format"]), args.out)


def cmd_scan(args) -> None:
    cfg = _settings(args)
    pot, geo, parity, method = _problem(args)
    if method is Method.ORACLE:
        raise UsageError("scan needs a quantization function; choose --method wkb or maf")
    if not 0 < args.e_min < args.e_max:
        raise UsageError("need 0 < --e-min < --e-max")
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    residual = wkb_residual if method is Method.WKB else maf_residual
    d = cfg["digits"]
    rows = []
    previous = None
    for energy in np.linspace(args.e_min, args.e_max, args.points):
        value = residual(pot, geo, parity, float(energy))
        flip = previous is not None and (previous > 0) != (value > 0)
        rows.append({"energy": _fmt(energy, d), "residual": _fmt(value, d),
                     "sign_change": int(flip)})
        previous = value
    _emit(_records(("energy", "residual", "sign_change"), rows, cfg["format"]), args.out)


def cmd_table(args) -> None:
    cfg = _settings(args)
    methods = tuple(Method(m) for m in args.method) if args.method else None
    try:
        spec = TableSpec.published(args.table, b_values=args.b) if methods is None else \
            TableSpec.published(args.table, methods=methods, b_values=args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_table(spec, tol=cfg["tol"], mesh_points=cfg["mesh_points"],
                       deterministic=cfg["deterministic"], jobs=cfg["jobs"])
    _emit(render(report, cfg["format"], cfg["digits"]), args.out)


def cmd_convergence(args) -> None:
    cfg = _settings(args)
    pot = parse_potential(args.pot)
    geo = parse_box(args.box)
    try:
        meshes = [MeshSpec(int(p)) for p in args.meshes.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --meshes: {exc}") from None
    if args.level < 0:
        raise UsageError(f"--level must be >= 0, got {args.level}")
    try:
        report = oracle_convergence_report(pot, geo, args.level, meshes)
    except ValueError as exc:
        if isinstance(exc, BoxwkbError):
            raise
        raise UsageError(str(exc)) from None
    d = cfg["digits"]
    rows = []
    for i, (h, e) in enumerate(report.points):
        order = report.orders[i - 2] if i >= 2 else None
        rows.append({"points": meshes[i].points, "h": _fmt(h, d), "energy": _fmt(e, d),
                     "order": None if order is None or math.isnan(order) else _fmt(order, 4)})
    text = _records(("points", "h", "energy", "order"), rows, cfg["format"])
    if cfg["format"] != "json":
        text += f"# extrapolated={_fmt(report.extrapolated, d)}\n"
    _emit(text, args.out)
    for message in report.warnings:
        print(f"warning: {message}", file=sys.stderr)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="root tolerance (default 1e-10)")
    p.add_argument("--mesh-points", dest="mesh_points", type=int, default=None,
                   help="oracle interior mesh points (default 2048)")
    p.add_argument("--format", choices=("csv", "json", "md"), default=None)
    p.add_argument("--digits", type=int, default=None, help="significant digits, 1..12 (default 6)")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.add_argument("--config", default=None, help="key=value file overriding defaults")


def _problem_args(p: argparse.ArgumentParser, with_method: bool = True) -> None:
    p.add_argument("--pot", required=True, help="power:p=<exp>,s=<strength> or free")
    p.add_argument("--box", required=True, help="sym:b=<half-width> or half:b=<width>")
    if with_method:
        p.add_argument("--method", choices=("wkb", "maf", "oracle"), default="wkb")
        p.add_argument("--parity", choices=("sym", "anti", "half"), default=None,
                       help="defaults to sym for a symmetric box and half for a half-line box")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boxwkb", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="one eigenvalue")
    _problem_args(p)
    p.add_argument("--n", type=int, default=0, help="state index within the parity class")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="dump a quantization function over an energy grid")
    _problem_args(p)
    p.add_argument("--e-min", dest="e_min", type=float, required=True)
    p.add_argument("--e-max", dest="e_max", type=float, required=True)
    p.add_argument("--points", type=int, default=200)
    _common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("table", help="regenerate one of the reference tables")
    p.add_argument("table", choices=("T1", "T2", "T3"))
    p.add_argument("--method", action="append", choices=("wkb", "maf", "oracle"),
                   help="restrict to these methods (repeatable; default all)")
    p.add_argument("--b", type=float, nargs="+", default=None, help="restrict to these rows")
    p.add_argument("--deterministic", action="store_true", help="omit the timestamp")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default 1)")
    _common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("oracle-convergence", help="oracle eigenvalue against mesh size")
    _problem_args(p, with_method=False)
    p.add_argument("--level", type=int, default=0, help="whole-box level (node count)")
    p.add_argument("--meshes", default="256,512,1024,2048", help="comma-separated point counts")
    _common(p)
    p.set_defaults(func=cmd_convergence)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"boxwkb: error: {exc}", file=sys.stderr)
        return 2
    except (BoxwkbError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # request outside what the solver settings can resolve
        parser.print_usage(sys.stderr)
        print(f"boxwkb: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
