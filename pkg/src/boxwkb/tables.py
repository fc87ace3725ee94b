"""Declarative reproduction tables and their CSV / JSON / markdown emitters."""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources

from .maf import maf_eigenvalue
from .model import BoxMode, BoxwkbError, Geometry, Method, Parity, Potential
from .oracle import MeshSpec, oracle_eigenvalue
from .wkb import wkb_eigenvalue

CSV_COLUMNS = ("table", "b", "parity", "n", "method", "energy", "scaled_energy",
               "residual", "regime", "reference", "deviation")
E1_INF = math.pi ** 2 / 8.0
REFERENCE_COLUMN = {Method.WKB: "WKB", Method.MAF: "MAF", Method.ORACLE: "exact"}
ALL_METHODS = (Method.WKB, Method.MAF, Method.ORACLE)

_CANONICAL = {
    "T1": dict(potential=Potential(1.0, 2.0), mode=BoxMode.SYMMETRIC,
               b_values=(0.5, 1.0, 1.5, 2.0, 3.0, 5.0),
               states=((Parity.ANTISYMMETRIC, 0),), unit_scale=1.0),
    "T2": dict(potential=Potential(1.0, 4.0), mode=BoxMode.SYMMETRIC, b_values=(1.0,),
               states=((Parity.SYMMETRIC, 0), (Parity.ANTISYMMETRIC, 0),
                       (Parity.SYMMETRIC, 1), (Parity.ANTISYMMETRIC, 1)),
               unit_scale=E1_INF),
    "T3": dict(potential=Potential(1.0, 1.0), mode=BoxMode.HALF_LINE,
               b_values=(0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0),
               states=((Parity.HALF_LINE, 0),), unit_scale=1.0),
}


@dataclass(frozen=True)
class TableSpec:
    table_id: str
    potential: Potential
    mode: BoxMode
    b_values: tuple[float, ...]
    states: tuple[tuple[Parity, int], ...]
    unit_scale: float
    methods: tuple[Method, ...] = ALL_METHODS

    @classmethod
    def published(cls, table_id: str, methods=ALL_METHODS, b_values=None) -> "TableSpec":
        """One of the three published tables, optionally on a subset of b."""
        if table_id not in _CANONICAL:
            raise ValueError(f"unknown table {table_id!r}; expected one of {sorted(_CANONICAL)}")
        base = dict(_CANONICAL[table_id])
        if b_values is not None:
            b_values = tuple(float(b) for b in b_values)
            extra = set(b_values) - set(base["b_values"])
            if extra:
                raise ValueError(f"b values {sorted(extra)} are not rows of {table_id}")
            base["b_values"] = b_values
        return cls(table_id=table_id, methods=tuple(methods), **base)


@dataclass
class TableRow:
    table: str
    b: float
    parity: Parity
    n: int
    level: int
    method: Method
    energy: float | None
    residual: float | None
    regime: str
    unit_scale: float
    reference: float | None
    error: str | None = None

    @property
    def scaled_energy(self) -> float | None:
        return None if self.energy is None else self.energy / self.unit_scale

    @property
    def deviation(self) -> float | None:
        if self.scaled_energy is None or self.reference is None:
            return None
        return self.scaled_energy - self.reference


@dataclass
class TableReport:
    spec: TableSpec
    rows: list[TableRow]
    metadata: dict = field(default_factory=dict)


def load_published_values() -> dict[tuple[str, float, int, str], float]:
    """Published values keyed by (table, b, level, column)."""
    text = resources.files("boxwkb").joinpath("data/published_values.txt").read_text()
    values = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        table, b, state, column, value = line.split(",")
        values[(table, float(b), int(state), column)] = float(value)
    return values


def _level(mode: BoxMode, parity: Parity, n: int) -> int:
    if mode is BoxMode.HALF_LINE:
        return n
    return 2 * n + (parity is Parity.ANTISYMMETRIC)


def _solve_cell(args):
    spec, b, parity, n, method, tol, mesh_points = args
    geo = Geometry(spec.mode, b)
    try:
        if method is Method.WKB:
            result = wkb_eigenvalue(spec.potential, geo, parity, n, tol)
        elif method is Method.MAF:
            result = maf_eigenvalue(spec.potential, geo, parity, n, tol)
        else:
            result = oracle_eigenvalue(spec.potential, geo, parity, n, MeshSpec(mesh_points))
    except (BoxwkbError, ArithmeticError, ValueError) as exc:
        return None, None, f"error:{type(exc).__name__}", f"{type(exc).__name__}: {exc}"
    return result.energy, result.residual, result.regime.value, None


def config_digest(spec: TableSpec, tol: float, mesh_points: int) -> str:
    payload = {
        "spec": {
            "table_id": spec.table_id,
            "potential": [spec.potential.strength, spec.potential.exponent],
            "mode": spec.mode.value,
            "b_values": list(spec.b_values),
            "states": [[p.value, n] for p, n in spec.states],
            "unit_scale": spec.unit_scale,
            "methods": [m.value for m in spec.methods],
        },
        "tol": tol,
        "mesh_points": mesh_points,
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def run_table(spec: TableSpec, tol: float = 1e-10, mesh_points: int = 2048,
              deterministic: bool = False, jobs: int = 1) -> TableReport:
    """Solve every (b, state, method) cell of ``spec``.

    Cell failures are recorded in the row and never abort the table. Rows
    come back in declaration order whatever ``jobs`` is.
    """
    published = load_published_values()
    cells = [(spec, b, parity, n, method, tol, mesh_points)
             for b in spec.b_values
             for parity, n in spec.states
             for method in spec.methods]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            solved = list(pool.map(_solve_cell, cells))
    else:
        solved = [_solve_cell(c) for c in cells]
    rows = []
    for (_, b, parity, n, method, _, _), (energy, residual, regime, error) in zip(cells, solved):
        level = _level(spec.mode, parity, n)
        rows.append(TableRow(
            table=spec.table_id, b=b, parity=parity, n=n, level=level, method=method,
            energy=energy, residual=residual, regime=regime, unit_scale=spec.unit_scale,
            reference=published.get((spec.table_id, b, level, REFERENCE_COLUMN[method])),
            error=error,
        ))
    metadata = {
        "table": spec.table_id,
        "tol": tol,
        "mesh_points": mesh_points,
        "unit_scale": spec.unit_scale,
        "config_digest": config_digest(spec, tol, mesh_points),
    }
    if not deterministic:
        metadata["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return TableReport(spec=spec, rows=rows, metadata=metadata)


def _num(value: float | None, digits: int) -> str:
    if value is None:
        return ""
    return f"{value:.{digits}g}"


def row_fields(row: TableRow, digits: int = 6) -> dict[str, str]:
    """Formatted payload of one row; shared by every emitter."""
    return {
        "table": row.table,
        "b": f"{row.b:g}",
        "parity": row.parity.value,
        "n": str(row.n),
        "method": row.method.value,
        "energy": _num(row.energy, digits),
        "scaled_energy": _num(row.scaled_energy, digits),
        "residual": _num(row.residual, 3),
        "regime": row.regime,
        "reference": "" if row.reference is None else f"{row.reference:g}",
        "deviation": _num(row.deviation, 3),
    }


def to_csv(report: TableReport, digits: int = 6) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        fields = row_fields(row, digits)
        writer.writerow([fields[c] for c in CSV_COLUMNS])
    for key, value in report.metadata.items():
        buf.write(f"# {key}={value}\n")
    return buf.getvalue()


def to_json(report: TableReport, digits: int = 6) -> str:
    numeric = {"b", "energy", "scaled_energy", "residual", "reference", "deviation"}
    rows = []
    for row in report.rows:
        fields = row_fields(row, digits)
        out = {}
        for c in CSV_COLUMNS:
            if c in numeric:
                out[c] = float(fields[c]) if fields[c] else None
            elif c == "n":
                out[c] = int(fields[c])
            else:
                out[c] = fields[c]
        if row.error:
            out["error"] = row.error
        rows.append(out)
    return json.dumps({"metadata": report.metadata, "rows": rows}, indent=2) + "\n"


def to_markdown(report: TableReport, digits: int = 6) -> str:
    lines = ["| " + " | ".join(CSV_COLUMNS) + " |",
             "|" + "|".join("---" for _ in CSV_COLUMNS) + "|"]
    for row in report.rows:
        fields = row_fields(row, digits)
        lines.append("| " + " | ".join(fields[c] for c in CSV_COLUMNS) + " |")
    lines.append("")
    lines.extend(f"- {key}: {value}" for key, value in report.metadata.items())
    return "\n".join(lines) + "\n"


EMITTERS = {"csv": to_csv, "json": to_json, "md": to_markdown}


def render(report: TableReport, fmt: str = "csv", digits: int = 6) -> str:
    if fmt not in EMITTERS:
        raise ValueError(f"unknown format {fmt!r}")
    if not 1 <= digits <= 12:
        raise ValueError(f"digits must lie in [1, 12], got {digits}")
    return EMITTERS[fmt](report, digits)


def report_as_dict(report: TableReport) -> dict:
    return {"metadata": report.metadata, "rows": [asdict(r) for r in report.rows]}
