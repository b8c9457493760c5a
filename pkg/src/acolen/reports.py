"""Report objects and their JSON / CSV / text renderings."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Optional, Sequence

from .asymptotics import Report, SequencePoint
from .monomial import (MonomialIdeal, bracket_power, colength_value, num_min_gens, power,
                       product)
from .parsing import format_ideal, ideal_to_json

FORMATS = ("json", "csv", "text")
SEQUENCE_HEADER = ["index", "colength", "a_n_num", "a_n_den"]


def decimal_string(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = max(50, len(str(x.numerator)) + digits + 5)
        q = Decimal(x.numerator) / Decimal(x.denominator)
        return str(q.quantize(Decimal(1).scaleb(-digits)))


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator, "decimal": decimal_string(x)}
    if isinstance(x, float):
        return x if math.isfinite(x) else str(x)
    if isinstance(x, MonomialIdeal):
        return ideal_to_json(x)
    if isinstance(x, Report):
        return report_dict(x)
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def report_dict(r: Report) -> dict[str, Any]:
    return {"claim": r.claim, "witness_range": r.witness_range, "lhs": jsonable(r.lhs),
            "rhs": jsonable(r.rhs), "tolerance": r.tolerance, "pass": r.passed,
            "details": jsonable(r.details)}


@dataclass
class Table:
    """Rows of plain values plus free-form metadata; ``passed`` is None when
    the table is informational."""
    title: str
    columns: list[str]
    rows: list[list[Any]]
    meta: dict[str, Any] = field(default_factory=dict)
    passed: Optional[bool] = None


@dataclass
class SequenceReport:
    family: dict[str, Any]
    points: list[SequencePoint]


def sequence_table(seq: SequenceReport) -> Table:
    rows = [[s.index, s.colength, s.value.numerator, s.value.denominator] for s in seq.points]
    return Table("sequence", SEQUENCE_HEADER, rows, {"family": seq.family})


def _cell(v: Any) -> str:
    if isinstance(v, Fraction):
        return str(v) if v.denominator == 1 else f"{v} ({decimal_string(v)})"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, MonomialIdeal):
        return format_ideal(v)
    if v is None:
        return "-"
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(jsonable(v))
    return str(v)


def _is_number(text: str) -> bool:
    try:
        Fraction(text.split(" ")[0])
    except (ValueError, ZeroDivisionError):
        return text in ("inf", "-")
    return True


def _aligned(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(columns)] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    # numbers right-aligned, everything else left-aligned
    numeric = [all(_is_number(r[i]) for r in cells[1:]) and len(cells) > 1
               for i in range(len(columns))]
    lines = ["  ".join(c.rjust(w) if num else c.ljust(w)
                       for c, w, num in zip(r, widths, numeric)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _status(passed: Optional[bool]) -> str:
    return {True: "PASS", False: "FAIL", None: "INCONCLUSIVE"}[passed]


def emit_report(report: Any, fmt: str) -> bytes:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if isinstance(report, SequenceReport):
        report = sequence_table(report)
    if fmt == "json":
        if isinstance(report, Table):
            obj: Any = {"title": report.title, "columns": report.columns,
                        "rows": jsonable(report.rows), "meta": jsonable(report.meta)}
            if report.passed is not None:
                obj["pass"] = report.passed
        else:
            obj = jsonable(report)
        return (json.dumps(obj, indent=2) + "\n").encode()
    if fmt == "csv":
        if not isinstance(report, Table):
            raise ValueError("csv output is only available for tabular results")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for row in report.rows:
            w.writerow([_csv_cell(v) for v in row])
        return buf.getvalue().encode()
    # text
    if isinstance(report, Table):
        out = [report.title, _aligned(report.columns, report.rows)]
        for k, v in report.meta.items():
            out.append(f"{k}: {_cell(v)}")
        if report.passed is not None:
            out.append(_status(report.passed))
        return ("\n".join(out) + "\n").encode()
    if isinstance(report, Report):
        rows = [["claim", report.claim], ["range", report.witness_range],
                ["lhs", report.lhs], ["rhs", report.rhs], ["tolerance", report.tolerance]]
        rows += [[k, v] for k, v in report.details.items()]
        rows.append(["result", _status(report.passed)])
        return (_aligned(["field", "value"], rows) + "\n").encode()
    if isinstance(report, dict):
        return (_aligned(["field", "value"], [[k, v] for k, v in report.items()]) + "\n").encode()
    return (_cell(report) + "\n").encode()


def _csv_cell(v: Any) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return _cell(v)


def bracket_example(p: int, d: int, emax: int) -> Table:
    """Colengths of m^[p^e - 1] and of its last factor L = m^[(p-1) p^(e-1)],
    with minimal generator counts, against their closed forms."""
    A = math.comb(p + d - 2, d)
    B = math.comb(p + d - 2, d - 1)
    m = MonomialIdeal.maximal(d)
    base = power(m, p - 1)
    cur = MonomialIdeal.unit(d)
    rows = []
    ok = True
    for e in range(1, emax + 1):
        # m^[p^e - 1] = m^(p-1) * (m^[p^(e-1) - 1])^[p]
        cur = base if e == 1 else product(base, bracket_power(cur, p))
        n = p ** e - 1
        ell = colength_value(cur)
        want = A * (p ** (e * d) - B ** e) // (p ** d - B)
        last = bracket_power(base, p ** (e - 1))
        ell_last = colength_value(last)
        want_last = p ** ((e - 1) * d) * A
        mu, mu_want = num_min_gens(cur), B ** e
        good = ell == want and ell_last == want_last and mu == mu_want
        ok &= good
        rows.append([e, n, ell, want, Fraction(ell, n ** d), mu, mu_want, ell_last, want_last,
                     "ok" if good else "MISMATCH"])
    cols = ["e", "n", "colength", "closed_form", "a_n", "mu", "mu_closed_form",
            "colength_L", "colength_L_closed_form", "check"]
    return Table(f"m^[p^e-1], p={p}, d={d}", cols, rows, {}, ok)

