"""Command line entry point.

Every subcommand is turned into a :class:`RunConfig`, validated, and handed to
:func:`run`, which returns an exit status and the rendered report.  Exit codes:
0 success or PASS, 1 verification FAIL, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional

from . import asymptotics as asy
from . import charp
from .families import (FamilyEvaluator, FamilyIndexError, classify, family_from_json)
from .monomial import (AcolenError, bracket_power, colength, colon, generalized_bracket_power,
                       ideal_sum, intersect, is_m_primary, power, product)
from .newton import closure_of_power, integral_closure, newton_polyhedron, np_complement_volume
from .parsing import IdealSyntaxError, format_ideal, ideal_to_json, read_ideal
from .reports import FORMATS, SequenceReport, Table, bracket_example, emit_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    options: dict[str, Any] = field(default_factory=dict)
    format: str = "text"
    threads: int = 1


# option name -> (kind, default); kind is used for validation
_BOUND, _TOL, _INT, _STR, _FLOAT, _BOOL = "bound", "tol", "int", "str", "float", "bool"
REQUIRED = object()

SCHEMA: dict[str, dict[str, tuple[str, Any]]] = {
    "colength": {"ideal": (_STR, REQUIRED), "d": (_BOUND, None),
                 "method": (_STR, "box-enumeration"), "points": (_BOOL, False)},
    "ideal-op": {"op": (_STR, REQUIRED), "ideal": (_STR, REQUIRED), "other": (_STR, None),
                 "n": (_BOUND, None), "p": (_BOUND, None), "d": (_BOUND, None)},
    "classify": {"family": (_STR, REQUIRED), "bound": (_BOUND, REQUIRED),
                 "max_degree": (_INT, 2)},
    "sequence": {"family": (_STR, REQUIRED), "bound": (_BOUND, REQUIRED)},
    "limit": {"family": (_STR, REQUIRED), "bound": (_BOUND, REQUIRED), "tol": (_TOL, 1e-3)},
    "trajectory": {"family": (_STR, REQUIRED), "point": (_STR, REQUIRED),
                   "bound": (_BOUND, REQUIRED)},
    "height": {"family": (_STR, REQUIRED), "n_probe": (_BOUND, 512), "radius": (_FLOAT, 1.0),
               "steps": (_BOUND, 21), "tol": (_TOL, 1e-6)},
    "multiplicity": {"ideal": (_STR, REQUIRED), "kind": (_STR, "hilbert-samuel"),
                     "p": (_BOUND, None), "d": (_BOUND, None)},
    "verify minkowski": {"family_a": (_STR, REQUIRED), "family_b": (_STR, REQUIRED),
                         "bound": (_BOUND, REQUIRED), "tol": (_TOL, 1e-3),
                         "allow_unclassified": (_BOOL, False)},
    "verify volmult": {"family": (_STR, REQUIRED), "bound": (_BOUND, REQUIRED),
                       "tol": (_TOL, 1e-2)},
    "verify positivity": {"family": (_STR, REQUIRED), "bound": (_BOUND, REQUIRED),
                          "tol": (_TOL, 1e-3)},
    "verify brosowsky": {"family": (_STR, REQUIRED), "bound": (_BOUND, REQUIRED)},
    "verify okbasis": {"d": (_BOUND, REQUIRED), "p": (_BOUND, REQUIRED), "box": (_BOUND, 20)},
    "paper-example": {"p": (_BOUND, 2), "d": (_BOUND, 2), "emax": (_BOUND, 10)},
}


def validate(cfg: RunConfig) -> dict[str, Any]:
    """Fill defaults and check types; unknown keys are rejected."""
    schema = SCHEMA.get(cfg.command)
    if schema is None:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if cfg.format not in FORMATS:
        raise ConfigError(f"unknown format {cfg.format!r}")
    if not isinstance(cfg.threads, int) or cfg.threads < 1:
        raise ConfigError("threads must be a positive integer")
    extra = set(cfg.options) - set(schema)
    if extra:
        raise ConfigError(f"unknown option(s) for {cfg.command}: {', '.join(sorted(extra))}")
    out = {}
    for key, (kind, default) in schema.items():
        val = cfg.options.get(key)
        if val is None:
            if default is REQUIRED:
                raise ConfigError(f"{cfg.command}: missing required option {key}")
            out[key] = default
            continue
        if kind == _BOUND and (isinstance(val, bool) or not isinstance(val, int) or val < 1):
            raise ConfigError(f"{key} must be a positive integer, got {val!r}")
        if kind == _INT and (isinstance(val, bool) or not isinstance(val, int) or val < 0):
            raise ConfigError(f"{key} must be a non-negative integer, got {val!r}")
        if kind == _TOL and not (isinstance(val, (int, float)) and 0 < val < 1):
            raise ConfigError(f"{key} must lie in (0, 1), got {val!r}")
        if kind == _FLOAT and not (isinstance(val, (int, float)) and math.isfinite(val) and val >= 0):
            raise ConfigError(f"{key} must be a non-negative number, got {val!r}")
        out[key] = val
    return out


def config_from_json(obj: Any) -> RunConfig:
    if isinstance(obj, str):
        obj = json.loads(obj)
    allowed = {"command", "options", "format", "threads"}
    if not isinstance(obj, dict) or set(obj) - allowed or "command" not in obj:
        raise ConfigError(f"run config must be an object with keys {sorted(allowed)}")
    return RunConfig(obj["command"], dict(obj.get("options", {})), obj.get("format", "text"),
                     obj.get("threads", 1))


def _family(text: str) -> FamilyEvaluator:
    path = Path(text)
    raw = path.read_text() if not text.lstrip().startswith("{") and path.exists() else text
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"family is neither a JSON file nor inline JSON: {exc}") from None
    return FamilyEvaluator(family_from_json(obj))


def _point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(c.strip()) for c in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot read point {text!r}; use e.g. 3/10,3/10") from None


def _passed(obj: Any) -> Optional[bool]:
    if isinstance(obj, asy.Report):
        return obj.passed
    if isinstance(obj, Table):
        return obj.passed
    return None


# ---------------------------------------------------------------------------
# handlers


def _h_colength(o, threads):
    I = read_ideal(o["ideal"], o["d"])
    res = colength(I, o["method"], with_points=o["points"])
    out: dict[str, Any] = {"ideal": format_ideal(I), "colength": res.value if res.finite else "inf",
                           "method": res.method}
    if o["points"] and res.complement_points is not None:
        out["complement"] = [list(u) for u in res.complement_points]
    return out


_BINARY = {"sum": ideal_sum, "product": product, "intersect": intersect, "colon": colon}


def _h_ideal_op(o, threads):
    I = read_ideal(o["ideal"], o["d"])
    op = o["op"]
    if op in _BINARY:
        if o["other"] is None:
            raise ConfigError(f"{op} needs --other")
        result = _BINARY[op](I, read_ideal(o["other"], I.dim))
    elif op in ("power", "bracket", "closure-power", "generalized-bracket"):
        if o["n"] is None:
            raise ConfigError(f"{op} needs --n")
        if op == "power":
            result = power(I, o["n"])
        elif op == "bracket":
            result = bracket_power(I, o["n"])
        elif op == "closure-power":
            result = closure_of_power(I, o["n"])
        else:
            if o["p"] is None:
                raise ConfigError("generalized-bracket needs --p")
            result = generalized_bracket_power(I, o["n"], o["p"])
    elif op == "closure":
        result = integral_closure(I)
    elif op == "normalize":
        result = I
    elif op == "newton":
        NP = newton_polyhedron(I)
        out = {"ideal": format_ideal(I),
               "facets": None if NP.halfspaces is None else
               [{"normal": list(h.normal), "bound": h.bound} for h in NP.halfspaces]}
        if is_m_primary(I):
            out["complement_volume"] = np_complement_volume(I)
        return out
    else:
        raise ConfigError(f"unknown ideal operation {op!r}")
    return {"op": op, "result": format_ideal(result), "json": ideal_to_json(result)}


def _h_classify(o, threads):
    return classify(_family(o["family"]), o["bound"], o["max_degree"]).to_json()


def _h_sequence(o, threads):
    ev = _family(o["family"])
    pts = asy.colength_sequence(ev, asy.default_plan(ev, o["bound"]), threads)
    return SequenceReport(ev.spec.to_json(), pts)


def _h_limit(o, threads):
    ev = _family(o["family"])
    est = asy.limit_estimate(ev, asy.default_plan(ev, o["bound"]), o["tol"], threads=threads)
    return {"index": est.index, "window": f"{est.window[0]}..{est.window[-1]}",
            "samples": len(est.indices), "liminf_estimate": est.liminf_estimate,
            "limsup_estimate": est.limsup_estimate, "limit_estimate": est.limit_estimate,
            "limit_exact": est.limit_exact, "fit_residual": est.fit_residual,
            "rate_constant": est.rate_constant, "rate_holds": est.rate_holds,
            "converged": est.convergence_flag, "positivity_threshold": est.positivity_threshold}


def _h_trajectory(o, threads):
    ev = _family(o["family"])
    pt = _point(o["point"])
    if len(pt) != ev.d:
        raise ConfigError(f"point has {len(pt)} coordinates, family has dimension {ev.d}")
    plan = asy.default_plan(ev, o["bound"])
    t = asy.trajectory_classify(ev, pt, plan)
    return {"point": [str(c) for c in t.point], "window": f"{plan[0]}..{plan[-1]}",
            "bits": "".join(map(str, t.bits)), "classification": t.classification}


def _h_height(o, threads):
    ev = _family(o["family"])
    grid = asy.hyperplane_grid(ev.d, o["radius"], o["steps"])
    hs = asy.height_sample(ev, grid, o["n_probe"], o["tol"])
    audit = asy.lipschitz_audit(hs)
    rows = [[", ".join(f"{c:.6f}" for c in y), t, dist, "unbounded" if u else ""]
            for y, t, dist, u in zip(hs.points, hs.heights, hs.distances, hs.unbounded)]
    meta = {"level": hs.level, "direction": list(hs.direction), "c3": audit.c3,
            "max_ratio": audit.max_ratio, "max_excess": audit.max_excess}
    return Table("height samples", ["point", "t", "distance", "flag"], rows, meta, audit.passed)


def _h_multiplicity(o, threads):
    I = read_ideal(o["ideal"], o["d"])
    if o["kind"] == "hilbert-samuel":
        return {"ideal": format_ideal(I), "hilbert_samuel": asy.hilbert_samuel(I)}
    if o["kind"] == "hilbert-kunz":
        if o["p"] is None:
            raise ConfigError("hilbert-kunz needs --p")
        return {"ideal": format_ideal(I), "hilbert_kunz": asy.hilbert_kunz(I, o["p"])}
    raise ConfigError(f"unknown multiplicity kind {o['kind']!r}")


def _h_minkowski(o, threads):
    return asy.verify_minkowski(_family(o["family_a"]), _family(o["family_b"]), o["bound"],
                                o["tol"], require_classification=not o["allow_unclassified"])


def _h_volmult(o, threads):
    return asy.verify_volume_multiplicity(_family(o["family"]), o["bound"], o["tol"])


def _h_positivity(o, threads):
    return asy.verify_positivity(_family(o["family"]), o["bound"], o["tol"])


def _h_brosowsky(o, threads):
    return asy.verify_brosowsky(_family(o["family"]), o["bound"])


def _h_okbasis(o, threads):
    B = charp.ok_basis(o["d"], o["p"])
    ok = charp.verify_ok_basis(B, o["box"])
    return asy.Report("OK basis: p^d elements, distinct residues, unique digit decomposition",
                      f"u in [0,{o['box']}]^{o['d']}", len(B.elements), o["p"] ** o["d"], 0.0, ok,
                      {"c_witness": list(B.c_witness)})


def _h_example(o, threads):
    return bracket_example(o["p"], o["d"], o["emax"])


HANDLERS: dict[str, Callable] = {
    "colength": _h_colength, "ideal-op": _h_ideal_op, "classify": _h_classify,
    "sequence": _h_sequence, "limit": _h_limit, "trajectory": _h_trajectory,
    "height": _h_height, "multiplicity": _h_multiplicity,
    "verify minkowski": _h_minkowski, "verify volmult": _h_volmult,
    "verify positivity": _h_positivity, "verify brosowsky": _h_brosowsky,
    "verify okbasis": _h_okbasis, "paper-example": _h_example,
}


def run(cfg: RunConfig) -> tuple[int, bytes]:
    """Execute one command; returns (exit status, rendered output)."""
    threads = cfg.threads
    env = os.environ.get("ACOLEN_THREADS")
    try:
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ConfigError(f"ACOLEN_THREADS must be an integer, got {env!r}") from None
            cfg = RunConfig(cfg.command, cfg.options, cfg.format, threads)
        opts = validate(cfg)
        result = HANDLERS[cfg.command](opts, threads)
        body = emit_report(result, cfg.format)
    except (ConfigError, IdealSyntaxError, FamilyIndexError, AcolenError, ValueError) as exc:
        return EXIT_INPUT, f"error: {exc}\n".encode()
    return (EXIT_FAIL if _passed(result) is False else EXIT_OK), body


# ---------------------------------------------------------------------------
# argparse


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads (ACOLEN_THREADS overrides)")

    def bound_args(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--n", dest="bound", type=int, help="largest natural index N")
        g.add_argument("--e", dest="bound", type=int, help="largest exponent E (q = p^E)")

    top = argparse.ArgumentParser(prog="acolen",
                                  description="Colength asymptotics of monomial ideal families")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colength", parents=[common], help="l(R/I)")
    p.add_argument("--ideal", required=True, help='literal like "x1^2, x2^2" or JSON')
    p.add_argument("--d", type=int)
    p.add_argument("--method", choices=["box-enumeration", "inclusion-exclusion"],
                   default="box-enumeration")
    p.add_argument("--points", action="store_true", help="list the complement exponents")

    p = sub.add_parser("ideal-op", parents=[common], help="operations on ideals")
    p.add_argument("op", choices=["sum", "product", "intersect", "colon", "power", "bracket",
                                  "generalized-bracket", "closure", "closure-power", "newton",
                                  "normalize"])
    p.add_argument("--ideal", required=True)
    p.add_argument("--other")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)

    p = sub.add_parser("classify", parents=[common], help="family classification checks")
    p.add_argument("--family", required=True, help="FamilySpec JSON file or inline JSON")
    bound_args(p)
    p.add_argument("--max-degree", type=int, default=2)

    for name, helptext in (("sequence", "exact a_n table"), ("limit", "liminf/limsup/limit")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--family", required=True)
        bound_args(p)
        if name == "limit":
            p.add_argument("--tol", type=float, default=1e-3)

    p = sub.add_parser("trajectory", parents=[common], help="membership of [x]_n across n")
    p.add_argument("--family", required=True)
    p.add_argument("--point", required=True, help="rational coordinates, e.g. 3/10,3/10")
    bound_args(p)

    p = sub.add_parser("height", parents=[common], help="height function samples")
    p.add_argument("--family", required=True)
    p.add_argument("--n-probe", type=int, default=512)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("multiplicity", parents=[common], help="e(I) or e_HK(I)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--kind", choices=["hilbert-samuel", "hilbert-kunz"], default="hilbert-samuel")
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)

    p = sub.add_parser("verify", help="verification harnesses")
    vsub = p.add_subparsers(dest="check", required=True)
    q = vsub.add_parser("minkowski", parents=[common])
    q.add_argument("--family-a", required=True)
    q.add_argument("--family-b", required=True)
    bound_args(q)
    q.add_argument("--tol", type=float, default=1e-3)
    q.add_argument("--allow-unclassified", action="store_true", default=None,
                   help="compare limits even when no weak grading witness is found")
    for name, tol in (("volmult", 1e-2), ("positivity", 1e-3), ("brosowsky", None)):
        q = vsub.add_parser(name, parents=[common])
        q.add_argument("--family", required=True)
        bound_args(q)
        if tol is not None:
            q.add_argument("--tol", type=float, default=tol)
    q = vsub.add_parser("okbasis", parents=[common])
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--box", type=int, default=20)

    p = sub.add_parser("paper-example", parents=[common],
                       help="closed-form check for l(R/m^[p^e-1])")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--emax", type=int, default=10)

    p = sub.add_parser("run", help="execute a JSON run config")
    p.add_argument("config", help="path to a JSON file with command/options/format/threads")
    return top


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.command == "run":
        return config_from_json(Path(ns.config).read_text())
    command = ns.command if ns.command != "verify" else f"verify {ns.check}"
    skip = {"command", "check", "format", "threads"}
    opts = {k: v for k, v in vars(ns).items() if k not in skip and v is not None}
    return RunConfig(command, opts, ns.format, ns.threads)


def main(argv: Optional[list[str]] = None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    code, body = run(cfg)
    stream = sys.stderr.buffer if code == EXIT_INPUT else sys.stdout.buffer
    stream.write(body)
    stream.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
