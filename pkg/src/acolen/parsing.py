"""Reading and writing ideals: the ``x1^3, x1*x2, x2^2`` literal form and the
``{"d": 2, "gens": [[3, 0], [1, 1], [0, 2]]}`` JSON form."""
from __future__ import annotations

import json
import re
from typing import Any, Optional

from .monomial import MonomialIdeal, normalize


class IdealSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\^)|(\*)|(\d+)|(,)|(\())")


def parse_ideal(text: str, d: Optional[int] = None) -> MonomialIdeal:
    """Parse a comma separated list of monomials in x1..xd.

    ``*`` between factors is optional, ``1`` denotes the unit monomial and an
    empty string (or ``0``) the zero ideal.  Without ``d`` the dimension is the
    largest variable index that occurs.
    """
    stripped = text.strip()
    if stripped in ("", "0", "()", "(0)"):
        if d is None:
            raise IdealSyntaxError("dimension required for the zero ideal", text, 0)
        return MonomialIdeal.zero(d)
    if stripped.startswith("(") and stripped.endswith(")"):
        offset = text.index("(") + 1
        body = text[offset:text.rindex(")")]
    else:
        offset, body = 0, text
    monomials: list[dict[int, int]] = []
    pos = 0
    current: dict[int, int] = {}
    expect_factor = True
    n = len(body)
    while True:
        while pos < n and body[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(body, pos)
        if not m:
            raise IdealSyntaxError("unexpected character", text, offset + pos)
        if m.group(1):
            var = int(m.group(2))
            if var < 1:
                raise IdealSyntaxError("variables are numbered from 1", text, offset + m.start(2))
            pos = m.end()
            exp = 1
            m2 = _TOKEN.match(body, pos)
            if m2 and m2.group(3):
                m3 = _TOKEN.match(body, m2.end())
                if not (m3 and m3.group(5)):
                    raise IdealSyntaxError("exponent expected", text, offset + m2.end())
                exp = int(m3.group(5))
                pos = m3.end()
            current[var] = current.get(var, 0) + exp
            expect_factor = False
        elif m.group(4):
            if expect_factor:
                raise IdealSyntaxError("dangling '*'", text, offset + m.start(4))
            expect_factor = True
            pos = m.end()
        elif m.group(5):
            if m.group(5) != "1" or not expect_factor:
                raise IdealSyntaxError("only the constant 1 is allowed", text, offset + m.start(5))
            expect_factor = False
            pos = m.end()
        elif m.group(6):
            if expect_factor:
                raise IdealSyntaxError("empty monomial", text, offset + m.start(6))
            monomials.append(current)
            current = {}
            expect_factor = True
            pos = m.end()
        else:
            raise IdealSyntaxError("unexpected character", text, offset + m.start())
    if expect_factor:
        raise IdealSyntaxError("monomial expected", text, offset + n)
    monomials.append(current)
    top = max((v for mono in monomials for v in mono), default=0)
    if d is None:
        d = max(top, 1)
    elif top > d:
        raise IdealSyntaxError(f"variable x{top} exceeds dimension {d}", text, 0)
    vecs = [tuple(mono.get(i + 1, 0) for i in range(d)) for mono in monomials]
    return normalize(vecs, d)


def format_monomial(g) -> str:
    parts = []
    for i, c in enumerate(g):
        if c == 1:
            parts.append(f"x{i + 1}")
        elif c > 1:
            parts.append(f"x{i + 1}^{c}")
    return "*".join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    if I.is_zero:
        return "0"
    # descending lex reads naturally: x1^a first
    return ", ".join(format_monomial(g) for g in reversed(I.gens))


def ideal_to_json(I: MonomialIdeal) -> dict[str, Any]:
    return {"d": I.dim, "gens": [list(g) for g in I.gens]}


def ideal_from_json(obj: Any) -> MonomialIdeal:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or set(obj) - {"d", "gens"} or "gens" not in obj:
        raise ValueError('ideal JSON must be {"d": ..., "gens": [...]}')
    gens = obj["gens"]
    d = obj.get("d")
    if d is None:
        if not gens:
            raise ValueError("ideal JSON without gens needs d")
        d = len(gens[0])
    return normalize([tuple(g) for g in gens], int(d))


def read_ideal(value: Any, d: Optional[int] = None) -> MonomialIdeal:
    """Accept a literal, a JSON string, or an already decoded JSON object."""
    if isinstance(value, MonomialIdeal):
        return value
    if isinstance(value, dict):
        return ideal_from_json(value)
    text = str(value).strip()
    if text.startswith("{"):
        return ideal_from_json(text)
    return parse_ideal(text, d)
