"""Families of monomial ideals indexed by n in N or by q = p^e.

A :class:`FamilySpec` is a declarative description (it round-trips through
JSON); a :class:`FamilyEvaluator` turns it into ideals and memoizes them.
The classification helpers test the defining containments of graded,
p- and F-graded families on a finite range of indices.
"""
from __future__ import annotations

import ast
import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence, Union

from .monomial import (AcolenError, Exponent, MonomialIdeal, NotMPrimaryError, _make_stair,
                       bracket_power, colon, contains_ideal, generalized_bracket_power,
                       ideal_sum, intersect, is_m_primary, is_prime, min_degree, normalize,
                       power, power_containment_threshold, product)
from .newton import closure_of_power, integral_closure
from .parsing import ideal_to_json, read_ideal

KINDS = ("powers", "bracket", "generalized_bracket", "floor_power", "colon_of",
         "closure_of", "product_of", "sum_of", "intersect_of", "explicit")


class FamilyIndexError(AcolenError, ValueError):
    """Index not valid for the family (e.g. not a power of p)."""


# ---------------------------------------------------------------------------
# exponent templates such as "n^2" or "2*n+1"

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow, ast.Mod: operator.mod}


def _compile_expr(text: str):
    tree = ast.parse(str(text).replace("^", "**"), mode="eval")

    def check(node):
        if isinstance(node, ast.Expression):
            return check(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return
        if isinstance(node, ast.Name) and node.id == "n":
            return
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            check(node.left)
            check(node.right)
            return
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            check(node.operand)
            return
        raise ValueError(f"unsupported exponent expression {text!r}")

    check(tree)
    return tree


def eval_expr(text: str, n: int) -> int:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            return node.value
        if isinstance(node, ast.Name):
            return n
        if isinstance(node, ast.UnaryOp):
            return -ev(node.operand)
        return _BINOPS[type(node.op)](ev(node.left), ev(node.right))

    return int(ev(_compile_expr(text)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    d: int
    index: str = "natural"
    p: Optional[int] = None
    ideal: Optional[MonomialIdeal] = None
    alpha: Optional[Fraction] = None
    prime: Optional[int] = None
    base: Optional["FamilySpec"] = None
    other: Optional["FamilySpec"] = None
    members: tuple[MonomialIdeal, ...] = ()
    start: int = 1
    template: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.index not in ("natural", "p-power"):
            raise ValueError(f"unknown index kind {self.index!r}")
        if self.index == "p-power" and (self.p is None or not is_prime(self.p)):
            raise ValueError("p-power families need a prime p")
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError("alpha must be positive")
        for child in (self.base, self.other):
            if child is not None and (child.index, child.p, child.d) != (self.index, self.p, self.d):
                raise ValueError("composite families need matching index kind and dimension")
        if self.ideal is not None and self.ideal.dim != self.d:
            raise ValueError("ideal dimension does not match family dimension")

    # JSON ------------------------------------------------------------------
    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"index": self.index}
        if self.index == "p-power":
            out["p"] = self.p
        out["kind"] = self.kind
        out["d"] = self.d
        if self.kind in ("powers", "bracket", "generalized_bracket", "floor_power"):
            out["ideal"] = ideal_to_json(self.ideal)
        if self.kind == "generalized_bracket" and self.index == "natural":
            out["prime"] = self.prime
        if self.kind == "floor_power":
            out["alpha"] = f"{self.alpha.numerator}/{self.alpha.denominator}"
        if self.kind == "colon_of":
            out["base"] = self.base.to_json()
            out["ideal"] = ideal_to_json(self.ideal)
        if self.kind == "closure_of":
            out["base"] = self.base.to_json()
        if self.kind in ("product_of", "sum_of", "intersect_of"):
            out["left"] = self.base.to_json()
            out["right"] = self.other.to_json()
        if self.kind == "explicit":
            if self.template:
                out["template"] = [list(t) for t in self.template]
            else:
                out["ideals"] = [ideal_to_json(I) for I in self.members]
                out["start"] = self.start
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


_ALLOWED_KEYS = {"index", "p", "kind", "d", "ideal", "prime", "alpha", "base", "left",
                 "right", "ideals", "start", "template"}


def family_from_json(obj: Any, _inherit: Optional[dict] = None) -> FamilySpec:
    """Build a FamilySpec from its JSON form (string or decoded object)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ValueError("family JSON must be an object")
    unknown = set(obj) - _ALLOWED_KEYS
    if unknown:
        raise ValueError(f"unknown family keys: {sorted(unknown)}")
    inherit = _inherit or {}
    index = obj.get("index", inherit.get("index", "natural"))
    p = obj.get("p", inherit.get("p"))
    kind = obj["kind"]
    d = obj.get("d", inherit.get("d"))
    ctx = {"index": index, "p": p, "d": d}
    kw: dict[str, Any] = {"kind": kind, "index": index, "p": p}
    # children first, so a bare ideal like "x1" can take their dimension
    if "base" in obj:
        kw["base"] = family_from_json(obj["base"], ctx)
    if "left" in obj:
        kw["base"] = family_from_json(obj["left"], ctx)
        kw["other"] = family_from_json(obj["right"], ctx)
    if d is None and "base" in kw:
        d = kw["base"].d
    ideal = read_ideal(obj["ideal"], d) if "ideal" in obj else None
    if d is None and ideal is not None:
        d = ideal.dim
    kw["ideal"] = ideal
    if kind == "generalized_bracket":
        kw["prime"] = obj.get("prime", p)
    if kind == "floor_power":
        kw["alpha"] = Fraction(str(obj["alpha"]))
    if kind == "explicit":
        if "template" in obj:
            kw["template"] = tuple(tuple(str(x) for x in row) for row in obj["template"])
            for row in kw["template"]:
                for x in row:
                    _compile_expr(x)
        else:
            kw["members"] = tuple(read_ideal(I, d) for I in obj["ideals"])
            kw["start"] = int(obj.get("start", 0 if index == "p-power" else 1))
    if d is None:
        for child in (kw.get("base"), kw.get("other")):
            if child is not None:
                d = child.d
        if d is None and kw.get("members"):
            d = kw["members"][0].dim
        if d is None and kw.get("template"):
            d = len(kw["template"][0])
    if d is None:
        raise ValueError("family dimension could not be determined")
    return FamilySpec(d=int(d), **kw)


# convenience constructors ---------------------------------------------------

def _ix(index, p):
    return {"index": index, "p": p}


def powers(I: MonomialIdeal, index: str = "natural", p: Optional[int] = None) -> FamilySpec:
    return FamilySpec("powers", I.dim, ideal=I, **_ix(index, p))


def bracket(I: MonomialIdeal, index: str = "p-power", p: Optional[int] = 2) -> FamilySpec:
    return FamilySpec("bracket", I.dim, ideal=I, **_ix(index, p if index == "p-power" else None))


def generalized_bracket(I: MonomialIdeal, p: int, index: str = "natural") -> FamilySpec:
    return FamilySpec("generalized_bracket", I.dim, ideal=I, prime=p,
                      **_ix(index, p if index == "p-power" else None))


def floor_power(I: MonomialIdeal, alpha, index: str = "natural",
                p: Optional[int] = None) -> FamilySpec:
    return FamilySpec("floor_power", I.dim, ideal=I, alpha=Fraction(alpha), **_ix(index, p))


def colon_of(base: FamilySpec, J: MonomialIdeal) -> FamilySpec:
    return FamilySpec("colon_of", base.d, ideal=J, base=base, **_ix(base.index, base.p))


def closure_of(base: FamilySpec) -> FamilySpec:
    return FamilySpec("closure_of", base.d, base=base, **_ix(base.index, base.p))


def product_of(F: FamilySpec, G: FamilySpec) -> FamilySpec:
    return FamilySpec("product_of", F.d, base=F, other=G, **_ix(F.index, F.p))


def sum_of(F: FamilySpec, G: FamilySpec) -> FamilySpec:
    return FamilySpec("sum_of", F.d, base=F, other=G, **_ix(F.index, F.p))


def intersect_of(F: FamilySpec, G: FamilySpec) -> FamilySpec:
    return FamilySpec("intersect_of", F.d, base=F, other=G, **_ix(F.index, F.p))


def explicit(members: Sequence[MonomialIdeal], start: Optional[int] = None,
             index: str = "natural", p: Optional[int] = None) -> FamilySpec:
    """Finite list of ideals.  Position k holds I_(start+k), or I_(p^(start+k))
    for p-power families; start defaults to 1, resp. 0."""
    if start is None:
        start = 0 if index == "p-power" else 1
    return FamilySpec("explicit", members[0].dim, members=tuple(members), start=start,
                      **_ix(index, p))


def template(rows: Sequence[Sequence[Union[str, int]]], index: str = "natural",
             p: Optional[int] = None) -> FamilySpec:
    """Family whose generators have exponents given by expressions in n."""
    rows = tuple(tuple(str(x) for x in row) for row in rows)
    for row in rows:
        for x in row:
            _compile_expr(x)
    return FamilySpec("explicit", len(rows[0]), template=rows, **_ix(index, p))


# ---------------------------------------------------------------------------


def p_exponent(q: int, p: int) -> Optional[int]:
    """e with p^e = q, or None."""
    if q < 1:
        return None
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return e if q == 1 else None


class FamilyEvaluator:
    """Evaluates I_n for a FamilySpec, caching every computed member."""

    def __init__(self, spec: FamilySpec):
        self.spec = spec
        self.memo: dict[int, MonomialIdeal] = {}
        self._children: dict[str, FamilyEvaluator] = {}
        self._powers: list[MonomialIdeal] = []
        self._stairs: dict[int, Any] = {}

    @property
    def d(self) -> int:
        return self.spec.d

    def indices(self, bound: int) -> list[int]:
        """Valid indices >= 1 up to ``bound`` (N for natural, E for p-power)."""
        if self.spec.index == "natural":
            return list(range(1, bound + 1))
        return [self.spec.p ** e for e in range(bound + 1)]

    def check_index(self, n: int) -> None:
        if n < 0:
            raise FamilyIndexError(f"negative index {n}")
        if self.spec.index == "p-power" and p_exponent(n, self.spec.p) is None:
            raise FamilyIndexError(f"{n} is not a power of {self.spec.p}")
        if self.spec.kind == "explicit" and not self.spec.template:
            k = self._position(n)
            if not 0 <= k < len(self.spec.members):
                raise FamilyIndexError(f"index {n} outside the explicit list")

    def _position(self, n: int) -> int:
        if self.spec.index == "p-power":
            return p_exponent(n, self.spec.p) - self.spec.start
        return n - self.spec.start

    def _child(self, name: str) -> "FamilyEvaluator":
        ev = self._children.get(name)
        if ev is None:
            ev = FamilyEvaluator(getattr(self.spec, name))
            self._children[name] = ev
        return ev

    def _power(self, k: int) -> MonomialIdeal:
        table = self._powers
        if not table:
            table.append(MonomialIdeal.unit(self.d))
        while len(table) <= k:
            table.append(product(table[-1], self.spec.ideal))
        return table[k]

    def __call__(self, n: int) -> MonomialIdeal:
        return self.evaluate(n)

    def evaluate(self, n: int) -> MonomialIdeal:
        hit = self.memo.get(n)
        if hit is not None:
            return hit
        self.check_index(n)
        value = self._compute(n)
        self.memo[n] = value
        return value

    def _compute(self, n: int) -> MonomialIdeal:
        s = self.spec
        k = s.kind
        if k == "powers":
            return self._power(n)
        if k == "bracket":
            return bracket_power(s.ideal, n) if n else MonomialIdeal.unit(s.d)
        if k == "generalized_bracket":
            if n == 0:
                return MonomialIdeal.unit(s.d)
            if s.index == "p-power":
                return bracket_power(s.ideal, n)
            # I^[n] = I^(n mod p) * (I^[n // p])^[p]
            p = s.prime
            high, low = divmod(n, p)
            if high == 0:
                return self._power(low)
            return product(self._power(low), bracket_power(self.evaluate(high), p))
        if k == "floor_power":
            return self._power(math.floor(n * s.alpha))
        if k == "colon_of":
            return colon(self._child("base").evaluate(n), s.ideal)
        if k == "closure_of":
            b = s.base
            if b.kind == "powers" and is_m_primary(b.ideal):
                return closure_of_power(b.ideal, n)
            return integral_closure(self._child("base").evaluate(n))
        if k in ("product_of", "sum_of", "intersect_of"):
            op = {"product_of": product, "sum_of": ideal_sum, "intersect_of": intersect}[k]
            return op(self._child("base").evaluate(n), self._child("other").evaluate(n))
        if s.template:
            return normalize([tuple(eval_expr(x, n) for x in row) for row in s.template], s.d)
        return s.members[self._position(n)]

    def fresh(self, n: int) -> MonomialIdeal:
        """Evaluate straight from the definitions, bypassing every cache."""
        self.check_index(n)
        s = self.spec
        k = s.kind
        if k == "powers":
            return power(s.ideal, n)
        if k == "generalized_bracket":
            return generalized_bracket_power(s.ideal, n, s.prime or s.p)
        if k == "floor_power":
            return power(s.ideal, math.floor(n * s.alpha))
        if k == "colon_of":
            return colon(FamilyEvaluator(s.base).fresh(n), s.ideal)
        if k == "closure_of":
            return integral_closure(FamilyEvaluator(s.base).fresh(n))
        if k in ("product_of", "sum_of", "intersect_of"):
            op = {"product_of": product, "sum_of": ideal_sum, "intersect_of": intersect}[k]
            return op(FamilyEvaluator(s.base).fresh(n), FamilyEvaluator(s.other).fresh(n))
        return FamilyEvaluator(s)._compute(n)

    def stair(self, n: int):
        """Membership structure for I_n (cached)."""
        st = self._stairs.get(n)
        if st is None:
            st = _make_stair(self.d)
            for g in self.evaluate(n).gens:
                st.add(g)
            self._stairs[n] = st
        return st

    def contains_all(self, n: int, gens, shift: Optional[Sequence[int]] = None) -> bool:
        st = self.stair(n)
        if shift is None or not any(shift):
            return all(st.contains(g) for g in gens)
        return all(st.contains(tuple(a + b for a, b in zip(g, shift))) for g in gens)


def as_evaluator(F: Union[FamilySpec, FamilyEvaluator]) -> FamilyEvaluator:
    return F if isinstance(F, FamilyEvaluator) else FamilyEvaluator(F)


# ---------------------------------------------------------------------------
# classification


def monomials_by_degree(d: int, max_degree: int) -> Iterator[Exponent]:
    """All exponent vectors of degree 0, 1, ..., max_degree; within a degree in
    descending lexicographic order (so x1 comes before x2)."""
    def rec(k, slots):
        if slots == 1:
            yield (k,)
            return
        for first in range(k, -1, -1):
            for rest in rec(k - first, slots - 1):
                yield (first,) + rest

    for k in range(max_degree + 1):
        yield from rec(k, d)


@dataclass
class ContainmentCheck:
    """Outcome of testing a family of containments c * LHS(i) in RHS(i).

    ``holds`` is the strict statement (c = 1), ``counterexample`` the first
    index tuple where it fails, ``witness`` the first multiplier found by the
    degree-bounded search (None when the search was exhausted), and
    ``evidence`` the range that was checked.
    """
    name: str
    holds: bool
    counterexample: Optional[tuple]
    witness: Optional[Exponent]
    evidence: str
    search_degree: int

    def __bool__(self) -> bool:
        return self.holds


def _run_check(name, cases, d, max_degree, evidence) -> ContainmentCheck:
    # cases: list of (label, lhs_gens, contains(gens, shift) -> bool)
    counter = None
    for label, gens, test in cases:
        if not test(gens, None):
            counter = label
            break
    if counter is None:
        return ContainmentCheck(name, True, None, (0,) * d, evidence, max_degree)
    witness = None
    for c in monomials_by_degree(d, max_degree):
        if not any(c):
            continue
        if all(test(gens, c) for _, gens, test in cases):
            witness = c
            break
    return ContainmentCheck(name, False, counter, witness, evidence, max_degree)


def _need(ev: FamilyEvaluator, index: str):
    if ev.spec.index != index:
        raise ValueError(f"this check needs a {index} family")


def _graded_cases(ev: FamilyEvaluator, N: int):
    lo = 1 if ev.spec.kind != "explicit" or ev.spec.template else ev.spec.start
    cases = []
    for total in range(2 * lo, N + 1):
        for m in range(lo, total - lo + 1):
            n = total - m
            if m > n:
                break
            gens = product(ev(m), ev(n)).gens
            cases.append(((m, n), gens, lambda g, c, t=total: ev.contains_all(t, g, c)))
    return cases


def verify_graded_up_to(F, N: int, max_degree: int = 0) -> ContainmentCheck:
    """I_m I_n in I_{m+n} for all m, n >= 1 with m + n <= N."""
    ev = as_evaluator(F)
    _need(ev, "natural")
    return _run_check("graded", _graded_cases(ev, N), ev.d, max_degree, f"m+n<={N}")


def verify_inverse_graded_up_to(F, N: int) -> ContainmentCheck:
    """I_{m+n} in I_m I_n for all m, n >= 1 with m + n <= N."""
    ev = as_evaluator(F)
    _need(ev, "natural")
    counter = None
    for total in range(2, N + 1):
        for m in range(1, total // 2 + 1):
            if not contains_ideal(product(ev(m), ev(total - m)), ev(total)):
                counter = (m, total - m)
                break
        if counter:
            break
    return ContainmentCheck("inverse-graded", counter is None, counter,
                            (0,) * ev.d if counter is None else None, f"m+n<={N}", 0)


def find_weakly_graded_witness(F, N: int, D: int) -> Optional[Exponent]:
    """First monomial c (by degree, then lex) with c I_m I_n in I_{m+n} for
    all m + n <= N, or None if none of degree <= D works (inconclusive)."""
    ev = as_evaluator(F)
    _need(ev, "natural")
    return _run_check("weakly-graded", _graded_cases(ev, N), ev.d, D, f"m+n<={N}").witness


def verify_p_family_up_to(F, E: int, max_degree: int = 2) -> ContainmentCheck:
    """I_q^[p] in I_{pq} for q = p^e, e < E."""
    ev = as_evaluator(F)
    _need(ev, "p-power")
    p = ev.spec.p
    cases = []
    for e in range(E):
        q = p ** e
        gens = bracket_power(ev(q), p).gens
        cases.append(((q,), gens, lambda g, c, t=p * q: ev.contains_all(t, g, c)))
    return _run_check("p-family", cases, ev.d, max_degree, f"e<={E}")


def verify_inverse_p_family_up_to(F, E: int, max_degree: int = 2) -> ContainmentCheck:
    """I_{pq} in I_q^[p] for q = p^e, e < E."""
    ev = as_evaluator(F)
    _need(ev, "p-power")
    p = ev.spec.p
    cases = []
    for e in range(E):
        q = p ** e
        target = bracket_power(ev(q), p)
        st = _make_stair(ev.d)
        for g in target.gens:
            st.add(g)

        def test(g, c, st=st):
            if c is None:
                return all(st.contains(h) for h in g)
            return all(st.contains(tuple(a + b for a, b in zip(h, c))) for h in g)

        cases.append(((q,), ev(p * q).gens, test))
    return _run_check("inverse-p-family", cases, ev.d, max_degree, f"e<={E}")


def verify_F_graded_up_to(F, E: int, max_degree: int = 0) -> ContainmentCheck:
    """I_{q1}^[q2] I_{q2} in I_{q1 q2} for all q1 q2 <= p^E."""
    ev = as_evaluator(F)
    _need(ev, "p-power")
    p = ev.spec.p
    cases = []
    for e1 in range(E + 1):
        for e2 in range(E + 1 - e1):
            q1, q2 = p ** e1, p ** e2
            gens = product(bracket_power(ev(q1), q2), ev(q2)).gens
            cases.append(((q1, q2), gens, lambda g, c, t=q1 * q2: ev.contains_all(t, g, c)))
    return _run_check("F-graded", cases, ev.d, max_degree, f"q1*q2<={p ** E}")


# BBL / BAL --------------------------------------------------------------------


def _still_growing(values: Sequence[int]) -> bool:
    """Heuristic for an unbounded trend: over the upper half of the window the
    sequence never decreases and ends strictly higher than it started."""
    if len(values) < 4:
        return False
    tail = values[len(values) // 2:]
    return all(a <= b for a, b in zip(tail, tail[1:])) and tail[-1] > tail[0]


@dataclass
class LinearBound:
    constant: Optional[int]
    per_index: list[tuple[int, int]]
    unbounded_trend: bool
    evidence: str


def bbl_profile(F, N: int, indices: Optional[Sequence[int]] = None) -> LinearBound:
    """Per-index smallest c with m^(c n) in I_n, for n = 1..N (or q = p^e,
    e <= N for p-power families), or for the given ``indices``."""
    ev = as_evaluator(F)
    per = []
    idx = ev.indices(N) if indices is None else [n for n in indices if n >= 1]
    for n in idx:
        I = ev(n)
        if not is_m_primary(I):
            raise NotMPrimaryError(f"member at index {n} is not m-primary")
        per.append((n, -(-power_containment_threshold(I) // n)))
    values = [c for _, c in per]
    trend = _still_growing(values)
    const = None if trend or not values else max(values)
    if indices is not None:
        evidence = f"{len(idx)} sampled indices <= {idx[-1] if idx else 0}"
    else:
        evidence = f"n<={N}" if ev.spec.index == "natural" else f"e<={N}"
    return LinearBound(const, per, trend, evidence)


def find_bbl_constant(F, N: int) -> Optional[int]:
    """Smallest c with c n >= power_containment_threshold(I_n) for the tested
    n; None when the required constant keeps growing across the window."""
    return bbl_profile(F, N).constant


def bal_profile(F, N: int) -> LinearBound:
    ev = as_evaluator(F)
    if ev.spec.index == "natural":
        per = []
        for n in ev.indices(N):
            delta = min_degree(ev(n))
            per.append((n, n // (delta + 1) + 1 if delta != math.inf else 1))
        values = [c for _, c in per]
        trend = _still_growing(values)
        const = None if trend or not values else max(values)
        return LinearBound(const, per, trend, f"n<={N}")
    p = ev.spec.p
    d = ev.d
    per = []
    found = None
    for k in range(N):
        q0 = p ** k
        ok = True
        for e in range(N - k + 1):
            q = p ** e
            target = bracket_power(MonomialIdeal.maximal(d), q)
            if not _contained(ev(q * q0), target):
                ok = False
                break
        per.append((q0, int(ok)))
        if ok:
            found = q0
            break
    return LinearBound(found, per, found is None, f"e<={N}")


def _contained(J: MonomialIdeal, I: MonomialIdeal) -> bool:
    return contains_ideal(I, J)


def check_bal(F, N: int) -> Optional[int]:
    """Natural index: smallest c with min degree of I_n >= floor(n/c) on the
    window (None when that c keeps growing).  p-power index: smallest q0 with
    I_{q q0} in m^[q] for all tested q (at least q = p must be testable)."""
    return bal_profile(F, N).constant


@dataclass
class ClassificationReport:
    index: str
    checked_bound: int
    checks: dict[str, ContainmentCheck]
    bbl_constant: Optional[int]
    bal_constant: Optional[int]
    notes: list[str] = field(default_factory=list)

    def flag(self, name: str) -> bool:
        return self.checks[name].holds

    def witness(self, name: str) -> Optional[Exponent]:
        return self.checks[name].witness

    def to_json(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "checked_bound": self.checked_bound,
            "checks": {k: {"holds": v.holds,
                           "counterexample": list(v.counterexample) if v.counterexample else None,
                           "witness": list(v.witness) if v.witness is not None else None,
                           "evidence": v.evidence,
                           "search_degree": v.search_degree}
                       for k, v in self.checks.items()},
            "bbl_constant": self.bbl_constant,
            "bal_constant": self.bal_constant,
            "notes": self.notes,
        }


def classify(F, bound: int, max_degree: int = 2) -> ClassificationReport:
    ev = as_evaluator(F)
    checks: dict[str, ContainmentCheck] = {}
    notes = []
    if ev.spec.index == "natural":
        checks["graded"] = verify_graded_up_to(ev, bound, max_degree)
    else:
        checks["p-family"] = verify_p_family_up_to(ev, bound, max_degree)
        checks["inverse-p-family"] = verify_inverse_p_family_up_to(ev, bound, max_degree)
        checks["F-graded"] = verify_F_graded_up_to(ev, bound, 0)
    try:
        bbl = bbl_profile(ev, bound)
        bbl_c = bbl.constant
        if bbl.unbounded_trend:
            notes.append("BBL: required constant grows across the window")
    except NotMPrimaryError as exc:
        bbl_c = None
        notes.append(str(exc))
    bal = bal_profile(ev, bound)
    if bal.constant is None:
        notes.append("BAL: no constant found on the window")
    return ClassificationReport(ev.spec.index, bound, checks, bbl_c, bal.constant, notes)
