"""Exact arithmetic on monomial ideals in k[x_1, ..., x_d].

An ideal is stored through its minimal generators: an antichain of exponent
tuples under the componentwise order, kept in lexicographic order.  The zero
ideal has no generators; the unit ideal is generated by the zero vector.

All counts are Python integers, so nothing here overflows or rounds.
"""
from __future__ import annotations

import math
import warnings
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterable, Optional, Sequence

Exponent = tuple[int, ...]


class AcolenError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatchError(AcolenError, ValueError):
    pass


class NotMPrimaryError(AcolenError, ValueError):
    pass


class ColonByZeroWarning(UserWarning):
    """Raised as a warning when a colon is taken by the zero ideal."""


# ---------------------------------------------------------------------------
# incremental membership structures used by the minimalization sweep


class _Stair0:
    __slots__ = ("hit",)

    def __init__(self):
        self.hit = False

    def contains(self, u):
        return self.hit

    def add(self, u):
        self.hit = True


class _Stair1:
    __slots__ = ("low",)

    def __init__(self):
        self.low = None

    def contains(self, u):
        return self.low is not None and self.low <= u[0]

    def add(self, u):
        if self.low is None or u[0] < self.low:
            self.low = u[0]


class _Stair2:
    """Planar staircase: xs ascending, ys strictly descending."""

    __slots__ = ("xs", "ys")

    def __init__(self):
        self.xs: list[int] = []
        self.ys: list[int] = []

    def contains(self, u):
        i = bisect_right(self.xs, u[0]) - 1
        return i >= 0 and self.ys[i] <= u[1]

    def add(self, u):
        if self.contains(u):
            return
        x, y = u[0], u[1]
        i = bisect_left(self.xs, x)
        j = i
        ys = self.ys
        while j < len(ys) and ys[j] >= y:
            j += 1
        self.xs[i:j] = [x]
        ys[i:j] = [y]

    def complement_count(self) -> int:
        xs, ys = self.xs, self.ys
        return sum((xs[i + 1] - xs[i]) * ys[i] for i in range(len(xs) - 1))


class _StairN:
    """Membership structure in dimension k >= 3, bucketed by last coordinate."""

    __slots__ = ("k", "keys", "buckets")

    def __init__(self, k: int):
        self.k = k
        self.keys: list[int] = []
        self.buckets: dict = {}

    def contains(self, u):
        last = u[-1]
        head = u[:-1]
        for key in self.keys:
            if key > last:
                break
            if self.buckets[key].contains(head):
                return True
        return False

    def add(self, u):
        if self.contains(u):
            return
        key = u[-1]
        bucket = self.buckets.get(key)
        if bucket is None:
            bucket = _make_stair(self.k - 1)
            self.buckets[key] = bucket
            insort(self.keys, key)
        bucket.add(u[:-1])


def _make_stair(k: int):
    if k == 0:
        return _Stair0()
    if k == 1:
        return _Stair1()
    if k == 2:
        return _Stair2()
    return _StairN(k)


def _last_major(v):
    return (v[-1],) + v[:-1]


def _minimalize(vecs: Iterable[Exponent], d: int) -> list[Exponent]:
    # Sweep in order of the last coordinate: any divisor of v is met before v,
    # so v is redundant iff its head is already covered by earlier heads.
    order = sorted(set(vecs), key=_last_major)
    stair = _make_stair(d - 1)
    out = []
    for v in order:
        head = v[:-1]
        if stair.contains(head):
            continue
        stair.add(head)
        out.append(v)
    out.sort()
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators.

    Build instances with :func:`normalize` (or :meth:`of`); the constructor
    trusts that ``gens`` is already a sorted antichain.
    """

    dim: int
    gens: tuple[Exponent, ...]
    char_p: Optional[int] = field(default=None, compare=False)

    @classmethod
    def of(cls, gens: Iterable[Sequence[int]], d: Optional[int] = None,
           char_p: Optional[int] = None) -> "MonomialIdeal":
        return normalize(gens, d, char_p=char_p)

    @classmethod
    def zero(cls, d: int) -> "MonomialIdeal":
        return cls(d, ())

    @classmethod
    def unit(cls, d: int) -> "MonomialIdeal":
        return cls(d, ((0,) * d,))

    @classmethod
    def maximal(cls, d: int) -> "MonomialIdeal":
        return cls(d, tuple(sorted(_axis(d, i, 1) for i in range(d))))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    def __len__(self) -> int:
        return len(self.gens)

    def __contains__(self, u) -> bool:
        return contains_monomial(self, u)

    def __str__(self) -> str:
        from .parsing import format_ideal
        return format_ideal(self)


def _axis(d: int, i: int, a: int) -> Exponent:
    v = [0] * d
    v[i] = a
    return tuple(v)


def _check_vec(v, d: int) -> Exponent:
    t = tuple(int(c) for c in v)
    if len(t) != d:
        raise DimensionMismatchError(f"exponent vector {t} has length {len(t)}, expected {d}")
    if any(c < 0 for c in t):
        raise ValueError(f"negative exponent in {t}")
    return t


def _same_dim(I: MonomialIdeal, J: MonomialIdeal) -> int:
    if I.dim != J.dim:
        raise DimensionMismatchError(f"dimensions differ: {I.dim} vs {J.dim}")
    return I.dim


def _join_p(I: MonomialIdeal, J: MonomialIdeal) -> Optional[int]:
    return I.char_p if I.char_p is not None else J.char_p


def normalize(raw_gens: Iterable[Sequence[int]], d: Optional[int] = None,
              char_p: Optional[int] = None) -> MonomialIdeal:
    """Reduce a set of exponent vectors to the minimal generators of the
    ideal they generate.

    >>> normalize({(1, 0), (2, 0), (0, 1)}, 2).gens
    ((0, 1), (1, 0))
    """
    raw = list(raw_gens)
    if d is None:
        if not raw:
            raise ValueError("dimension required for an empty generator set")
        d = len(raw[0])
    if d < 1:
        raise ValueError("dimension must be at least 1")
    vecs = [_check_vec(v, d) for v in raw]
    return MonomialIdeal(d, tuple(_minimalize(vecs, d)), char_p)


def _from_candidates(vecs, d: int, char_p=None) -> MonomialIdeal:
    return MonomialIdeal(d, tuple(_minimalize(vecs, d)), char_p)


def contains_monomial(I: MonomialIdeal, u: Sequence[int]) -> bool:
    if len(u) != I.dim:
        raise DimensionMismatchError(f"point of length {len(u)} in dimension {I.dim}")
    return any(all(g_i <= u_i for g_i, u_i in zip(g, u)) for g in I.gens)


def contains_ideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff J is a subset of I."""
    _same_dim(I, J)
    if J.is_zero:
        return True
    if I.is_zero:
        return False
    stair = _make_stair(I.dim)
    for g in I.gens:
        stair.add(g)
    return all(stair.contains(h) for h in J.gens)


def shifted_contained(I: MonomialIdeal, c: Sequence[int], gens: Iterable[Exponent]) -> bool:
    """True iff x^c * x^h lies in I for every h in gens."""
    stair = _make_stair(I.dim)
    for g in I.gens:
        stair.add(g)
    return all(stair.contains(tuple(a + b for a, b in zip(h, c))) for h in gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    d = _same_dim(I, J)
    return _from_candidates(I.gens + J.gens, d, _join_p(I, J))


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    d = _same_dim(I, J)
    if I.is_zero or J.is_zero:
        return MonomialIdeal(d, (), _join_p(I, J))
    cands = [tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens]
    return _from_candidates(cands, d, _join_p(I, J))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    d = _same_dim(I, J)
    cands = [tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens]
    return _from_candidates(cands, d, _join_p(I, J))


def colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """The ideal of monomials u with u + g in I for every generator g of J.

    Taking the colon by the zero ideal returns the unit ideal and emits a
    :class:`ColonByZeroWarning`.
    """
    d = _same_dim(I, J)
    if J.is_zero:
        warnings.warn("colon by the zero ideal; returning the unit ideal",
                      ColonByZeroWarning, stacklevel=2)
        return MonomialIdeal.unit(d)
    result = None
    for g in J.gens:
        part = _from_candidates(
            [tuple(max(a - b, 0) for a, b in zip(h, g)) for h in I.gens], d)
        result = part if result is None else intersect(result, part)
    return MonomialIdeal(d, result.gens, _join_p(I, J))


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError("power must be nonnegative")
    result = MonomialIdeal.unit(I.dim)
    for _ in range(n):
        result = product(result, I)
    return MonomialIdeal(I.dim, result.gens, I.char_p)


def bracket_power(I: MonomialIdeal, q: int) -> MonomialIdeal:
    """Frobenius-style power: every generator exponent multiplied by q."""
    if q < 1:
        raise ValueError("bracket exponent must be at least 1")
    return MonomialIdeal(I.dim, tuple(tuple(q * c for c in g) for g in I.gens), I.char_p)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, math.isqrt(p) + 1))


def base_digits(n: int, p: int) -> list[int]:
    """Base-p digits of n, least significant first."""
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return digits


def generalized_bracket_power(I: MonomialIdeal, n: int, p: int) -> MonomialIdeal:
    """Product over the base-p digits n_k of n of (I^[p^k])^(n_k)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("index must be nonnegative")
    result = MonomialIdeal.unit(I.dim)
    for k, digit in enumerate(base_digits(n, p)):
        if digit:
            result = product(result, power(bracket_power(I, p ** k), digit))
    return MonomialIdeal(I.dim, result.gens, p)


def is_m_primary(I: MonomialIdeal) -> bool:
    if I.is_zero:
        return False
    found = [False] * I.dim
    for g in I.gens:
        support = [i for i, c in enumerate(g) if c]
        if not support:
            return True
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


def num_min_gens(I: MonomialIdeal) -> int:
    return len(I.gens)


def pure_powers(I: MonomialIdeal) -> Exponent:
    """Exponents a_i of the pure powers x_i^(a_i) among the generators."""
    if not is_m_primary(I):
        raise NotMPrimaryError("ideal is not m-primary")
    if I.is_unit:
        return (0,) * I.dim
    a = [0] * I.dim
    for g in I.gens:
        support = [i for i, c in enumerate(g) if c]
        if len(support) == 1:
            a[support[0]] = g[support[0]]
    return tuple(a)


# ---------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class ColengthResult:
    value: int | float
    method: str
    complement_points: Optional[tuple[Exponent, ...]] = None

    @property
    def finite(self) -> bool:
        return self.value != math.inf


def _slab_groups(gens):
    """Group generators by last coordinate, ascending."""
    order = sorted(gens, key=_last_major)
    groups: list[tuple[int, list]] = []
    for v in order:
        if groups and groups[-1][0] == v[-1]:
            groups[-1][1].append(v[:-1])
        else:
            groups.append((v[-1], [v[:-1]]))
    return groups


def _count(gens: Sequence[Exponent], d: int) -> int:
    # gens: minimal and m-primary.  Slabs along the last axis have constant
    # cross-section between consecutive generator heights.
    if d == 1:
        return gens[0][0]
    if d == 2:
        return sum((gens[i + 1][0] - gens[i][0]) * gens[i][1] for i in range(len(gens) - 1))
    groups = _slab_groups(gens)
    total = 0
    if d == 3:
        stair = _Stair2()
        for j, (t, heads) in enumerate(groups[:-1]):
            for h in sorted(heads):
                stair.add(h)
            total += (groups[j + 1][0] - t) * stair.complement_count()
        return total
    heads_so_far: list[Exponent] = []
    for j, (t, heads) in enumerate(groups[:-1]):
        heads_so_far = _minimalize(heads_so_far + heads, d - 1)
        total += (groups[j + 1][0] - t) * _count(heads_so_far, d - 1)
    return total


def _max_degree(gens: Sequence[Exponent], d: int) -> int:
    # largest total degree of a complement point; -1 when the complement is empty
    if gens == [(0,) * d] or gens == ((0,) * d,):
        return -1
    if d == 1:
        return gens[0][0] - 1
    if d == 2:
        return max(gens[i + 1][0] - 1 + gens[i][1] - 1 for i in range(len(gens) - 1))
    groups = _slab_groups(gens)
    best = -1
    heads_so_far: list[Exponent] = []
    for j, (t, heads) in enumerate(groups[:-1]):
        heads_so_far = _minimalize(heads_so_far + heads, d - 1)
        inner = _max_degree(heads_so_far, d - 1)
        if inner >= 0:
            best = max(best, groups[j + 1][0] - 1 + inner)
    return best


def _complement_points(I: MonomialIdeal) -> tuple[Exponent, ...]:
    box = pure_powers(I)
    return tuple(u for u in _cartesian(*(range(a) for a in box))
                 if not contains_monomial(I, u))


def colength(I: MonomialIdeal, method: str = "box-enumeration",
             with_points: bool = False) -> ColengthResult:
    """Number of monomials outside I (the length of R/I).

    ``method`` is ``"box-enumeration"`` (slab-by-slab count of the bounding
    box, the production path) or ``"inclusion-exclusion"`` (oracle, limited
    to at most 20 generators).  A non m-primary ideal yields ``math.inf``.
    """
    if not is_m_primary(I):
        return ColengthResult(math.inf, method)
    if method == "box-enumeration":
        value = 0 if I.is_unit else _count(I.gens, I.dim)
    elif method == "inclusion-exclusion":
        value = colength_inclusion_exclusion(I)
    else:
        raise ValueError(f"unknown colength method {method!r}")
    points = _complement_points(I) if with_points else None
    return ColengthResult(value, method, points)


def colength_value(I: MonomialIdeal) -> int:
    """Colength as an integer; raises for ideals that are not m-primary."""
    if not is_m_primary(I):
        raise NotMPrimaryError("colength is infinite: ideal is not m-primary")
    return 0 if I.is_unit else _count(I.gens, I.dim)


def colength_inclusion_exclusion(I: MonomialIdeal) -> int:
    """Box volume minus the lattice points of I in the box, the latter counted
    by inclusion-exclusion over generator subsets (lcm = componentwise max)."""
    if len(I.gens) > 20:
        raise ValueError("inclusion-exclusion oracle is limited to 20 generators")
    box = pure_powers(I)
    gens = I.gens
    m = len(gens)

    def corner(v):
        return math.prod(a - c for a, c in zip(box, v))

    inside = 0
    # depth-first over subsets; a subset whose lcm leaves the box contributes
    # nothing and neither does any superset
    stack = [(i, gens[i], 1) for i in range(m)]
    while stack:
        i, lcm, sign = stack.pop()
        if any(c >= a for c, a in zip(lcm, box)):
            continue
        inside += sign * corner(lcm)
        for k in range(i + 1, m):
            stack.append((k, tuple(max(a, b) for a, b in zip(lcm, gens[k])), -sign))
    return math.prod(box) - inside


def colength_bruteforce(I: MonomialIdeal, limit: int = 4_000_000) -> int:
    """Literal scan of every point of the bounding box (small boxes only)."""
    import numpy as np

    box = pure_powers(I)
    size = math.prod(box)
    if size > limit:
        raise ValueError(f"bounding box has {size} points, above the limit {limit}")
    if size == 0:
        return 0
    grids = np.indices(box).reshape(I.dim, -1).T
    covered = np.zeros(len(grids), dtype=bool)
    for g in I.gens:
        covered |= (grids >= np.array(g)).all(axis=1)
    return int((~covered).sum())


def power_containment_threshold(I: MonomialIdeal) -> int:
    """Smallest k with m^k contained in I."""
    if not is_m_primary(I):
        raise NotMPrimaryError("ideal is not m-primary")
    return _max_degree(I.gens, I.dim) + 1


def min_degree(I: MonomialIdeal) -> int:
    if I.is_zero:
        return math.inf
    return min(sum(g) for g in I.gens)


def staircase_boxes(I: MonomialIdeal) -> list[tuple[Exponent, Exponent]]:
    """Disjoint half-open boxes [lo, hi) whose union is the complement of I.

    Built by slicing along the first axis, so it does not share code with the
    slab counter used by :func:`colength`.
    """
    if not is_m_primary(I):
        raise NotMPrimaryError("ideal is not m-primary")
    if I.is_unit:
        return []
    return _boxes(list(I.gens), I.dim)


def _boxes(gens, d):
    if d == 1:
        return [((0,), (gens[0][0],))]
    firsts = sorted({g[0] for g in gens})
    out = []
    for j, x in enumerate(firsts[:-1]):
        tails = _minimalize([g[1:] for g in gens if g[0] <= x], d - 1)
        if tails == [(0,) * (d - 1)]:
            break
        for lo, hi in _boxes(tails, d - 1):
            out.append(((x,) + lo, (firsts[j + 1],) + hi))
    return out
