"""Newton polyhedra of monomial ideals, integral closure and exact volumes.

NP(I) = conv(gens) + R^d_+.  For an m-primary ideal every bounded facet has
the form a.u >= 1 with a > 0, and those normals are exactly the vertices of
the blocker {a >= 0 : a.g >= 1 for all generators g}; we enumerate them once
and keep them as integer rows A.u >= D.  Membership for other ideals goes
through a small exact simplex.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .monomial import (DimensionMismatchError, MonomialIdeal, NotMPrimaryError,
                       is_m_primary, normalize, pure_powers)


class InexactVolumeWarning(UserWarning):
    """The volume returned is a lattice approximation, not an exact value."""


@dataclass(frozen=True)
class Halfspace:
    normal: tuple[int, ...]
    bound: int

    def holds(self, u) -> bool:
        return sum(a * x for a, x in zip(self.normal, u)) >= self.bound

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.bound) for a in self.normal)


@dataclass(frozen=True)
class NewtonPolyhedron:
    dim: int
    vertices: tuple[tuple[int, ...], ...]
    halfspaces: Optional[tuple[Halfspace, ...]] = None


# ---------------------------------------------------------------------------
# exact linear algebra


def _solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[list[Fraction]]:
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _phase_one_feasible(A: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Is {x >= 0 : A x = b} nonempty?  Requires b >= 0.  Bland's rule."""
    rows, cols = len(A), len(A[0])
    # tableau with one artificial per row, basis = artificials
    T = [list(A[i]) + [Fraction(int(i == k)) for k in range(rows)] + [b[i]] for i in range(rows)]
    width = cols + rows
    basis = [cols + i for i in range(rows)]
    # objective: minimise sum of artificials => reduced costs
    obj = [-sum(T[i][j] for i in range(rows)) for j in range(width)] + [-sum(b)]
    for i in range(rows):
        obj[cols + i] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(rows):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(rows):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[leave])]
        basis[leave] = enter
    return obj[-1] == 0


def _in_hull_plus_orthant(gens, u) -> bool:
    if any(x < 0 for x in u):
        return False
    if not gens:
        return False
    d = len(u)
    m = len(gens)
    # sum_i lam_i g_ij + s_j = u_j ; sum_i lam_i = 1
    A = []
    for j in range(d):
        A.append([Fraction(g[j]) for g in gens] + [Fraction(int(k == j)) for k in range(d)])
    A.append([Fraction(1)] * m + [Fraction(0)] * d)
    b = [Fraction(x) for x in u] + [Fraction(1)]
    return _phase_one_feasible(A, b)


# ---------------------------------------------------------------------------


def _lower_hull_2d(gens):
    # gens sorted by x ascending (y descending); keep the convex chain
    hull: list[tuple[int, int]] = []
    for g in gens:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it is on or above the segment hull[-2] -> g
            if (x2 - x1) * (g[1] - y1) - (y2 - y1) * (g[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(tuple(g))
    return hull


def _vertex_candidates(I: MonomialIdeal) -> list[tuple[int, ...]]:
    gens = list(I.gens)
    if I.dim == 1 or len(gens) <= I.dim:
        return gens
    if I.dim == 2:
        return _lower_hull_2d(sorted(gens))
    return [g for k, g in enumerate(gens)
            if not _in_hull_plus_orthant(gens[:k] + gens[k + 1:], g)]


def _integer_row(a: Sequence[Fraction]) -> Halfspace:
    den = math.lcm(*(x.denominator for x in a))
    normal = tuple(int(x * den) for x in a)
    g = math.gcd(*normal, den)
    return Halfspace(tuple(c // g for c in normal), den // g)


def _facets(vertices, d: int) -> tuple[Halfspace, ...]:
    found = set()
    for rows in combinations(vertices, d):
        a = _solve(rows, [1] * d)
        if a is None or any(x <= 0 for x in a):
            continue
        if all(sum(x * c for x, c in zip(a, g)) >= 1 for g in vertices):
            found.add(_integer_row(a))
    return tuple(sorted(found, key=lambda h: (h.bound, h.normal)))


def newton_polyhedron(I: MonomialIdeal) -> NewtonPolyhedron:
    if is_m_primary(I) and not I.is_unit:
        verts = tuple(_vertex_candidates(I))
        return NewtonPolyhedron(I.dim, I.gens, _facets(verts, I.dim))
    return NewtonPolyhedron(I.dim, I.gens, None)


def np_membership(NP: NewtonPolyhedron, u: Sequence) -> bool:
    """Exact test of u in conv(vertices) + R^d_+ (u may have rational entries)."""
    if len(u) != NP.dim:
        raise DimensionMismatchError(f"point of length {len(u)} in dimension {NP.dim}")
    if any(x < 0 for x in u):
        return False
    if not NP.vertices:
        return False
    if NP.vertices == ((0,) * NP.dim,):
        return True
    if NP.halfspaces is not None:
        return all(h.holds(u) for h in NP.halfspaces)
    return _in_hull_plus_orthant(list(NP.vertices), [Fraction(x) for x in u])


def _points_in_box(box) -> np.ndarray:
    return np.indices(box).reshape(len(box), -1).T


def _scaled_closure_points(NP: NewtonPolyhedron, box, scale: int = 1) -> np.ndarray:
    pts = _points_in_box(box)
    ok = np.ones(len(pts), dtype=bool)
    for h in NP.halfspaces:
        ok &= pts @ np.array(h.normal, dtype=np.int64) >= scale * h.bound
    return pts[ok]


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Monomials whose exponents lie in the Newton polyhedron of I."""
    if not is_m_primary(I):
        raise NotMPrimaryError("integral closure box scan needs an m-primary ideal")
    if I.is_unit:
        return I
    NP = newton_polyhedron(I)
    pts = _scaled_closure_points(NP, pure_powers(I))
    return normalize(list(I.gens) + [tuple(int(c) for c in p) for p in pts], I.dim, I.char_p)


def closure_of_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """Integral closure of I^n, read off from NP(I^n) = n NP(I)."""
    if not is_m_primary(I):
        raise NotMPrimaryError("ideal is not m-primary")
    if n == 0 or I.is_unit:
        return MonomialIdeal.unit(I.dim)
    NP = newton_polyhedron(I)
    box = tuple(n * a for a in pure_powers(I))
    pts = _scaled_closure_points(NP, box, n)
    seeds = [tuple(n * c for c in g) for g in I.gens]
    return normalize(seeds + [tuple(int(c) for c in p) for p in pts], I.dim, I.char_p)


# ---------------------------------------------------------------------------
# volumes


def _area_union(cons) -> Fraction:
    """Area of the union over (al, be, c) of {x, y >= 0 : al x + be y < c}."""
    cons = [(al, be, c) for al, be, c in cons if c > 0]
    if not cons:
        return Fraction(0)
    X = max(c / al for al, be, c in cons)
    cuts = {Fraction(0), X}
    for al, be, c in cons:
        cuts.add(c / al)
    for (a1, b1, c1), (a2, b2, c2) in combinations(cons, 2):
        den = a1 * b2 - a2 * b1
        if den != 0:
            x = (c1 * b2 - c2 * b1) / den
            if 0 < x < X:
                cuts.add(x)

    def height(x):
        return max(max(Fraction(0), (c - al * x) / be) for al, be, c in cons)

    xs = sorted(cuts)
    return sum(((x1 - x0) * (height(x0) + height(x1)) / 2 for x0, x1 in zip(xs, xs[1:])),
               Fraction(0))


def np_complement_volume(I: MonomialIdeal, approx_level: int = 8) -> Fraction:
    """Volume of R^d_+ minus NP(I).

    Exact for d <= 3 (slicing along the last coordinate; cross-section areas
    are integrated piece by piece with Simpson's rule, which is exact because
    they are quadratic between vertex heights).  For d >= 4 the value is the
    lattice count of the complement of n NP(I), divided by n^d, at
    n = approx_level, and an :class:`InexactVolumeWarning` is emitted.
    """
    if not is_m_primary(I):
        raise NotMPrimaryError("complement of NP(I) is unbounded")
    if I.is_unit:
        return Fraction(0)
    d = I.dim
    NP = newton_polyhedron(I)
    facets = [h.as_fractions() for h in NP.halfspaces]
    if d == 1:
        return Fraction(I.gens[0][0])
    if d == 2:
        return _area_union([(a[0], a[1], Fraction(1)) for a in facets])
    if d == 3:
        top = pure_powers(I)[2]
        cuts = {Fraction(0), Fraction(top)}
        cuts.update(Fraction(g[2]) for g in NP.vertices if g[2] <= top)
        cuts.update(1 / a[2] for a in facets if 1 / a[2] < top)
        ts = sorted(cuts)

        def area(t):
            return _area_union([(a[0], a[1], 1 - a[2] * t) for a in facets])

        total = Fraction(0)
        for t0, t1 in zip(ts, ts[1:]):
            total += (t1 - t0) * (area(t0) + 4 * area((t0 + t1) / 2) + area(t1)) / 6
        return total
    warnings.warn(f"d={d}: volume approximated by lattice count at level {approx_level}",
                  InexactVolumeWarning, stacklevel=2)
    n = approx_level
    box = tuple(n * a for a in pure_powers(I))
    inside = len(_scaled_closure_points(NP, box, n))
    return Fraction(math.prod(box) - inside, n ** d)
