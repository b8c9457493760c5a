"""Frobenius digit bases and containment checks for monomial ideals in
characteristic p."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Optional, Sequence

import numpy as np

from .monomial import (MonomialIdeal, NotMPrimaryError, _make_stair, bracket_power,
                       is_m_primary, is_prime, pure_powers)

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class OkBasis:
    p: int
    d: int
    elements: tuple[Exponent, ...]
    c_witness: Exponent


def ok_basis(d: int, p: int) -> OkBasis:
    """Monomials x^a with a in {0..p-1}^d; the scaling element is 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 1:
        raise ValueError("dimension must be at least 1")
    elems = tuple(sorted(cartesian(range(p), repeat=d)))
    return OkBasis(p, d, elems, (0,) * d)


def verify_ok_basis(B: OkBasis, box: int = 20) -> bool:
    """Count p^d, residues pairwise distinct mod p, and every u in [0, box]^d
    equal to p*a + r for exactly one r in B (with a >= 0)."""
    p, d = B.p, B.d
    elems = [tuple(e) for e in B.elements]
    if any(len(e) != d or min(e, default=0) < 0 for e in elems):
        return False
    if len(elems) != p ** d:
        return False
    if len({tuple(c % p for c in e) for e in elems}) != len(elems):
        return False
    # each u needs exactly one r <= u with u - r divisible by p
    pts = np.indices((box + 1,) * d).reshape(d, -1).T
    counts = np.zeros(len(pts), dtype=np.int64)
    for r in elems:
        diff = pts - np.array(r)
        counts += np.all((diff >= 0) & (diff % p == 0), axis=1)
    return bool(np.all(counts == 1))


def _box_points(box: Sequence[int]) -> np.ndarray:
    return np.indices(tuple(box)).reshape(len(box), -1).T


def _member_mask(I: MonomialIdeal, pts: np.ndarray) -> np.ndarray:
    mask = np.zeros(len(pts), dtype=bool)
    for g in I.gens:
        mask |= np.all(pts >= np.array(g), axis=1)
    return mask


def frobenius_cover_check(I: MonomialIdeal, p: int) -> bool:
    """Every exponent v of I^[p] inside the bounding box has floor(v/p) in I."""
    if I.is_unit:
        return True
    if not is_m_primary(I):
        raise NotMPrimaryError("ideal is not m-primary")
    Ip = bracket_power(I, p)
    box = tuple(p * a + p for a in pure_powers(I))
    pts = _box_points(box)
    inside = _member_mask(Ip, pts)
    return bool(np.all(_member_mask(I, pts[inside] // p)))


def frobenius_converse_check(I: MonomialIdeal, p: int) -> bool:
    """p*nu(I) + N^d lies in nu(I^[p]): checked on p*g + r for generators g
    and r in {0..p}^d."""
    if I.is_zero:
        return True
    stair = _make_stair(I.dim)
    for g in bracket_power(I, p).gens:
        stair.add(g)
    return all(stair.contains(tuple(p * a + b for a, b in zip(g, r)))
               for g in I.gens for r in cartesian(range(p + 1), repeat=I.dim))


def digit_decomposition(u: Sequence[int], p: int) -> tuple[Exponent, Exponent]:
    """u = p*a + r with r in {0..p-1}^d."""
    a = tuple(c // p for c in u)
    r = tuple(c % p for c in u)
    return a, r
