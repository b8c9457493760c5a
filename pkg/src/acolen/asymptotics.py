"""Normalized colength sequences a_n = l(R/I_n)/n^d and what can be said
about them from finitely many terms.

Everything that is a count stays exact (int / Fraction).  Floating point only
enters in curve fitting and in the height-function probe.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from .families import (FamilyEvaluator, FamilySpec, as_evaluator, bbl_profile, check_bal,
                       find_weakly_graded_witness, product_of, verify_F_graded_up_to,
                       verify_inverse_p_family_up_to, verify_p_family_up_to)
from .monomial import (AcolenError, MonomialIdeal, NotMPrimaryError, _make_stair, bracket_power,
                       colength_value, is_m_primary, product, staircase_boxes)
from .newton import np_complement_volume


class PreconditionError(AcolenError):
    """A verification harness was called on a family that fails its hypotheses."""


class ConsistencyError(AcolenError, AssertionError):
    """Two independent computations of the same number disagree."""


class HilbertSamuelError(AcolenError):
    def __init__(self, message: str, trace: list[int]):
        super().__init__(f"{message}; differences so far: {trace}")
        self.trace = trace


# ---------------------------------------------------------------------------
# sequences


@dataclass(frozen=True)
class SequencePoint:
    index: int
    colength: int
    value: Fraction


def _alphas(spec: FamilySpec):
    if spec.alpha is not None:
        yield spec.alpha
    for child in (spec.base, spec.other):
        if child is not None:
            yield from _alphas(child)


def default_plan(F, bound: int) -> list[int]:
    """Indices to sample: n <= bound (in steps that make every floor(n alpha)
    exact), or q = p^e for e <= bound."""
    ev = as_evaluator(F)
    if ev.spec.index == "p-power":
        return [ev.spec.p ** e for e in range(bound + 1)]
    step = math.lcm(1, *(a.denominator for a in _alphas(ev.spec)))
    if step > bound:
        step = 1
    return list(range(step, bound + 1, step))


def colength_sequence(F, indices: Sequence[int], threads: int = 1) -> list[SequencePoint]:
    """Exact a_n for the given indices, sorted by index."""
    ev = as_evaluator(F)
    idx = sorted(set(indices))
    members = [ev(n) for n in idx]  # evaluation mutates the memo: keep it serial
    for n, I in zip(idx, members):
        if not is_m_primary(I):
            raise NotMPrimaryError(f"member at index {n} is not m-primary")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(colength_value, members))
    else:
        counts = [colength_value(I) for I in members]
    d = ev.d
    return [SequencePoint(n, c, Fraction(c, n ** d)) for n, c in zip(idx, counts)]


@dataclass(frozen=True)
class ScaledRegion:
    """Complement staircase of I_n scaled by 1/n."""

    level: int
    ideal: MonomialIdeal
    volume: Fraction

    def contains(self, x: Sequence) -> bool:
        if any(c < 0 for c in x):
            return False
        u = tuple(math.floor(self.level * Fraction(c)) for c in x)
        return not any(all(g <= v for g, v in zip(gen, u)) for gen in self.ideal.gens)


def scaled_region(F, n: int) -> ScaledRegion:
    ev = as_evaluator(F)
    I = ev(n)
    vol = Fraction(0)
    for lo, hi in staircase_boxes(I):
        vol += math.prod(Fraction(b - a, n) for a, b in zip(lo, hi))
    return ScaledRegion(n, I, vol)


def region_volume(F, n: int) -> Fraction:
    """Volume of the union of the cubes (u + [0,1)^d)/n over the complement of I_n."""
    return scaled_region(F, n).volume


# ---------------------------------------------------------------------------
# limits


def _interpolate(xs: Sequence[int], ys: Sequence[int]):
    """Exact Lagrange interpolation; returns a callable and the coefficients
    (constant term first)."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t in range(k):
            coeffs[t] += yi * basis[t] / denom

    def value(x):
        return sum(c * x ** t for t, c in enumerate(coeffs))

    return value, coeffs


@dataclass
class Extrapolation:
    limit: Optional[Fraction | float]
    exact: bool
    residual: float
    slope: float  # coefficient of 1/n in a_n ~ L + slope/n


def extrapolate(ns: Sequence[int], counts: Sequence[int], d: int, window: Sequence[int]) -> Extrapolation:
    """Limit of counts/n^d.

    First tries to recognise an exact polynomial of degree <= d in n on the
    tail (interpolate on the last d+1 samples, confirm on the three before);
    otherwise least-squares fits a polynomial in 1/n over the window.
    """
    if len(ns) >= d + 4:
        xs, ys = ns[-(d + 1):], counts[-(d + 1):]
        value, coeffs = _interpolate(xs, ys)
        if all(value(x) == y for x, y in zip(ns[-(d + 4):-(d + 1)], counts[-(d + 4):-(d + 1)])):
            coeffs = coeffs + [Fraction(0)] * (d + 1 - len(coeffs))
            slope = float(coeffs[d - 1]) if d >= 1 else 0.0
            return Extrapolation(coeffs[d], True, 0.0, slope)
    pos = {n: i for i, n in enumerate(ns)}
    wn = [n for n in window]
    wa = np.array([counts[pos[n]] / n ** d for n in wn], dtype=float)
    if len(wn) == 1:
        return Extrapolation(float(wa[0]), False, 0.0, 0.0)
    deg = min(2, len(wn) - 1)
    scale = min(wn)
    x = np.array([scale / n for n in wn], dtype=float)
    coef = np.polynomial.polynomial.polyfit(x, wa, deg)
    fitted = np.polynomial.polynomial.polyval(x, coef)
    residual = float(np.max(np.abs(fitted - wa)))
    return Extrapolation(float(coef[0]), False, residual, float(coef[1]) * scale)


@dataclass
class LimitEstimate:
    index: str
    indices: list[int]
    values: list[Fraction]
    window: list[int]
    liminf_estimate: Fraction
    limsup_estimate: Fraction
    limit_estimate: Optional[Fraction | float]
    limit_exact: bool
    fit_residual: float
    rate_constant: Optional[float]
    rate_constant_lsq: Optional[float]
    rate_holds: Optional[bool]
    convergence_flag: bool
    tolerance: float
    positivity_threshold: float
    notes: list[str] = field(default_factory=list)

    def value(self) -> Optional[float]:
        return None if self.limit_estimate is None else float(self.limit_estimate)


def tail_window(indices: Sequence[int], share: float = 0.3) -> list[int]:
    """Samples in the last ``share`` of the index range on a logarithmic scale."""
    lo, hi = math.log(indices[0]), math.log(indices[-1])
    cut = hi - share * (hi - lo)
    win = [n for n in indices if math.log(n) >= cut - 1e-12]
    return win or [indices[-1]]


def limit_estimate(F, plan: Sequence[int], tol: float = 1e-3, require_bbl: bool = True,
                   threads: int = 1) -> LimitEstimate:
    """Estimate liminf, limsup and (when it settles) the limit of a_n over
    the sampled indices ``plan``."""
    ev = as_evaluator(F)
    idx = sorted(set(plan))
    if ev.spec.index == "natural":
        idx = [n for n in idx if n >= 1]
    if require_bbl:
        prof = bbl_profile(ev, 0, indices=idx)
        if prof.constant is None:
            raise PreconditionError("family does not look bounded below linearly on the "
                                    f"sampled indices (per-index constants {prof.per_index[-5:]})")
    seq = colength_sequence(ev, idx, threads)
    values = [s.value for s in seq]
    notes: list[str] = []
    d = ev.d
    if ev.spec.index == "natural":
        win = tail_window(idx)
        wvals = [s.value for s in seq if s.index in set(win)]
        ext = extrapolate(idx, [s.colength for s in seq], d, win)
        converged = ext.exact or ext.residual <= tol
        slack = abs(ext.slope) / idx[-1]
        return LimitEstimate(
            "natural", idx, values, win, min(wvals), max(wvals),
            ext.limit if converged else None, ext.exact, ext.residual,
            None, None, None, converged, tol, max(1e-4, 2 * slack), notes)
    p = ev.spec.p
    E = len(idx) - 1
    k = max(1, math.ceil(0.3 * len(idx)))
    win = idx[-k:]
    wvals = values[-k:]
    if E >= 1:
        eta = (p * values[-1] - values[-2]) / (p - 1)
    else:
        eta = values[-1]
    # fit the C/q envelope on the early half, then check it on every sample
    half = max(2, (E + 2) // 2)
    early = list(zip(idx[:half], values[:half]))
    c_fit = max([Fraction(0)] + [q * (a - eta) for q, a in early])
    holds = all(a - eta <= c_fit / q for q, a in zip(idx, values))
    # least-squares C in |a_q - a_qmax| ~ C/q, for reference
    pts = [(1 / q, abs(float(a - values[-1]))) for q, a in zip(idx[:-1], values[:-1])]
    c_lsq = (sum(x * y for x, y in pts) / sum(x * x for x, _ in pts)) if pts else 0.0
    spread = float(max(wvals) - min(wvals))
    converged = spread <= tol or abs(float(eta - values[-1])) <= tol
    resid = max((abs(float(a - eta)) * q - float(c_fit) for q, a in zip(idx, values)), default=0.0)
    threshold = max(1e-4, 2 * float(c_fit) / idx[-1])
    return LimitEstimate("p-power", idx, values, win, min(wvals), max(wvals), eta,
                         True, max(resid, 0.0), float(c_fit), c_lsq, holds, converged, tol,
                         threshold, notes)


# ---------------------------------------------------------------------------
# probing the limit body


@dataclass
class TrajectoryClass:
    point: tuple[Fraction, ...]
    window: list[int]
    bits: list[int]
    classification: str


def trajectory_classify(F, x: Sequence, window: Sequence[int]) -> TrajectoryClass:
    """Record, for each n in the window, whether floor(n x) is outside I_n
    (bit 1) and classify the tail: all 1 -> nabla_low, all 0 -> delta_up,
    both values at least three times -> oscillating, else undetermined."""
    ev = as_evaluator(F)
    pt = tuple(Fraction(c) for c in x)
    if any(c <= 0 for c in pt):
        raise ValueError("point must lie in the open positive orthant")
    bits = []
    for n in window:
        u = tuple(math.floor(n * c) for c in pt)
        bits.append(0 if ev.stair(n).contains(u) else 1)
    tail = bits[len(bits) // 2:]
    if tail and all(tail):
        cls = "nabla_low"
    elif tail and not any(tail):
        cls = "delta_up"
    elif tail.count(0) >= 3 and tail.count(1) >= 3:
        cls = "oscillating"
    else:
        cls = "undetermined"
    return TrajectoryClass(pt, list(window), bits, cls)


def hyperplane_grid(d: int, radius: float, steps: int) -> list[tuple[float, ...]]:
    """Square grid of side 2*radius (``steps`` points per axis) in the
    hyperplane x_1 + ... + x_d = 0, in an orthonormal basis of it."""
    basis = []
    for k in range(1, d):
        v = [1.0] * k + [-float(k)] + [0.0] * (d - k - 1)
        norm = math.sqrt(k * (k + 1))
        basis.append([c / norm for c in v])
    if d == 1:
        return [(0.0,)]
    ticks = [0.0] if steps <= 1 else [-radius + 2 * radius * i / (steps - 1) for i in range(steps)]
    pts = []
    for coords in np.array(np.meshgrid(*[ticks] * (d - 1), indexing="ij")).reshape(d - 1, -1).T:
        y = [sum(c * b[i] for c, b in zip(coords, basis)) for i in range(d)]
        pts.append(tuple(0.0 if abs(c) < 1e-15 else c for c in y))
    return pts


@dataclass
class HeightSample:
    """Heights t with y + t b on the boundary of the level-n region, b = (1,...,1).

    ``heights`` are in units of b; ``distances`` = t * |b| are the Euclidean
    offsets along the unit direction.
    """
    direction: tuple[int, ...]
    level: int
    tol: float
    points: list[tuple[float, ...]]
    heights: list[float]
    unbounded: list[bool]

    @property
    def distances(self) -> list[float]:
        norm = math.sqrt(len(self.direction))
        return [t * norm for t in self.heights]


def height_sample(F, grid: Sequence[Sequence[float]], n_probe: int, tol: float = 1e-6) -> HeightSample:
    ev = as_evaluator(F)
    I = ev(n_probe)
    d = ev.d
    if not is_m_primary(I):
        raise NotMPrimaryError(f"member at index {n_probe} is not m-primary")
    from .monomial import power_containment_threshold
    thr = power_containment_threshold(I)
    stair = ev.stair(n_probe)
    n = n_probe

    def inside(z):
        return all(c > 0 for c in z) and stair.contains(tuple(math.floor(n * c) for c in z))

    heights, flags = [], []
    for y in grid:
        y = tuple(float(c) for c in y)
        if abs(sum(y)) > 1e-9:
            raise ValueError(f"grid point {y} is not on the hyperplane")
        floor_t = max(0.0, max(-c for c in y))
        T = floor_t + (thr + d) / (n * d) + tol
        if not inside([c + T for c in y]):
            heights.append(T)
            flags.append(True)
            continue
        lo, hi = floor_t, T
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if inside([c + mid for c in y]):
                hi = mid
            else:
                lo = mid
        heights.append(hi)
        flags.append(False)
    return HeightSample((1,) * d, n_probe, tol, [tuple(float(c) for c in y) for y in grid],
                        heights, flags)


@dataclass
class LipschitzAudit:
    max_ratio: float
    c3: float
    max_excess: float  # max of |phi(x) - phi(y)| - c3 |x - y| over pairs
    passed: bool
    worst_pair: Optional[tuple[int, int]]


def lipschitz_constant(d: int) -> float:
    """c3 = c2 / sqrt(|b|^4 - c2^2 |b|^2) for b = (1,...,1), where
    c2 = sqrt(d-1) is the widest circular cone around b inside R^d_+."""
    if d < 2:
        return 0.0
    b2 = float(d)
    c2 = math.sqrt(d - 1)
    return c2 / math.sqrt(b2 * b2 - c2 * c2 * b2)


def lipschitz_audit(hs: HeightSample) -> LipschitzAudit:
    """Pairwise check of |phi(x) - phi(y)| <= c3 |x - y| + 2 tol (heights in
    units of b; each sampled height is within tol of the true boundary)."""
    c3 = lipschitz_constant(len(hs.direction))
    pts = [(np.array(y), t) for y, t, u in zip(hs.points, hs.heights, hs.unbounded) if not u]
    ratio, excess, pair = 0.0, -math.inf, None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dist = float(np.linalg.norm(pts[i][0] - pts[j][0]))
            if dist == 0:
                continue
            diff = abs(pts[i][1] - pts[j][1])
            ratio = max(ratio, diff / dist)
            if diff - c3 * dist > excess:
                excess, pair = diff - c3 * dist, (i, j)
    if pair is None:
        excess = 0.0
    return LipschitzAudit(ratio, c3, excess, excess <= 2 * hs.tol, pair)


# ---------------------------------------------------------------------------
# multiplicities


def hilbert_samuel(I: MonomialIdeal, n_max: int = 40, cross_check: bool = True) -> int:
    """e(I) from d-th finite differences of k -> l(R/I^k), stopping once three
    consecutive differences agree."""
    if not is_m_primary(I):
        raise NotMPrimaryError("ideal is not m-primary")
    d = I.dim
    if I.is_unit:
        return 0
    h = []
    Ik = MonomialIdeal.unit(d)
    diffs: list[int] = []
    for k in range(n_max + 1):
        h.append(colength_value(Ik))
        if k >= d:
            diffs.append(sum((-1) ** j * math.comb(d, j) * h[k - j] for j in range(d + 1)))
            if len(diffs) >= 3 and diffs[-1] == diffs[-2] == diffs[-3]:
                e = diffs[-1]
                if cross_check and d <= 3:
                    vol = np_complement_volume(I)
                    if math.factorial(d) * vol != e:
                        raise ConsistencyError(f"e(I)={e} but d!*vol={math.factorial(d) * vol}")
                return e
        Ik = product(Ik, I)
    raise HilbertSamuelError(f"no stabilisation up to n={n_max}", diffs)


def hilbert_kunz(I: MonomialIdeal, p: int) -> Fraction:
    """e_HK(I) = l(R/I) for monomial ideals, confirmed at q = p and p^2."""
    base = colength_value(I)
    for q in (p, p * p):
        got = colength_value(bracket_power(I, q))
        if got != q ** I.dim * base:
            raise ConsistencyError(f"l(R/I^[{q}])={got} differs from {q}^d * {base}")
    return Fraction(base)


# ---------------------------------------------------------------------------
# verification harnesses


@dataclass
class Report:
    claim: str
    witness_range: str
    lhs: Any
    rhs: Any
    tolerance: float
    passed: Optional[bool]
    details: dict[str, Any] = field(default_factory=dict)


def _limit_or_fail(est: LimitEstimate, label: str):
    if est.limit_estimate is None:
        raise PreconditionError(f"{label}: limit estimate did not settle "
                                f"(liminf {float(est.liminf_estimate):.6g}, "
                                f"limsup {float(est.limsup_estimate):.6g})")
    return est.limit_estimate


def _classified(ev: FamilyEvaluator, bound: int, D: int) -> str:
    if ev.spec.index == "natural":
        w = find_weakly_graded_witness(ev, min(bound, 12), D)
        if w is None:
            raise PreconditionError("no weakly graded witness found")
        return f"weakly graded, c={list(w)}"
    E = min(bound, 4)
    chk = verify_p_family_up_to(ev, E, D)
    if chk.witness is not None:
        return f"weakly p, c={list(chk.witness)}"
    chk = verify_inverse_p_family_up_to(ev, E, D)
    if chk.witness is not None:
        return f"weakly inverse p, c={list(chk.witness)}"
    raise PreconditionError("neither a weakly p nor a weakly inverse p family on the range")


def verify_volume_multiplicity(F, bound: int, tol: float = 1e-2, samples: int = 6) -> Report:
    """Natural index: d! lim a_n against lim e(I_n)/n^d (both extrapolated
    from the sampled tail); p-power index: a_q = e_HK(I_q)/q^d exactly."""
    ev = as_evaluator(F)
    cls = _classified(ev, bound, 2)
    d = ev.d
    plan = default_plan(ev, bound)
    if ev.spec.index == "natural":
        seq = colength_sequence(ev, plan)
        tail = plan[-samples:] if len(plan) >= samples else plan
        mult = [hilbert_samuel(ev(n), cross_check=False) for n in tail]
        fact = math.factorial(d)
        ext_a = extrapolate(plan, [s.colength for s in seq], d, tail_window(plan))
        ext_e = extrapolate(tail, mult, d, tail)
        lhs = fact * ext_a.limit if ext_a.limit is not None else None
        rhs = ext_e.limit
        last = seq[-1]
        terminal = abs(fact * last.value - Fraction(mult[-1], last.index ** d))
        ok = lhs is not None and rhs is not None and abs(float(lhs) - float(rhs)) <= tol
        return Report("d! * lim a_n = lim e(I_n)/n^d", f"n<={plan[-1]}", lhs, rhs, tol, ok,
                      {"classification": cls, "terminal_index": last.index,
                       "terminal_lhs": fact * last.value,
                       "terminal_rhs": Fraction(mult[-1], last.index ** d),
                       "terminal_gap": terminal})
    mismatches = []
    for q in plan:
        a = Fraction(colength_value(ev(q)), q ** d)
        hk = hilbert_kunz(ev(q), ev.spec.p) / q ** d
        if a != hk:
            mismatches.append(q)
    last = plan[-1]
    a_last = Fraction(colength_value(ev(last)), last ** d)
    return Report("a_q = e_HK(I_q)/q^d", f"q<={last}", a_last,
                  hilbert_kunz(ev(last), ev.spec.p) / last ** d, 0.0, not mismatches,
                  {"classification": cls, "mismatches": mismatches})


def verify_minkowski(F, G, bound: int, tol: float = 1e-3, D: int = 2,
                     require_classification: bool = True) -> Report:
    """lim(F)^(1/d) + lim(G)^(1/d) >= lim(FG)^(1/d), limits estimated.

    With ``require_classification=False`` a family that fails the weak
    classification is still compared; the report then says so.
    """
    evF, evG = as_evaluator(F), as_evaluator(G)
    if evF.spec.index != evG.spec.index or evF.d != evG.d:
        raise PreconditionError("families must share index kind and dimension")
    classes = []
    for ev in (evF, evG):
        try:
            classes.append(_classified(ev, bound, D))
        except PreconditionError as exc:
            if require_classification:
                raise
            classes.append(f"unverified: {exc}")
    cF, cG = classes
    d = evF.d
    plan = sorted(set(default_plan(evF, bound)) & set(default_plan(evG, bound)))
    evFG = FamilyEvaluator(product_of(evF.spec, evG.spec))
    lims = []
    for ev, label in ((evF, "F"), (evG, "G"), (evFG, "FG")):
        lims.append(_limit_or_fail(limit_estimate(ev, plan, tol), label))
    LF, LG, LFG = (float(x) for x in lims)
    lhs = LF ** (1 / d) + LG ** (1 / d)
    rhs = LFG ** (1 / d)
    ok = (LF + tol) ** (1 / d) + (LG + tol) ** (1 / d) >= max(LFG - tol, 0.0) ** (1 / d)
    return Report("lim(F)^(1/d) + lim(G)^(1/d) >= lim(FG)^(1/d)", f"indices<={plan[-1]}",
                  lhs, rhs, tol, ok,
                  {"limits": {"F": lims[0], "G": lims[1], "FG": lims[2]},
                   "classification": {"F": cF, "G": cG}})


def verify_positivity(F, bound: int, tol: float = 1e-3) -> Report:
    """BAL on the window  <=>  limit estimate above the positivity threshold."""
    ev = as_evaluator(F)
    bal = check_bal(ev, bound)
    est = limit_estimate(ev, default_plan(ev, bound), tol)
    thr = est.positivity_threshold
    if est.limit_estimate is not None:
        lim = float(est.limit_estimate)
        positive: Optional[bool] = lim > thr
    else:
        lim = None
        lo, hi = float(est.liminf_estimate), float(est.limsup_estimate)
        positive = True if lo > thr else (False if hi < thr else None)
    details = {"bal_constant": bal, "limit": est.limit_estimate, "threshold": thr,
               "liminf": est.liminf_estimate, "limsup": est.limsup_estimate,
               "BAL implies positive": None if positive is None else (bal is None or positive),
               "positive implies BAL": None if positive is None else (not positive or bal is not None)}
    passed = None if positive is None else ((bal is not None) == positive)
    return Report("BAL <=> lim a_n > 0", f"indices<={est.indices[-1]}",
                  bal is not None, positive, thr, passed, details)


def verify_brosowsky(F, E: int) -> Report:
    """Volume of the level-p^E complement region against the limit estimate."""
    ev = as_evaluator(F)
    if ev.spec.index != "p-power":
        raise PreconditionError("needs a p-power family")
    chk = verify_F_graded_up_to(ev, E)
    if not chk.holds:
        raise PreconditionError(f"not F-graded: fails at {chk.counterexample}")
    plan = default_plan(ev, E)
    est = limit_estimate(ev, plan)
    q = plan[-1]
    vol = region_volume(ev, q)
    slack = Fraction(0) if not est.rate_constant else Fraction(est.rate_constant) / q
    gap = abs(vol - est.limit_estimate)
    return Report("vol(region at level p^E) = lim a_q", f"q<={q}", vol, est.limit_estimate,
                  float(slack), gap <= slack, {"F-graded": chk.evidence, "gap": gap})
