"""Acceptance criteria.  Each test prints one line ``criterion N: PASS|FAIL``
followed by a short summary, then asserts the same verdict.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import random_m_primary  # noqa: E402

from acolen.asymptotics import (default_plan, height_sample, hyperplane_grid, hilbert_kunz,
                                hilbert_samuel, limit_estimate, lipschitz_audit, region_volume,
                                colength_sequence, verify_brosowsky, verify_minkowski,
                                verify_positivity)
from acolen.charp import frobenius_converse_check, frobenius_cover_check, ok_basis, verify_ok_basis
from acolen.families import (FamilyEvaluator, bracket, closure_of, colon_of, explicit,
                             floor_power, generalized_bracket, intersect_of, powers, product_of,
                             sum_of, template, verify_p_family_up_to)
from acolen.monomial import (MonomialIdeal, bracket_power, colength, colength_value,
                             normalize, num_min_gens, power)
from acolen.parsing import parse_ideal
from acolen.reports import bracket_example

M2 = MonomialIdeal.maximal(2)
M3 = MonomialIdeal.maximal(3)


@pytest.fixture
def verdict(capsys):
    def show(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return show


# ---------------------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    bad = []
    for p in (2, 3):
        for d in (2, 3):
            table = bracket_example(p, d, 6)
            if not table.passed:
                bad.append((p, d, [r[0] for r in table.rows if r[-1] != "ok"]))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    return ok, f"closed forms p,d in {{2,3}}, e<=6; mismatches={bad}; {elapsed:.1f}s"


def criterion_2():
    F2 = generalized_bracket(M2, 2)
    ev2 = FamilyEvaluator(F2)
    a_sub2 = Fraction(colength_value(ev2(2 ** 10 - 1)), (2 ** 10 - 1) ** 2)
    ev3 = FamilyEvaluator(generalized_bracket(M3, 3))
    a_sub3 = Fraction(colength_value(ev3(3 ** 5 - 1)), (3 ** 5 - 1) ** 3)
    ones = all(Fraction(colength_value(ev2(2 ** e)), 4 ** e) == 1 for e in range(11))
    full = limit_estimate(ev2, list(range(1, 1024)))
    checks = {
        "a_1023 near 1/2": abs(a_sub2 - Fraction(1, 2)) <= Fraction(1, 100),
        "a_242 near 4/21": abs(a_sub3 - Fraction(4, 21)) <= Fraction(2, 100),
        "a_(2^e) = 1": ones,
        "limsup >= 0.95": full.limsup_estimate >= Fraction(95, 100),
        "liminf <= 0.55": full.liminf_estimate <= Fraction(55, 100),
    }
    detail = (f"a_1023={float(a_sub2):.6f} a_242={float(a_sub3):.6f} "
              f"limsup={float(full.limsup_estimate):.4f} liminf={float(full.liminf_estimate):.4f}; "
              f"failed={[k for k, v in checks.items() if not v]}")
    return all(checks.values()), detail


def criterion_3():
    rng = random.Random(3)
    bad = []
    for i in range(200):
        d = 2 + i % 2
        I = random_m_primary(rng, d)
        base = colength_value(I)
        for q in (2, 3, 4, 8):
            if colength_value(bracket_power(I, q)) != q ** d * base:
                bad.append((I.gens, q))
    return not bad, f"200 ideals x q in {{2,3,4,8}}; mismatches={len(bad)}"


def _volume_matrix():
    x = parse_ideal("x1", 2)
    return [
        (powers(M2), range(1, 13)),
        (powers(M3), range(1, 9)),
        (powers(parse_ideal("x1^3, x1*x2, x2^2")), range(1, 10)),
        (bracket(M2, p=2), [2 ** e for e in range(7)]),
        (bracket(parse_ideal("x1^2, x1*x2, x2^2"), p=3), [3 ** e for e in range(4)]),
        (generalized_bracket(M2, 2), range(1, 33)),
        (generalized_bracket(M3, 3), range(1, 15)),
        (floor_power(M2, Fraction(3, 2)), range(1, 13)),
        (closure_of(powers(parse_ideal("x1^2, x2^2"))), range(1, 10)),
        (colon_of(powers(M2), x), range(1, 12)),
        (product_of(template([["n", "0"], ["0", "n"]]), template([["n", "0"], ["0", "n"]])),
         range(1, 10)),
        (explicit([parse_ideal("x1^3, x2"), parse_ideal("x1, x2^5"), M2]),
         range(1, 4)),
    ]


def criterion_4():
    bad, count = [], 0
    for F, idx in _volume_matrix():
        ev = FamilyEvaluator(F)
        seq = {s.index: s.value for s in colength_sequence(ev, list(idx))}
        for n in idx:
            count += 1
            if region_volume(ev, n) != seq[n]:
                bad.append((F.kind, n))
    return not bad, f"{count} (family, index) pairs; mismatches={bad}"


def criterion_5():
    rows = []
    ok = True
    for F in (powers(M2), closure_of(powers(parse_ideal("x1^2, x2^2")))):
        ev = FamilyEvaluator(F)
        n = 60
        a = Fraction(colength_value(ev(n)), n ** 2)
        e = Fraction(hilbert_samuel(ev(n), cross_check=False), n ** 2)
        gap = abs(2 * a - e)
        ok &= gap <= Fraction(1, 100)
        rows.append(f"{F.kind}: |2a_60 - e/60^2|={float(gap):.4f}")
    hk_bad = []
    for I in (M2, M3, parse_ideal("x1^2, x1*x2, x2^2"), parse_ideal("x1^3, x1*x2, x2^2")):
        for p in (2, 3):
            ev = FamilyEvaluator(bracket(I, p=p))
            for q in default_plan(ev, 4 if p == 2 else 3):
                a = Fraction(colength_value(ev(q)), q ** I.dim)
                if a != hilbert_kunz(ev(q), p) / q ** I.dim:
                    hk_bad.append((I.gens, p, q))
    ok &= not hk_bad
    rows.append(f"p-power mismatches={len(hk_bad)}")
    return ok, "; ".join(rows)


def _random_natural(rng, d):
    I = random_m_primary(rng, d, max_pure=3 if d == 3 else 4, extra=2)
    k = rng.randrange(4 if d == 2 else 3)
    if k == 0:
        return powers(I)
    if k == 1:
        return closure_of(powers(I))
    if k == 2:
        return colon_of(powers(I), normalize([tuple(int(j == 0) for j in range(d))], d))
    return floor_power(I, Fraction(rng.choice([3, 4, 5]), 2))


def criterion_6():
    rng = random.Random(7)
    fails, errors = [], []
    for i in range(25):
        d = 2 + i % 2
        F, G = _random_natural(rng, d), _random_natural(rng, d)
        try:
            r = verify_minkowski(F, G, 16 if d == 2 else 12, tol=1e-3, D=4)
            if not r.passed:
                fails.append(i)
        except Exception as exc:  # a precondition failure counts against the suite
            errors.append((i, type(exc).__name__))
    for i in range(25):
        d = 2 + i % 2
        p = rng.choice([2, 3])
        I = random_m_primary(rng, d, 3, 2)
        J = random_m_primary(rng, d, 3, 2)
        try:
            r = verify_minkowski(bracket(I, p=p), bracket(J, p=p), 4 if p == 2 else 3, tol=1e-3)
            if not r.passed:
                fails.append(25 + i)
        except Exception as exc:
            errors.append((25 + i, type(exc).__name__))
    return not fails and not errors, f"50 pairs; failures={fails} errors={errors}"


def criterion_7():
    x_n_y = template([["n", "0"], ["0", "1"]])
    named = {
        "powers(m)": verify_positivity(powers(M2), 40),
        "(x^n, y)": verify_positivity(x_n_y, 40),
    }
    base_ok = (named["powers(m)"].lhs is True and named["powers(m)"].rhs is True
               and named["(x^n, y)"].lhs is False and named["(x^n, y)"].rhs is False)
    suite = [
        powers(M2), x_n_y, powers(parse_ideal("x1^2, x2^3")), floor_power(M2, Fraction(3, 2)),
        closure_of(powers(parse_ideal("x1^3, x2^2"))), template([["n", "0"], ["1", "1"], ["0", "n"]]),
        template([["2*n", "0"], ["0", "3*n"]]), template([["n", "0"], ["0", "2"]]),
        bracket(M2, p=2), powers(M3),
    ]
    results = []
    for F in suite:
        bound = 6 if F.index == "p-power" else (16 if F.d == 3 else 40)
        results.append(verify_positivity(F, bound).passed)
    ok = base_ok and all(r is True for r in results)
    return ok, f"powers(m) and (x^n,y) consistent={base_ok}; suite={results}"


def criterion_8():
    out = []
    ok = True
    for label, I in (("m", M2), ("m^2", power(M2, 2)), ("(x^2,xy,y^2)", parse_ideal("x1^2, x1*x2, x2^2")),
                     ("(x^3,xy,y^2)", parse_ideal("x1^3, x1*x2, x2^2"))):
        r = verify_brosowsky(bracket(I, p=2), 6)
        ok &= bool(r.passed) and r.lhs == r.rhs
        out.append(f"{label}: vol={r.lhs} limit={r.rhs}")
    return ok, "level q=64; " + ", ".join(out)


def _random_weakly_p(rng, i):
    d = 2 + i % 2
    p = rng.choice([2, 3])
    I = random_m_primary(rng, d, 3, 2)
    J = random_m_primary(rng, d, 3, 2)
    k = i % 4
    if k == 0:
        return bracket(I, p=p)
    if k == 1:
        c = tuple(rng.randint(0, 1) for _ in range(d))
        c = c if any(c) else (1,) + (0,) * (d - 1)
        return colon_of(bracket(I, p=p), normalize([c], d))
    if k == 2:
        return rng.choice([product_of, sum_of, intersect_of])(bracket(I, p=p), bracket(J, p=p))
    return powers(I, "p-power", p)


def criterion_9():
    rng = random.Random(11)
    bad = []
    for i in range(20):
        F = _random_weakly_p(rng, i)
        E = 4 if F.p == 2 else 3
        if not verify_p_family_up_to(F, E, 4).witness:
            bad.append((i, "no weakly-p witness"))
            continue
        est = limit_estimate(F, default_plan(F, E))
        if est.rate_constant is None or not math.isfinite(est.rate_constant) or not est.rate_holds:
            bad.append((i, est.rate_constant))
    return not bad, f"20 families; failures={bad}"


def criterion_10():
    hs = height_sample(powers(M2), hyperplane_grid(2, 1.0, 21), 512, 1e-6)
    origin = hs.points.index((0.0, 0.0))
    phi0 = hs.distances[origin]
    audit = lipschitz_audit(hs)
    bound = 1 / math.sqrt(2) + 2e-3
    ok = abs(phi0 - 1 / math.sqrt(2)) <= 1e-3 and audit.passed and audit.max_ratio <= bound
    return ok, f"phi(0)={phi0:.6f} max ratio={audit.max_ratio:.6f} c3={audit.c3:.6f}"


def criterion_11():
    bases = all(verify_ok_basis(ok_basis(d, p)) for d in (1, 2, 3) for p in (2, 3, 5))
    rng = random.Random(13)
    bad = 0
    for i in range(500):
        p = (2, 3, 5)[i % 3]
        d = 2 + (i // 3) % 2
        I = random_m_primary(rng, d, 5, 4)
        if not (frobenius_cover_check(I, p) and frobenius_converse_check(I, p)):
            bad += 1
    return bases and not bad, f"OK bases ok={bases}; cover failures={bad}/500"


def criterion_12():
    rng = random.Random(17)
    bad, n = [], 0
    while n < 500:
        d = 2 + n % 2
        I = random_m_primary(rng, d, 8, 14)
        if num_min_gens(I) > 12:
            continue
        n += 1
        a = colength(I, "box-enumeration").value
        b = colength(I, "inclusion-exclusion").value
        if a != b:
            bad.append(I.gens)
    return not bad, f"500 ideals with mu<=12; disagreements={len(bad)}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("number", range(1, 13))
def test_acceptance_criterion(number, verdict):
    ok, detail = CRITERIA[number - 1]()
    verdict(number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
