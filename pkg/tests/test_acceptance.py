"""Acceptance criteria 1-7, one test each.

Every test records a single ``criterion N: PASS|FAIL  ...`` line.  Under
pytest the lines are printed in the terminal summary; run this file directly
(``python3 tests/test_acceptance.py``) to print them without pytest.
"""

import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))

from compacton_lab import specfun as sf
from compacton_lab.classify import Kind, classical_conditions, classify_pointwise, \
    classify_profile, quadrature_case
from compacton_lab.conslaws import ConsLawId, applicable_laws
from compacton_lab.errors import DomainError
from compacton_lab.families import FamilyId, evaluate, make_profile
from compacton_lab.params import ReducedConstants, make_equation, make_wave, \
    reduced_constants, solitary_equation
from compacton_lab.quadrature import PotentialSpec, invert_profile, solitary_profile
from compacton_lab.verify import (DEFAULT_TOLERANCES, divergence_check, first_integral_check,
                                  oracle_deviation, random_tests, residual_reduced,
                                  residual_solitary, singular_terms, straddling_tests,
                                  weak_form_residual)

from conftest import COMPACT_FAMILIES, SOLITARY_FAMILIES, cos_instance, drawn_profiles

RESULTS = {}

WEAK_FAMILIES = [FamilyId.LinCos, FamilyId.LinSin, FamilyId.LinMixed, FamilyId.CnZeroKappa,
                 FamilyId.SnZeroKappa, FamilyId.AlgZeroKappa]


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    return line


def _spec_of(prof):
    return PotentialSpec(reduced_constants(prof.eq, prof.wave, C2=prof.C2),
                         prof.eq.m, prof.eq.n)


def test_criterion_1_closed_form_residuals():
    start = time.perf_counter()
    worst, where = 0.0, None
    for fam in COMPACT_FAMILIES + SOLITARY_FAMILIES:
        for prof in drawn_profiles(fam, 3, seed=101):
            r = residual_reduced(prof)
            if fam in SOLITARY_FAMILIES:
                r = max(r, residual_solitary(prof))
            if r > worst:
                worst, where = r, fam.value
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-5 and elapsed < 10.0
    print(report(1, ok, f"worst residual {worst:.2e} ({where}), {elapsed:.1f} s"))
    assert ok


def test_criterion_2_oracle_equivalence():
    start = time.perf_counter()
    cases = [make_profile(FamilyId.CosCompacton, *cos_instance())]
    cases += drawn_profiles(FamilyId.AlgZeroKappa, 3, seed=102)
    cases += drawn_profiles(FamilyId.CnZeroKappa, 3, seed=103)
    sup, lerr = 0.0, 0.0
    for prof in cases:
        dev, ldev = oracle_deviation(prof, invert_profile(_spec_of(prof), 200))
        sup, lerr = max(sup, dev), max(lerr, ldev)
    eq, w = cos_instance()
    num = invert_profile(PotentialSpec(reduced_constants(eq, w), 2, 2), 200)
    cos_dev = float(np.max(np.abs(num.U - np.cos(num.grid / 4) ** 2)))
    cos_L = abs(num.L - 2 * math.pi) / (2 * math.pi)
    elapsed = time.perf_counter() - start
    ok = max(sup, cos_dev) <= 1e-6 and max(lerr, cos_L) <= 1e-7 and elapsed < 30.0
    print(report(2, ok, f"sup {max(sup, cos_dev):.2e}, L rel {max(lerr, cos_L):.2e}, "
                        f"{elapsed:.1f} s"))
    assert ok


def test_criterion_3_solitary_reference_cases():
    # heavy tail, m = 9/5, A = 1/2, B = 2
    num = solitary_profile(0.5, 2.0, "9/5", "1/5", xi_max=1000.0, samples=2001)
    peak_err = abs(num.U[0] - 4 ** 1.25) / 4 ** 1.25
    far = (num.grid >= 100.0) & (num.grid <= 1000.0)
    slope = np.polyfit(np.log(num.grid[far]), np.log(num.U[far]), 1)[0]
    decay_err = abs(-slope - 2.5) / 2.5
    eq, w = solitary_equation(0.5, 2.0, "9/5", "1/5")
    closed = make_profile(FamilyId.HeavyTailHi, eq, w)
    near = num.grid <= 10.0
    shape = float(np.max(np.abs(num.U[near] - evaluate(closed, num.grid[near]))))
    # sub-linear sech family, m = 1/3, A = -3/2, B = -1
    sub = solitary_profile(-1.5, -1.0, "1/3", "1/3", xi_max=10.0, samples=101)
    target = 1.5 ** 1.5
    sub_err = abs(sub.U[0] - target) / target
    eq, w = solitary_equation(-1.5, -1.0, "1/3", "1/3")
    sub_closed = abs(evaluate(make_profile(FamilyId.SolitarySechSub, eq, w), 0.0) - target)
    ok = (peak_err <= 1e-10 and decay_err <= 0.02 and shape <= 1e-6 and sub_err <= 1e-10
          and sub_closed / target <= 1e-10)
    print(report(3, ok, f"heavy-tail peak err {peak_err:.1e}, decay {-slope:.4f} "
                        f"(err {decay_err:.1e}), sech-sub peak err {sub_err:.1e}"))
    assert ok


def _coherent(prof, tol2, tol4):
    """Disagreement description, or None when all three views agree."""
    cls = classify_profile(prof).kind
    st = singular_terms(prof)
    if st.implied_class is not cls:
        return f"singular pattern says {st.implied_class.value}, classifier {cls.value}"
    tests = random_tests(prof, 8, seed=0)
    if weak_form_residual(prof, tests, "second") > tol2:
        return "second-order weak form fails"
    fourth = weak_form_residual(prof, tests, "fourth")
    if cls is Kind.COMPACTON and fourth > tol4:
        return f"fourth-order weak form {fourth:.1e} on a compacton"
    if cls is Kind.WEAK:
        if weak_form_residual(prof, straddling_tests(prof), "fourth") <= 10 * tol4:
            return "straddling bump does not detect the surviving boundary term"
    if cls not in (Kind.COMPACTON, Kind.WEAK):
        return f"catalog profile classified {cls.value}"
    return None


def test_criterion_4_classification_coherence():
    tol2, tol4 = DEFAULT_TOLERANCES["weakform2"], DEFAULT_TOLERANCES["weakform4"]
    per_family = {f: drawn_profiles(f, 15, seed=104) for f in COMPACT_FAMILIES}
    draws = []
    for i in range(15):
        draws.extend(per_family[f][i] for f in COMPACT_FAMILIES)
    draws = draws[:200]
    bad = []
    for prof in draws:
        why = _coherent(prof, tol2, tol4)
        if why:
            bad.append(f"{prof.family.value}: {why}")
    ok = len(draws) == 200 and not bad
    detail = f"{len(draws)} draws, {len(bad)} disagreements"
    if bad:
        detail += f" (first: {bad[0]})"
    print(report(4, ok, detail))
    assert ok


def _parity_table_exact():
    try:
        sf.signed_pow(-4.0, Fraction(1, 2))
        return False
    except DomainError:
        pass
    try:
        sf.signed_pow(0.0, Fraction(-1, 3))
        return False
    except DomainError:
        pass
    return (sf.signed_pow(-8.0, Fraction(1, 3)) == -2.0
            and sf.signed_pow(-2.0, Fraction(2, 3)) == 2.0 ** (2.0 / 3.0)
            and sf.signed_pow(0.0, Fraction(1, 2)) == 0.0
            and sf.signed_pow(-27.0, Fraction(2, 3)) == 27.0 ** (2.0 / 3.0)
            and sf.signed_pow(-32.0, Fraction(3, 5)) == -(32.0 ** 0.6))


def test_criterion_5_special_functions():
    rng = np.random.default_rng(105)
    ident = 0.0
    for k in rng.uniform(0, 0.999, 100):  # 100 moduli x 100 arguments
        sn, cn, _ = sf.jacobi_sncndn(rng.uniform(-20, 20, 100), k)
        ident = max(ident, float(np.max(np.abs(sn ** 2 + cn ** 2 - 1))))
    K = sf.elliptic_K(1 / math.sqrt(2))
    z1 = sf.tan_fixed_points(1)[0]
    parity = _parity_table_exact()
    ok = (ident <= 1e-11 and abs(K - 1.8540746773) <= 1e-9
          and abs(z1 - 4.4934094579) <= 1e-9 and parity)
    print(report(5, ok, f"sn^2+cn^2-1 {ident:.1e}, K(1/sqrt2) {K:.10f}, z1 {z1:.10f}, "
                        f"parity table {'exact' if parity else 'WRONG'}"))
    assert ok


def test_criterion_6_conservation_laws():
    worst_fi, worst_div, weighted = 0.0, 0.0, 0
    for fam in COMPACT_FAMILIES + SOLITARY_FAMILIES:
        for prof in drawn_profiles(fam, 2, seed=106):
            for law in applicable_laws(prof.eq, prof.wave):
                worst_fi = max(worst_fi, first_integral_check(prof, law))
                weighted += law in (ConsLawId.WeightedMassCos, ConsLawId.WeightedMassSin)
        prof = drawn_profiles(fam, 1, seed=107)[0]
        for law in applicable_laws(prof.eq, prof.wave):
            worst_div = max(worst_div, divergence_check(prof, law, points=100))
    ok = worst_fi <= 1e-6 and worst_div <= 1e-4 and weighted > 0
    print(report(6, ok, f"first-integral variation {worst_fi:.1e}, divergence "
                        f"{worst_div:.1e}, weighted-mass checks {weighted}"))
    assert ok


def test_criterion_7_negative_controls():
    problems = []
    eq = make_equation(1, 1, 1, 2, 2, 2)
    case = quadrature_case(ReducedConstants(0.3, 0.2, 1.0, 1.0), eq)
    if case.quadrature_case != "E_nonzero" or case.exists_weak or case.exists_compacton:
        problems.append("E!=0 constants admitted a solution")
    p = Fraction(case.pn_value).limit_denominator(1000) / eq.n
    if classify_pointwise(p, eq, make_wave((1.0,), 1.75)).kind is not Kind.NOT_A_SOLUTION:
        problems.append("pn=1 not classified as not-a-solution")
    tol = DEFAULT_TOLERANCES["weakform4"]
    weak_checked = 0
    for fam in WEAK_FAMILIES:
        for prof in drawn_profiles(fam, 3, seed=108):
            weak_checked += 1
            if prof.pn != 2:
                problems.append(f"{fam.value} has pn={prof.pn}")
            if weak_form_residual(prof, random_tests(prof, 6), "second") > tol:
                problems.append(f"{fam.value} fails the second-order form")
            if weak_form_residual(prof, straddling_tests(prof), "fourth") <= 10 * tol:
                problems.append(f"{fam.value} passes the fourth-order form")
    classical = 0
    for fam in COMPACT_FAMILIES:
        for prof in drawn_profiles(fam, 5, seed=109):
            classical += classify_profile(prof).kind is Kind.CLASSICAL
            classical += classical_conditions(prof.p, prof.eq)
    if classical:
        problems.append(f"{classical} classical verdicts")
    ok = not problems
    detail = f"E!=0 rejected, {weak_checked} weak profiles discriminated, 0 classical"
    print(report(7, ok, detail if ok else "; ".join(problems[:3])))
    assert ok


if __name__ == "__main__":
    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_") and callable(fn):
            try:
                fn()
            except AssertionError:
                status = 1
    sys.exit(status)
