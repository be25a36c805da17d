import json
import math
from fractions import Fraction

import numpy as np
import pytest

from compacton_lab.classify import Kind, classify_profile
from compacton_lab.conslaws import ConsLawId
from compacton_lab.draws import draw
from compacton_lab.errors import NonCompact
from compacton_lab.families import FamilyId, Profile, make_profile, zero_profile
from compacton_lab.params import make_equation, make_wave
from compacton_lab.verify import (CHECKS, DEFAULT_TOLERANCES, TOLERANCE_ENV, CheckResult,
                                  TestFunction, derivative, estimate_cutoff_power, fd_weights,
                                  first_integral_check, numeric_singular_terms,
                                  parse_tolerance_overrides, random_tests, residual_reduced,
                                  run_checks, singular_terms, straddling_tests, tolerances,
                                  weak_form_residual)

from conftest import COMPACT_FAMILIES, drawn_profiles, line_instance


def draw_with_n(family, n, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(2000):
        eq, w, ex = draw(family, rng)
        if eq.n == n:
            return make_profile(family, eq, w, ex)
    raise RuntimeError("no draw with that n")


def synthetic(p, n=2, L=1.5):
    """U = (L^2 - xi^2)^p, not a solution of anything; only its cutoff power matters."""
    eq = make_equation(1, 1, 1, 2, n, 2)
    U0 = (2 * L) ** float(p)
    return Profile(None, eq, make_wave((1.0,), 1.75), 1.0, 0.0, None, None, L, Fraction(p),
                   U0, U0, "nonnegative", width=L,
                   func=lambda x: np.clip(L * L - x * x, 0, None) ** float(p))


# -- finite differences ----------------------------------------------------

def test_fd_weights_known():
    assert np.allclose(fd_weights(1, 1), [-0.5, 0, 0.5])
    assert np.allclose(fd_weights(2, 1), [1, -2, 1])
    assert np.allclose(fd_weights(1, 2), [1 / 12, -2 / 3, 0, 2 / 3, -1 / 12])


def test_derivative_of_polynomial_exact():
    x = np.linspace(-1, 1, 7)
    f = lambda t: t ** 4 - 2 * t ** 3
    assert np.allclose(derivative(f, x, 3, 0.1, half=3), 24 * x - 12, atol=1e-8)


# -- residuals -------------------------------------------------------------

def test_residual_cos(cos_profile):
    assert residual_reduced(cos_profile) <= 1e-5


def test_residual_linmixed():
    for prof in drawn_profiles(FamilyId.LinMixed, 3, seed=12):
        assert prof.C1 != 0.0 or prof.C2 != 0.0
        assert residual_reduced(prof) <= 1e-5


def test_residual_zero_profile():
    eq, w = line_instance()
    assert residual_reduced(zero_profile(eq, w, 2.0)) == 0.0


def test_residual_detects_wrong_constants(cos_profile):
    assert residual_reduced(cos_profile, C2=0.1) > 1e-3


# -- singular terms --------------------------------------------------------

def test_singular_cos_all_vanish(cos_profile):
    st = singular_terms(cos_profile)
    assert all(all(v.values()) for v in st.vanishing.values())
    assert st.implied_class is Kind.COMPACTON
    assert st.agreement <= 1e-3


def test_singular_lincos_A1_survives(lincos_profile):
    st = singular_terms(lincos_profile)
    for side in (1, -1):
        v = st.vanishing[side]
        assert v["A3"] and v["A2"] and not v["A1"]
        assert st.numeric[side]["A1"] == pytest.approx(st.analytic[side]["A1"], rel=1e-3)
    assert st.implied_class is Kind.WEAK


def test_lincos_A1_is_power_counting_value():
    # A1 -> b pn (pn-1) V0 for pn = 2, i.e. 2 b U0^n
    eq, w = line_instance(2)
    prof = make_profile(FamilyId.LinCos, eq, w)
    _, last = numeric_singular_terms(prof, 1, levels=10)
    assert last["A1"] == pytest.approx(2 * eq.b * prof.U0plus ** 2, rel=1e-3)


def test_singular_synthetic_pn_below_one():
    prof = synthetic(Fraction(9, 20))  # pn = 0.9
    st = singular_terms(prof)
    for side in (1, -1):
        assert st.vanishing[side]["A3"]
        assert not st.vanishing[side]["A2"]
        assert math.isinf(st.analytic[side]["A2"])
    assert st.implied_class is Kind.NOT_A_SOLUTION
    # A2 ~ d^-0.1 grows too slowly to be called divergent from eight halvings;
    # the mismatch with the analytic limit is what flags it
    assert st.agreement == math.inf


def test_singular_synthetic_numeric_divergence():
    prof = synthetic(Fraction(1, 4))  # pn = 0.5, A2 ~ d^-0.5
    st = singular_terms(prof)
    for side in (1, -1):
        assert math.isinf(st.numeric[side]["A2"]) and math.isinf(st.analytic[side]["A2"])
        assert math.isinf(st.numeric[side]["A1"])


def test_singular_non_compact():
    eq = make_equation(1, 1, 0, 2, 1, 1)
    prof = make_profile(FamilyId.SolitarySech, eq, make_wave((), 1.0))
    with pytest.raises(NonCompact):
        singular_terms(prof)


@pytest.mark.parametrize("family", COMPACT_FAMILIES)
def test_singular_pattern_matches_class(family):
    for prof in drawn_profiles(family, 3, seed=77):
        st = singular_terms(prof)
        assert st.implied_class is classify_profile(prof).kind
        assert st.agreement <= 1e-3


# -- weak form -------------------------------------------------------------

def test_bump_vanishes_with_derivatives():
    psi = TestFunction(0.3, 0.5, (1.0, -0.4))
    edge = np.array([-0.2, 0.8, -0.2 + 1e-3, 0.8 - 1e-3])
    for k in range(5):
        got = np.abs(psi.derivative(edge, k))
        assert got[0] == got[1] == 0.0 and np.all(got < 1e-80)


def test_bump_derivatives_against_differences():
    psi = TestFunction(0.1, 0.7, (0.5, 1.0, -0.3))
    x = np.linspace(-0.5, 0.7, 13)
    for k in range(1, 5):
        fd = derivative(lambda z: psi.derivative(z, k - 1), x, 1, 1e-4, half=3)
        assert np.allclose(psi.derivative(x, k), fd, rtol=1e-6, atol=1e-8)


def test_weak_form_cos(cos_profile):
    tests = random_tests(cos_profile, 20, seed=5)
    assert weak_form_residual(cos_profile, tests, "fourth") <= 1e-6
    assert weak_form_residual(cos_profile, tests, "second") <= 1e-6


def test_weak_form_lincos_discriminates(lincos_profile):
    assert weak_form_residual(lincos_profile, random_tests(lincos_profile, 20), "second") <= 1e-6
    assert weak_form_residual(lincos_profile, straddling_tests(lincos_profile),
                              "fourth") > 1e-5


def test_weak_form_zero_profile():
    eq, w = line_instance()
    z = zero_profile(eq, w, 2.0)
    tests = random_tests(z, 5)
    assert weak_form_residual(z, tests, "fourth") == 0.0
    assert weak_form_residual(z, tests, "second", relative=False) == 0.0


def test_weak_form_rejects_bad_order(cos_profile):
    with pytest.raises(ValueError):
        weak_form_residual(cos_profile, [], "third")


def test_weak_form_scaled_negative_control(cos_profile):
    bad = cos_profile.scaled(1.01)
    assert weak_form_residual(bad, random_tests(bad, 10), "fourth") > 1e-4


def test_random_tests_deterministic(cos_profile):
    assert random_tests(cos_profile, 7, seed=3) == random_tests(cos_profile, 7, seed=3)
    assert len(straddling_tests(cos_profile)) == 2


# -- cutoff power ----------------------------------------------------------

def test_power_cos(cos_profile):
    est, r2 = estimate_cutoff_power(cos_profile)
    assert est == pytest.approx(2.0, rel=0.02) and r2 > 0.999


def test_power_linsin_two_fifths():
    eq, w = line_instance(Fraction(2, 5))
    prof = make_profile(FamilyId.LinSin, eq, w)
    est, _ = estimate_cutoff_power(prof)
    assert est == pytest.approx(5.0, rel=0.02)


def test_power_alg_nonconvex():
    prof = draw_with_n(FamilyId.AlgNonconvex, Fraction(3, 2))
    est, _ = estimate_cutoff_power(prof)
    # exponent 1/(n-1) of the closed form, expanded at the cutoff
    assert est == pytest.approx(2.0, rel=0.02)
    assert prof.p == 2


@pytest.mark.parametrize("family", COMPACT_FAMILIES)
def test_power_matches_metadata(family):
    for prof in drawn_profiles(family, 3, seed=19):
        for side in (1, -1):
            est, _ = estimate_cutoff_power(prof, side)
            assert est == pytest.approx(float(prof.p), rel=0.02)


# -- tolerances and reports ------------------------------------------------

def test_parse_overrides():
    assert parse_tolerance_overrides("") == {}
    every = parse_tolerance_overrides("1e-7")
    assert set(every) == set(DEFAULT_TOLERANCES) and set(every.values()) == {1e-7}
    assert parse_tolerance_overrides("residual=1e-6, power=0.05") == {"residual": 1e-6,
                                                                       "power": 0.05}
    with pytest.raises(ValueError):
        parse_tolerance_overrides("bogus=1")


def test_tolerance_precedence(monkeypatch):
    monkeypatch.delenv(TOLERANCE_ENV, raising=False)
    assert tolerances() == DEFAULT_TOLERANCES
    monkeypatch.setenv(TOLERANCE_ENV, "residual=1e-3,singular=0.5")
    tol = tolerances({"singular": 0.25})
    assert tol["residual"] == 1e-3 and tol["singular"] == 0.25
    assert tol["power"] == DEFAULT_TOLERANCES["power"]


def test_env_tolerance_makes_checks_fail(monkeypatch, cos_profile):
    monkeypatch.setenv(TOLERANCE_ENV, "1e-20")
    rep = run_checks(cos_profile, ("residual",))
    assert not rep.passed and rep.entries[0].tolerance == 1e-20


def test_check_result_pass_rule():
    assert CheckResult("x", 1.0, 1.0).passed
    assert not CheckResult("x", math.inf, 1.0).passed
    assert not CheckResult("x", float("nan"), 1.0).passed


def test_report_cos(cos_profile, monkeypatch):
    monkeypatch.delenv(TOLERANCE_ENV, raising=False)
    rep = run_checks(cos_profile)
    assert rep.passed
    d = json.loads(rep.to_json())
    names = [e["check_name"] for e in d["entries"]]
    assert names == sorted(names)
    assert {"residual", "singular", "weakform2", "weakform4", "power"} <= set(names)
    assert "conslaw:Mass" in names and "divergence:TopologicalCharge" in names


def test_report_lincos_fails_only_fourth_order(lincos_profile, monkeypatch):
    monkeypatch.delenv(TOLERANCE_ENV, raising=False)
    rep = run_checks(lincos_profile)
    failing = [e.check_name for e in rep.entries if not e.passed]
    assert failing == ["weakform4"]
    assert "note" in [e for e in rep.entries if e.check_name == "weakform4"][0].details


def test_report_solitary_skips(monkeypatch):
    monkeypatch.delenv(TOLERANCE_ENV, raising=False)
    eq = make_equation(1, 1, 0, 2, 1, 1)
    prof = make_profile(FamilyId.SolitarySech, eq, make_wave((), 1.0))
    rep = run_checks(prof)
    assert rep.passed
    assert len(rep.skipped) == 4


def test_unknown_check(cos_profile):
    with pytest.raises(ValueError):
        run_checks(cos_profile, ("nope",))
    assert "weakform4" in CHECKS


def test_perturbation_consistency(monkeypatch):
    # residual and the mass first integral pass together and fail together.
    # Line compactons are linear in V = U^n: a rescaled one still solves the
    # equation, with integration constants rescaled by factor^n.
    monkeypatch.delenv(TOLERANCE_ENV, raising=False)
    for fam, scaled_ok in ((FamilyId.CosCompacton, False), (FamilyId.CnGeneral, False),
                           (FamilyId.SolitarySech, False), (FamilyId.LinCos, True)):
        prof = drawn_profiles(fam, 1, seed=6)[0]
        for factor, ok in ((1.0, True), (1.01, scaled_ok)):
            p = prof.scaled(factor)
            k = factor ** float(prof.eq.n)
            r = residual_reduced(p, C1=k * p.C1, C2=k * p.C2) <= DEFAULT_TOLERANCES["residual"]
            c = first_integral_check(p, ConsLawId.Mass) <= DEFAULT_TOLERANCES["conslaw"]
            assert r == c == ok, (fam, factor)
