import math
from fractions import Fraction

import numpy as np
import pytest

from compacton_lab import specfun as sf
from compacton_lab.errors import DimensionMismatch, ParityError, ValidityError
from compacton_lab.families import (FAMILY_TABLE, FamilyId, catalog_admissible, evaluate,
                                    evaluate_field, family_cutoff_power, make_profile,
                                    validity_failures, zero_profile)
from compacton_lab.params import make_equation, make_wave, solitary_equation
from compacton_lab.verify import estimate_cutoff_power, residual_reduced, residual_solitary

from conftest import (COMPACT_FAMILIES, SOLITARY_FAMILIES, cos_instance, drawn_profiles,
                      line_instance)


def test_cos_compacton_closed_form(cos_profile):
    p = cos_profile
    assert p.alpha == pytest.approx(1.0, rel=1e-15)
    assert p.L == pytest.approx(2 * math.pi, rel=1e-15)
    xi = np.linspace(-2 * math.pi, 2 * math.pi, 101)
    assert np.max(np.abs(evaluate(p, xi) - np.cos(xi / 4) ** 2)) < 1e-14
    assert evaluate(p, 0.0) == 1.0
    assert p.p == 2 and p.sign_class == "nonnegative"


def test_solitary_sech_closed_form():
    eq = make_equation(1, 1, 0, 2, 1, 1)
    p = make_profile(FamilyId.SolitarySech, eq, make_wave((), 1.0))
    xi = np.linspace(-10, 10, 81)
    assert np.max(np.abs(evaluate(p, xi) - 1.5 / np.cosh(xi / 2) ** 2)) < 1e-14
    assert not p.compact and p.p is None


def test_heavy_tail_peak():
    eq, w = solitary_equation(0.5, 2.0, "9/5", "1/5")
    p = make_profile(FamilyId.HeavyTailHi, eq, w)
    assert evaluate(p, 0.0) == pytest.approx(4 ** 1.25, rel=1e-12)


def test_sub_linear_sech_peak():
    eq, w = solitary_equation(-1.5, -1.0, "1/3", "1/3")
    p = make_profile(FamilyId.SolitarySechSub, eq, w)
    assert evaluate(p, 0.0) == pytest.approx(1.5 ** 1.5, rel=1e-12)


def test_sin_compacton_squared_node():
    eq, w = cos_instance()
    p = make_profile(FamilyId.SinCompacton, eq, w)
    assert p.q == Fraction(2) and p.sign_class == "squared-node"
    xi = np.linspace(-p.L, p.L, 201)
    assert np.all(evaluate(p, xi) >= 0)


def test_zero_kappa_requires_pin():
    eq = make_equation(1, 1, 1, 4, 2, 2)
    with pytest.raises(ValidityError, match="κ=0"):
        make_profile(FamilyId.CnZeroKappa, eq, make_wave((1.0,), 1.5))


def test_validity_error_names_predicate():
    eq = make_equation(1, -1, 1, 2, 2, 2)
    with pytest.raises(ValidityError, match="sgn"):
        make_profile(FamilyId.CosCompacton, eq, make_wave((1.0,), 1.75))


def test_unknown_extra_rejected(cos_profile):
    eq, w = cos_instance()
    with pytest.raises(ValueError):
        make_profile(FamilyId.CosCompacton, eq, w, {"alpha": 2.0})


def test_linmixed_parity():
    eq, w = line_instance(2)
    with pytest.raises(ParityError):
        make_profile(FamilyId.LinMixed, eq, w)


def test_linmixed_half_width_from_tan_root():
    eq = make_equation(2, 1, 1, 3, 3, 2)
    w = make_wave((1.0,), 1.0)
    z = sf.tan_fixed_points(2)
    for j in (1, 2):
        p = make_profile(FamilyId.LinMixed, eq, w, {"root_index": j})
        assert p.L == pytest.approx(math.sqrt(0.5) * z[j - 1], rel=1e-14)
        assert evaluate(p, p.L) == 0.0 and evaluate(p, -p.L) == 0.0
        assert abs(evaluate(p, p.L * (1 - 1e-12))) < 1e-3
        assert p.sign_class == "sign-changing"


def test_outside_support_is_zero():
    for fam in COMPACT_FAMILIES:
        for p in drawn_profiles(fam, 2, seed=hash(fam.value) % 1000):
            xs = np.array([p.L, -p.L, 1.0001 * p.L, 2 * p.L, -5 * p.L])
            assert np.all(evaluate(p, xs) == 0.0)
            # continuity at the cutoff
            assert abs(evaluate(p, p.L * (1 - 1e-9))) < 1e-3 * max(1.0, abs(p.alpha))


@pytest.mark.parametrize("family", list(FamilyId))
def test_reduced_ode_residual(family):
    for p in drawn_profiles(family, 3, seed=11):
        assert residual_reduced(p, frac=0.9) <= 1e-5


@pytest.mark.parametrize("family", SOLITARY_FAMILIES)
def test_first_order_solitary_ode(family):
    for p in drawn_profiles(family, 3, seed=5):
        assert residual_solitary(p) <= 1e-8


@pytest.mark.parametrize("family", COMPACT_FAMILIES)
def test_cutoff_power_regression(family):
    for p in drawn_profiles(family, 2, seed=3):
        est, r2 = estimate_cutoff_power(p)
        assert est == pytest.approx(float(p.p), rel=0.02)
        assert r2 > 0.999
        assert family_cutoff_power(family, p.eq) == p.p


def test_symmetry_metadata():
    for fam in COMPACT_FAMILIES:
        for p in drawn_profiles(fam, 2, seed=21):
            xi = np.linspace(0.01, 0.99, 57) * p.L
            plus, minus = evaluate(p, xi), evaluate(p, -xi)
            if p.symmetry == "even":
                assert np.allclose(plus, minus, rtol=1e-12, atol=1e-300)
            else:
                assert np.allclose(plus, -minus, rtol=1e-12, atol=1e-300)
                assert p.sign_class == "sign-changing"
            if p.sign_class == "sign-changing":
                assert p.q.numerator % 2 == 1 and p.q.denominator % 2 == 1


def test_kappa_invariance():
    eq = make_equation(1.2, 0.8, 1, "3/2", "3/2", 2)
    p1 = make_profile(FamilyId.CosCompacton, eq, make_wave((0.5,), 0.25 + 0.6))
    p2 = make_profile(FamilyId.CosCompacton, eq, make_wave((1.5,), 2.25 + 0.6))
    xi = np.linspace(-p1.L, p1.L, 41)
    assert np.allclose(evaluate(p1, xi), evaluate(p2, xi), rtol=1e-13, atol=0)


def test_cos_scaling_with_kappa():
    eq = make_equation(1, 1, 1, 2, 2, 2)
    p1 = make_profile(FamilyId.CosCompacton, eq, make_wave((1.0,), 1.5))
    p2 = make_profile(FamilyId.CosCompacton, eq, make_wave((1.0,), 3.0))
    assert evaluate(p2, 0.0) / evaluate(p1, 0.0) == pytest.approx(4.0, rel=1e-14)
    assert p1.L == pytest.approx(p2.L, rel=1e-15)


def test_alg_general_width_scaling():
    eq = make_equation(1, 1, 1, "3/2", 2, 2)
    p1 = make_profile(FamilyId.AlgGeneral, eq, make_wave((1.0,), 1.5))
    p2 = make_profile(FamilyId.AlgGeneral, eq, make_wave((1.0,), 3.0))
    assert p2.L / p1.L == pytest.approx(2.0, rel=1e-14)


def test_field_evaluation(cos_profile):
    p = cos_profile
    assert evaluate_field(p, 0.0, 1.3, (0.0,)) == evaluate(p, 1.3)
    t, x, y, d = 0.4, -1.0, 0.7, 0.37
    assert evaluate_field(p, t + d, x + p.wave.nu * d, (y,)) == pytest.approx(
        evaluate_field(p, t, x, (y,)), abs=1e-12)
    with pytest.raises(DimensionMismatch):
        evaluate_field(p, 0.0, 0.0, (0.0, 0.0))


def test_field_three_dimensions():
    eq = make_equation(1, 1, -1, 2, 2, 3)
    p = make_profile(FamilyId.CosCompacton, eq, make_wave((1.0, 1.0), 2.0))
    assert evaluate_field(p, 0.0, 1.0, (1.0, 1.0)) == evaluate(p, 3.0)


def test_catalog_admissible_examples():
    eq, w = line_instance(2)
    assert catalog_admissible(eq, w) == [FamilyId.LinCos, FamilyId.LinSin, FamilyId.LinMixed]
    eq = make_equation(1, 1, 1, 4, 2, 2)
    got = catalog_admissible(eq, make_wave((1.0,), 1.0))
    assert {FamilyId.CnZeroKappa, FamilyId.SnZeroKappa} <= set(got)
    eq, w = cos_instance()
    assert {FamilyId.CosCompacton, FamilyId.SinCompacton} <= set(catalog_admissible(eq, w))


def test_zero_kappa_membership_invariant():
    eq = make_equation(1, 1, 1, 4, 2, 2)
    a = catalog_admissible(eq, make_wave((1.0,), 1.0))
    b = catalog_admissible(eq, make_wave((-2.5,), 6.25))
    assert a == b


def test_every_admissible_family_builds():
    rng = np.random.default_rng(2)
    from compacton_lab.draws import draw
    for fam in FamilyId:
        eq, w, _ = draw(fam, rng)
        assert fam in catalog_admissible(eq, w)
        assert validity_failures(fam, eq, w) == []


def test_family_table_complete():
    assert set(FAMILY_TABLE) == set(FamilyId)
    for fam, info in FAMILY_TABLE.items():
        assert info.family is fam and info.summary


def test_zero_profile():
    eq, w = cos_instance()
    z = zero_profile(eq, w, 2.0)
    assert np.all(evaluate(z, np.linspace(-3, 3, 11)) == 0.0)


def test_scaled_profile_breaks_equation(cos_profile):
    bad = cos_profile.scaled(1.01)
    assert residual_reduced(bad) > 1e-3
