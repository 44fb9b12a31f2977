import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlocus.cyclo import CycloField
from modlocus.qtheta import (
    NumericPoint,
    PuiseuxSeries,
    coordinate_values,
    eta_series,
    eta_value,
    fricke_check,
    hauptmodul_exponent,
    hauptmodul_series,
    j_series,
    j_value,
    jacobian_a_series,
    s_transformation_residual,
    sample_locus,
    theta_series,
    verify_modular_equation,
    z_alpha_series,
    z_family_report,
    z_translation_multiplier,
)

Q = CycloField(1)

SAMPLE_TAUS = (1j, 2j, 0.5 + 1.5j, 0.2 + 2j, 3j)


def small_series():
    pairs = st.lists(
        st.tuples(
            st.fractions(min_value=-2, max_value=6, max_denominator=4),
            st.integers(-4, 4),
        ),
        max_size=5,
    )
    return pairs.map(lambda ps: PuiseuxSeries.from_pairs(Q, ps, 8))


# --- series arithmetic ------------------------------------------------------------


@given(small_series(), small_series(), small_series())
@settings(max_examples=60, deadline=None)
def test_series_ring_laws(a, b, c):
    assert ((a + b) + c).agrees(a + (b + c))
    assert (a * b).agrees(b * a)
    assert ((a * b) * c).agrees(a * (b * c))
    assert (a * (b + c)).agrees(a * b + a * c)


@given(small_series())
@settings(max_examples=40, deadline=None)
def test_series_inverse_is_one_sided_identity(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    prod = a * a.inverse()
    one = PuiseuxSeries.one(prod.field, prod.trunc)
    assert prod.agrees(one)
    assert prod.trunc > 0


def test_truncation_shrinks_under_negative_lead_products():
    t = PuiseuxSeries.from_pairs(Q, [(-1, 1), (0, 2)], 10)
    sq = t * t
    assert sq.trunc == Fraction(9)
    assert sq.leading() == (Fraction(-2), Q.one())


def test_coeff_refuses_orders_beyond_truncation():
    e = eta_series(1, 5)
    with pytest.raises(ValueError):
        e.coeff(Fraction(11, 2))


def test_translate_needs_a_large_enough_field():
    e = eta_series(1, 5)  # rational coefficients, grain 24
    with pytest.raises(ValueError):
        e.translate()


# --- eta --------------------------------------------------------------------------


def test_eta_leading_exponents():
    assert eta_series(1, 4).leading() == (Fraction(1, 24), Q.one())
    assert eta_series(13, 4).leading() == (Fraction(13, 24), Q.one())


def test_eta_matches_product_expansion():
    # independent construction: q^{1/24} prod_{n<=15} (1 - q^n)
    depth = Fraction(15)
    prod = PuiseuxSeries.one(Q, depth)
    for n in range(1, 16):
        prod = prod * PuiseuxSeries.from_pairs(Q, [(0, 1), (n, -1)], depth)
    prod = prod * PuiseuxSeries.from_pairs(Q, [(Fraction(1, 24), 1)], depth + 1)
    assert eta_series(1, depth).agrees(prod)


def test_eta_dilation_is_exponent_rescale():
    for N in (2, 5, 13):
        assert eta_series(N, 30).agrees(eta_series(1, Fraction(30, N) + 1).rescale(N).truncate(30))


def test_eta_value_agrees_with_series():
    tau = 0.3 + 0.9j
    series = eta_series(1, 40).evaluate(tau)
    assert abs(series - eta_value(tau)) < 1e-13


# --- theta constants ----------------------------------------------------------------


def test_odd_characteristic_theta_vanishes():
    assert theta_series(1, 1, 1, 30).is_zero()


def test_theta_phase_field_guard():
    with pytest.raises(ValueError):
        theta_series(Fraction(1, 13), 1, 13, 10, field=CycloField(4))


def test_theta_constants_match_direct_summation():
    # the six coordinate theta constants, summed naively in floats
    tau = 2j
    for k, sign in ((11, 1), (7, 1), (5, 1), (3, -1), (9, 1), (1, 1)):
        direct = 0j
        for n in range(-40, 41):
            direct += cmath.exp(
                2j * math.pi * (((n + k / 26) ** 2 * 13 / 2) * tau + (n + k / 26) / 2)
            )
        direct *= sign * cmath.exp(-1j * math.pi * k / 26)
        series = sign * cmath.exp(-1j * math.pi * k / 26) * theta_series(
            Fraction(k, 13), 1, 13, 30
        ).evaluate(tau)
        assert abs(series - direct) < 1e-12


# --- j ------------------------------------------------------------------------------


def test_j_first_coefficients():
    j = j_series(4)
    assert j.leading() == (Fraction(-1), Q.one())
    for order, value in ((0, 744), (1, 196884), (2, 21493760)):
        assert j.coeff(order) == Q.from_rational(value)


def test_j_times_discriminant_is_eisenstein_cube():
    K = Fraction(12)
    j = j_series(K)
    delta = eta_series(1, K + 3) ** 24
    bound = int(K) + 2
    sigma3 = [0] * (bound + 1)
    for d in range(1, bound + 1):
        for n in range(d, bound + 1, d):
            sigma3[n] += d**3
    e4 = PuiseuxSeries.from_pairs(
        Q, [(0, 1)] + [(n, 240 * sigma3[n]) for n in range(1, bound + 1)], K + 1
    )
    assert (j * delta).agrees(e4**3)


def test_j_special_values():
    assert abs(j_value(1j) - 1728) < 1e-9
    assert abs(j_value(2j) - 66**3) < 1e-6
    assert abs(j_series(40).evaluate(2j) - j_value(2j)) < 1e-6


# --- hauptmoduln and the classical relations -----------------------------------------


def test_hauptmodul_exponents():
    assert [hauptmodul_exponent(p) for p in (2, 3, 5, 7, 13)] == [24, 12, 6, 4, 2]
    with pytest.raises(ValueError):
        hauptmodul_exponent(11)


def test_hauptmodul_leading_terms():
    for p in (2, 3, 5, 7, 13):
        assert hauptmodul_series(p, 5).leading() == (Fraction(-1), Q.one())


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_modular_equation_rows_all_ok(p):
    rows = verify_modular_equation(p, 30)
    assert all(r["status"] == "ok" for r in rows), rows
    names = [r["identity"] for r in rows]
    assert names[:2] == ["j_in_hauptmodul", "transformed_j_in_hauptmodul"]
    if p in (7, 13):
        assert "unity_gap_factorization" in names
        assert "quartic_factor_surd_split" in names
    if p == 13:
        assert "unity_gap_coefficients" in names
        assert "sextic_factor_surd_split" in names


@pytest.mark.parametrize("p", [5, 13])
def test_modular_equation_deeper_order_stays_clean(p):
    assert all(r["status"] == "ok" for r in verify_modular_equation(p, 50))


# --- coordinate series ----------------------------------------------------------------


@pytest.mark.parametrize("p", [7, 11, 13])
def test_z_family_report(p):
    report = z_family_report(p)
    assert report["odd_symmetry"]
    assert report["translation_twist"]
    assert report["translation_character"]


def test_translation_multiplier_small_case():
    # alpha = 1 at p = 7: the multiplier is the universal eighth root times
    # a primitive seventh root to the power 1*(1-7)/2 = -3
    F = CycloField(56)
    eighth = F.zeta(49 % 56)
    eps = F.zeta(8)
    assert z_translation_multiplier(7, 1) == eighth * eps ** (7 - 3)
    z = z_alpha_series(7, 1, 10)
    assert z.translate().agrees(z * z_translation_multiplier(7, 1))


def test_z_ratio_and_jacobian_family():
    report = z_family_report(7)
    assert report["jacobian_ratio"]
    assert report["ratio_leading"]
    z1 = z_alpha_series(7, 1, 14)
    z2 = z_alpha_series(7, 2, 14)
    a0 = jacobian_a_series(7, 0, 14)
    a1 = jacobian_a_series(7, 1, 14)
    diff = a1 * z1 - a0 * z2
    assert diff.truncate(10).is_zero()
    lead, coeff = (z2 / z1).leading()
    assert lead == Fraction(-2, 7)
    assert coeff == -CycloField(56).one()


def test_z_alpha_evaluates_like_its_terms():
    z = z_alpha_series(11, 3, 30)
    tau = 1.5j
    brute = sum(
        c.to_complex() * cmath.exp(2j * math.pi * tau * k / z.grain)
        for k, c in z.terms.items()
    )
    assert abs(z.evaluate(tau) - brute) < 1e-14


# --- locus sampling --------------------------------------------------------------------


@pytest.mark.parametrize("p", [7, 11, 13])
@pytest.mark.parametrize("tau", SAMPLE_TAUS)
def test_sampled_points_satisfy_the_ideal(p, tau):
    pt = sample_locus(p, tau)
    assert isinstance(pt, NumericPoint)
    assert pt.residual < 1e-9
    assert pt.tolerance == 1e-9
    assert abs(pt.j - j_value(tau)) < 1e-6 * max(1.0, abs(pt.j))
    assert abs(pt.J * 1728 - pt.j) < 1e-9 * max(1.0, abs(pt.j))


def test_sample_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        sample_locus(7, 1 - 2j)


def test_sample_reports_residual_breach():
    with pytest.raises(ValueError, match="residual"):
        sample_locus(13, 2j, tolerance=1e-30)


def test_hauptmodul_root_reproduces_j():
    from modlocus.invariants import covariants7

    cov = covariants7()
    for tau in SAMPLE_TAUS:
        pt = sample_locus(7, tau)
        d_inf = cov.delta["inf"].evaluate(pt.coords)
        nabla = cov.nabla.evaluate(pt.coords)
        root = -(d_inf**2) / nabla
        image = (root**2 + 13 * root + 49) * (root**2 + 5 * root + 1) ** 3 / (1728 * root)
        assert abs(image - pt.J) < 1e-6 * max(1.0, abs(pt.J))


@pytest.mark.parametrize("p", [7, 11, 13])
def test_inversion_acts_by_the_unitary_generator(p):
    report = s_transformation_residual(p, 2j)
    assert report["residual"] < 1e-8
    assert abs(report["scalar"]) > 0.1


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_fricke_products(p):
    report = fricke_check(p, 2j)
    assert report["error"] < 1e-8 * report["expected"]
    # a second base point, off the imaginary axis
    report = fricke_check(p, 0.3 + 1.1j)
    assert report["error"] < 1e-8 * report["expected"]


def test_coordinate_values_rejects_unknown_level():
    with pytest.raises(ValueError):
        coordinate_values(5, 2j)
