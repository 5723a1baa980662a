import math
import warnings

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moduli_kit.elliptic import elliptic_isomorphic
from moduli_kit.errors import BadModuliPoint, NonPositiveInput, OutOfGuaranteedDomain
from moduli_kit.genus0 import cross_ratio_orbit
from moduli_kit.periods import (
    agm,
    agm_iterations,
    j_from_lambda,
    j_legendre_formula,
    legendre_periods,
    quadrature_periods,
    tau_from_lambda,
)

FIXED_LAMBDAS = (0.1, 0.25, 0.5, 0.75, 0.9)


def tanh_sinh_periods(lam):
    """Second oracle: mpmath tanh-sinh at 30 digits, singular endpoints left to the rule."""
    with mpmath.workdps(30):
        lam = mpmath.mpf(lam)
        w1 = mpmath.quad(lambda x: 1 / mpmath.sqrt(x * (1 - x) * (lam - x)), [0, lam])
        w2 = mpmath.quad(lambda x: 1 / mpmath.sqrt(x * (1 - x) * (x - lam)), [lam, 1])
    return complex(w1), 1j * complex(w2)


def test_agm_fixed_point_and_symmetry():
    assert agm(1, 1) == 1
    assert agm(1, 0.5) == agm(0.5, 1)
    assert agm_iterations(1.0, 0.5) <= 8


def test_agm_against_elliptic_integral_quadrature():
    # agm(1, b) = pi / (2 K(1 - b^2)) with K computed by tanh-sinh quadrature
    b = 0.5
    m = 1 - b * b
    with mpmath.workdps(30):
        K = mpmath.quad(lambda t: 1 / mpmath.sqrt(1 - m * mpmath.sin(t) ** 2), [0, mpmath.pi / 2])
    assert abs(agm(1, b) - float(mpmath.pi / (2 * K))) <= 1e-15


def test_agm_rejects_nonpositive():
    with pytest.raises(NonPositiveInput):
        agm(1, 0)
    with pytest.raises(NonPositiveInput):
        agm(-1, 2)


@pytest.mark.parametrize("lam", FIXED_LAMBDAS)
def test_periods_match_quadrature(lam):
    p = legendre_periods(lam)
    q1, q2 = quadrature_periods(lam)
    m1, m2 = tanh_sinh_periods(lam)
    assert abs(p.w1 - q1) <= 1e-9 and abs(p.w2 - q2) <= 1e-9
    assert abs(p.w1 - m1) <= 1e-9 and abs(p.w2 - m2) <= 1e-9
    # the two quadrature routes agree with each other well beyond the target
    assert abs(q1 - m1) <= 1e-11 and abs(q2 - m2) <= 1e-11


def test_half_gives_square_lattice():
    assert tau_from_lambda(0.5) == 1j


def test_tau_on_imaginary_axis_below_half():
    taus = [tau_from_lambda(x) for x in (0.05, 0.1, 0.2, 0.3, 0.4)]
    assert all(t.real == 0 and t.imag > 1 for t in taus)
    assert all(a.imag > b.imag for a, b in zip(taus, taus[1:]))


@given(st.floats(0.001, 0.999))
def test_lambda_swap_is_s(lam):
    t, u = tau_from_lambda(lam), tau_from_lambda(1 - lam)
    assert t.imag > 0
    assert abs(u - (-1 / t)) <= 1e-12 * max(1, abs(u))


def test_j_at_half():
    assert abs(j_from_lambda(0.5) - 1728) <= 1e-6


def test_j_symmetry_examples():
    assert abs(j_from_lambda(0.3) - j_from_lambda(0.7)) <= 1e-6
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert abs(j_from_lambda(0.2) - j_from_lambda(5)) <= 1e-4


def test_best_effort_is_flagged():
    with pytest.warns(UserWarning):
        p = legendre_periods(5)
    assert not p.guaranteed
    with pytest.raises(OutOfGuaranteedDomain):
        legendre_periods(5, strict=True)
    with pytest.raises(BadModuliPoint):
        legendre_periods(1)


@settings(max_examples=30)
@given(st.floats(0.02, 0.98))
def test_j_matches_closed_form(lam):
    # closed form is an independent algebraic route to the same number
    expected = j_legendre_formula(lam)
    assert abs(j_from_lambda(lam) - expected) <= 1e-8 * abs(expected)


@settings(max_examples=20)
@given(st.fractions(min_value="1/20", max_value="19/20", max_denominator=50))
def test_six_fold_invariance(lam):
    if lam == 0.5:
        return
    base = j_from_lambda(float(lam))
    for y in cross_ratio_orbit(lam):
        y = float(y.re)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            val = j_from_lambda(y)
        assert abs(val - base) <= 1e-6 * max(1, abs(base))


@settings(max_examples=20)
@given(st.fractions(min_value="1/20", max_value="19/20", max_denominator=50))
def test_isomorphism_coherence(lam):
    t = tau_from_lambda(float(lam))
    for y in cross_ratio_orbit(lam):
        y = float(y.re)
        if 0 < y < 1:
            assert elliptic_isomorphic(t, tau_from_lambda(y)) is not None


def test_framing_positive():
    for k in range(1, 100):
        p = legendre_periods(k / 100)
        assert (p.w2 / p.w1).imag > 0
        assert math.isclose(p.tau.real, 0.0, abs_tol=0)
