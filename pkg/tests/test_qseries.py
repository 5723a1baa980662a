import random
from math import gcd

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from moduli_kit.elliptic import IDENTITY, RHO, S, word_matrix
from moduli_kit.errors import DivergentTail
from moduli_kit.qseries import (
    ANALYTIC_PREFACTOR,
    QSeries,
    delta_from_eisenstein,
    delta_series,
    divisor_sigma,
    eisenstein,
    evaluate,
    evaluate_form,
    j_direct,
    j_invariant,
    j_series,
    weight_check,
)


def test_eisenstein_coefficients():
    e4, e6 = eisenstein(4, 10), eisenstein(6, 10)
    assert e4[1] == 240 and e4[2] == 2160 and e6[1] == -504
    for n in range(1, 11):
        assert e4[n] == 240 * int(sympy.divisor_sigma(n, 3))
        assert e6[n] == -504 * int(sympy.divisor_sigma(n, 5))


def test_divisor_sigma_matches_sympy():
    for n in range(1, 200):
        assert divisor_sigma(n, 3) == int(sympy.divisor_sigma(n, 3))


def test_delta_leading_terms():
    d = delta_series(10)
    assert d.lead == 1 and d[1] == 1 and d[2] == -24


def jacobi_delta(N):
    """Oracle: Delta = q * (sum (-1)^k (2k+1) q^(k(k+1)/2))^8 (Jacobi's triple product)."""
    cube = [0] * N
    k = 0
    while k * (k + 1) // 2 < N:
        cube[k * (k + 1) // 2] += (-1) ** k * (2 * k + 1)
        k += 1
    out = [1] + [0] * (N - 1)
    for _ in range(8):
        out = [sum(out[i] * cube[n - i] for i in range(n + 1)) for n in range(N)]
    return out


def test_delta_against_jacobi_identity():
    N = 64
    assert list(delta_series(N).coeffs) == jacobi_delta(N)


def test_delta_two_routes_agree_exactly():
    for N in (1, 5, 32, 64):
        assert delta_series(N).coeffs == delta_from_eisenstein(N).coeffs


def test_analytic_normalization_keeps_integers():
    d = delta_series(8, "paper")
    assert d.prefactor == ANALYTIC_PREFACTOR
    assert d.coeffs == delta_series(8).coeffs


def test_j_leading_expansion():
    j = j_series(32)
    assert j.lead == -1
    assert [j[n] for n in (-1, 0, 1, 2)] == [1, 744, 196884, 21493760]
    assert j.truncation == 33


def test_j_times_delta_is_e4_cubed():
    N = 40
    j, d, e4 = j_series(N), delta_series(N + 1), eisenstein(4, N)
    assert (j * d).same_terms(e4 ** 3)


@pytest.mark.parametrize("N", [16, 64])
def test_ramanujan_multiplicativity(N):
    d = delta_series(N)
    for m in range(2, N + 1):
        for n in range(2, N // m + 1):
            if gcd(m, n) == 1:
                assert d[m * n] == d[m] * d[n]


def test_truncation_tracking():
    a = QSeries(0, (1, 2, 3))
    b = QSeries(1, (1, 1, 1, 1, 1))
    assert (a + b).prec == 3
    assert (a * b).prec == 4  # relative precision 3 from a
    inv = b.inverse()
    assert inv.lead == -1 and inv.prec == 4
    assert (b * inv).same_terms(QSeries(0, (1, 0, 0, 0, 0)))
    with pytest.raises(IndexError):
        a[3]
    with pytest.raises(ValueError):
        QSeries(0, (2, 1)).inverse()


def test_text_roundtrip():
    for s in (j_series(10), delta_series(7), eisenstein(6, 5), QSeries(-1, (1, 0, 0, 5))):
        text = s.to_text()
        back = QSeries.from_text(text)
        assert back.lead == s.lead and back.coeffs == s.coeffs
        assert back.to_text() == text
    assert j_series(2).to_text() == "-1 1\n0 744\n1 196884\n2 21493760\n"


def test_evaluate_constant():
    assert evaluate(QSeries(0, (1,)), 0.3 + 0.7j).value == 1


def test_evaluate_divergence():
    with pytest.raises(DivergentTail):
        evaluate_form("E4", 0.1 + 1e-4j)


def mp_j(tau):
    return complex(1728 * mpmath.kleinj(mpmath.mpc(tau.real, tau.imag)))


@pytest.mark.parametrize("tau, expected", [(1j, 1728), (7 + 1j, 1728), (2j, 287496), (RHO, 0)])
def test_j_special_values(tau, expected):
    assert abs(j_invariant(tau) - expected) <= 1e-6


def test_j_series_evaluation_at_i():
    ev = evaluate(j_series(20), 1j)
    assert abs(ev.value - 1728) <= 1e-6
    ev = evaluate(j_series(32), RHO)
    assert abs(ev.value) <= 1e-6


@settings(max_examples=50)
@given(st.floats(-0.5, 0.5), st.floats(0.9, 2.5))
def test_j_matches_mpmath(x, y):
    tau = complex(x, y)
    expected = mp_j(tau)
    assert abs(j_invariant(tau) - expected) <= 1e-9 * max(1, abs(expected))


@settings(max_examples=50)
@given(st.floats(-0.5, 0.5), st.floats(0.87, 2.5), st.lists(st.sampled_from(["S", "T", "T^-1"]), max_size=10))
def test_j_orbit_invariance(x, y, word):
    # absolute bound on reduced tau, where |j| < 1e8 keeps it above float64 noise
    tau = complex(x, y)
    g = word_matrix(word)
    assert abs(j_invariant(g.act(tau)) - j_invariant(tau)) <= 1e-6


@given(st.floats(-0.5, 0.5), st.floats(0.8, 3), st.sampled_from([16, 24, 32, 48]))
def test_error_estimate_is_sound(x, y, N):
    tau = complex(x, y)
    for s in (j_series(N), eisenstein(4, N), delta_series(N)):
        small, big = evaluate(s, tau), evaluate(_doubled(s, N), tau)
        assert abs(big.value - small.value) <= small.error


def _doubled(s, N):
    if s.lead == -1:
        return j_series(2 * N)
    if s.coeffs[0] == 1 and s.lead == 0:
        return eisenstein(4, 2 * N)
    return delta_series(2 * N)


def test_weight_identity_is_exact_zero():
    assert weight_check("E4", 4, IDENTITY, 0.1 + 1.2j) == 0.0


def test_e4_weight_at_i():
    assert weight_check("E4", 4, S, 1j) <= 1e-6


def test_j_weight_zero_random_words():
    rng = random.Random(7)
    tau = 0.1 + 1.2j
    checked = 0
    while checked < 10:
        word = [rng.choice(["S", "T", "T^-1"]) for _ in range(rng.randint(1, 6))]
        g = word_matrix(word)
        if g.act(tau).imag < 0.15:
            continue  # outside the range where the raw series converge
        assert weight_check("j", 0, g, tau) <= 1e-6
        checked += 1


@pytest.mark.parametrize("form, k", [("E4", 4), ("E6", 6), ("Delta", 12)])
def test_weight_relative(form, k):
    tau = 0.2 + 1.1j
    for word in ("S", "S T", "T S T T", "S T^-1 S"):
        g = word_matrix(word)
        scale = abs((g.c * tau + g.d) ** k * evaluate_form(form, tau).value)
        assert weight_check(form, k, g, tau) <= 1e-9 * max(1, scale)


def test_wrong_weight_detected():
    assert weight_check("E4", 6, S, 0.1 + 1.2j) > 1e-2


def test_j_direct_agrees_with_reduction():
    tau = -0.3 + 0.8j
    assert abs(j_direct(tau) - j_invariant(tau)) <= 1e-6 * abs(j_invariant(tau))


@settings(max_examples=200)
@given(st.floats(-2, 2), st.floats(0.3, 2.5), st.lists(st.sampled_from(["S", "T", "T^-1"]), max_size=10))
def test_j_orbit_invariance_relative(x, y, word):
    # away from the reduced region |j| can reach 1e9; relative error stays near double precision
    tau = complex(x, y)
    j0 = j_invariant(tau)
    assert abs(j_invariant(word_matrix(word).act(tau)) - j0) <= 1e-12 * max(1, abs(j0))
