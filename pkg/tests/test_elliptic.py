import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moduli_kit.elliptic import (
    IDENTITY,
    RHO,
    S,
    T,
    T_INV,
    IntegerMatrix2,
    Kind,
    aut_group_order,
    classify_sl2,
    elliptic_isomorphic,
    in_fundamental_domain,
    lattices_homothetic,
    reduce_tau,
    stabilizer_order,
    tau_from_basis,
    word_matrix,
)
from moduli_kit.errors import DegenerateBasis, NonConvergence, NotInUpperHalfPlane, NotUnimodular, ScalarMatrix
from moduli_kit.qseries import j_invariant


def brute_force_reduction(tau, max_len=4):
    """Oracle: shortest generator words (applied left to right) landing tau in F."""
    hits = []
    for n in range(max_len + 1):
        for word in itertools.product(("S", "T", "T^-1"), repeat=n):
            z = word_matrix(word).act(tau)
            if in_fundamental_domain(z):
                hits.append((word, z))
        if hits:
            return hits
    return hits


def test_tau_from_basis():
    assert tau_from_basis(1, 1j) == 1j
    assert tau_from_basis(1, -1j) == 1j
    assert tau_from_basis(2, 2j + 2) == 1 + 1j
    with pytest.raises(DegenerateBasis):
        tau_from_basis(1, 3)


def test_reduce_translation():
    r = reduce_tau(2 + 1j)
    assert r.tau == 1j
    assert r.gamma == IntegerMatrix2(1, -2, 0, 1)
    assert r.word == ("T^-1", "T^-1")


def test_reduce_identity():
    r = reduce_tau(1j)
    assert r.tau == 1j and r.gamma == IDENTITY and r.word == ()


def test_reduce_against_brute_force():
    hits = brute_force_reduction(0.3 + 0.4j)
    assert [w for w, _ in hits] == [("S", "T")]
    r = reduce_tau(0.3 + 0.4j)
    assert abs(r.tau - (-0.2 + 1.6j)) < 1e-12
    assert abs(r.tau - hits[0][1]) < 1e-12
    assert r.word == ("S", "T")
    assert r.gamma == IntegerMatrix2(1, -1, 1, 0)


def test_word_order_convention():
    # "S T": S first, then T
    assert word_matrix("S T") == T @ S
    assert word_matrix(["T^-1"]) == T_INV
    with pytest.raises(ValueError):
        word_matrix("U")


@pytest.mark.parametrize(
    "tau, inside",
    [(1j, True), (2 + 1j, False), (complex(0.5, math.sqrt(3) / 2), False), (RHO, True),
     (complex(0.5, 2), False), (complex(-0.5, 2), True), (0.3 + 0.9j, False),
     (complex(math.cos(1.2), math.sin(1.2)), False), (complex(math.cos(1.9), math.sin(1.9)), True)],
)
def test_fundamental_domain_membership(tau, inside):
    assert in_fundamental_domain(tau) is inside


def test_rejects_lower_half_plane():
    with pytest.raises(NotInUpperHalfPlane):
        reduce_tau(1 - 1j)


def test_nonconvergence_bound():
    with pytest.raises(NonConvergence):
        reduce_tau(0.123456 + 1e-6j, max_steps=3)


def test_homothety():
    assert lattices_homothetic((1, 1j), (2, 2j)) == pytest.approx(0.5)
    lam = lattices_homothetic((1, 1j), (1, 1 + 1j))
    assert lam is not None and abs(abs(lam) - 1) < 1e-12
    assert lattices_homothetic((1, 1j), (1, 2j)) is None
    # j distinguishes the last pair independently
    assert abs(j_invariant(1j) - j_invariant(2j)) > 1e5


def _lattice_contains(basis, z, tol=1e-9):
    w1, w2 = basis
    m = np.array([[w1.real, w2.real], [w1.imag, w2.imag]])
    x = np.linalg.solve(m, [z.real, z.imag])
    return np.allclose(x, np.round(x), atol=tol)


@given(st.floats(-3, 3), st.floats(0.2, 3), st.floats(0.1, 5), st.floats(-math.pi, math.pi),
       st.sampled_from(["S T T", "T^-1 S", "S T^-1 S T T", ""]))
def test_homothety_recovers_scale(x, y, r, theta, word):
    tau = complex(x, y)
    b2 = (1.0 + 0j, tau)
    g = word_matrix(word)
    lam = r * complex(math.cos(theta), math.sin(theta))
    # another basis of lam * lattice(b2)
    b1 = (lam * (g.c * tau + g.d), lam * (g.a * tau + g.b))
    got = lattices_homothetic(b1, b2)
    assert got is not None
    for w in b2:
        assert _lattice_contains(b1, got * w, 1e-6)
    for w in b1:
        assert _lattice_contains(tuple(got * v for v in b2), w, 1e-6)


def test_isomorphic_examples():
    tau = 0.17 + 1.3j
    assert elliptic_isomorphic(tau, tau + 1) == T
    assert elliptic_isomorphic(1j, 2j) is None
    g = elliptic_isomorphic(0.3 + 0.4j, -0.2 + 1.6j)
    assert g == word_matrix("S T").normalized()
    assert abs(g.act(0.3 + 0.4j) - (-0.2 + 1.6j)) < 1e-12


@pytest.mark.parametrize("tau, order", [(1j, 4), (RHO, 6), (2j, 2), (RHO + 1, 6), (3 + 1j, 4), (0.1 + 1.5j, 2)])
def test_stabilizer_orders(tau, order):
    assert stabilizer_order(tau) == order
    assert aut_group_order(tau) == order


def _stabilizer_size_brute(tau, bound=6):
    count = 0
    for a, b, c, d in itertools.product(range(-bound, bound + 1), repeat=4):
        if a * d - b * c == 1 and abs((a * tau + b) / (c * tau + d) - tau) < 1e-9:
            count += 1
    return count


@pytest.mark.parametrize("tau", [1j, RHO, 2j])
def test_stabilizer_against_enumeration(tau):
    assert _stabilizer_size_brute(tau) == stabilizer_order(tau)


def test_classify_examples():
    c = classify_sl2(S)
    assert c.kind is Kind.ELLIPTIC and abs(c.fixed_points[0] - 1j) < 1e-15 and c.order == 4
    c = classify_sl2(T)
    assert c.kind is Kind.PARABOLIC and c.fixed_points[0].is_inf
    c = classify_sl2(IntegerMatrix2(2, 1, 1, 1))
    assert c.kind is Kind.HYPERBOLIC
    roots = sorted(complex(p).real for p in c.fixed_points)
    assert roots == pytest.approx([(1 - math.sqrt(5)) / 2, (1 + math.sqrt(5)) / 2], abs=1e-15)
    with pytest.raises(ScalarMatrix):
        classify_sl2(-IDENTITY)


def test_matrix_validation():
    with pytest.raises(NotUnimodular):
        IntegerMatrix2(2, 0, 0, 1)
    assert IntegerMatrix2(-1, 0, -1, -1).normalized() == IntegerMatrix2(1, 0, 1, 1)
    assert IntegerMatrix2(-1, 2, 0, -1).normalized() == IntegerMatrix2(1, -2, 0, 1)


# ----------------------------------------------------------- properties

taus = st.builds(complex, st.floats(-50, 50), st.floats(1e-3, 1e3))
words = st.lists(st.sampled_from(["S", "T", "T^-1"]), max_size=10)


@given(taus)
def test_reduction_sound_and_idempotent(tau):
    r = reduce_tau(tau)
    assert in_fundamental_domain(r.tau)
    assert abs(r.gamma.act(tau) - r.tau) <= 1e-9
    assert word_matrix(r.word).same_up_to_sign(r.gamma)
    assert r.gamma == r.gamma.normalized()
    again = reduce_tau(r.tau)
    assert again.gamma == IDENTITY and again.tau == r.tau


@given(st.builds(complex, st.floats(-2, 2), st.floats(0.3, 3)), words)
def test_orbit_soundness(tau, word):
    g = word_matrix(word)
    other = g.act(tau)
    found = elliptic_isomorphic(tau, other)
    assert found is not None
    assert abs(found.act(tau) - other) <= 1e-7 * max(1, abs(other))


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_finite_order_iff_elliptic(a, b, c):
    if a == 0 or (1 + b * c) % a:
        return
    m = IntegerMatrix2(a, b, c, (1 + b * c) // a)
    if m.is_scalar():
        return
    finite = any(m ** k == IDENTITY for k in range(1, 13))
    assert finite == (classify_sl2(m).kind is Kind.ELLIPTIC)


@given(st.builds(complex, st.floats(-0.5, 0.499), st.floats(0.87, 4)))
def test_canonical_basis_shortest(tau):
    if not in_fundamental_domain(tau):
        return
    rng = range(-20, 21)
    vecs = [(m, n, abs(m + n * tau)) for m in rng for n in rng if (m, n) != (0, 0)]
    assert min(v[2] for v in vecs) >= 1 - 1e-12
    assert min(v[2] for v in vecs if v[1] != 0) >= abs(tau) - 1e-12
