"""Homological Dehn-twist calculus and the mapping-class-group tables.

Homology classes of a genus-g surface are integer vectors in the basis
``a_1..a_g, b_1..b_g`` with intersection form ``<x, y> = x^T J y``,
``<a_i, b_i> = +1``. The positive Dehn twist about a curve of class ``a``
acts on homology by the transvection ``x -> x + <x, a> a``.

Relations among twists are verified in this symplectic image only: it is a
faithful check of the relations' shadows in Sp_g(Z), not of the relations
in the mapping class group itself. Separating curves are null-homologous,
so their twists are invisible here and ``transvection(0)`` is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    BadGenus,
    BadIntersection,
    BadOrbitSize,
    NonIntegralGenus,
    NotSymplectic,
    ZeroClass,
)


def standard_form(g: int) -> np.ndarray:
    z = np.zeros((g, g), dtype=np.int64)
    i = np.eye(g, dtype=np.int64)
    return np.block([[z, i], [-i, z]])


def homology_class(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    if v.ndim != 1 or v.size == 0 or v.size % 2:
        raise ValueError(f"a class needs an even number of integer entries, got {v.tolist()}")
    return v


def genus_of(v) -> int:
    return len(v) // 2


def basis_class(g: int, name: str) -> np.ndarray:
    """``basis_class(2, "b1")`` is the vector of ``b_1`` in genus 2."""
    kind, idx = name[0], int(name[1:])
    if kind not in "ab" or not 1 <= idx <= g:
        raise ValueError(f"no basis class {name!r} in genus {g}")
    v = np.zeros(2 * g, dtype=np.int64)
    v[idx - 1 + (g if kind == "b" else 0)] = 1
    return v


def pairing(x, y) -> int:
    x, y = homology_class(x), homology_class(y)
    return int(x @ standard_form(genus_of(x)) @ y)


def is_symplectic(m) -> bool:
    m = np.asarray(m, dtype=np.int64)
    j = standard_form(m.shape[0] // 2)
    return bool(np.array_equal(m.T @ j @ m, j))


def symplectic_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise NotSymplectic(f"shape {m.shape} is not 2g x 2g")
    if not is_symplectic(m):
        raise NotSymplectic("M^T J M != J")
    return m


def symplectic_inverse(m) -> np.ndarray:
    # M^-1 = -J M^T J for symplectic M
    j = standard_form(m.shape[0] // 2)
    return -j @ m.T @ j


def transvection(a) -> np.ndarray:
    a = homology_class(a)
    if not a.any():
        raise ZeroClass("transvection along the zero class (a separating curve)")
    j = standard_form(genus_of(a))
    return np.eye(len(a), dtype=np.int64) + np.outer(a, j @ a)


def product(*mats) -> np.ndarray:
    return reduce(lambda x, y: x @ y, mats)


def _twists(*classes):
    return product(*(transvection(c) for c in classes))


def verify_braid(a, b) -> bool:
    """``T_a T_b T_a == T_b T_a T_b`` for classes meeting once."""
    p = pairing(a, b)
    if abs(p) != 1:
        raise BadIntersection(f"<a, b> = {p}, need +-1")
    return braid_holds(a, b)


def braid_holds(a, b) -> bool:
    """The braid identity without the intersection precondition."""
    return bool(np.array_equal(_twists(a, b, a), _twists(b, a, b)))


def chain_one_boundary_matrix() -> np.ndarray:
    g = 1
    return _twists(basis_class(g, "a1"), basis_class(g, "b1"))


def matrix_order(m, limit: int = 12) -> int | None:
    ident = np.eye(m.shape[0], dtype=np.int64)
    p = ident
    for k in range(1, limit + 1):
        p = p @ m
        if np.array_equal(p, ident):
            return k
    return None


def verify_chain_one_boundary() -> bool:
    """``(T_a T_b)^6 == 1`` in Sp_1(Z); the capped boundary twist is trivial."""
    return matrix_order(chain_one_boundary_matrix()) == 6


# chain a1, b1+b2, a2 in genus 2; both boundary curves of its neighbourhood
# are homologous to +-(a1 - a2) with this sign convention
CHAIN2_CLASSES = ((1, 0, 0, 0), (0, 0, 1, 1), (0, 1, 0, 0))
CHAIN2_BOUNDARY = (1, -1, 0, 0)


def chain_two_boundary_sides():
    c1, c2, c3 = (homology_class(c) for c in CHAIN2_CLASSES)
    lhs = np.linalg.matrix_power(_twists(c1, c2, c3), 4)
    t = homology_class(CHAIN2_BOUNDARY)
    rhs = _twists(t, t)
    return lhs, rhs


def verify_chain_two_boundary() -> bool:
    """``(T_c1 T_c2 T_c3)^4 == T_t1 T_t2`` with both boundary classes ``+-t``."""
    c1, c2, c3 = (homology_class(c) for c in CHAIN2_CLASSES)
    if not (abs(pairing(c1, c2)) == 1 and abs(pairing(c2, c3)) == 1 and pairing(c1, c3) == 0):
        return False
    lhs, rhs = chain_two_boundary_sides()
    return bool(np.array_equal(lhs, rhs))


# genus-3 lantern: x0 = a1+a2+a3 and the three pairwise sums
LANTERN_CLASSES = {
    "x0": (1, 1, 1, 0, 0, 0),
    "x1": (1, 0, 0, 0, 0, 0),
    "x2": (0, 1, 0, 0, 0, 0),
    "x3": (0, 0, 1, 0, 0, 0),
    "x12": (1, 1, 0, 0, 0, 0),
    "x23": (0, 1, 1, 0, 0, 0),
    "x31": (1, 0, 1, 0, 0, 0),
}


def lantern_sides(classes=LANTERN_CLASSES):
    c = {k: homology_class(v) for k, v in classes.items()}
    lhs = _twists(c["x0"], c["x1"], c["x2"], c["x3"])
    rhs = _twists(c["x12"], c["x23"], c["x31"])
    return lhs, rhs


def verify_lantern(classes=LANTERN_CLASSES) -> bool:
    """``T_x0 T_x1 T_x2 T_x3 == T_x12 T_x23 T_x31`` in Sp_3(Z)."""
    lhs, rhs = lantern_sides(classes)
    return bool(np.array_equal(lhs, rhs))


def dehn_conjugation_check(a, phi) -> bool:
    """``T_{phi a} == phi T_a phi^-1``."""
    a = homology_class(a)
    phi = symplectic_matrix(phi)
    return bool(np.array_equal(transvection(phi @ a), phi @ transvection(a) @ symplectic_inverse(phi)))


def random_symplectic(g: int, rng, length: int = 8, entry_bound: int = 2) -> np.ndarray:
    """Product of up to ``length`` random transvections."""
    m = np.eye(2 * g, dtype=np.int64)
    for _ in range(rng.integers(0, length + 1)):
        while True:
            v = rng.integers(-entry_bound, entry_bound + 1, size=2 * g)
            if v.any():
                break
        m = m @ transvection(v)
    return m


@dataclass(frozen=True)
class CyclicGroupReport:
    """H_1 of Gamma_g as a cyclic group generated by the class ``L``.

    ``derivation`` pairs each relation used with the equation it imposes on
    ``L`` and the integer ``n`` with ``n L = 0``. ``order == 0`` encodes the
    trivial group.
    """

    genus: int
    order: int
    derivation: tuple

    @property
    def group(self) -> str:
        return "0" if self.order == 0 else f"Z/{self.order}Z"

    @property
    def relation_gcd(self) -> int:
        return math.gcd(*(n for _, _, n in self.derivation))


# (relation, equation on L, n with n L = 0)
_CHAIN1 = ("chain1", "12L = 0", 12)
_CHAIN2 = ("chain2", "12L = 2 L", 12 - 2)
_LANTERN = ("lantern", "3L = 4L", 4 - 3)


def h1_mapping_class_group(g: int) -> CyclicGroupReport:
    if g < 1:
        raise BadGenus(f"genus must be >= 1, got {g}")
    if g == 1:
        derivation = (_CHAIN1,)
    elif g == 2:
        derivation = (_CHAIN2,)
    else:
        derivation = (_CHAIN2, _LANTERN)
    n = math.gcd(*(k for _, _, k in derivation))
    return CyclicGroupReport(g, 0 if n == 1 else n, derivation)


@dataclass(frozen=True)
class CitedTables:
    genus: int
    h2: str
    pic_orb: str
    h2_rational_rank: int
    pic_generator: str
    citations: dict


def cited_tables(g: int) -> CitedTables:
    if g < 1:
        raise BadGenus(f"genus must be >= 1, got {g}")
    h2 = {1: "Z/12Z", 2: "Z/10Z"}.get(g, "Z")
    return CitedTables(
        genus=g,
        h2=h2,
        pic_orb=h2,
        h2_rational_rank=0 if g <= 2 else 1,
        pic_generator="L = det pi_* omega (Hodge bundle)",
        citations={
            "h2": "H^2(Gamma_g, Z): Z/12Z (g=1), Z/10Z (g=2), Z (g>=3)",
            "pic_orb": "Pic_orb M_g cyclic, generated by L; same groups as H^2",
            "h2_rational_rank": "Harer: rank H_2(Gamma_g, Q) is 0 for g<=2, 1 for g>=3",
        },
    )


def pants_counts(g: int) -> tuple:
    """``(curves, pants) = (3g - 3, 2g - 2)`` for a pants decomposition."""
    if g < 2:
        raise BadGenus(f"pants decompositions need g >= 2, got {g}")
    n, m = 3 * g - 3, 2 * g - 2
    # each pair of pants has 3 boundary curves, each curve bounds 2 pants
    assert 3 * m == 2 * n
    return n, m


@dataclass(frozen=True)
class DimensionTable:
    g: int
    n: int
    stable: bool
    euler_characteristic: int
    teichmuller_real_dim: int | None
    rep_variety_dim: int | None

    @property
    def moduli_complex_dim(self) -> int | None:
        if self.teichmuller_real_dim is None:
            return None
        return self.teichmuller_real_dim // 2


def dimension_table(g: int, n: int) -> DimensionTable:
    if g < 0 or n < 0:
        raise ValueError("g and n must be nonnegative")
    stable = 2 * g - 2 + n > 0
    return DimensionTable(
        g=g,
        n=n,
        stable=stable,
        euler_characteristic=2 - 2 * g - n,
        teichmuller_real_dim=6 * g - 6 + 2 * n if stable else None,
        rep_variety_dim=6 * g - 3 if (n == 0 and g >= 2) else None,
    )


def riemann_hurwitz(d: int, g_quotient: int, orbit_sizes=()) -> int:
    """Genus of X for a degree-d Galois cover X -> Y with the given short orbits.

    ``g(X) - 1 = d (g(Y) - 1) + sum (d - |O|)/2``.
    """
    if d < 1:
        raise ValueError("group order must be >= 1")
    for o in orbit_sizes:
        if o < 1 or d % o:
            raise BadOrbitSize(f"orbit size {o} does not divide {d}")
    twice = 2 + 2 * d * (g_quotient - 1) + sum(d - o for o in orbit_sizes)
    if twice % 2 or twice < 0:
        raise NonIntegralGenus(f"2 g(X) = {twice} gives no nonnegative integer genus")
    return twice // 2
