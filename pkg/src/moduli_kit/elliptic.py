"""Genus-1 moduli: lattices, SL2(Z) reduction, isomorphisms, stabilizers.

A framed lattice ``(w1, w2)`` is represented by ``tau = w2/w1`` in the upper
half plane and ``gamma = (a, b, c, d)`` acts by ``(a tau + b)/(c tau + d)``.

Reduced points lie in the strict fundamental set
``{-1/2 <= Re tau < 1/2, |tau| >= 1}`` with the left half of the unit arc
kept (``Re tau <= 0`` when ``|tau| == 1``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateBasis,
    NonConvergence,
    NotInUpperHalfPlane,
    NotUnimodular,
    ScalarMatrix,
)
from .genus0 import INF, ProjectivePoint

TOL = 1e-9
MAX_STEPS = 10_000

RHO = complex(-0.5, math.sqrt(3) / 2)


def half_plane_point(tau) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise NotInUpperHalfPlane(f"Im tau must be > 0, got {tau}")
    return tau


@dataclass(frozen=True)
class IntegerMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if int(v) != v:
                raise NotUnimodular(f"entry {name}={v} is not an integer")
            object.__setattr__(self, name, int(v))
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodular(f"det of {self.entries} is not 1")

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "IntegerMatrix2") -> "IntegerMatrix2":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return IntegerMatrix2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "IntegerMatrix2":
        return IntegerMatrix2(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return IntegerMatrix2(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> "IntegerMatrix2":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out @ base
        return out

    def normalized(self) -> "IntegerMatrix2":
        """Canonical sign representative: ``c > 0``, or ``c == 0`` and ``a > 0``."""
        if self.c < 0 or (self.c == 0 and self.a < 0):
            return -self
        return self

    def same_up_to_sign(self, other: "IntegerMatrix2") -> bool:
        return self.normalized() == other.normalized()

    def act(self, tau: complex) -> complex:
        a, b, c, d = self.entries
        return (a * tau + b) / (c * tau + d)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


IDENTITY = IntegerMatrix2(1, 0, 0, 1)
S = IntegerMatrix2(0, -1, 1, 0)
T = IntegerMatrix2(1, 1, 0, 1)
T_INV = IntegerMatrix2(1, -1, 0, 1)

_GENERATORS = {"S": S, "T": T, "T^-1": T_INV}


def word_matrix(word) -> IntegerMatrix2:
    """Matrix of a generator word, tokens listed in the order they are applied.

    ``"S T"`` means apply ``S`` then ``T``, i.e. the matrix ``T @ S``.
    """
    tokens = word.split() if isinstance(word, str) else list(word)
    m = IDENTITY
    for tok in tokens:
        try:
            m = _GENERATORS[tok] @ m
        except KeyError:
            raise ValueError(f"unknown generator token {tok!r}") from None
    return m


def word_to_str(word) -> str:
    return " ".join(word)


@dataclass(frozen=True)
class Reduction:
    tau: complex
    gamma: IntegerMatrix2
    word: tuple

    @property
    def word_str(self) -> str:
        return word_to_str(self.word)


def _on_arc(tau, tol) -> bool:
    return abs(abs(tau) - 1.0) <= tol


def reduce_tau(tau, tol=TOL, max_steps=MAX_STEPS) -> Reduction:
    """Move ``tau`` into the fundamental set, returning the SL2(Z) witness.

    The returned ``gamma`` is sign-normalized and satisfies
    ``gamma.act(tau) == result.tau``; ``word`` lists generators in the order
    applied.
    """
    tau0 = half_plane_point(tau)
    z = tau0
    word = []
    m = IDENTITY
    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            raise NonConvergence(f"reduction of {tau0} exceeded {max_steps} steps")
        n = math.floor(z.real + 0.5 + tol)
        if n:
            z -= n
            tok = "T^-1" if n > 0 else "T"
            word.extend([tok] * abs(n))
            m = IntegerMatrix2(1, -n, 0, 1) @ m
        if abs(z) < 1.0 - tol:
            z = -1 / z
            word.append("S")
            m = S @ m
            continue
        break
    if _on_arc(z, tol) and z.real > tol:
        z = -1 / z
        word.append("S")
        m = S @ m
    m = m.normalized()
    # recompute from the exact witness so gamma and tau* agree to rounding
    z = m.act(tau0)
    return Reduction(z, m, tuple(word))


def in_fundamental_domain(tau, tol=TOL) -> bool:
    tau = half_plane_point(tau)
    if not (-0.5 - tol <= tau.real < 0.5 - tol):
        return False
    r = abs(tau)
    if r < 1.0 - tol:
        return False
    if _on_arc(tau, tol) and tau.real > tol:
        return False
    return True


def tau_from_basis(w1, w2) -> complex:
    """``w2/w1`` after swapping the basis if needed so the ratio lies in H."""
    w1, w2 = complex(w1), complex(w2)
    if w1 == 0 or w2 == 0:
        raise DegenerateBasis("basis vectors must be nonzero")
    ratio = w2 / w1
    if abs(ratio.imag) <= TOL * abs(ratio):
        raise DegenerateBasis(f"w2/w1 = {ratio} is real")
    if ratio.imag < 0:
        ratio = w1 / w2
    return ratio


def _framed(w1, w2):
    w1, w2 = complex(w1), complex(w2)
    tau_from_basis(w1, w2)
    if (w2 / w1).imag < 0:
        w1, w2 = w2, w1
    return w1, w2


# boundary identifications of the closed domain, used when comparing
# reduced points that floating error may have put on opposite edges
_BOUNDARY_MOVES = (IDENTITY, T, T_INV, S, T @ S, T_INV @ S, S @ T, S @ T_INV)


def _match_reduced(z1, z2, tol):
    for mv in _BOUNDARY_MOVES:
        if abs(mv.act(z2) - z1) <= tol:
            return mv
    return None


def elliptic_isomorphic(tau1, tau2, tol=TOL):
    """``gamma`` with ``gamma.act(tau1) == tau2``, or ``None``."""
    r1, r2 = reduce_tau(tau1), reduce_tau(tau2)
    mv = _match_reduced(r1.tau, r2.tau, tol)
    if mv is None:
        return None
    return (r2.gamma.inverse() @ mv.inverse() @ r1.gamma).normalized()


def lattices_homothetic(b1, b2, tol=TOL):
    """``lam`` with ``lattice(b1) == lam * lattice(b2)``, or ``None``.

    Both framed bases are carried by their reduction matrices to bases of
    the form ``w * (1, tau*)``; the ratio of the leading vectors is ``lam``.
    """
    f1, f2 = _framed(*b1), _framed(*b2)
    r1 = reduce_tau(f1[1] / f1[0])
    r2 = reduce_tau(f2[1] / f2[0])
    mv = _match_reduced(r1.tau, r2.tau, tol)
    if mv is None:
        return None
    g2 = mv @ r2.gamma
    lead1 = r1.gamma.c * f1[1] + r1.gamma.d * f1[0]
    lead2 = g2.c * f2[1] + g2.d * f2[0]
    return lead1 / lead2


def stabilizer_order(tau, tol=TOL) -> int:
    z = reduce_tau(tau).tau
    if abs(z - 1j) <= tol:
        return 4
    if abs(z - RHO) <= tol or abs(z - (RHO + 1)) <= tol:
        return 6
    return 2


def aut_group_order(tau, tol=TOL) -> int:
    # Aut(C/Lambda, 0) is the image of the stabilizer of tau in SL2(Z)
    return stabilizer_order(tau, tol)


class Kind(Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    trace: int
    fixed_points: tuple
    order: int | None  # None for infinite order


_ELLIPTIC_ORDER = {0: 4, 1: 6, -1: 3}


def classify_sl2(m: IntegerMatrix2) -> Classification:
    if m.is_scalar():
        raise ScalarMatrix(f"{m.entries} is +-identity")
    a, b, c, d = m.entries
    tr = m.trace
    disc = (a - d) ** 2 + 4 * b * c  # = tr^2 - 4
    if abs(tr) < 2:
        root = cmath.sqrt(disc)
        fp = ((a - d) + root) / (2 * c)
        if fp.imag < 0:
            fp = ((a - d) - root) / (2 * c)
        return Classification(Kind.ELLIPTIC, tr, (fp,), _ELLIPTIC_ORDER[tr])
    if abs(tr) == 2:
        fp = INF if c == 0 else ProjectivePoint(complex((a - d) / (2 * c)))
        return Classification(Kind.PARABOLIC, tr, (fp,), None)
    root = math.sqrt(disc)
    pts = tuple(ProjectivePoint(complex(((a - d) + s * root) / (2 * c))) for s in (-1, 1))
    return Classification(Kind.HYPERBOLIC, tr, pts, None)
