"""Period lattices of Legendre curves ``y^2 = x(x-1)(x-lam)`` via the AGM.

For real ``0 < lam < 1``::

    w1 = pi / agm(1, sqrt(1-lam)) = int_0^lam   dx / sqrt(x(1-x)(lam-x))
    w2 = i pi / agm(1, sqrt(lam)) = i int_lam^1 dx / sqrt(x(1-x)(x-lam))

(each integral is half a cycle integral; the common factor 2 cancels in
``tau = w2/w1``). Other ``lam`` are computed best-effort with the optimal
branch choice in the complex AGM and flagged as such.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from . import elliptic, qseries
from .errors import BadModuliPoint, NonConvergence, NonPositiveInput, OutOfGuaranteedDomain

AGM_RTOL = 1e-15
AGM_MAX_ITER = 64


def agm(a, b, rtol: float = AGM_RTOL) -> float:
    """Arithmetic-geometric mean of two positive reals."""
    a, b = float(a), float(b)
    if not (a > 0 and b > 0):
        raise NonPositiveInput(f"agm needs positive inputs, got {a}, {b}")
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= rtol * a:
            return a
        a, b = (a + b) / 2, math.sqrt(a * b)
    raise NonConvergence("agm did not converge")


def agm_iterations(a: float, b: float, rtol: float = AGM_RTOL) -> int:
    n = 0
    while abs(a - b) > rtol * a:
        a, b = (a + b) / 2, math.sqrt(a * b)
        n += 1
    return n


def agm_complex(a, b, rtol: float = AGM_RTOL) -> complex:
    """Complex AGM with the "right" square root at each step (|a' - b'| <= |a' + b'|)."""
    a, b = complex(a), complex(b)
    if a == 0 or b == 0:
        raise NonPositiveInput("agm of zero")
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= rtol * abs(a):
            return a
        an = (a + b) / 2
        bn = cmath.sqrt(a * b)
        if abs(an - bn) > abs(an + bn):
            bn = -bn
        a, b = an, bn
    raise NonConvergence("complex agm did not converge")


def in_guaranteed_domain(lam) -> bool:
    lam = complex(lam)
    return lam.imag == 0 and 0 < lam.real < 1


@dataclass(frozen=True)
class PeriodPair:
    w1: complex
    w2: complex
    guaranteed: bool = True

    def __post_init__(self):
        if not (self.w2 / self.w1).imag > 0:
            raise ValueError("period pair is not positively framed")

    @property
    def tau(self) -> complex:
        return self.w2 / self.w1


def _check_lambda(lam) -> complex:
    lam = complex(lam)
    if lam == 0 or lam == 1:
        raise BadModuliPoint(f"lambda = {lam} is a degenerate Legendre parameter")
    return lam


def legendre_periods(lam, strict: bool = False, warn: bool = True) -> PeriodPair:
    """Periods of ``y^2 = x(x-1)(x-lam)``.

    Outside real ``(0, 1)`` the result is best-effort: ``strict=True`` raises
    :class:`OutOfGuaranteedDomain`, otherwise a warning is issued and the
    returned pair has ``guaranteed=False`` (``warn=False`` silences the warning).
    """
    lam = _check_lambda(lam)
    if in_guaranteed_domain(lam):
        x = lam.real
        w1 = math.pi / agm(1.0, math.sqrt(1.0 - x))
        w2 = 1j * math.pi / agm(1.0, math.sqrt(x))
        return PeriodPair(complex(w1), w2, True)
    if strict:
        raise OutOfGuaranteedDomain(f"lambda = {lam} is outside real (0, 1)")
    if warn:
        warnings.warn(f"lambda = {lam} outside (0, 1): principal-branch periods", stacklevel=2)
    w1 = math.pi / agm_complex(1.0, cmath.sqrt(1.0 - lam))
    w2 = 1j * math.pi / agm_complex(1.0, cmath.sqrt(lam))
    if (w2 / w1).imag < 0:
        w1, w2 = w2, w1
    return PeriodPair(w1, w2, False)


def quadrature_periods(lam: float) -> tuple:
    """Direct numerical integration of the two half-cycle integrals.

    Independent of the AGM: QUADPACK with algebraic endpoint weights
    absorbs the inverse square-root singularities exactly.
    """
    from scipy.integrate import quad

    lam = float(lam)
    if not 0 < lam < 1:
        raise OutOfGuaranteedDomain("quadrature oracle covers real 0 < lam < 1")
    # x^(-1/2) (lam-x)^(-1/2) weight on [0, lam]
    w1, _ = quad(lambda x: 1.0 / math.sqrt(1.0 - x), 0.0, lam,
                 weight="alg", wvar=(-0.5, -0.5), epsabs=1e-14, epsrel=1e-13)
    # (x-lam)^(-1/2) (1-x)^(-1/2) weight on [lam, 1]
    w2, _ = quad(lambda x: 1.0 / math.sqrt(x), lam, 1.0,
                 weight="alg", wvar=(-0.5, -0.5), epsabs=1e-14, epsrel=1e-13)
    return complex(w1), 1j * w2


def tau_from_lambda(lam, strict: bool = False, warn: bool = True) -> complex:
    p = legendre_periods(lam, strict, warn)
    return elliptic.tau_from_basis(p.w1, p.w2)


def j_from_lambda(lam, strict: bool = False, warn: bool = True) -> complex:
    return qseries.j_invariant(tau_from_lambda(lam, strict, warn))


def j_legendre_formula(lam) -> complex:
    """Closed form ``256 (lam^2 - lam + 1)^3 / (lam^2 (lam - 1)^2)``."""
    lam = _check_lambda(lam)
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)
