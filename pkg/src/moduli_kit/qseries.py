"""Exact q-expansions of E4, E6, Delta and j, and their numeric evaluation.

A :class:`QSeries` stores integer coefficients for the exponents
``lead, lead+1, ..., prec-1``; everything from ``q**prec`` on is unknown.
Ring operations propagate ``prec`` the usual way for truncated Laurent
series, so a result never claims more terms than its inputs justify.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

from . import elliptic
from .errors import DivergentTail, NumericRange

DEFAULT_TERMS = 32
MAX_TERMS = 256
ANALYTIC_PREFACTOR = "(2*pi)^12"
_EPS = 2.0 ** -52


@dataclass(frozen=True)
class QSeries:
    lead: int
    coeffs: tuple
    prefactor: str | None = None  # symbolic scalar, never folded into coeffs

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def prec(self) -> int:
        """Exponent of the first unknown term, i.e. the series is ``+ O(q**prec)``."""
        return self.lead + len(self.coeffs)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if n >= self.prec:
            raise IndexError(f"q^{n} is beyond the truncation O(q^{self.prec})")
        if n < self.lead:
            return 0
        return self.coeffs[n - self.lead]

    def items(self):
        return ((self.lead + i, c) for i, c in enumerate(self.coeffs))

    def valuation(self) -> int | None:
        for n, c in self.items():
            if c:
                return n
        return None

    def truncate(self, prec: int) -> "QSeries":
        prec = min(prec, self.prec)
        return QSeries(self.lead, self.coeffs[: max(prec - self.lead, 0)], self.prefactor)

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q**k``."""
        return QSeries(self.lead + k, self.coeffs, self.prefactor)

    def strip(self) -> "QSeries":
        """Drop leading zero coefficients (raising ``lead``)."""
        v = self.valuation()
        if v is None:
            return QSeries(self.prec, (), self.prefactor)
        return QSeries(v, self.coeffs[v - self.lead:], self.prefactor)

    def __add__(self, other):
        if isinstance(other, int):
            other = QSeries(0, (other,) + (0,) * max(self.prec - 1, 0))
        lead = min(self.lead, other.lead)
        prec = min(self.prec, other.prec)
        return QSeries(lead, [self._get(n) + other._get(n) for n in range(lead, prec)])

    __radd__ = __add__

    def _get(self, n):
        return self[n] if n < self.prec else 0

    def __neg__(self):
        return QSeries(self.lead, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(self.lead, [other * c for c in self.coeffs], self.prefactor)
        a, b = self.strip(), other.strip()
        lead = a.lead + b.lead
        # relative precision is the smaller of the two
        prec = lead + min(len(a.coeffs), len(b.coeffs))
        if not a.coeffs or not b.coeffs:
            prec = min(a.prec + b.lead, b.prec + a.lead)
            return QSeries(prec, ())
        n = prec - lead
        out = [0] * n
        ac, bc = a.coeffs, b.coeffs
        for i in range(min(n, len(ac))):
            ai = ac[i]
            if ai:
                for j in range(min(n - i, len(bc))):
                    out[i + j] += ai * bc[j]
        return QSeries(lead, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = QSeries(0, (1,) + (0,) * (len(self.strip().coeffs) - 1))
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "QSeries":
        """Inverse of a series whose leading coefficient is a unit (+-1)."""
        a = self.strip()
        if not a.coeffs:
            raise ZeroDivisionError("series is zero to its precision")
        u = a.coeffs[0]
        if u not in (1, -1):
            raise ValueError(f"leading coefficient {u} is not a unit in Z")
        n = len(a.coeffs)
        inv = [0] * n
        inv[0] = u
        for k in range(1, n):
            s = sum(a.coeffs[i] * inv[k - i] for i in range(1, k + 1))
            inv[k] = -u * s
        return QSeries(-a.lead, inv)

    def __truediv__(self, other):
        if isinstance(other, int):
            q = []
            for c in self.coeffs:
                if c % other:
                    raise ValueError(f"{c} not divisible by {other}")
                q.append(c // other)
            return QSeries(self.lead, q, self.prefactor)
        return self * other.inverse()

    def same_terms(self, other: "QSeries") -> bool:
        """Coefficientwise equality over the common known range."""
        lo = min(self.lead, other.lead)
        hi = min(self.prec, other.prec)
        return all(self._get(n) == other._get(n) for n in range(lo, hi))

    def to_text(self) -> str:
        return "".join(f"{n} {c}\n" for n, c in self.items())

    @classmethod
    def from_text(cls, text: str) -> "QSeries":
        terms = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            e, c = line.split()
            terms.append((int(e), int(c)))
        if not terms:
            raise ValueError("no terms in series text")
        exps = [e for e, _ in terms]
        if exps != list(range(exps[0], exps[0] + len(exps))):
            raise ValueError("exponents must be consecutive and increasing")
        return cls(exps[0], [c for _, c in terms])


def divisor_sigma(n: int, k: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


@functools.lru_cache(maxsize=None)
def eisenstein(k: int, N: int = DEFAULT_TERMS) -> QSeries:
    """E4 or E6 with coefficients through ``q**N``."""
    if k == 4:
        c, p = 240, 3
    elif k == 6:
        c, p = -504, 5
    else:
        raise ValueError("only weights 4 and 6 are supported")
    return QSeries(0, [1] + [c * divisor_sigma(n, p) for n in range(1, N + 1)])


@functools.lru_cache(maxsize=None)
def _delta_product(N: int) -> QSeries:
    # prod_{n>=1} (1 - q^n)^24 through q^(N-1), then shifted by q
    m = N
    poly = [0] * m
    poly[0] = 1
    for n in range(1, m):
        for _ in range(24):
            for i in range(m - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    return QSeries(1, poly)


def delta_series(N: int = DEFAULT_TERMS, normalization: str = "arithmetic") -> QSeries:
    """``q prod (1 - q^n)^24`` with coefficients for ``q^1 .. q^N``.

    In ``"paper"`` normalization the same integers are returned, tagged with
    the symbolic ``(2*pi)^12`` prefactor.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    s = _delta_product(N)
    if normalization == "arithmetic":
        return s
    if normalization == "paper":
        return QSeries(s.lead, s.coeffs, ANALYTIC_PREFACTOR)
    raise ValueError(f"unknown normalization {normalization!r}")


def delta_from_eisenstein(N: int = DEFAULT_TERMS) -> QSeries:
    """``(E4^3 - E6^2)/1728`` with coefficients for ``q^1 .. q^N``."""
    e4, e6 = eisenstein(4, N), eisenstein(6, N)
    d = (e4 ** 3 - e6 ** 2) / 1728
    assert d[0] == 0
    return QSeries(1, d.coeffs[1:])


@functools.lru_cache(maxsize=None)
def j_series(N: int = DEFAULT_TERMS) -> QSeries:
    """``E4^3 / Delta`` with coefficients for ``q^-1 .. q^N``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    e4 = eisenstein(4, N + 1)
    j = (e4 ** 3) * delta_series(N + 2).inverse()
    return j.truncate(N + 1)


def _series(name: str, N: int) -> QSeries:
    if name == "E4":
        return eisenstein(4, N)
    if name == "E6":
        return eisenstein(6, N)
    if name == "Delta":
        return delta_series(N)
    if name == "j":
        return j_series(N)
    raise ValueError(f"unknown form {name!r}")


FORM_WEIGHTS = {"E4": 4, "E6": 6, "Delta": 12, "j": 0}


def named_series(name: str, N: int = DEFAULT_TERMS) -> QSeries:
    return _series(name, N)


@dataclass(frozen=True)
class Evaluation:
    value: complex
    error: float
    terms: int


def evaluate(series: QSeries, tau) -> Evaluation:
    """Sum the known terms at ``q = exp(2 pi i tau)``.

    The error estimate bounds the neglected tail geometrically, using the
    larger of ``|q|`` and the observed ratio of the last two terms, and adds
    the floating-point rounding of the partial sum.
    """
    tau = elliptic.half_plane_point(tau)
    logq = 2j * math.pi * tau
    absq = math.exp(logq.real)
    if absq >= 1.0:
        raise DivergentTail(f"|q| = {absq} >= 1")
    re_terms, im_terms = [], []
    mags = []
    for n, c in series.items():
        if c == 0:
            mags.append(0.0)
            continue
        try:
            qn = cmath.exp(n * logq)
            t = c * qn
        except OverflowError:
            raise NumericRange(f"term q^{n} overflows at tau={tau}") from None
        if math.isinf(t.real) or math.isinf(t.imag):
            raise NumericRange(f"term q^{n} overflows at tau={tau}")
        re_terms.append(t.real)
        im_terms.append(t.imag)
        mags.append(abs(t))
    value = complex(math.fsum(re_terms), math.fsum(im_terms))
    nz = [m for m in mags if m > 0]
    if not nz:
        return Evaluation(value, 0.0, len(series.coeffs))
    last = nz[-1]
    ratio = absq
    if len(nz) >= 2 and nz[-2] > 0:
        ratio = max(ratio, nz[-1] / nz[-2])
    if ratio >= 1.0:
        tail = math.inf
    else:
        tail = last * ratio / (1.0 - ratio)
    rounding = 4 * _EPS * sum(mags) + _EPS * abs(value)
    return Evaluation(value, tail + rounding, len(series.coeffs))


def evaluate_form(name: str, tau, target: float = 1e-9, max_terms: int = MAX_TERMS,
                  relative: bool = False) -> Evaluation:
    """Evaluate a named form directly from its series, doubling ``N`` until
    the error estimate drops below ``target``."""
    N = DEFAULT_TERMS
    while True:
        ev = evaluate(_series(name, N), tau)
        goal = target * max(1.0, abs(ev.value)) if relative else target
        if ev.error < goal:
            return ev
        if N >= max_terms:
            raise DivergentTail(
                f"{name} at tau={tau}: error {ev.error:.3g} after {N} terms"
            )
        N = min(2 * N, max_terms)


def j_invariant(tau, target: float = 1e-9) -> complex:
    """j(tau), evaluated at the reduced representative of tau."""
    z = elliptic.reduce_tau(tau).tau
    return evaluate_form("j", z, target, relative=True).value


def j_direct(tau, max_terms: int = MAX_TERMS) -> complex:
    """``E4^3/Delta`` from the two series evaluated at tau itself, no reduction."""
    e4 = evaluate_form("E4", tau, 1e-12, max_terms, relative=True).value
    d = evaluate_form("Delta", tau, 1e-12, max_terms, relative=True).value
    return e4 ** 3 / d


def weight_check(form: str, k: int, gamma, tau, max_terms: int = MAX_TERMS) -> float:
    """``|f(gamma tau) - (c tau + d)^k f(tau)|`` using direct series evaluation.

    j is evaluated as ``E4^3/Delta`` at both points, so the check does not
    route through SL2(Z) reduction.
    """
    if form not in FORM_WEIGHTS:
        raise ValueError(f"unknown form {form!r}")
    tau = elliptic.half_plane_point(tau)
    if not isinstance(gamma, elliptic.IntegerMatrix2):
        gamma = elliptic.IntegerMatrix2(*gamma)
    if gamma == elliptic.IDENTITY:
        return 0.0
    g_tau = gamma.act(tau)
    if form == "j":
        f = lambda z: j_direct(z, max_terms)  # noqa: E731
    else:
        f = lambda z: evaluate_form(form, z, 1e-13, max_terms, relative=True).value  # noqa: E731
    factor = (gamma.c * tau + gamma.d) ** k
    return abs(f(g_tau) - factor * f(tau))
