"""Moebius geometry of P^1 and moduli of n-pointed genus-0 curves.

Points carry their own arithmetic mode: integers, Fractions and
:class:`~moduli_kit.exact.QComplex` values are exact, floats and complex
values are compared with a relative tolerance of ``REL_TOL``.

Two normalization conventions appear below and are kept apart:

* :func:`normalize` sends the first three points to ``0, 1, inf``.
* :func:`cross_ratio` uses ``(x1-x3)/(x2-x3) / ((x1-x4)/(x2-x4))``, which is
  the image of ``x1`` under the map sending ``x2, x3, x4`` to ``1, 0, inf``.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import BadModuliPoint, CoincidentPoints, DegenerateMap, NumericRange
from .exact import QComplex, parse_qcomplex

REL_TOL = 1e-9


def _coerce(x):
    if isinstance(x, QComplex):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a point")
    if isinstance(x, (int, Rational)):
        return QComplex(x, 0)
    if isinstance(x, (float, complex)):
        return complex(x)
    raise TypeError(f"unsupported coordinate type {type(x).__name__}")


def is_exact(x) -> bool:
    return isinstance(x, QComplex)


def _is_zero(x, scale=1.0, tol=REL_TOL) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol * max(scale, 1e-300)


def values_close(x, y, tol=REL_TOL) -> bool:
    """Exact equality for two exact values, relative tolerance otherwise."""
    if is_exact(x) and is_exact(y):
        return x == y
    x, y = complex(x), complex(y)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of the Riemann sphere. ``value is None`` encodes infinity."""

    value: object = None

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", _coerce(self.value))

    @property
    def is_inf(self) -> bool:
        return self.value is None

    @property
    def exact(self) -> bool:
        return self.value is None or is_exact(self.value)

    def close_to(self, other: "ProjectivePoint", tol=REL_TOL) -> bool:
        if self.is_inf or other.is_inf:
            return self.is_inf and other.is_inf
        return values_close(self.value, other.value, tol)

    def __complex__(self):
        if self.is_inf:
            return complex("inf")
        return complex(self.value)

    def __repr__(self):
        return "P(inf)" if self.is_inf else f"P({self.value})"


INF = ProjectivePoint(None)


def point(x) -> ProjectivePoint:
    """Coerce a number, ``"inf"`` or an existing point into a ProjectivePoint."""
    if isinstance(x, ProjectivePoint):
        return x
    if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "∞")):
        return INF
    if isinstance(x, str):
        return ProjectivePoint(parse_qcomplex(x))
    if isinstance(x, (float, complex)) and x != x:
        raise ValueError("NaN is not a point")
    if isinstance(x, float) and abs(x) == float("inf"):
        return INF
    return ProjectivePoint(x)


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """``z -> (a z + b)/(c z + d)``, defined up to a nonzero scalar."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        coeffs = [_coerce(x) for x in (self.a, self.b, self.c, self.d)]
        if not all(is_exact(x) for x in coeffs):
            coeffs = [complex(x) for x in coeffs]
        for name, v in zip("abcd", coeffs):
            object.__setattr__(self, name, v)
        a, b, c, d = coeffs
        det = a * d - b * c
        scale = max(abs(a) * abs(d), abs(b) * abs(c), 1e-300) if not self.exact else 1
        if not self.exact and not (cmath.isfinite(det) and scale < float("inf")):
            raise NumericRange(f"ad - bc overflows for ({a}, {b}, {c}, {d})")
        if _is_zero(det, scale):
            raise DegenerateMap(f"ad - bc vanishes for ({a}, {b}, {c}, {d})")

    @property
    def exact(self) -> bool:
        return is_exact(self.a)

    @property
    def coeffs(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    def __call__(self, p) -> ProjectivePoint:
        return apply_moebius(self, p)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """Composition: ``(self @ other)(z) == self(other(z))``."""
        a, b, c, d = self.coeffs
        e, f, g, h = other.coeffs
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        # proportional iff every 2x2 minor of the stacked coefficient vectors vanishes
        u, v = self.coeffs, other.coeffs
        if self.exact != other.exact:
            u, v = [complex(x) for x in u], [complex(x) for x in v]
        scale = max(abs(x) for x in u) * max(abs(y) for y in v)
        return all(
            _is_zero(u[i] * v[j] - u[j] * v[i], scale)
            for i, j in itertools.combinations(range(4), 2)
        )

    def __hash__(self):
        raise TypeError("MoebiusMap equality is projective; not hashable")

    def __repr__(self):
        return f"MoebiusMap({self.a}, {self.b}, {self.c}, {self.d})"


def apply_moebius(m: MoebiusMap, p) -> ProjectivePoint:
    p = point(p)
    if p.is_inf:
        if _is_zero(m.c, max(abs(m.a), abs(m.c))):
            return INF
        return ProjectivePoint(m.a / m.c)
    z = p.value
    if m.exact and not is_exact(z):
        a, b, c, d = (complex(x) for x in m.coeffs)
    elif not m.exact and is_exact(z):
        a, b, c, d = m.coeffs
        z = complex(z)
    else:
        a, b, c, d = m.coeffs
    num = a * z + b
    den = c * z + d
    if _is_zero(den, abs(c) * abs(z) + abs(d)):
        return INF
    return ProjectivePoint(num / den)


def _unify(*values):
    """Promote to float complex unless every finite value is exact."""
    if all(v is None or is_exact(v) for v in values):
        return values
    return tuple(None if v is None else complex(v) for v in values)


def _check_distinct(points) -> None:
    for (i, p), (j, q) in itertools.combinations(enumerate(points), 2):
        if p.close_to(q):
            raise CoincidentPoints(f"points {i} and {j} coincide ({p!r})")


def moebius_sending_to_standard(p1, p2, p3) -> MoebiusMap:
    """The unique map with ``p1 -> 0``, ``p2 -> 1``, ``p3 -> inf``."""
    p1, p2, p3 = point(p1), point(p2), point(p3)
    _check_distinct((p1, p2, p3))
    x1, x2, x3 = _unify(p1.value, p2.value, p3.value)
    if p1.is_inf:
        return MoebiusMap(0, x2 - x3, 1, -x3)
    if p2.is_inf:
        return MoebiusMap(1, -x1, 1, -x3)
    if p3.is_inf:
        return MoebiusMap(1, -x1, 0, x2 - x1)
    return MoebiusMap(x2 - x3, -x1 * (x2 - x3), x2 - x1, -x3 * (x2 - x1))


def cross_ratio(p1, p2, p3, p4):
    """``((x1-x3)/(x2-x3)) / ((x1-x4)/(x2-x4))`` for four distinct points.

    Computed as the image of ``p1`` under the map taking ``p2, p3, p4`` to
    ``1, 0, inf``, which handles a point at infinity in any slot.
    """
    pts = [point(p) for p in (p1, p2, p3, p4)]
    _check_distinct(pts)
    f = moebius_sending_to_standard(pts[2], pts[1], pts[3])
    return apply_moebius(f, pts[0]).value


@dataclass(frozen=True)
class PointedConfig:
    points: tuple

    def __post_init__(self):
        pts = tuple(point(p) for p in self.points)
        if not pts:
            raise ValueError("a pointed configuration needs at least one point")
        _check_distinct(pts)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class NormalizedConfig:
    """The coordinates ``y_1..y_{n-3}`` of ``(P^1; 0, 1, inf, y_1, ...)``."""

    n: int
    coords: tuple

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("normalized configurations need n >= 3")
        ys = tuple(point(y) for y in self.coords)
        if len(ys) != self.n - 3:
            raise ValueError(f"expected {self.n - 3} coordinates, got {len(ys)}")
        _check_distinct(ys + (point(0), point(1), INF))
        object.__setattr__(self, "coords", tuple(y.value for y in ys))

    def full_points(self) -> tuple:
        return (point(0), point(1), INF) + tuple(point(y) for y in self.coords)

    def close_to(self, other: "NormalizedConfig", tol=REL_TOL) -> bool:
        return self.n == other.n and all(
            values_close(x, y, tol) for x, y in zip(self.coords, other.coords)
        )


def _as_config(config) -> PointedConfig:
    if isinstance(config, PointedConfig):
        return config
    return PointedConfig(tuple(config))


def normalize(config) -> NormalizedConfig:
    config = _as_config(config)
    if config.n < 3:
        raise ValueError("normalize needs at least three points")
    f = moebius_sending_to_standard(*config.points[:3])
    ys = tuple(apply_moebius(f, p).value for p in config.points[3:])
    return NormalizedConfig(config.n, ys)


def configs_isomorphic(c1, c2, tol=REL_TOL) -> bool:
    c1, c2 = _as_config(c1), _as_config(c2)
    if c1.n != c2.n:
        return False
    if c1.n < 3:
        # M_{0,1} and M_{0,2} are single points
        return True
    return normalize(c1).close_to(normalize(c2), tol)


def perm_product(s, t) -> tuple:
    """Left-to-right product: apply ``s`` first, then ``t`` (``i -> t[s[i]]``)."""
    return tuple(t[i] for i in s)


def sigma_action(perm, config: NormalizedConfig) -> NormalizedConfig:
    """Relabel the marked points: position ``i`` receives point ``perm[i]``.

    ``perm`` is a 0-based tuple of images. With :func:`perm_product` this is
    an action: ``sigma_action(perm_product(s, t), c) ==
    sigma_action(s, sigma_action(t, c))``.
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(config.n)):
        raise ValueError(f"{perm} is not a permutation of range({config.n})")
    pts = config.full_points()
    return normalize(PointedConfig(tuple(pts[perm[i]] for i in range(config.n))))


def cross_ratio_orbit(lam, tol=REL_TOL) -> list:
    """Distinct normalized coordinates of ``(0, 1, inf, lam)`` over all of S_4."""
    lam = point(lam)
    if lam.is_inf or lam.close_to(point(0)) or lam.close_to(point(1)):
        raise BadModuliPoint(f"{lam!r} is not in C - {{0, 1}}")
    base = NormalizedConfig(4, (lam.value,))
    orbit = []
    for perm in itertools.permutations(range(4)):
        y = sigma_action(perm, base).coords[0]
        if not any(values_close(y, z, tol) for z in orbit):
            orbit.append(y)
    return orbit


def point_to_json(p: ProjectivePoint):
    p = point(p)
    if p.is_inf:
        return "inf"
    v = p.value
    if is_exact(v):
        return [str(v.re), str(v.im)]
    v = complex(v)
    return [v.real, v.imag]


def point_from_json(obj) -> ProjectivePoint:
    if obj == "inf":
        return INF
    re, im = obj
    if isinstance(re, str) or isinstance(im, str):
        return ProjectivePoint(QComplex(Fraction(re), Fraction(im)))
    return ProjectivePoint(complex(re, im))
