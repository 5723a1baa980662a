"""Gaussian rationals: complex numbers with Fraction real and imaginary parts."""

from fractions import Fraction
from numbers import Rational


class QComplex:
    """Exact complex number ``re + im*i`` with rational parts.

    Supports the field operations needed for Moebius arithmetic and mixes
    with ``int`` and ``Fraction`` operands. Mixing with floats is refused so
    exact results never silently degrade.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QComplex):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        if isinstance(x, str):
            return parse_qcomplex(x)
        raise TypeError(f"cannot use {type(x).__name__} in exact arithmetic")

    def __repr__(self):
        return f"QComplex({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __eq__(self, other):
        try:
            other = QComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __add__(self, other):
        try:
            o = QComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = QComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QComplex.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = QComplex.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        return QComplex((self.re * o.re + self.im * o.im) / n,
                        (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return QComplex.coerce(other) / self

    def __abs__(self):
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return QComplex(self.re, -self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im


def parse_qcomplex(text):
    """Parse ``"p/q"`` or ``"re,im"`` (each a Fraction literal) into a QComplex."""
    parts = text.split(",")
    if len(parts) == 1:
        return QComplex(Fraction(parts[0].strip()), 0)
    if len(parts) == 2:
        return QComplex(Fraction(parts[0].strip()), Fraction(parts[1].strip()))
    raise ValueError(f"not an exact complex literal: {text!r}")
