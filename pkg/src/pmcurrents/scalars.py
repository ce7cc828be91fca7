"""Exact Gaussian-rational scalars.

All coefficients in the symbolic layer are elements of Q(i): pairs of
`fractions.Fraction` for the real and imaginary part.  Transcendental
constants (2*pi*i and friends) never enter the symbolic layer; they live
in the numeric oracle only.
"""

from __future__ import annotations

from fractions import Fraction


class QQi:
    """A Gaussian rational re + im*i with exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x) -> "QQi":
        if isinstance(x, QQi):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex is not exact; build QQi from rationals")
        return QQi(x)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = QQi.of(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-QQi.of(other))

    def __rsub__(self, other):
        return QQi.of(other) + (-self)

    def __mul__(self, other):
        other = QQi.of(other)
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QQi.of(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero in QQi")
        return QQi(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("QQi powers must be non-negative integers")
        out = QQi(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QQi(other)
        if not isinstance(other, QQi):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- conversions ---------------------------------------------------

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"QQi({self.re!r}, {self.im!r})"

    def __str__(self):
        return render_qqi(self)


ZERO = QQi(0)
ONE = QQi(1)
I = QQi(0, 1)
MINUS_ONE = QQi(-1)


def _frac_str(x: Fraction) -> str:
    return str(x)


def render_qqi(c: QQi) -> str:
    """Canonical ascii rendering, parseable by the expression grammar."""
    if c.im == 0:
        return _frac_str(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_str(c.im)}*i"
    im = c.im
    if im == 1:
        imtxt = "i"
    elif im == -1:
        imtxt = "-i"
    elif im > 0:
        imtxt = f"{_frac_str(im)}*i"
    else:
        imtxt = f"-{_frac_str(-im)}*i"
    sign = "+" if not imtxt.startswith("-") else "-"
    imtxt = imtxt.lstrip("-")
    return f"({_frac_str(c.re)} {sign} {imtxt})"
