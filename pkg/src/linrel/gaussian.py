"""Exact scalars in Q(i) and their text form."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "gq", "parse_rational", "format_rational"]

_RATIONAL_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` strictly: reduced, ``q > 1``, no ``-0``,
    whitespace, decimals or exponents."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text) or text == "-0":
        raise ValueError(f"malformed rational {text!r}")
    q = Fraction(text)
    if str(q) != text:
        raise ValueError(f"rational {text!r} is not in lowest terms")
    return q


def format_rational(q: Fraction) -> str:
    return str(q)


class GaussianRational:
    """Complex number ``re + im*i`` with rational parts.

    Instances are immutable; parts are kept as reduced ``Fraction`` values so
    equality and hashing are structural.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, (tuple, list)) and len(value) == 2:
            return cls(value[0], value[1])
        return cls(value, 0)

    @classmethod
    def from_text(cls, pair) -> GaussianRational:
        """Inverse of :meth:`to_text`; ``pair`` is ``[re, im]`` of rational strings."""
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError(f"scalar must be a [re, im] pair, got {pair!r}")
        return cls(parse_rational(pair[0]), parse_rational(pair[1]))

    def to_text(self) -> list[str]:
        return [format_rational(self.re), format_rational(self.im)]

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conj(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        n = other.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _maybe(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational, complex)):
        return GaussianRational.coerce(x)
    return NotImplemented


def gq(re=0, im=0) -> GaussianRational:
    """Shorthand constructor; ``gq(1j)`` and ``gq(1, 1)`` are both accepted."""
    if isinstance(re, (complex, GaussianRational)) and im == 0:
        return GaussianRational.coerce(re)
    return GaussianRational(re, im)
