"""Exact Gaussian-rational scalars and helpers for mixed exact/float arithmetic.

Values that flow through the algebraic layer are Python ``int``, ``Fraction``
or :class:`GaussianRational` when they are exact, and ``float``/``complex``
otherwise.  Mixing an exact value with a float degrades to ``complex``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Union

Exact = Union[int, Fraction, "GaussianRational"]
Scalar = Union[int, Fraction, float, complex, "GaussianRational"]


class GaussianRational:
    """Number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls(other, 0)
        return None

    def simplify(self):
        """Return a plain ``int``/``Fraction`` when the imaginary part is zero."""
        if self.im == 0:
            return self.re.numerator if self.re.denominator == 1 else self.re
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        return GaussianRational(self.re + o.re, self.im + o.im).simplify()

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        ).simplify()

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        num = GaussianRational._coerce(num) or GaussianRational(num)
        return GaussianRational(num.re / den, num.im / den).simplify()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return complex(self) ** k
        out: Scalar = 1
        base: Scalar = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Number):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __abs__(self):
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational)) and not isinstance(x, bool)


def to_complex(x) -> complex:
    return complex(x)


def exact_div(num, den):
    """Divide, staying exact when both operands are exact."""
    if is_exact(num) and is_exact(den):
        if isinstance(num, GaussianRational) or isinstance(den, GaussianRational):
            return GaussianRational._coerce(num) / den
        q = Fraction(num) / Fraction(den)
        return q.numerator if q.denominator == 1 else q
    if isinstance(num, complex) or isinstance(den, complex):
        return complex(num) / complex(den)
    if isinstance(num, GaussianRational) or isinstance(den, GaussianRational):
        return complex(num) / complex(den)
    return float(num) / float(den)


def parse_scalar(obj) -> Scalar:
    """Decode a JSON scalar: number, ``[re, im]`` pair, or ``"p/q"`` string."""
    if isinstance(obj, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(obj, (int, float)):
        return obj
    if isinstance(obj, str):
        if "j" in obj or "i" in obj:
            return complex(obj.replace("i", "j"))
        f = Fraction(obj)
        return f.numerator if f.denominator == 1 else f
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        re, im = (parse_scalar(v) for v in obj)
        if is_exact(re) and is_exact(im):
            return GaussianRational(re, im).simplify()
        return complex(re, im)
    raise TypeError(f"cannot decode scalar from {obj!r}")


def dump_scalar(x):
    """Inverse of :func:`parse_scalar` (exact values round-trip exactly)."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussianRational):
        return [dump_scalar(x.re.numerator if x.re.denominator == 1 else x.re),
                dump_scalar(x.im.numerator if x.im.denominator == 1 else x.im)]
    if isinstance(x, float):
        return x
    x = complex(x)
    return [x.real, x.imag]
