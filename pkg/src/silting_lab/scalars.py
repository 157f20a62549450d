"""Exact Gaussian-rational coefficients.

Coefficients throughout the package are either plain rationals (``gmpy2.mpq``)
or :class:`Scalar` values with a nonzero imaginary part.  :func:`coeff`
normalizes any input to that convention so that rational computations never pay
for complex arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

_NUM = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_NUM})(?P<im>[+-]\d+(?:/\d+)?\*?i|[+-]i)?|(?P<pim>{_NUM}\*?i|[+-]?i))\s*$"
)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Scalar:
    """A Gaussian rational ``re + im*i``; immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _parts(x):
        if isinstance(x, Scalar):
            return x.re, x.im
        if isinstance(x, (int, Rational)) or type(x).__name__ == "mpq":
            return _q(x), mpq(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return coeff(Scalar(self.re + p[0], self.im + p[1]))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return coeff(Scalar(self.re - p[0], self.im - p[1]))

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return coeff(Scalar(p[0] - self.re, p[1] - self.im))

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return coeff(Scalar(a * c - b * d, a * d + b * c))

    __rmul__ = __mul__

    def norm(self) -> mpq:
        """``conj(self) * self`` as a rational."""
        return self.re * self.re + self.im * self.im

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return coeff(Scalar(self.re / n, -self.im / n))

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self * inverse(coeff(Scalar(*p)))

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return coeff(Scalar(*p)) * self.inverse()

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def coeff(x):
    """Normalize a number to ``mpq`` when real, else to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x.re if x.im == 0 else x
    return _q(x)


def is_real(x) -> bool:
    return not isinstance(x, Scalar) or x.im == 0


def inverse(x):
    x = coeff(x)
    if isinstance(x, Scalar):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    return 1 / x


I = Scalar(0, 1)


def scalar_arith(a, b=None, op: str = "add"):
    """Apply ``add``, ``sub``, ``mul``, ``div`` or ``inv`` exactly."""
    a = coeff(a)
    if op == "inv":
        return inverse(a)
    b = coeff(b)
    if op == "add":
        return coeff(a + b)
    if op == "sub":
        return coeff(a - b)
    if op == "mul":
        return coeff(a * b)
    if op == "div":
        return coeff(a * inverse(b))
    raise ValueError(f"unknown scalar operation {op!r}")


def _fmt_q(q: mpq) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Render as ``p/q`` or ``p/q+r/s*i`` (integers lose their ``/1``)."""
    x = coeff(x)
    if not isinstance(x, Scalar):
        return _fmt_q(x)
    im = _fmt_q(x.im) + "*i"
    if x.re == 0:
        return im
    sign = "" if x.im < 0 else "+"
    return f"{_fmt_q(x.re)}{sign}{im}"


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`; also accepts bare ``i``/``-i``."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"malformed scalar {text!r}")

    def imag(part: str) -> mpq:
        part = part.replace("*", "")[:-1]
        if part in ("", "+"):
            return mpq(1)
        if part == "-":
            return mpq(-1)
        return mpq(part.lstrip("+"))

    if m.group("pim") is not None:
        return coeff(Scalar(0, imag(m.group("pim"))))
    re_part = mpq(m.group("re"))
    if m.group("im"):
        return coeff(Scalar(re_part, imag(m.group("im"))))
    return re_part
