"""Exact Gaussian rationals a + b*i with arbitrary-precision rational parts."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "I", "ZERO", "ONE", "ParseError", "parse_scalar", "format_scalar", "as_scalar"]


class ParseError(ValueError):
    """Raised for text that does not follow the scalar grammar."""


class Scalar:
    """An element of Q(i). Immutable; both parts are kept as reduced Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Scalar._raw(a * c, b)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Scalar":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar._raw(self.re / n, -self.im / n)

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm a^2 + b^2."""
        return self.re * self.re + self.im * self.im

    # predicates -----------------------------------------------------------
    def is_real(self) -> bool:
        return not self.im

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def as_scalar(x, strict: bool = True):
    """Coerce ints, Fractions and Scalars; other types raise (or give NotImplemented)."""
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Scalar._raw(Fraction(x), Fraction(0))
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, complex) or isinstance(x, float):
        # floats never enter exact computations
        if strict:
            raise TypeError(f"inexact value {x!r} cannot become a Scalar")
        return NotImplemented
    if strict:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

_NUM = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"""^(?:
        (?P<re>[+-]?{_NUM})(?:(?P<sign>[+-])(?P<im>(?:{_NUM})?)i)?
      | (?P<isign>[+-]?)(?P<imag>(?:{_NUM})?)i
    )$""",
    re.VERBOSE,
)


def _fraction(token: str, text: str) -> Fraction:
    if not token:
        return Fraction(1)
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {token!r} (scalar {text!r})")
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def parse_scalar(text: str) -> Scalar:
    """Parse ``"3"``, ``"-1/2"``, ``"i"``, ``"2/3-5i"``.

    A leading sign on a bare imaginary part (``"-i"``) is also accepted.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string scalar, got {text!r}")
    t = text.strip().replace(" ", "")
    m = _SCALAR_RE.match(t)
    if m is None:
        raise ParseError(f"malformed scalar {text!r}")
    if m.group("re") is not None:
        token = m.group("re")
        sign = -1 if token.startswith("-") else 1
        re_part = sign * _fraction(token.lstrip("+-"), text)
        if m.group("sign") is None:
            return Scalar._raw(re_part, Fraction(0))
        im_sign = -1 if m.group("sign") == "-" else 1
        return Scalar._raw(re_part, im_sign * _fraction(m.group("im"), text))
    im_sign = -1 if m.group("isign") == "-" else 1
    return Scalar._raw(Fraction(0), im_sign * _fraction(m.group("imag"), text))


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    re_part, im_part = s.re, s.im
    if not im_part:
        return _fmt_fraction(re_part)
    mag = abs(im_part)
    imag = "i" if mag == 1 else f"{_fmt_fraction(mag)}i"
    if not re_part:
        return imag if im_part > 0 else "-" + imag
    return f"{_fmt_fraction(re_part)}{'+' if im_part > 0 else '-'}{imag}"
