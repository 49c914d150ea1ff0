"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Union

from ..errors import PolynomialSyntax, ZeroPolynomial

Rational = Fraction
Scalar = Union[int, Fraction]

#: Degree reported by the zero polynomial.  Every nonzero polynomial has
#: degree >= 0, so this value never collides with a real degree.
ZERO_DEGREE = -1


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Polynomial:
    """Immutable polynomial ``c[0] + c[1] s + ... + c[d] s^d`` over the rationals.

    ``coeffs`` is stored lowest degree first, with no trailing zeros; the zero
    polynomial has an empty coefficient tuple and degree ``ZERO_DEGREE``.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [as_rational(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, c: tuple) -> Polynomial:
        # c already trimmed and made of Fractions
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def linear_root(cls, r: Scalar) -> Polynomial:
        """The monic polynomial ``s - r``."""
        return cls((-as_rational(r), 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> Polynomial:
        return reduce(lambda acc, r: acc * cls.linear_root(r), roots, ONE)

    # --- basic data -----------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1 if self._c else ZERO_DEGREE

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    @property
    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def sort_key(self) -> tuple:
        return (self.degree, self._c)

    # --- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] += x
        return Polynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(tuple(-x for x in self._c))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Polynomial._raw(tuple(x * other for x in self._c))
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        c = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return Polynomial._raw(tuple(c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self._c)
        db = other.degree
        lb = other._c[-1]
        b = other._c
        if len(r) - 1 < db:
            return ZERO, self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            t = r[k + db] / lb
            q[k] = t
            if t:
                for j in range(db + 1):
                    r[k + j] -= t * b[j]
        return Polynomial(q), Polynomial(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Division by a nonzero scalar, or exact division by a polynomial."""
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: Polynomial) -> bool:
        """True when ``self`` divides ``other`` (0 divides only 0)."""
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    # --- comparisons ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Polynomial((other,))._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Polynomial", self._c))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    # --- calculus and evaluation ----------------------------------------

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else ZERO
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self._c) if i)

    def monic(self) -> Polynomial:
        if not self._c:
            return self
        lc = self._c[-1]
        if lc == 1:
            return self
        return Polynomial._raw(tuple(x / lc for x in self._c))

    def primitive_part(self) -> tuple[Fraction, list[int]]:
        """Split ``self`` as ``content * P`` with ``P`` integral, primitive and
        with positive leading coefficient.  Returns ``(content, P coeffs)``."""
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no primitive part")
        den = lcm(*(x.denominator for x in self._c))
        ints = [int(x * den) for x in self._c]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [x // g for x in ints]

    def shift_scale(self, a: Scalar, b: Scalar) -> Polynomial:
        """Return ``p(a*s + b)``."""
        lin = Polynomial((b, a))
        acc = ZERO
        for c in reversed(self._c):
            acc = acc * lin + c
        return acc

    # --- presentation ---------------------------------------------------

    def to_str(self, var: str = "s") -> str:
        return format_poly(self, var)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


ZERO = Polynomial._raw(())
ONE = Polynomial._raw((Fraction(1),))
S = Polynomial._raw((Fraction(0), Fraction(1)))


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor; ``poly_gcd(0, 0) == 0``."""
    a, b = p.monic(), q.monic()
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero or q.is_zero:
        return ZERO
    return (p * q / poly_gcd(p, q)).monic()


def poly_xgcd(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return ``(g, u, v)`` with ``u*p + v*q == g`` and ``g`` monic (or zero)."""
    r0, r1 = p, q
    u0, u1 = ONE, ZERO
    v0, v1 = ZERO, ONE
    while not r1.is_zero:
        t, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - t * u1
        v0, v1 = v1, v0 - t * v1
    if r0.is_zero:
        return ZERO, ZERO, ZERO
    lc = r0.leading
    return r0 / lc, u0 / lc, v0 / lc


# --- text syntax ---------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial, var: str = "s") -> str:
    """Render as ``c*s^k`` terms, highest degree first, e.g. ``s^3 - 4*s^2 + 3*s``."""
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _format_coeff(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_format_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_NUM = r"\d+(?:/\d+)?"


def parse_poly(text: str, var: str = "s") -> Polynomial:
    """Parse the ``c*s^k`` term syntax.  Coefficients are integers or ``p/q``;
    the ``*`` between coefficient and variable is optional."""
    if re.search(r"[\d/]\s+[\d/]", text):
        raise PolynomialSyntax(f"whitespace inside a number in {text!r}")
    src = "".join(text.split())
    if not src:
        raise PolynomialSyntax("empty polynomial")
    v = re.escape(var)
    term = re.compile(
        rf"([+-]?)(?:({_NUM})(?:\*?({v})(?:\^(\d+))?)?|({v})(?:\^(\d+))?)"
    )
    pos = 0
    acc: dict[int, Fraction] = {}
    while pos < len(src):
        m = term.match(src, pos)
        if not m or m.end() == pos or (pos and not m.group(1)):
            raise PolynomialSyntax(f"cannot parse {text!r} at offset {pos}")
        sign, num, x1, e1, x2, e2 = m.groups()
        if num is None and x2 is None:
            raise PolynomialSyntax(f"cannot parse {text!r} at offset {pos}")
        try:
            c = Fraction(num) if num is not None else Fraction(1)
        except ZeroDivisionError:
            raise PolynomialSyntax(f"zero denominator in {text!r}") from None
        if sign == "-":
            c = -c
        x, exp = (x1, e1) if num is not None else (x2, e2)
        k = 0 if x is None else (int(exp) if exp is not None else 1)
        acc[k] = acc.get(k, Fraction(0)) + c
        pos = m.end()
    if not acc:
        raise PolynomialSyntax(f"cannot parse {text!r}")
    n = max(acc)
    return Polynomial(acc.get(k, 0) for k in range(n + 1))
