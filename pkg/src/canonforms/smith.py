"""Smith normal form over the integers, over Q[s], and (trivially) over Q.

The reduction is the textbook Euclidean one: bring an entry of least size to
the corner, clear its row and column by division with remainder, restart
whenever a remainder survives, and force divisibility of the rest of the
matrix by adding an offending row into the pivot row.  Every elementary
operation is mirrored on the accumulated transforms (and, on request, on their
inverses, which the scalar-replacement construction downstream needs).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional

from .matrices import Matrix
from .numeric import ONE, ZERO, Polynomial

INT, POLY, FIELD = "int", "poly", "field"


class _Ring:
    name: str
    zero: object
    one: object

    def size(self, x) -> int:
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def normalizer(self, x):
        """A unit ``u`` with ``u * x`` in normal form."""
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError


class _Integers(_Ring):
    name, zero, one = INT, Fraction(0), Fraction(1)

    def size(self, x):
        return abs(x.numerator)

    def divmod(self, a, b):
        q = Fraction(a.numerator // b.numerator)
        return q, a - q * b

    def normalizer(self, x):
        return Fraction(-1) if x < 0 else Fraction(1)

    def is_unit(self, x):
        return abs(x) == 1


class _Polynomials(_Ring):
    name, zero, one = POLY, ZERO, ONE

    def size(self, x):
        return x.degree

    def divmod(self, a, b):
        return divmod(a, b)

    def normalizer(self, x):
        return 1 / x.leading

    def is_unit(self, x):
        return x.degree == 0


class _Rationals(_Ring):
    name, zero, one = FIELD, Fraction(0), Fraction(1)

    def size(self, x):
        return 0

    def divmod(self, a, b):
        return a / b, Fraction(0)

    def normalizer(self, x):
        return 1 / x

    def is_unit(self, x):
        return x != 0


RINGS = {INT: _Integers(), POLY: _Polynomials(), FIELD: _Rationals()}


def domain_of(m: Matrix) -> str:
    if m.is_polynomial:
        return POLY
    return INT if m.is_integral() else FIELD


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ input @ right == diagonal matrix`` (padded with zeros).

    ``left`` and ``right`` are unimodular over ``domain``.  The inverses are
    only filled in when requested from :func:`smith_normal_form`.
    """

    left: Optional[Matrix]
    diagonal: tuple
    right: Optional[Matrix]
    domain: str
    shape: tuple[int, int]
    left_inverse: Optional[Matrix] = None
    right_inverse: Optional[Matrix] = None

    def diagonal_matrix(self) -> Matrix:
        rows, cols = self.shape
        ring = RINGS[self.domain]
        data = [[ring.zero] * cols for _ in range(rows)]
        for i, d in enumerate(self.diagonal):
            data[i][i] = d
        return Matrix(data)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def invariant_factors(self) -> list:
        ring = RINGS[self.domain]
        return [d for d in self.diagonal if not ring.is_unit(d)]


def _rational_content(row) -> Fraction:
    nums, dens = [], []
    for p in row:
        for c in p.coeffs:
            if c:
                nums.append(c.numerator)
                dens.append(c.denominator)
    if not nums:
        return Fraction(0)
    return Fraction(reduce(gcd, nums), reduce(lcm, dens))


class _Reducer:
    """Mutable working state for a single reduction."""

    def __init__(self, m: Matrix, ring: _Ring, transforms: bool, inverses: bool):
        self.ring = ring
        self.rows, self.cols = m.rows, m.cols
        self.a = m.to_lists()
        if ring.name == POLY:
            self.a = [[x if isinstance(x, Polynomial) else Polynomial.constant(x) for x in r] for r in self.a]
        one, zero = ring.one, ring.zero

        def eye(n):
            return [[one if i == j else zero for j in range(n)] for i in range(n)]

        self.track = transforms
        self.track_inv = transforms and inverses
        if self.track:
            self.left, self.right = eye(self.rows), eye(self.cols)
        if self.track_inv:
            self.left_inv, self.right_inv = eye(self.rows), eye(self.cols)

    # elementary row operations (mirrored on left, and on left_inv as column ops)

    def swap_rows(self, i, j):
        if i == j:
            return
        a = self.a
        a[i], a[j] = a[j], a[i]
        if self.track:
            self.left[i], self.left[j] = self.left[j], self.left[i]
        if self.track_inv:
            for r in self.left_inv:
                r[i], r[j] = r[j], r[i]

    def add_row(self, dst, src, c):
        """row[dst] += c * row[src]"""
        self.a[dst] = [x + c * y for x, y in zip(self.a[dst], self.a[src])]
        if self.track:
            self.left[dst] = [x + c * y for x, y in zip(self.left[dst], self.left[src])]
        if self.track_inv:
            for r in self.left_inv:
                r[src] = r[src] - c * r[dst]

    def scale_row(self, i, u):
        self.a[i] = [x * u for x in self.a[i]]
        if self.track:
            self.left[i] = [x * u for x in self.left[i]]
        if self.track_inv:
            inv = 1 / u
            for r in self.left_inv:
                r[i] = r[i] * inv

    # elementary column operations (mirrored on right, and on right_inv as row ops)

    def swap_cols(self, i, j):
        if i == j:
            return
        for r in self.a:
            r[i], r[j] = r[j], r[i]
        if self.track:
            for r in self.right:
                r[i], r[j] = r[j], r[i]
        if self.track_inv:
            ri = self.right_inv
            ri[i], ri[j] = ri[j], ri[i]

    def add_col(self, dst, src, c):
        """col[dst] += c * col[src]"""
        for r in self.a:
            r[dst] = r[dst] + c * r[src]
        if self.track:
            for r in self.right:
                r[dst] = r[dst] + c * r[src]
        if self.track_inv:
            ri = self.right_inv
            ri[src] = [x - c * y for x, y in zip(ri[src], ri[dst])]

    # --- the reduction --------------------------------------------------

    def extract_contents(self, t):
        for i in range(t, self.rows):
            c = _rational_content(self.a[i][t:])
            if c and c != 1:
                self.scale_row(i, 1 / c)

    def pivot(self, t):
        ring, a = self.ring, self.a
        best = None
        for i in range(t, self.rows):
            for j in range(t, self.cols):
                x = a[i][j]
                if x:
                    sz = ring.size(x)
                    if best is None or sz < best[0]:
                        best = (sz, i, j)
        return best

    def run(self) -> list:
        ring, a = self.ring, self.a
        diag = []
        for t in range(min(self.rows, self.cols)):
            while True:
                if ring.name == POLY:
                    self.extract_contents(t)
                best = self.pivot(t)
                if best is None:
                    break
                _, pi, pj = best
                self.swap_rows(t, pi)
                self.swap_cols(t, pj)
                p = a[t][t]
                dirty = False
                for i in range(t + 1, self.rows):
                    if a[i][t]:
                        q, r = ring.divmod(a[i][t], p)
                        self.add_row(i, t, -q)
                        dirty = dirty or bool(r)
                for j in range(t + 1, self.cols):
                    if a[t][j]:
                        q, r = ring.divmod(a[t][j], p)
                        self.add_col(j, t, -q)
                        dirty = dirty or bool(r)
                if dirty:
                    continue
                bad = self.non_divisible(t)
                if bad is not None:
                    self.add_row(t, bad, ring.one)
                    continue
                break
            if best is None:
                break
            u = ring.normalizer(a[t][t])
            if u != 1:
                self.scale_row(t, u)
            diag.append(a[t][t])
        diag += [ring.zero] * (min(self.rows, self.cols) - len(diag))
        return diag

    def non_divisible(self, t):
        ring, a = self.ring, self.a
        p = a[t][t]
        if ring.is_unit(p):
            return None
        for i in range(t + 1, self.rows):
            for j in range(t + 1, self.cols):
                if a[i][j] and ring.divmod(a[i][j], p)[1]:
                    return i
        return None


def smith_normal_form(
    m: Matrix,
    domain: Optional[str] = None,
    transforms: bool = True,
    inverses: bool = False,
) -> SmithDecomposition:
    """Smith normal form with accumulated unimodular transforms.

    ``domain`` defaults to ``"poly"`` for polynomial matrices, ``"int"`` for
    integral ones and ``"field"`` otherwise.  Pivots are chosen of least
    Euclidean size (degree, absolute value), the topmost then leftmost on ties.
    Diagonal entries are monic/positive, each divides the next, zeros trail.
    """
    domain = domain or domain_of(m)
    if domain == INT and not m.is_integral():
        raise ValueError("integer Smith form of a non-integral matrix")
    if domain == FIELD and m.is_polynomial:
        raise ValueError("field Smith form of a polynomial matrix")
    red = _Reducer(m, RINGS[domain], transforms, inverses)
    diag = red.run()
    left = right = left_inv = right_inv = None
    if red.track:
        left, right = Matrix(red.left), Matrix(red.right)
    if red.track_inv:
        left_inv, right_inv = Matrix(red.left_inv), Matrix(red.right_inv)
    return SmithDecomposition(left, tuple(diag), right, domain, m.shape, left_inv, right_inv)


def invariant_factors(m: Matrix, domain: Optional[str] = None) -> list:
    """Non-unit diagonal entries of the Smith form, in divisibility order."""
    return smith_normal_form(m, domain, transforms=False).invariant_factors()
