"""Dense exact matrices over the rationals or over Q[s].

A ``Matrix`` is immutable and holds either ``Fraction`` entries or, as soon as
one entry is a ``Polynomial``, polynomial entries throughout.  Integer
matrices are rational matrices whose entries happen to have denominator 1.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import (
    AdjugateVanishes,
    BadEntry,
    BadOrder,
    DimensionMismatch,
    EmptyInput,
    NotAnEigenvalue,
    NotSquare,
    NotSymmetric,
    PolynomialSyntax,
    RaggedRows,
    SingularMatrix,
)
from .numeric import ONE, ZERO, Polynomial, as_rational, parse_poly, poly_gcd


def _entry(x):
    if isinstance(x, Polynomial):
        return x
    return as_rational(x)


class Matrix:
    __slots__ = ("rows", "cols", "_e", "_poly")

    def __init__(self, data: Sequence[Sequence]):
        data = [list(r) for r in data]
        if not data or not data[0]:
            raise ValueError("a matrix needs at least one row and one column")
        cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        flat = [_entry(x) for r in data for x in r]
        self._set(len(data), cols, flat)

    def _set(self, rows, cols, flat):
        poly = any(isinstance(x, Polynomial) for x in flat)
        if poly:
            flat = [x if isinstance(x, Polynomial) else Polynomial.constant(x) for x in flat]
        self.rows, self.cols = rows, cols
        self._e = tuple(flat)
        self._poly = poly

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Iterable) -> Matrix:
        flat = [_entry(x) for x in entries]
        if len(flat) != rows * cols or rows < 1 or cols < 1:
            raise ValueError("entry count does not match the shape")
        m = object.__new__(cls)
        m._set(rows, cols, flat)
        return m

    @classmethod
    def identity(cls, n: int, poly: bool = False) -> Matrix:
        one, zero = (ONE, ZERO) if poly else (Fraction(1), Fraction(0))
        return cls.from_flat(n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, poly: bool = False) -> Matrix:
        cols = rows if cols is None else cols
        return cls.from_flat(rows, cols, [ZERO if poly else Fraction(0)] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        vals = [_entry(v) for v in values]
        poly = any(isinstance(v, Polynomial) for v in vals)
        zero = ZERO if poly else Fraction(0)
        return cls.from_flat(n, n, [vals[i] if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> Matrix:
        return cls([list(r) for r in zip(*columns)])

    # --- access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_polynomial(self) -> bool:
        return self._poly

    @property
    def entries(self) -> tuple:
        return self._e

    def is_integral(self) -> bool:
        return not self._poly and all(x.denominator == 1 for x in self._e)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self._e[j::self.cols]

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix([[self[i, j] for j in cols] for i in rows])

    def map(self, fn) -> Matrix:
        return Matrix.from_flat(self.rows, self.cols, [fn(x) for x in self._e])

    @property
    def T(self) -> Matrix:
        return Matrix.from_flat(
            self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)]
        )

    @property
    def is_zero(self) -> bool:
        return all(not x for x in self._e)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def is_diagonal(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self) -> list:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    # --- arithmetic -----------------------------------------------------

    def _check_same(self, other):
        if not isinstance(other, Matrix):
            return False
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        return True

    def __add__(self, other):
        if not self._check_same(other):
            return NotImplemented
        return Matrix.from_flat(self.rows, self.cols, [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other):
        if not self._check_same(other):
            return NotImplemented
        return Matrix.from_flat(self.rows, self.cols, [a - b for a, b in zip(self._e, other._e)])

    def __neg__(self):
        return Matrix.from_flat(self.rows, self.cols, [-a for a in self._e])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        c = _entry(c)
        return Matrix.from_flat(self.rows, self.cols, [a * c for a in self._e])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self._e, other._e
        out = []
        for i in range(n):
            ai = a[i * m:(i + 1) * m]
            for j in range(p):
                acc = ai[0] * b[j]
                for k in range(1, m):
                    x = ai[k]
                    if x:
                        acc = acc + x * b[k * p + j]
                out.append(acc)
        return Matrix.from_flat(n, p, out)

    def __pow__(self, k: int):
        if not self.is_square:
            raise NotSquare("power of a non-square matrix")
        result = Matrix.identity(self.rows, self._poly)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __repr__(self):
        return f"{type(self).__name__}({[[str(x) for x in r] for r in self.to_lists()]})"

    def __str__(self):
        return format_matrix_text(self)


class SymmetricMatrix(Matrix):
    """A square rational matrix equal to its transpose."""

    __slots__ = ()

    def __init__(self, data):
        super().__init__(data)
        self._validate()

    def _validate(self):
        if self._poly:
            raise NotSymmetric("symmetric matrices here have rational entries")
        if not self.is_symmetric():
            raise NotSymmetric("matrix is not symmetric")

    @classmethod
    def of(cls, m: Matrix) -> SymmetricMatrix:
        if isinstance(m, cls):
            return m
        s = object.__new__(cls)
        s._set(m.rows, m.cols, list(m.entries))
        s._validate()
        return s


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    poly = any(b.is_polynomial for b in blocks)
    zero = ZERO if poly else Fraction(0)
    rows = [[zero] * m for _ in range(n)]
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[r + i][c + j] = b[i, j]
        r += b.rows
        c += b.cols
    return Matrix(rows)


def companion(p: Polynomial) -> Matrix:
    """Companion matrix of monic ``p``: subdiagonal 1s, ``-coeffs`` in the last column."""
    if p.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    p = p.monic()
    n = p.degree
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = Fraction(1)
    for i in range(n):
        rows[i][n - 1] = -p.coeff(i)
    return Matrix(rows)


# --- determinants and minors -----------------------------------------------

def _require_square(m: Matrix):
    if not m.is_square:
        raise NotSquare(f"expected a square matrix, got {m.rows}x{m.cols}")


def determinant(m: Matrix):
    """Exact determinant.

    Integer and polynomial matrices go through Bareiss' fraction-free
    elimination; general rational matrices through ordinary field elimination.
    """
    _require_square(m)
    if m.is_polynomial or m.is_integral():
        return _bareiss(m)
    return _field_det(m)


def _bareiss(m: Matrix):
    n = m.rows
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO if m.is_polynomial else Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) / prev
        prev = akk
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def _field_det(m: Matrix) -> Fraction:
    n = m.rows
    a = m.to_lists()
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        akk = a[k][k]
        det *= akk
        for i in range(k + 1, n):
            f = a[i][k] / akk
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def minors(m: Matrix, k: int) -> Iterator:
    """All ``k``-by-``k`` minors, row subsets outer, column subsets inner."""
    for rs in combinations(range(m.rows), k):
        for cs in combinations(range(m.cols), k):
            yield determinant(m.submatrix(rs, cs))


def determinantal_divisor(m: Matrix, k: int):
    """Normalized gcd of all ``k``-by-``k`` minors (0 when they all vanish).

    Polynomial matrices give a monic polynomial; integer matrices a
    nonnegative integer (as a Fraction).
    """
    if not 1 <= k <= min(m.rows, m.cols):
        raise BadOrder(f"order {k} outside 1..{min(m.rows, m.cols)}")
    if m.is_polynomial:
        g = ZERO
        for d in minors(m, k):
            g = poly_gcd(g, d)
            if g == ONE:
                break
        return g
    if not m.is_integral():
        # over a field every nonzero minor is a unit
        return Fraction(1) if any(minors(m, k)) else Fraction(0)
    g = 0
    for d in minors(m, k):
        g = gcd(g, int(d))
        if g == 1:
            break
    return Fraction(g)


def adjugate(m: Matrix) -> Matrix:
    """Transpose of the cofactor matrix, so that ``m @ adj(m) == det(m) * I``."""
    _require_square(m)
    n = m.rows
    if n == 1:
        return Matrix.identity(1, m.is_polynomial)
    out = [[None] * n for _ in range(n)]
    idx = range(n)
    for i in idx:
        for j in idx:
            c = determinant(m.submatrix([r for r in idx if r != i], [c for c in idx if c != j]))
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return Matrix(out)


def char_matrix(a: Matrix) -> Matrix:
    """The polynomial matrix ``sI - A``."""
    _require_square(a)
    n = a.rows
    s = Polynomial((0, 1))
    return Matrix.from_flat(
        n, n, [(s if i == j else ZERO) - a[i, j] for i in range(n) for j in range(n)]
    )


def char_poly(a: Matrix) -> Polynomial:
    """Monic ``det(sI - A)``."""
    _require_square(a)
    if a.is_polynomial:
        raise TypeError("characteristic polynomial of a rational matrix expected")
    return determinant(char_matrix(a))


def evaluate_poly(p: Polynomial, a: Matrix) -> Matrix:
    """``p(A)`` by Horner's rule."""
    _require_square(a)
    n = a.rows
    eye = Matrix.identity(n)
    acc = Matrix.zeros(n)
    for c in reversed(p.coeffs):
        acc = acc @ a + eye * c
    return acc


# --- rational elimination ---------------------------------------------------

def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    if m.is_polynomial:
        raise TypeError("rref expects a rational matrix")
    a = m.to_lists()
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Matrix(a), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}``; each vector has a 1 in its free coordinate."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, f]
        basis.append(v)
    return basis


def inverse(m: Matrix) -> Matrix:
    _require_square(m)
    n = m.rows
    aug = Matrix([list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))


# --- eigenvectors from cofactors ----------------------------------------------

def adjugate_eigenvector(a: Matrix, r) -> list[Fraction]:
    """Eigenvector for the eigenvalue ``r`` read off a column of ``adj(A - rI)``.

    The first nonzero column, scanning left to right, is returned.  If the
    whole adjugate vanishes (which happens exactly when ``A - rI`` has rank
    below ``n - 1``, i.e. ``r`` is a repeated eigenvalue of a symmetric
    matrix) ``AdjugateVanishes`` is raised.
    """
    _require_square(a)
    r = as_rational(r)
    if char_poly(a)(r) != 0:
        raise NotAnEigenvalue(f"{r} is not a root of the characteristic polynomial")
    adj = adjugate(a - Matrix.identity(a.rows) * r)
    for j in range(adj.cols):
        col = list(adj.col(j))
        if any(col):
            return col
    raise AdjugateVanishes(f"adj(A - {r}I) is the zero matrix")


# --- text format ---------------------------------------------------------------

_ENTRY = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_matrix_text(content: str) -> Matrix:
    """Parse whitespace-separated integer or ``p/q`` entries, one row per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows: list[list[Fraction]] = []
    width = None
    for lineno, line in enumerate(content.splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        row = []
        for col, tok in enumerate(text.split(), start=1):
            if not _ENTRY.match(tok):
                raise BadEntry(lineno, col, tok)
            try:
                row.append(Fraction(tok))
            except ZeroDivisionError:
                raise BadEntry(lineno, col, tok) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise RaggedRows(lineno, width, len(row))
        rows.append(row)
    if not rows:
        raise EmptyInput("no matrix rows found")
    return Matrix(rows)


def parse_poly_matrix_text(content: str, var: str = "s") -> Matrix:
    """Like :func:`parse_matrix_text`, but each entry is a polynomial written
    without internal spaces (``s^2-1``, ``3/2*s``)."""
    rows = []
    width = None
    for lineno, line in enumerate(content.splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        row = []
        for col, tok in enumerate(text.split(), start=1):
            try:
                row.append(parse_poly(tok, var))
            except PolynomialSyntax:
                raise BadEntry(lineno, col, tok) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise RaggedRows(lineno, width, len(row))
        rows.append(row)
    if not rows:
        raise EmptyInput("no matrix rows found")
    return Matrix(rows)


def format_entry(x, var: str = "s") -> str:
    if isinstance(x, Polynomial):
        return "".join(x.to_str(var).split())
    return str(x)


def format_matrix_text(m: Matrix, var: str = "s") -> str:
    return "".join(" ".join(format_entry(x, var) for x in m.row(i)) + "\n" for i in range(m.rows))
