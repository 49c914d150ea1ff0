"""Similarity classification of square rational matrices.

Everything is derived from the Smith form of the characteristic matrix
``sI - A``: its non-unit diagonal entries are the similarity invariants, their
prime-power factors the elementary divisors, and the companion and Jordan
assemblies are two ways of writing the same class down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyList, NonSplitCharPoly, NotSimilar, NotSquare
from .matrices import Matrix, block_diag, char_matrix, companion, inverse
from .numeric import Polynomial, factor_over_rationals, as_rational
from .numeric.factor import DEGREE_BOUND
from .smith import FIELD, smith_normal_form


def _divisor_key(entry):
    p, e = entry
    return (p.degree, p.coeffs, -e)


class ElementaryDivisorList:
    """Multiset of prime powers ``(p, e)`` with ``p`` monic irreducible.

    Kept sorted by (degree of ``p``, coefficients of ``p`` lowest power first,
    exponent descending), so two lists compare equal iff they are the same
    multiset.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[tuple[Polynomial, int]] = ()):
        self.entries = tuple(sorted(((p, int(e)) for p, e in entries), key=_divisor_key))
        for p, e in self.entries:
            if e < 1 or not p.is_monic() or p.degree < 1:
                raise ValueError(f"bad elementary divisor ({p})^{e}")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if isinstance(other, ElementaryDivisorList):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def product(self) -> Polynomial:
        out = Polynomial.constant(1)
        for p, e in self.entries:
            out = out * p**e
        return out

    def powers(self) -> list[Polynomial]:
        return [p**e for p, e in self.entries]

    def __repr__(self):
        return "ElementaryDivisorList([" + ", ".join(f"({p})^{e}" for p, e in self.entries) + "])"


@dataclass(frozen=True)
class JordanForm:
    blocks: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[tuple]) -> JordanForm:
        bl = [(as_rational(a), int(k)) for a, k in blocks]
        bl.sort(key=lambda b: (b[0], -b[1]))
        return cls(tuple(bl))

    @classmethod
    def from_divisors(cls, divisors: ElementaryDivisorList) -> JordanForm:
        blocks = []
        for p, e in divisors:
            if p.degree != 1:
                raise NonSplitCharPoly(p)
            blocks.append((-p.coeff(0), e))
        return cls.from_blocks(blocks)

    @property
    def size(self) -> int:
        return sum(k for _, k in self.blocks)

    @property
    def matrix(self) -> Matrix:
        return block_diag(*(jordan_block(a, k) for a, k in self.blocks))


def jordan_block(a, k: int) -> Matrix:
    a = as_rational(a)
    return Matrix([[a if i == j else Fraction(int(j == i + 1)) for j in range(k)] for i in range(k)])


@dataclass(frozen=True)
class RationalCanonicalForm:
    invariant_factors: tuple[Polynomial, ...]

    @property
    def blocks(self) -> list[Matrix]:
        return [companion(f) for f in self.invariant_factors]

    @property
    def matrix(self) -> Matrix:
        return block_diag(*self.blocks)

    @property
    def minimal_polynomial(self) -> Polynomial:
        return self.invariant_factors[-1]


def _square(a: Matrix):
    if not a.is_square:
        raise NotSquare(f"expected a square matrix, got {a.rows}x{a.cols}")
    if a.is_polynomial:
        raise TypeError("expected a rational matrix")


def similarity_invariants(a: Matrix) -> list[Polynomial]:
    """Non-constant invariant factors of ``sI - A``, monic, in divisibility
    order; the last one is the minimal polynomial."""
    _square(a)
    snf = smith_normal_form(char_matrix(a), transforms=False)
    return [d for d in snf.diagonal if d.degree > 0]


def minimal_polynomial(a: Matrix) -> Polynomial:
    return similarity_invariants(a)[-1]


def divisors_of(invariants: Iterable[Polynomial], degree_bound: int = DEGREE_BOUND) -> ElementaryDivisorList:
    entries = []
    for f in invariants:
        entries.extend(factor_over_rationals(f, degree_bound).factors)
    return ElementaryDivisorList(entries)


def elementary_divisors(a: Matrix, degree_bound: int = DEGREE_BOUND) -> ElementaryDivisorList:
    return divisors_of(similarity_invariants(a), degree_bound)


def is_similar(a: Matrix, b: Matrix) -> bool:
    _square(a)
    _square(b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.rows} versus {b.rows}x{b.rows}")
    return similarity_invariants(a) == similarity_invariants(b)


def rational_form(a: Matrix) -> RationalCanonicalForm:
    return RationalCanonicalForm(tuple(similarity_invariants(a)))


def jordan_form(a: Matrix, degree_bound: int = DEGREE_BOUND) -> JordanForm:
    """Jordan form over the rationals; ``NonSplitCharPoly`` names the first
    irreducible factor of degree above one."""
    return JordanForm.from_divisors(elementary_divisors(a, degree_bound))


def build_normal_form(divisors: Sequence[tuple[Polynomial, int]] | ElementaryDivisorList) -> Matrix:
    """Block-diagonal matrix with one companion block of ``p**e`` per entry."""
    entries = list(divisors)
    if not entries:
        raise EmptyList("no elementary divisors given")
    for p, e in entries:
        if not p.is_monic():
            raise ValueError(f"elementary divisor base {p} is not monic")
    return block_diag(*(companion(p**e) for p, e in entries))


def _left_value(p: Matrix, f: Matrix) -> Matrix:
    """``sum_k F^k P_k`` where ``P(s) = sum_k s^k P_k``: the remainder of
    dividing ``P`` on the left by ``sI - F``."""
    n = p.rows
    deg = max(x.degree for x in p.entries)
    if deg < 0:
        return Matrix.zeros(n, p.cols)
    acc = Matrix.zeros(n, p.cols)
    for k in range(deg, -1, -1):
        coeff = Matrix.from_flat(n, p.cols, [x.coeff(k) for x in p.entries])
        acc = f @ acc + coeff
    return acc


def similarity_transform(a: Matrix, f: Matrix) -> Matrix:
    """An invertible ``S`` with ``S^-1 A S == F``.

    Both characteristic matrices are brought to Smith form,
    ``L_A (sI-A) R_A = D = L_F (sI-F) R_F``, so that
    ``P(s) (sI-A) Q(s) = sI-F`` with ``P = L_F^-1 L_A``.  The constant left
    remainder ``P0`` of ``P`` modulo ``sI-F`` then satisfies ``F P0 = P0 A``
    and is invertible; ``S = P0^-1``.
    """
    if not is_similar(a, f):
        raise NotSimilar("matrices have different similarity invariants")
    n = a.rows
    da = smith_normal_form(char_matrix(a))
    df = smith_normal_form(char_matrix(f), inverses=True)
    p = df.left_inverse @ da.left
    p0 = _left_value(p, f)
    s = inverse(p0)
    if f @ p0 != p0 @ a:
        raise AssertionError("scalar replacement failed")  # pragma: no cover
    assert s.rows == n
    return s


def equivalence_normal_form(a: Matrix) -> tuple[Matrix, Matrix, int]:
    """Invertible ``P, Q`` with ``P A Q = [[I_r, 0], [0, 0]]``, and ``r``."""
    snf = smith_normal_form(a, FIELD)
    return snf.left, snf.right, snf.rank
