"""Regular pencils ``A + sB`` and pairs of symmetric forms.

Conventions: a pencil is always ``P(s) = A + s*B``.  The ``s*Phi - Psi``
pencils of the Jordan reduction are handled at the boundary of
:func:`pencil_to_jordan` by ``A = -Psi, B = Phi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .canonical import ElementaryDivisorList, JordanForm, divisors_of, jordan_form, minimal_polynomial, similarity_transform
from .errors import (
    DimensionMismatch,
    NotSquare,
    PsiNotDefinite,
    SingularPencil,
    SingularPhi,
    SingularPsi,
)
from .matrices import Matrix, SymmetricMatrix, determinant, inverse, nullspace
from .numeric import Polynomial, RootInterval, isolate_real_roots, poly_gcd
from .numeric.factor import DEGREE_BOUND
from .smith import smith_normal_form

_S = Polynomial((0, 1))


@dataclass(frozen=True)
class Pencil:
    A: Matrix
    B: Matrix

    def __post_init__(self):
        for m in (self.A, self.B):
            if not m.is_square:
                raise NotSquare("pencil coefficients must be square")
            if m.is_polynomial:
                raise TypeError("pencil coefficients must be rational matrices")
        if self.A.shape != self.B.shape:
            raise DimensionMismatch(f"{self.A.shape} versus {self.B.shape}")

    @classmethod
    def from_phi_psi(cls, phi: Matrix, psi: Matrix) -> Pencil:
        """The pencil ``s*Phi - Psi``."""
        return cls(-psi, phi)

    @property
    def n(self) -> int:
        return self.A.rows

    def matrix(self) -> Matrix:
        """``A + s*B`` as a polynomial matrix."""
        return Matrix.from_flat(self.n, self.n, [a + _S * b for a, b in zip(self.A.entries, self.B.entries)])

    def reversed(self) -> Pencil:
        """``B + sigma*A``, whose divisors at ``sigma = 0`` are the infinite ones."""
        return Pencil(self.B, self.A)

    def det(self) -> Polynomial:
        return determinant(self.matrix())


@dataclass(frozen=True)
class PencilInvariants:
    finite: ElementaryDivisorList
    infinite_degrees: tuple[int, ...]
    regular: bool = True


def is_regular(p: Pencil) -> bool:
    return not p.det().is_zero


def _order_at_zero(f: Polynomial) -> int:
    k = 0
    while f.coeff(k) == 0:
        k += 1
    return k


def pencil_invariants(p: Pencil, degree_bound: int = DEGREE_BOUND) -> PencilInvariants:
    """Finite elementary divisors of ``A + sB`` and the degrees of the
    infinite ones (read from the reversed pencil at ``sigma = 0``)."""
    if not is_regular(p):
        raise SingularPencil("det(A + sB) vanishes identically")
    finite = smith_normal_form(p.matrix(), transforms=False).invariant_factors()
    rev = smith_normal_form(p.reversed().matrix(), transforms=False).invariant_factors()
    infinite = sorted((k for k in map(_order_at_zero, rev) if k), reverse=True)
    return PencilInvariants(divisors_of(finite, degree_bound), tuple(infinite))


def strictly_equivalent(p1: Pencil, p2: Pencil) -> bool:
    if p1.n != p2.n:
        raise DimensionMismatch(f"pencils of size {p1.n} and {p2.n}")
    return pencil_invariants(p1) == pencil_invariants(p2)


def pencil_to_jordan(
    phi: Matrix, psi: Matrix, degree_bound: int = DEGREE_BOUND
) -> tuple[Matrix, Matrix, JordanForm]:
    """Constant invertible ``H, K`` with ``H (s*Phi - Psi) K = sI - J``.

    ``J`` is the Jordan form of ``Psi Phi^-1``; if ``U^-1 (Psi Phi^-1) U = J``
    then ``H = U^-1`` and ``K = Phi^-1 U``.
    """
    if not (phi.is_square and psi.is_square):
        raise NotSquare("pencil coefficients must be square")
    if phi.shape != psi.shape:
        raise DimensionMismatch(f"{phi.shape} versus {psi.shape}")
    if determinant(phi) == 0:
        raise SingularPhi("Phi is singular")
    phi_inv = inverse(phi)
    m = psi @ phi_inv
    j = jordan_form(m, degree_bound)
    u = similarity_transform(m, j.matrix)
    return inverse(u), phi_inv @ u, j


# --- symmetric forms ------------------------------------------------------------

def leading_minors(s: Matrix) -> list[Fraction]:
    return [determinant(s.submatrix(range(k), range(k))) for k in range(1, s.rows + 1)]


def is_positive_definite(s: Matrix) -> bool:
    """Sylvester's criterion: every leading principal minor is positive."""
    s = SymmetricMatrix.of(s)
    return all(d > 0 for d in leading_minors(s))


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int
    principal_minors: tuple[Fraction, ...] = ()

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def inertia_by_minors(s: Matrix) -> Inertia | None:
    """Jacobi's rule: the k-th square carries ``D_k / D_(k-1)`` (``D_0 = 1``).
    Returns None unless every leading minor is nonzero."""
    s = SymmetricMatrix.of(s)
    minors = leading_minors(s)
    if any(d == 0 for d in minors):
        return None
    pos = neg = 0
    prev = Fraction(1)
    for d in minors:
        if d / prev > 0:
            pos += 1
        else:
            neg += 1
        prev = d
    return Inertia(pos, neg, 0, tuple(minors))


def inertia_by_congruence(s: Matrix) -> Inertia:
    """Symmetric elimination ``P^T S P`` down to a diagonal, counting signs."""
    s = SymmetricMatrix.of(s)
    a = s.to_lists()
    n = s.rows
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if off is None:
                break
            i, j = off
            # x_i -> x_i + x_j puts 2*a_ij on the diagonal
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for r in a:
                r[i] += r[j]
            continue
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for r in a:
                r[k], r[piv] = r[piv], r[k]
        d = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for r in a:
                    r[i] -= f * r[k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return Inertia(pos, neg, n - pos - neg)


def inertia(s: Matrix) -> Inertia:
    """Signs of a diagonalized quadratic form (Sylvester's law of inertia).

    Uses the leading-minor rule when it applies, congruence elimination
    otherwise; ``principal_minors`` is empty in the latter case.
    """
    return inertia_by_minors(s) or inertia_by_congruence(s)


@dataclass(frozen=True)
class SimultaneousDiagonalization:
    """``T^t Psi T = diag(diag_psi)`` and ``T^t Phi T = diag(diag_phi)``."""

    T: Matrix
    diag_phi: tuple[Fraction, ...]
    diag_psi: tuple[Fraction, ...]

    @property
    def ratios(self) -> list[Fraction]:
        return [a / b for a, b in zip(self.diag_phi, self.diag_psi)]


@dataclass(frozen=True)
class SpectralCertificate:
    """Returned when some root of ``det(Phi - s Psi)`` is irrational."""

    intervals: tuple[RootInterval, ...]
    linear_divisors: bool
    characteristic: Polynomial = field(compare=False)


def pair_polynomial(phi: Matrix, psi: Matrix) -> Polynomial:
    """``det(Phi - s*Psi)``."""
    return Pencil(phi, -psi).det()


def _check_pair(phi: Matrix, psi: Matrix):
    if not (phi.is_square and psi.is_square):
        raise NotSquare("expected square matrices")
    if phi.shape != psi.shape:
        raise DimensionMismatch(f"{phi.shape} versus {psi.shape}")


def simultaneous_diagonalize(
    phi: Matrix, psi: Matrix
) -> Union[SimultaneousDiagonalization, SpectralCertificate]:
    """Diagonalize the symmetric pair by one congruence, ``Psi`` definite.

    With a rational spectrum the columns of ``T`` are eigenvectors of the
    pencil, Gram-Schmidt orthogonalized in the ``Psi`` inner product (without
    normalization, which would need square roots).  Otherwise the isolated
    roots are returned together with the linear-divisor flag.
    """
    _check_pair(phi, psi)
    phi, psi = SymmetricMatrix.of(phi), SymmetricMatrix.of(psi)
    if not is_positive_definite(psi):
        raise PsiNotDefinite("Psi is not positive definite")
    charp = pair_polynomial(phi, psi)
    roots = isolate_real_roots(charp)
    if not all(iv.is_exact for iv in roots):
        return SpectralCertificate(tuple(roots), pair_splits(phi, psi), charp)

    def dot(u, v):
        return sum((u[i] * psi[i, j] * v[j] for i in range(len(u)) for j in range(len(v)) if psi[i, j]), Fraction(0))

    cols = []
    for iv in roots:
        r = iv.exact_root
        block = []
        for v in nullspace(phi - psi * r):
            for w in block:
                c = dot(w, v) / dot(w, w)
                v = [x - c * y for x, y in zip(v, w)]
            block.append(v)
        cols.extend(block)
    t = Matrix.from_columns(cols)
    dpsi = (t.T @ psi @ t).diagonal()
    dphi = (t.T @ phi @ t).diagonal()
    return SimultaneousDiagonalization(t, tuple(dphi), tuple(dpsi))


def pair_splits(phi: Matrix, psi: Matrix) -> bool:
    """True iff the minimal polynomial of ``Psi^-1 Phi`` is squarefree, i.e.
    every elementary divisor of the pair is linear."""
    _check_pair(phi, psi)
    if determinant(psi) == 0:
        raise SingularPsi("Psi is singular")
    m = minimal_polynomial(inverse(psi) @ phi)
    return poly_gcd(m, m.derivative()).degree == 0
