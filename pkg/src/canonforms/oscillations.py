"""Linear differential systems: exact solution structure and stability.

First-order systems ``x' = A x`` are solved through the Jordan reduction;
second-order mechanical systems ``M y'' + K y = 0`` go through the symmetric
pencil ``K - lambda*M`` directly.  Verdicts never consult root multiplicity
alone: what matters is the sign of the roots and, on the critical line,
whether the elementary divisors are linear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional

from .canonical import jordan_form, minimal_polynomial, similarity_transform
from .errors import DimensionMismatch, FactorDegreeExceeded, IntegerFactorizationExceeded, MNotDefinite, NotSquare
from .matrices import Matrix, SymmetricMatrix, char_matrix, char_poly, determinantal_divisor
from .numeric import (
    Polynomial,
    RootInterval,
    factor_over_rationals,
    isolate_real_roots,
    poly_gcd,
    root_sign,
    squarefree_decomposition,
)
from .numeric.factor import DEGREE_BOUND
from .pencil import is_positive_definite, pair_polynomial

BOUNDED, UNBOUNDED, UNDECIDED = "Bounded", "Unbounded", "Undecided"

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class FirstOrderSystem:
    """``x' = A x``."""

    A: Matrix

    def __post_init__(self):
        if not self.A.is_square or self.A.is_polynomial:
            raise NotSquare("a first-order system needs a square rational matrix")

    @property
    def n(self) -> int:
        return self.A.rows


@dataclass(frozen=True)
class SecondOrderSystem:
    """``M y'' + K y = 0`` with ``M`` and ``K`` symmetric."""

    M: Matrix
    K: Matrix

    def __post_init__(self):
        object.__setattr__(self, "M", SymmetricMatrix.of(self.M))
        object.__setattr__(self, "K", SymmetricMatrix.of(self.K))
        if self.M.shape != self.K.shape:
            raise DimensionMismatch(f"{self.M.shape} versus {self.K.shape}")

    @property
    def n(self) -> int:
        return self.M.rows


@dataclass(frozen=True)
class ExpPolyVector:
    """``e^(exponent*t) * sum_j t^j * coeffs[j]`` with vector coefficients."""

    exponent: Fraction
    coeffs: tuple[Vector, ...]

    def derivative(self) -> ExpPolyVector:
        n = len(self.coeffs)
        out = []
        for j in range(n):
            nxt = self.coeffs[j + 1] if j + 1 < n else None
            out.append(tuple(
                self.exponent * c + ((j + 1) * nxt[i] if nxt else 0)
                for i, c in enumerate(self.coeffs[j])
            ))
        return ExpPolyVector(self.exponent, tuple(out))

    def apply(self, a: Matrix) -> ExpPolyVector:
        return ExpPolyVector(self.exponent, tuple(tuple((a @ Matrix.from_columns([c])).col(0)) for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(x == 0 for c in self.coeffs for x in c)

    def __sub__(self, other: ExpPolyVector) -> ExpPolyVector:
        if self.exponent != other.exponent:
            raise ValueError("different exponentials")
        n = max(len(self.coeffs), len(other.coeffs))
        dim = len((self.coeffs or other.coeffs)[0])
        zero = (Fraction(0),) * dim

        def get(v, j):
            return v.coeffs[j] if j < len(v.coeffs) else zero

        return ExpPolyVector(self.exponent, tuple(
            tuple(x - y for x, y in zip(get(self, j), get(other, j))) for j in range(n)
        ))


@dataclass(frozen=True)
class Chain:
    eigenvalue: Fraction
    length: int
    vectors: tuple[Vector, ...]

    def solution(self, k: int) -> ExpPolyVector:
        """The k-th basis solution (1-based): ``e^(sigma t) sum_j t^j/j! v_(k-j)``."""
        if not 1 <= k <= self.length:
            raise IndexError(k)
        coeffs = tuple(
            tuple(x / factorial(j) for x in self.vectors[k - 1 - j]) for j in range(k)
        )
        return ExpPolyVector(self.eigenvalue, coeffs)

    def solutions(self) -> list[ExpPolyVector]:
        return [self.solution(k) for k in range(1, self.length + 1)]


@dataclass(frozen=True)
class SymbolicSolution:
    chains: tuple[Chain, ...]

    @property
    def dimension(self) -> int:
        return sum(c.length for c in self.chains)

    def fundamental_at_zero(self) -> Matrix:
        """Columns are the basis solutions at ``t = 0``, i.e. the chain vectors."""
        return Matrix.from_columns([v for c in self.chains for v in c.vectors])

    def solutions(self) -> list[ExpPolyVector]:
        return [x for c in self.chains for x in c.solutions()]


def solve_first_order(sys: FirstOrderSystem) -> SymbolicSolution:
    """One Jordan chain per block: the columns of ``S`` with ``S^-1 A S = J``.

    Raises NonSplitCharPoly when the characteristic polynomial has an
    irreducible factor of degree above one.
    """
    j = jordan_form(sys.A)
    s = similarity_transform(sys.A, j.matrix)
    chains = []
    col = 0
    for sigma, r in j.blocks:
        vecs = tuple(tuple(s.col(col + i)) for i in range(r))
        chains.append(Chain(sigma, r, vecs))
        col += r
    return SymbolicSolution(tuple(chains))


def _squarefree(p: Polynomial) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def minor_multiplicity_criterion(a: Matrix) -> bool:
    """Every root of multiplicity ``mu`` of the characteristic polynomial is a
    root of all minors of order ``n - mu + 1`` of ``sI - A``.

    With ``f_mu`` the product of the roots of multiplicity exactly ``mu``
    this reads: ``f_mu`` divides the determinantal divisor ``D_(n-mu+1)``.
    """
    n = a.rows
    cm = char_matrix(a)
    for f, mu in squarefree_decomposition(char_poly(a)):
        if mu == 1 or f.degree == 0:
            continue
        d = determinantal_divisor(cm, n - mu + 1)
        if not f.divides(d):
            return False
    return True


def splitting_criterion(sys: FirstOrderSystem) -> bool:
    """True iff the system decouples into ``n`` scalar equations
    ``dy/dt = sigma y``, i.e. the minimal polynomial is squarefree."""
    verdict = _squarefree(minimal_polynomial(sys.A))
    if verdict != minor_multiplicity_criterion(sys.A):
        raise AssertionError("splitting criteria disagree")  # pragma: no cover
    return verdict


@dataclass(frozen=True)
class StabilityVerdict:
    """``status`` is Bounded, Unbounded or Undecided.

    An Unbounded verdict names the offending irreducible factor (and the root
    when it is rational); an Undecided one carries isolating intervals for the
    real roots of the factors that could not be settled.
    """

    status: str
    reason: str = ""
    factor: Optional[Polynomial] = None
    root: Optional[Fraction] = None
    intervals: tuple[RootInterval, ...] = field(default=())

    @property
    def bounded(self) -> Optional[bool]:
        return None if self.status == UNDECIDED else self.status == BOUNDED


def _real_part_sign_quadratic(f: Polynomial) -> tuple[int, Optional[Fraction]]:
    """For monic irreducible ``s^2 + b s + c``: sign of the largest real part
    of its roots, and that real part when it is rational."""
    c, b = f.coeff(0), f.coeff(1)
    if b * b - 4 * c < 0:
        re = -b / 2
        return (re > 0) - (re < 0), re
    # two irrational real roots: sum -b, product c (c != 0 by irreducibility)
    if c > 0 and b > 0:
        return -1, None
    return 1, None


def classify_stability_first_order(sys: FirstOrderSystem, degree_bound: int = DEGREE_BOUND) -> StabilityVerdict:
    """Is every solution of ``x' = A x`` bounded as ``t -> +oo``?

    Bounded iff every eigenvalue has real part <= 0 and the critical ones
    (real part 0) have linear elementary divisors.  Decided exactly for
    irreducible factors of degree <= 2; a higher-degree factor makes the
    answer Undecided unless another factor already proves unboundedness.
    """
    a = sys.A
    cp = char_poly(a)
    try:
        fac = factor_over_rationals(cp, degree_bound)
    except (FactorDegreeExceeded, IntegerFactorizationExceeded) as exc:
        return StabilityVerdict(UNDECIDED, f"factorization unavailable: {exc}", intervals=tuple(isolate_real_roots(cp)))
    mp = minimal_polynomial(a)
    pending = []
    for f, _ in fac:
        root = None
        if f.degree == 1:
            root = -f.coeff(0)
            sign = (root > 0) - (root < 0)
        elif f.degree == 2:
            sign, _ = _real_part_sign_quadratic(f)
        else:
            pending.append(f)
            continue
        if sign > 0:
            return StabilityVerdict(UNBOUNDED, "eigenvalue with positive real part", f, root)
        if sign == 0 and (f * f).divides(mp):
            return StabilityVerdict(
                UNBOUNDED, "repeated critical eigenvalue with a nonlinear elementary divisor", f, root
            )
    if pending:
        ivs = tuple(iv for f in pending for iv in isolate_real_roots(f))
        names = ", ".join(str(f) for f in pending)
        return StabilityVerdict(UNDECIDED, f"irreducible factors of degree above 2: {names}", intervals=ivs)
    return StabilityVerdict(BOUNDED, "no eigenvalue in the right half-plane; critical divisors linear")


@dataclass(frozen=True)
class SecondOrderAnalysis:
    roots: tuple[RootInterval, ...]
    verdict: StabilityVerdict
    characteristic: Polynomial


def analyze_second_order(sys: SecondOrderSystem) -> SecondOrderAnalysis:
    """Roots of ``det(K - lambda M)`` and the stability of ``M y'' + K y = 0``.

    Every root is real.  Bounded iff every root is positive; a negative root
    gives exponential growth and ``lambda = 0`` a linear drift ``y = c t``,
    both Unbounded.  Multiplicity is never consulted.
    """
    if not is_positive_definite(sys.M):
        raise MNotDefinite("M is not positive definite")
    p = pair_polynomial(sys.K, sys.M)
    roots = tuple(isolate_real_roots(p))
    if sum(iv.multiplicity for iv in roots) != sys.n:
        raise AssertionError("non-real pencil roots for a definite pair")  # pragma: no cover
    verdict = StabilityVerdict(BOUNDED, "every root lambda is positive")
    for iv in roots:
        sign = root_sign(p, iv)
        if sign < 0:
            verdict = StabilityVerdict(UNBOUNDED, "negative lambda: exponential growth", root=iv.exact_root, intervals=(iv,))
            break
        if sign == 0:
            verdict = StabilityVerdict(
                UNBOUNDED, "lambda = 0: rigid drift, solutions y = c*t grow linearly", root=Fraction(0), intervals=(iv,)
            )
            break
    return SecondOrderAnalysis(roots, verdict, p)
