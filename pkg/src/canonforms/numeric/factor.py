"""Factorization over the rationals by Kronecker's interpolation method.

Squarefree components are split first; rational roots are peeled off through
the exact root isolator, and whatever remains is searched for factors of
increasing degree by interpolating through divisor combinations of the
values ``f(a)`` at a handful of integer points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from ..errors import FactorDegreeExceeded, IntegerFactorizationExceeded, ZeroPolynomial
from .polynomial import Polynomial
from .roots import isolate_real_roots
from .squarefree import squarefree_decomposition

DEGREE_BOUND = 10
TRIAL_DIVISION_BOUND = 10**6


@dataclass(frozen=True)
class IrreducibleFactorization:
    unit: Fraction
    factors: tuple[tuple[Polynomial, int], ...]

    def expand(self) -> Polynomial:
        out = Polynomial.constant(self.unit)
        for f, e in self.factors:
            out = out * f**e
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def factor_integer(n: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division up to ``bound``.

    A leftover cofactor is accepted when it is provably prime (no divisor up to
    ``bound`` and smaller than ``bound**2``); otherwise the bound is reported.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        if p > bound:
            raise IntegerFactorizationExceeded(n, bound)
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def divisors(n: int, bound: int = TRIAL_DIVISION_BOUND) -> list[int]:
    divs = [1]
    for p, e in factor_integer(n, bound).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def factor_over_rationals(
    p: Polynomial,
    degree_bound: int = DEGREE_BOUND,
    trial_bound: int = TRIAL_DIVISION_BOUND,
) -> IrreducibleFactorization:
    """Complete factorization of ``p`` into monic irreducibles over the rationals.

    Raises:
        ZeroPolynomial: ``p`` is zero.
        FactorDegreeExceeded: a squarefree component has degree above ``degree_bound``.
        IntegerFactorizationExceeded: trial division could not finish inside
            the interpolation search.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    parts = squarefree_decomposition(p)
    for f, _ in parts:
        if f.degree > degree_bound:
            raise FactorDegreeExceeded(f.degree, degree_bound)
    factors = []
    for f, k in parts:
        for g in _factor_squarefree(f, trial_bound):
            factors.append((g, k))
    factors.sort(key=lambda fe: fe[0].sort_key())
    return IrreducibleFactorization(p.leading, tuple(factors))


def _factor_squarefree(f: Polynomial, trial_bound: int) -> list[Polynomial]:
    out = []
    for iv in isolate_real_roots(f):
        if iv.is_exact:
            lin = Polynomial.linear_root(iv.exact_root)
            out.append(lin)
            f = f / lin
    f = f.monic()
    if f.degree <= 0:
        return out
    _, ints = f.primitive_part()
    rest = ints
    d = 2
    while 2 * d <= len(rest) - 1:
        g = _kronecker_search(rest, d, trial_bound)
        if g is None:
            d += 1
            continue
        out.append(Polynomial(g).monic())
        rest = _int_exact_div(rest, g)
    out.append(Polynomial(rest).monic())
    return out


def _int_eval(c: list[int], x: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _int_exact_div(f: list[int], g: list[int]) -> list[int]:
    q, r = divmod(Polynomial(f), Polynomial(g))
    assert r.is_zero
    _, ints = q.primitive_part()
    return ints


def _sample_points(f: list[int], npoints: int, trial_bound: int):
    # integers 0, 1, -1, 2, -2, ...; prefer values with few divisors
    n = len(f) - 1
    candidates = []
    last_error = None
    for i in count():
        x = (i + 1) // 2 if i % 2 else -(i // 2)
        v = _int_eval(f, x)
        if v == 0:
            raise AssertionError("rational root left in Kronecker input")
        try:
            divs = divisors(v, trial_bound)
        except IntegerFactorizationExceeded:
            last_error = IntegerFactorizationExceeded(v, trial_bound)
        else:
            candidates.append((len(divs), abs(x), x, divs))
        if len(candidates) >= max(2 * npoints, npoints + n) or i > 8 * n + 16:
            break
    if len(candidates) < npoints:
        raise last_error
    candidates.sort()
    return [(x, divs) for _, _, x, divs in candidates[:npoints]]


def _kronecker_search(f: list[int], d: int, trial_bound: int):
    """A primitive integer factor of ``f`` of degree exactly ``d``, or None."""
    points = _sample_points(f, d + 1, trial_bound)
    xs = [x for x, _ in points]
    lc = f[-1]
    fpoly = Polynomial(f)

    # table[k] holds divided differences f[x_{k-j}..x_k] for j = 0..k
    table: list[list[Fraction]] = []

    def newton_to_poly(coefs):
        g = Polynomial.constant(coefs[-1])
        for k in range(len(coefs) - 2, -1, -1):
            g = g * Polynomial((-xs[k], 1)) + coefs[k]
        return g

    def extend(k):
        x, divs = points[k]
        signs = (1,) if k == 0 else (1, -1)
        for dv in divs:
            for sg in signs:
                row = [Fraction(sg * dv)]
                ok = True
                for j in range(1, k + 1):
                    val = (row[j - 1] - table[k - 1][j - 1]) / (x - xs[k - j])
                    if val.denominator != 1:
                        ok = False
                        break
                    row.append(val)
                if not ok:
                    continue
                if k == d:
                    top = row[d]
                    if top == 0 or lc % int(top):
                        continue
                    table.append(row)
                    g = newton_to_poly([table[i][i] for i in range(d + 1)])
                    table.pop()
                    if g.degree == d and (fpoly % g).is_zero:
                        return g
                    continue
                table.append(row)
                hit = extend(k + 1)
                table.pop()
                if hit is not None:
                    return hit
        return None

    g = extend(0)
    if g is None:
        return None
    _, ints = g.primitive_part()
    return ints
