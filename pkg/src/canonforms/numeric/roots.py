"""Exact real-root isolation by Sturm sequences and midpoint bisection."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import ZeroPolynomial
from .polynomial import Polynomial
from .squarefree import squarefree_decomposition, squarefree_part


@dataclass(frozen=True)
class RootInterval:
    """A closed interval ``[low, high]`` holding exactly one distinct real root.

    When the root is rational it is reported exactly and ``low == high``.
    """

    low: Fraction
    high: Fraction
    multiplicity: int
    exact_root: Optional[Fraction] = None

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError("empty interval")
        if self.exact_root is not None and not (self.low == self.high == self.exact_root):
            raise ValueError("exact root must collapse the interval")

    @property
    def is_exact(self) -> bool:
        return self.exact_root is not None

    def __str__(self):
        if self.is_exact:
            return f"{self.exact_root} (x{self.multiplicity})"
        return f"[{self.low}, {self.high}] (x{self.multiplicity})"


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero:
            break
        chain.append(-r)
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_variations(chain: list[Polynomial], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def cauchy_bound(p: Polynomial) -> int:
    """An integer strictly larger than the modulus of every root."""
    lc = abs(p.leading)
    m = max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))
    return math.floor(m) + 2


def count_roots(chain: list[Polynomial], a: Fraction, b: Fraction) -> int:
    """Distinct roots in ``(a, b]`` of the squarefree polynomial heading ``chain``."""
    return sign_variations(chain, a) - sign_variations(chain, b)


def isolate_real_roots(p: Polynomial) -> list[RootInterval]:
    """Isolate every distinct real root of ``p``.

    Returns disjoint intervals sorted left to right.  Each holds one root with
    its multiplicity in ``p``; rational roots come back exact.  Irrational
    roots sit in intervals of width below 1 (and below ``1/L`` where ``L`` is
    the leading coefficient of the primitive squarefree part, which is what
    rules out a hidden rational root ``k/L``).
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    parts = squarefree_decomposition(p)
    if not parts:
        return []
    q = parts[0][0]
    for f, _ in parts[1:]:
        q = q * f
    _, ints = q.primitive_part()
    lead = ints[-1]
    chain = sturm_chain(q)
    bound = Fraction(cauchy_bound(q))

    found: list[tuple[Fraction, Fraction, Optional[Fraction]]] = []

    def bisect(a, b, va, vb):
        n = va - vb
        if n == 0:
            return
        if n == 1:
            found.append(_refine(q, lead, a, b))
            return
        m = (a + b) / 2
        if q(m) == 0:
            delta = (b - a) / 4
            while True:
                lo, hi = m - delta, m + delta
                if q(lo) and q(hi) and count_roots(chain, lo, hi) == 1:
                    break
                delta /= 2
            vlo, vhi = sign_variations(chain, lo), sign_variations(chain, hi)
            bisect(a, lo, va, vlo)
            found.append((m, m, m))
            bisect(hi, b, vhi, vb)
        else:
            vm = sign_variations(chain, m)
            bisect(a, m, va, vm)
            bisect(m, b, vm, vb)

    bisect(-bound, bound, sign_variations(chain, -bound), sign_variations(chain, bound))
    found = _separate(q, found)

    out = []
    for lo, hi, exact in found:
        out.append(RootInterval(lo, hi, _multiplicity(parts, lo, hi, exact), exact))
    return out


def _refine(q: Polynomial, lead: int, a: Fraction, b: Fraction):
    # exactly one simple root of q in (a, b), q(a) != 0 != q(b)
    qa = _sign(q(a))
    while True:
        w = b - a
        if w < 1 and w * lead < 1:
            c = Fraction(math.floor(b * lead), lead)
            if a < c < b and q(c) == 0:
                return (c, c, c)
            return (a, b, None)
        m = (a + b) / 2
        qm = _sign(q(m))
        if qm == 0:
            return (m, m, m)
        if qm == qa:
            a = m
        else:
            b = m


def _separate(q: Polynomial, found):
    # closed neighbours may share an endpoint; that endpoint is never a root
    found = list(found)
    changed = True
    while changed:
        changed = False
        for i in range(len(found) - 1):
            lo1, hi1, e1 = found[i]
            lo2, hi2, e2 = found[i + 1]
            if hi1 < lo2:
                continue
            changed = True
            if e1 is None:
                found[i] = _halve(q, lo1, hi1)
            if e2 is None:
                found[i + 1] = _halve(q, lo2, hi2)
    return found


def _halve(q, a, b):
    m = (a + b) / 2
    qm = _sign(q(m))
    if qm == 0:
        return (m, m, m)
    if qm == _sign(q(a)):
        return (m, b, None)
    return (a, m, None)


def _multiplicity(parts, lo, hi, exact) -> int:
    for f, k in parts:
        if exact is not None:
            if f(exact) == 0:
                return k
        elif _sign(f(lo)) * _sign(f(hi)) < 0:
            return k
    raise AssertionError("root not attributed to any squarefree component")


def root_sign(p: Polynomial, iv: RootInterval) -> int:
    """Exact sign (-1, 0, +1) of the root of ``p`` isolated by ``iv``."""
    if iv.is_exact:
        return _sign(iv.exact_root)
    if iv.low >= 0:
        return 1
    if iv.high <= 0:
        return -1
    # straddles 0, and 0 is not a root (it would have been reported exactly)
    f = squarefree_part(p)
    return -1 if _sign(f(iv.low)) * _sign(f(Fraction(0))) < 0 else 1
