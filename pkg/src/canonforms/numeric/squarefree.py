"""Squarefree structure of rational polynomials (characteristic zero)."""

from __future__ import annotations

from ..errors import ZeroPolynomial
from .polynomial import ONE, Polynomial, poly_gcd


def squarefree_part(p: Polynomial) -> Polynomial:
    """Monic ``p / gcd(p, p')``: same distinct roots as ``p``, all simple."""
    if p.is_zero:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if p.degree == 0:
        return ONE
    return (p / poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm.

    Returns ``[(a_i, i), ...]`` with each ``a_i`` monic, squarefree, pairwise
    coprime and of positive degree, such that ``monic(p) == prod(a_i ** i)``.
    """
    if p.is_zero:
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    f = p.monic()
    if f.degree <= 0:
        return []
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f / a0
    c = df / a0
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b / a
        c = d / a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out
