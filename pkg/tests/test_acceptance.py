"""Numbered acceptance criteria, each at its stated count and time limit.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import json
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

import oracles
from cli_cases import EXIT_CASES, GOLDEN, GOLDEN_CASES, invoke
from canonforms import (
    ElementaryDivisorList,
    FirstOrderSystem,
    Matrix,
    SecondOrderSystem,
    adjugate_eigenvector,
    analyze_second_order,
    build_normal_form,
    char_matrix,
    char_poly,
    classify_stability_first_order,
    determinantal_divisor,
    elementary_divisors,
    inertia,
    is_similar,
    isolate_real_roots,
    jordan_form,
    minimal_polynomial,
    pair_splits,
    pencil_to_jordan,
    rational_form,
    simultaneous_diagonalize,
    smith_normal_form,
    solve_first_order,
)
from canonforms.errors import CanonFormsError, InputError
from canonforms.numeric import Polynomial, squarefree_part
from canonforms.pencil import SimultaneousDiagonalization

S = Polynomial((0, 1))


def lin(a):
    return Polynomial.linear_root(a)


class Clock:
    def __init__(self, limit):
        self.limit = limit
        self.start = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.start
        assert elapsed < self.limit, f"took {elapsed:.2f} s, limit {self.limit} s"


JORDAN6 = {
    "left": (oracles.jordan_matrix([(1, 1), (1, 1), (2, 1), (2, 1), (2, 1), (3, 1)]),
             [(lin(1), 1), (lin(1), 1), (lin(2), 1), (lin(2), 1), (lin(2), 1), (lin(3), 1)]),
    "middle": (oracles.jordan_matrix([(1, 1), (1, 1), (2, 3), (3, 1)]),
               [(lin(1), 1), (lin(1), 1), (lin(2), 3), (lin(3), 1)]),
    "right": (oracles.jordan_matrix([(1, 1), (1, 1), (2, 1), (2, 2), (3, 1)]),
              [(lin(1), 1), (lin(1), 1), (lin(2), 1), (lin(2), 2), (lin(3), 1)]),
}

SYM3 = Matrix([[1, -1, 0], [-1, 2, 1], [0, 1, 1]])


def proportional(u, v):
    u, v = list(u), list(v)
    k = next(i for i, x in enumerate(v) if x)
    c = Fraction(u[k]) / v[k]
    return c != 0 and all(Fraction(a) == c * b for a, b in zip(u, v))


@pytest.mark.acceptance(1, "three 6x6 Jordan matrices: elementary divisors, round trip, pairwise non-similar")
def test_ac1_jordan6_family():
    clock = Clock(1.0)
    for name, (j, column) in JORDAN6.items():
        got = elementary_divisors(j)
        # compared as a multiset: the list order is a library convention
        assert got == ElementaryDivisorList(column), name
        assert Counter(got.entries) == Counter(column)
        rebuilt = build_normal_form(column)
        assert elementary_divisors(rebuilt) == got
        assert is_similar(rebuilt, j)
    names = list(JORDAN6)
    for i in range(3):
        for k in range(i + 1, 3):
            assert not is_similar(JORDAN6[names[i]][0], JORDAN6[names[k]][0])
    clock.check()


@pytest.mark.acceptance(2, "3x3 symmetric fixture: char poly, adjugate eigenvectors, inertia")
def test_ac2_sym3():
    clock = Clock(1.0)
    assert char_poly(SYM3) == S * (S - 1) * (S - 3)
    assert proportional(adjugate_eigenvector(SYM3, 1), (1, 0, 1))
    assert proportional(adjugate_eigenvector(SYM3, 0), (1, 1, -1))
    # (1, 2, -1) is not an eigenvector for 3
    v3 = adjugate_eigenvector(SYM3, 3)
    assert proportional(v3, (1, -2, -1))
    assert not proportional(v3, (1, 2, -1))
    inert = inertia(SYM3)
    assert (inert.positive, inert.negative, inert.zero) == (2, 0, 1)
    clock.check()


@pytest.mark.acceptance(3, "SNF equals determinantal-divisor quotients; L M R = D, L and R unimodular")
def test_ac3_snf_oracle():
    clock = Clock(20.0)
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(3, 4)
        m = oracles.random_poly_matrix(rng, n, n, degree=2)
        d = smith_normal_form(m, inverses=False)
        assert list(d.diagonal) == oracles.determinantal_quotients(m)
        assert d.left @ m @ d.right == d.diagonal_matrix()
        for u in (d.left, d.right):
            det = oracles.cofactor_det(u.to_lists())
            assert det.degree == 0
    for _ in range(200):
        rows, cols = rng.randint(2, 5), rng.randint(2, 5)
        m = oracles.random_int_matrix(rng, rows, cols)
        d = smith_normal_form(m)
        assert list(d.diagonal) == oracles.determinantal_quotients(m)
        assert d.left @ m @ d.right == d.diagonal_matrix()
        for u in (d.left, d.right):
            assert abs(oracles.cofactor_det(u.to_lists())) == 1
    clock.check()


def _split_one_block(rng, blocks):
    """Same eigenvalues, different block partition: different invariant factors."""
    blocks = list(blocks)
    big = [i for i, (_, k) in enumerate(blocks) if k >= 2]
    if big:
        i = rng.choice(big)
        ev, k = blocks.pop(i)
        cut = rng.randint(1, k - 1)
        return blocks + [(ev, cut), (ev, k - cut)]
    # all blocks of size 1: merge two with equal eigenvalue, or bump one
    seen = {}
    for i, (ev, _) in enumerate(blocks):
        if ev in seen:
            j = seen[ev]
            rest = [b for t, b in enumerate(blocks) if t not in (i, j)]
            return rest + [(ev, 2)]
        seen[ev] = i
    ev, k = blocks[0]
    return [(ev + 1, k)] + blocks[1:]


@pytest.mark.acceptance(4, "similarity invariance under unimodular conjugation; perturbed pairs rejected")
def test_ac4_similarity_invariance():
    clock = Clock(10.0)
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(2, 5)
        a, blocks = oracles.random_split_matrix(rng, n)
        b = oracles.conjugate(a, oracles.random_unimodular(rng, n))
        assert is_similar(a, b)
        assert rational_form(a) == rational_form(b)
        ja, jb = jordan_form(a), jordan_form(b)
        assert ja == jb
        assert ja.blocks == oracles.expected_blocks(blocks)
    for _ in range(100):
        n = rng.randint(2, 5)
        blocks = oracles.random_blocks(rng, n)
        other = _split_one_block(rng, blocks)
        a = oracles.conjugate(oracles.jordan_matrix(blocks), oracles.random_unimodular(rng, n))
        b = oracles.conjugate(oracles.jordan_matrix(other), oracles.random_unimodular(rng, n))
        assert not is_similar(a, b)
    clock.check()


@pytest.mark.acceptance(5, "Weierstrass multiplicity lemma on symmetric matrices with repeated eigenvalues")
def test_ac5_weierstrass_lemma():
    clock = Clock(10.0)
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(3, 5)
        values = [Fraction(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(n - 1)]
        values.append(rng.choice(values))  # force a repeat
        a = oracles.symmetric_with_spectrum(rng, values)
        assert a.is_symmetric()
        d = determinantal_divisor(char_matrix(a), n - 1)
        for r, p in Counter(values).items():
            assert (lin(r) ** (p - 1)).divides(d)
        m = minimal_polynomial(a)
        assert m == Polynomial.from_roots(sorted(set(values)))
    clock.check()


@pytest.mark.acceptance(6, "pencil_to_jordan residual is the zero polynomial matrix")
def test_ac6_pencil_residual():
    clock = Clock(10.0)
    rng = random.Random(6)
    for _ in range(50):
        n = rng.randint(2, 5)
        phi = oracles.random_unimodular(rng, n)
        m, blocks = oracles.random_split_matrix(rng, n)
        psi = m @ phi
        h, k, j = pencil_to_jordan(phi, psi)
        pencil = Matrix.from_flat(n, n, [S * a - b for a, b in zip(phi.entries, psi.entries)])
        residual = h @ pencil @ k - char_matrix(j.matrix)
        assert residual.is_zero
        assert all(x.is_zero for x in residual.entries)
        assert j.blocks == oracles.expected_blocks(blocks)
    clock.check()


@pytest.mark.acceptance(7, "simultaneous diagonalization of symmetric-definite pairs; pair_splits")
def test_ac7_simultaneous_diagonalization():
    clock = Clock(10.0)
    rng = random.Random(7)
    for t in range(50):
        n = rng.randint(2, 4)
        b = oracles.random_invertible(rng, n)
        values = [Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(n)]
        if t % 3 == 0:
            values[-1] = values[0]  # multiple roots
        psi = b.T @ b
        phi = b.T @ Matrix.diag(values) @ b
        out = simultaneous_diagonalize(phi, psi)
        assert isinstance(out, SimultaneousDiagonalization)
        tpt = out.T.T @ psi @ out.T
        tft = out.T.T @ phi @ out.T
        assert tpt.is_diagonal() and tft.is_diagonal()
        assert tpt.diagonal() == list(out.diag_psi)
        assert tft.diagonal() == list(out.diag_phi)
        assert all(x > 0 for x in out.diag_psi)
        assert Counter(out.ratios) == Counter(values)
        assert oracles.cofactor_det(out.T.to_lists()) != 0
        assert pair_splits(phi, psi)
    for _ in range(20):
        n = rng.randint(2, 5)
        phi = oracles.random_rational_symmetric(rng, n)
        b = oracles.random_invertible(rng, n)
        assert pair_splits(phi, b.T @ b)
    clock.check()


def _derivative(exponent, coeffs):
    """d/dt of e^(sigma t) sum_j t^j c_j, as coefficient vectors."""
    n = len(coeffs)
    out = []
    for j in range(n):
        nxt = coeffs[j + 1] if j + 1 < n else [0] * len(coeffs[j])
        out.append([exponent * c + (j + 1) * x for c, x in zip(coeffs[j], nxt)])
    return out


@pytest.mark.acceptance(8, "symbolic ODE solutions satisfy x' - A x = 0 identically")
def test_ac8_ode_symbolic():
    clock = Clock(10.0)
    rng = random.Random(8)
    saw_block3 = 0
    for t in range(50):
        n = rng.randint(3, 6)
        a, blocks = oracles.random_split_matrix(rng, n, force_size=3 if t % 2 == 0 else None)
        sol = solve_first_order(FirstOrderSystem(a))
        assert sum(c.length for c in sol.chains) == n
        assert oracles.cofactor_det(sol.fundamental_at_zero().to_lists()) != 0
        saw_block3 += any(c.length >= 3 for c in sol.chains)
        for x in sol.solutions():
            lhs = _derivative(x.exponent, [list(c) for c in x.coeffs])
            rhs = [list((a @ Matrix.from_columns([c])).col(0)) for c in x.coeffs]
            assert all(p == q for lr, rr in zip(lhs, rhs) for p, q in zip(lr, rr))
    assert saw_block3 >= 25
    clock.check()


@pytest.mark.acceptance(9, "two-mass system: a double root with bounded motion; J2(0) unbounded")
def test_ac9_double_root_bounded():
    clock = Clock(1.0)
    m = Matrix([[2, 1], [1, 2]])
    out = analyze_second_order(SecondOrderSystem(m, m * 2))
    assert len(out.roots) == 1
    (root,) = out.roots
    assert root.is_exact and root.exact_root == 2 and root.multiplicity == 2
    assert out.verdict.status == "Bounded"
    v = classify_stability_first_order(FirstOrderSystem(Matrix([[0, 1], [0, 0]])))
    assert v.status == "Unbounded"
    assert v.factor == S and v.root == 0
    clock.check()


@pytest.mark.acceptance(10, "Sturm isolation certifies all roots of symmetric characteristic polynomials real")
def test_ac10_reality():
    clock = Clock(10.0)
    rng = random.Random(10)
    for _ in range(100):
        n = rng.randint(2, 6)
        a = oracles.random_rational_symmetric(rng, n)
        p = oracles.cofactor_det(char_matrix(a).to_lists())
        assert p == char_poly(a)
        roots = isolate_real_roots(p)
        assert len(roots) == squarefree_part(p).degree
        assert sum(r.multiplicity for r in roots) == n
    clock.check()


@pytest.mark.acceptance(11, "CLI golden files byte-identical across runs; exit-status table")
def test_ac11_cli_contract(update_golden):
    clock = Clock(5.0)
    subcommands = set()
    for name, argv in GOLDEN_CASES:
        subcommands.add(argv[0])
        code1, out1, _ = invoke(argv)
        code2, out2, _ = invoke(argv)
        assert out1 == out2, name
        path = GOLDEN / f"{name}.out"
        text = f"exit: {code1}\n{out1}"
        if update_golden:
            path.write_text(text, encoding="utf-8")
        assert path.read_text(encoding="utf-8") == text, name
    from canonforms.cli import COMMANDS

    assert subcommands == set(COMMANDS)
    for argv, code, error in EXIT_CASES:
        got, out, _ = invoke(argv)
        assert got == code, argv
        if error is not None:
            assert f"error.name: {error}\n" in out
    for cls in _all_subclasses(CanonFormsError):
        assert cls.exit_code == (2 if issubclass(cls, InputError) else 1)
    code, out, _ = invoke(["jordan", GOLDEN_CASES[11][1][1], "--format", "json"])
    assert json.loads(out)["result"]["blocks"] == [["1", 1], ["1", 1], ["2", 3], ["3", 1]]
    clock.check()


def _all_subclasses(cls):
    out = []
    for sub in cls.__subclasses__():
        out.append(sub)
        out += _all_subclasses(sub)
    return out
