import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canonforms.canonical import elementary_divisors, minimal_polynomial
from canonforms.errors import DimensionMismatch, MNotDefinite, NonSplitCharPoly, NotSymmetric
from canonforms.matrices import Matrix, block_diag, determinant
from canonforms.numeric import poly_gcd
from canonforms.oscillations import (
    BOUNDED,
    UNBOUNDED,
    UNDECIDED,
    FirstOrderSystem,
    SecondOrderSystem,
    analyze_second_order,
    classify_stability_first_order,
    minor_multiplicity_criterion,
    solve_first_order,
    splitting_criterion,
)
from canonforms.pencil import pair_polynomial, pair_splits

from oracles import (
    S,
    double_to_first_order,
    jordan_matrix,
    random_rational_symmetric,
    random_split_matrix,
    symmetric_with_spectrum,
)

ROTATION = Matrix([[0, 1], [-1, 0]])
SYM3 = Matrix([[2, -1, 1], [-1, 2, 1], [1, 1, 2]])


def first(a):
    return FirstOrderSystem(Matrix(a) if isinstance(a, list) else a)


def satisfies_ode(a, x):
    return (x.derivative() - x.apply(a)).is_zero()


# --- symbolic solutions ---------------------------------------------------------------

def test_scalar_system():
    sol = solve_first_order(first([[3]]))
    assert len(sol.chains) == 1
    c = sol.chains[0]
    assert (c.eigenvalue, c.length) == (3, 1)


def test_jordan_block_solution_shape():
    a = jordan_matrix([(3, 2)])
    sol = solve_first_order(first(a))
    (c,) = sol.chains
    assert (c.eigenvalue, c.length) == (3, 2)
    x1, x2 = c.solutions()
    assert len(x1.coeffs) == 1 and len(x2.coeffs) == 2
    assert all(satisfies_ode(a, x) for x in (x1, x2))
    # the top solution really carries a t*e^(3t) term
    assert any(x2.coeffs[1])


def test_diagonal_system():
    sol = solve_first_order(first(Matrix.diag([1, 2])))
    assert [(c.eigenvalue, c.length) for c in sol.chains] == [(1, 1), (2, 1)]


def test_non_split_system():
    with pytest.raises(NonSplitCharPoly):
        solve_first_order(first(ROTATION))


@given(st.integers(1, 5), st.integers(0, 2**32))
@settings(max_examples=30, deadline=None)
def test_solutions_satisfy_the_ode(n, seed):
    a, _ = random_split_matrix(random.Random(seed), n)
    sol = solve_first_order(first(a))
    assert sol.dimension == n
    assert determinant(sol.fundamental_at_zero()) != 0
    for x in sol.solutions():
        assert satisfies_ode(a, x)


# --- splitting --------------------------------------------------------------------

def test_splitting_examples():
    assert not splitting_criterion(first(jordan_matrix([(0, 2)])))
    assert splitting_criterion(first(SYM3 - Matrix.identity(3)))
    assert splitting_criterion(first(Matrix.diag([2, 2])))
    assert splitting_criterion(first([[1, -1, 0], [-1, 2, 1], [0, 1, 1]]))


@given(st.integers(1, 5), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_splitting_criteria_agree(n, seed):
    a, blocks = random_split_matrix(random.Random(seed), n)
    by_blocks = all(k == 1 for _, k in blocks)
    by_divisors = all(e == 1 for _, e in elementary_divisors(a))
    m = minimal_polynomial(a)
    by_minpoly = poly_gcd(m, m.derivative()).degree == 0
    assert splitting_criterion(first(a)) == by_blocks == by_divisors == by_minpoly
    assert minor_multiplicity_criterion(a) == by_blocks


# --- first-order stability --------------------------------------------------------

def test_first_order_examples():
    v = classify_stability_first_order(first(jordan_matrix([(0, 2)])))
    assert v.status == UNBOUNDED and v.root == 0 and v.factor == S
    assert "nonlinear" in v.reason
    assert classify_stability_first_order(first(Matrix.zeros(2))).status == BOUNDED
    assert classify_stability_first_order(first(ROTATION)).bounded is True


@pytest.mark.parametrize("sigma, status", [(-2, BOUNDED), (Fraction(-1, 3), BOUNDED), (0, UNBOUNDED), (Fraction(1, 5), UNBOUNDED), (4, UNBOUNDED)])
def test_jordan_two_block_by_sign(sigma, status):
    v = classify_stability_first_order(first(jordan_matrix([(sigma, 2)])))
    assert v.status == status


def test_quadratic_factors():
    # s^2 + 2s + 5: roots -1 +- 2i
    damped = Matrix([[0, 1], [-5, -2]])
    assert classify_stability_first_order(first(damped)).status == BOUNDED
    # s^2 - 2s + 5: roots 1 +- 2i
    v = classify_stability_first_order(first(Matrix([[0, 1], [-5, 2]])))
    assert v.status == UNBOUNDED and v.factor == S**2 - 2 * S + 5 and v.root is None
    # s^2 + 3s + 1: two irrational negative roots
    assert classify_stability_first_order(first(Matrix([[0, 1], [-1, -3]]))).status == BOUNDED
    # s^2 - 2: one irrational positive root
    assert classify_stability_first_order(first(Matrix([[0, 1], [2, 0]]))).status == UNBOUNDED


def test_repeated_rotation():
    # (s^2 + 1)^2 with one companion block: nonlinear critical divisor
    block = Matrix([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, -2], [0, 0, 1, 0]])
    v = classify_stability_first_order(first(block))
    assert v.status == UNBOUNDED and v.factor == S**2 + 1
    # the same polynomial split over two blocks stays bounded
    assert classify_stability_first_order(first(block_diag(ROTATION, ROTATION))).status == BOUNDED


def test_cubic_factor_undecided():
    # s^3 + s + 1 is irreducible with one real root
    c = Matrix([[0, 0, -1], [1, 0, -1], [0, 1, 0]])
    v = classify_stability_first_order(first(c))
    assert v.status == UNDECIDED and v.bounded is None
    assert len(v.intervals) == 1
    # a positive eigenvalue elsewhere still decides the question
    v = classify_stability_first_order(first(block_diag(c, Matrix([[1]]))))
    assert v.status == UNBOUNDED and v.root == 1


def test_degree_bound_undecided():
    c = Matrix([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    v = classify_stability_first_order(first(c), degree_bound=3)
    assert v.status == UNDECIDED


# --- second order -----------------------------------------------------------------

def second(m, k):
    return SecondOrderSystem(Matrix(m) if isinstance(m, list) else m, Matrix(k) if isinstance(k, list) else k)


def test_second_order_examples():
    res = analyze_second_order(second(Matrix.identity(2), Matrix.diag([1, 4])))
    assert [iv.exact_root for iv in res.roots] == [1, 4]
    assert res.verdict.status == BOUNDED
    m = Matrix([[2, 1], [1, 2]])
    res = analyze_second_order(second(m, m * 2))
    assert [(iv.exact_root, iv.multiplicity) for iv in res.roots] == [(2, 2)]
    assert res.verdict.status == BOUNDED
    res = analyze_second_order(second(Matrix.identity(2), [[0, 1], [1, 0]]))
    assert [iv.exact_root for iv in res.roots] == [-1, 1]
    assert res.verdict.status == UNBOUNDED and res.verdict.root == -1


def test_second_order_drift():
    res = analyze_second_order(second(Matrix.identity(2), Matrix.diag([0, 3])))
    assert res.verdict.status == UNBOUNDED and res.verdict.root == 0
    assert "drift" in res.verdict.reason


def test_second_order_errors():
    with pytest.raises(MNotDefinite):
        analyze_second_order(second(Matrix.diag([1, -1]), Matrix.identity(2)))
    with pytest.raises(NotSymmetric):
        second([[1, 1], [0, 1]], Matrix.identity(2))
    with pytest.raises(DimensionMismatch):
        second(Matrix.identity(2), Matrix.identity(3))


@given(
    st.fractions(1, 9, max_denominator=4),
    st.fractions(1, 9, max_denominator=4),
    st.fractions(-3, 3, max_denominator=4),
    st.fractions(Fraction(1, 4), 9, max_denominator=4),
)
@settings(max_examples=60, deadline=None)
def test_two_mass_family(g, f, a, c):
    if g * f - a * a <= 0:
        return
    m = Matrix([[g, a], [a, f]])
    k = Matrix.identity(2) * c
    expected = (f * g - a * a) * S**2 - c * (f + g) * S + c * c
    assert pair_polynomial(k, m) == expected
    res = analyze_second_order(second(m, k))
    assert sum(iv.multiplicity for iv in res.roots) == 2
    assert all(iv.low >= 0 for iv in res.roots)
    assert res.verdict.status == BOUNDED


@given(st.integers(1, 3), st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_second_order_agrees_with_first_order_doubling(n, seed):
    rng = random.Random(seed)
    m = symmetric_with_spectrum(rng, [rng.randint(1, 3) for _ in range(n)])
    k = symmetric_with_spectrum(rng, [rng.choice([-1, 1, 2, 4]) for _ in range(n)])
    res = analyze_second_order(second(m, k))
    assert pair_splits(k, m)
    big = first(double_to_first_order(m, k))
    ref = classify_stability_first_order(big)
    # lambda < 0 gives a real positive eigenvalue sqrt(-lambda); lambda > 0 a simple imaginary pair
    if ref.status != UNDECIDED:
        assert ref.status == res.verdict.status
    elif res.verdict.status == UNBOUNDED:
        assert any(iv.high <= 0 for iv in res.roots)


@given(st.integers(1, 4), st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_definite_pencil_roots_are_real(n, seed):
    rng = random.Random(seed)
    m = symmetric_with_spectrum(rng, [rng.randint(1, 3) for _ in range(n)])
    k = random_rational_symmetric(rng, n)
    res = analyze_second_order(second(m, k))
    assert sum(iv.multiplicity for iv in res.roots) == n
    assert pair_splits(k, m)
