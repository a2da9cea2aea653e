import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from invsub.exact_arith import (DimensionError, RatMatrix, UniPoly, as_fraction, char_poly, determinant,
                                format_fraction, kernel_form, null_space, rank, rational_eigenvalues,
                                rational_roots, rref, solve_linear, spectrum, vstack)

from oracles import naive_null_space, naive_rank, naive_rref
from tables import NILPOTENT4, SEVEN_A

small = st.integers(-9, 9)


def matrices(n, m=None):
    m = n if m is None else m
    return st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n).map(RatMatrix)


def test_fraction_parsing():
    assert as_fraction("3/6") == Fraction(1, 2)
    assert as_fraction(" -4 ") == -4
    with pytest.raises(ZeroDivisionError):
        as_fraction("1/0")
    assert format_fraction(Fraction(-3, 4)) == "-3/4"
    assert format_fraction(Fraction(6, 3)) == "2"


def test_matrix_basics():
    a = RatMatrix([[1, 2], [3, 4]])
    assert a.shift(1) == RatMatrix([[2, 2], [3, 5]])
    assert a @ RatMatrix.identity(2) == a
    assert a.transpose() == RatMatrix([[1, 3], [2, 4]])
    assert a.apply([1, 1]) == (3, 7)
    with pytest.raises(DimensionError):
        RatMatrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        a @ RatMatrix([[1, 2, 3]])
    assert vstack([a, a]).shape == (4, 2)


def test_char_poly_examples():
    x = UniPoly.x()
    assert char_poly(RatMatrix.zeros(2, 2)) == x * x
    assert char_poly(RatMatrix.identity(3)) == UniPoly([-1, 3, -3, 1])
    shifted = NILPOTENT4[0].shift(1)
    assert char_poly(shifted) == UniPoly([1, -4, 6, -4, 1])
    with pytest.raises(DimensionError):
        char_poly(RatMatrix([[1, 2]]))


def test_rational_eigenvalues_examples():
    assert rational_eigenvalues(SEVEN_A[0]) == {1, 2, 3}
    rot = spectrum(RatMatrix([[0, -1], [1, 0]]))
    assert rot.values == frozenset()
    assert rot.residual == UniPoly([1, 0, 1])
    assert not rot.is_rational
    sp = spectrum(NILPOTENT4[1].shift(1))
    assert sp.multiplicities == {1: 4}
    assert sp.is_rational


def test_rational_roots_with_fractions():
    # (2x - 1)^2 (3x + 2) (x^2 + 2)
    p = UniPoly([-1, 2]) * UniPoly([-1, 2]) * UniPoly([2, 3]) * UniPoly([2, 0, 1])
    assert rational_roots(p) == {Fraction(1, 2): 2, Fraction(-2, 3): 1}


def test_null_space_examples():
    assert null_space(RatMatrix.identity(4)) == []
    assert null_space(RatMatrix([[1, -1]])) == [(1, 1)]
    a1, a2 = (m.shift(1) for m in SEVEN_A)
    b = vstack([a1.shift(-2), a2.shift(-1)])
    e = lambda i: tuple(int(j == i) for j in range(7))
    assert null_space(b) == [e(4), e(5)]


def test_null_space_normalization():
    # integer entries, content 1, positive at the free column
    ker = null_space(RatMatrix([[2, 4, 6], [1, 2, 3]]))
    assert ker == [(-2, 1, 0), (-3, 0, 1)]


def test_solve_linear_examples():
    sol = solve_linear(RatMatrix.identity(3), [1, 2, 3])
    assert sol.particular == (1, 2, 3) and sol.null_basis == ()
    sol = solve_linear(RatMatrix.zeros(2, 2), [0, 0])
    assert sol.particular == (0, 0)
    assert set(sol.null_basis) == {(1, 0), (0, 1)}
    assert solve_linear(RatMatrix([[1, 1], [2, 2]]), [1, 3]) is None


def test_determinant():
    assert determinant(RatMatrix([[1, 2], [3, 4]])) == -2
    assert determinant(RatMatrix([[Fraction(1, 2), 0], [0, 4]])) == 2
    assert determinant(RatMatrix([[0, 1], [0, 1]])) == 0


def test_kernel_form_is_canonical():
    vecs = [(1, 0, 1, 0), (0, 1, 0, 1)]
    mixed = [(1, 1, 1, 1), (1, -1, 1, -1)]
    assert kernel_form(vecs) == kernel_form(mixed)


@settings(max_examples=60, deadline=None)
@given(matrices(4))
def test_eigenvalues_are_roots(m):
    p = char_poly(m)
    assert p.degree == 4 and p.coeffs[-1] == 1
    for lam in rational_eigenvalues(m):
        assert p(lam) == 0


@settings(max_examples=60, deadline=None)
@given(matrices(4))
def test_cayley_hamilton(m):
    assert char_poly(m)(m) == RatMatrix.zeros(4, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: matrices(r, 5)))
def test_null_space_vectors(m):
    ker = null_space(m)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
        assert all(Fraction(x).denominator == 1 for x in v)
    assert len(ker) + rank(m) == m.cols
    assert naive_rank(ker) == len(ker) if ker else True


def test_elimination_matches_naive_oracle():
    rng = random.Random(7)
    for _ in range(100):
        rows = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)]
        if rng.random() < 0.4:
            rows[4] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
        m = RatMatrix(rows)
        red, pivots = rref(m)
        ref, ref_pivots = naive_rref(rows)
        assert tuple(pivots) == tuple(ref_pivots)
        assert [list(r) for r in red][:len(ref)] == ref
        # same kernel as the naive elimination
        ours = null_space(m)
        theirs = naive_null_space(rows, 5)
        assert naive_rank(ours + theirs) == len(theirs) == len(ours) if ours else not theirs
