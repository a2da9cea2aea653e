from fractions import Fraction

from hypothesis import given, strategies as st

from invsub.params import ParamPoly, param_name

t = ParamPoly.var(0, 2)
u = ParamPoly.var(1, 2)


def test_arithmetic_and_display():
    p = (t + 1) * (t - u)
    assert p.format() == "α^2 - α*β + α - β"
    assert p.degree == 2
    assert p.degree_in(1) == 1
    assert p.variables() == {0, 1}
    assert (p - p).is_zero()
    assert ParamPoly.const(3, 2) == 3
    assert ParamPoly.const(Fraction(1, 2), 2).as_constant() == Fraction(1, 2)


def test_subs_and_evaluate():
    p = t * t + 2 * u
    assert p.subs({0: u + 1}) == u * u + 4 * u + 1
    assert p.evaluate([3, Fraction(1, 2)]) == 10
    a, b = (t * u + t + 3).linear_split(0)
    assert a == u + 1 and b == 3


def test_monic_identifies_scalar_multiples():
    assert (2 * t - 4 * u).monic() == (-t + 2 * u).monic()


def test_names():
    assert param_name(0) == "α"
    assert param_name(1, "plain") == "t2"


coeffs = st.integers(-5, 5)


@given(coeffs, coeffs, coeffs, coeffs, st.integers(-3, 3), st.integers(-3, 3))
def test_ring_laws_under_evaluation(a, b, c, d, x, y):
    p = a * t + b * u + c
    q = d * t * u + 1
    point = [x, y]
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
    assert (p ** 2).evaluate(point) == p.evaluate(point) ** 2
