from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

import oracles
from torres import fixtures, lattice
from torres.coxring import (ParseError, Polynomial, add, dehomogenize, euler_apply, is_homogeneous, mul,
                            parse, partial, scale, toric_derivative)

XYZW = ["x", "y", "z", "w"]
LAMBDA7 = "x^2*z^2 + x^2*w^2 + y^2*z^2 + y^2*w^2 + 7*x*y*z*w"


def polynomials(nvars=3, max_exp=3, max_terms=5):
    mono = st.tuples(*[st.integers(0, max_exp)] * nvars)
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(mono, coef, max_size=max_terms).map(lambda d: Polynomial(nvars, d))


# ---------------------------------------------------------------- parse / print

def test_parse_lambda_example():
    p = parse(LAMBDA7, XYZW)
    assert len(p) == 5
    assert p.coefficient((1, 1, 1, 1)) == 7


@pytest.mark.parametrize("text", ["0", "x - x", "2*x*y - y*x*2", "(x+y)^2 - x^2 - 2*x*y - y^2"])
def test_parse_to_zero(text):
    assert not parse(text, XYZW)


def test_parse_rationals_and_division():
    p = parse("1/2*x^2 + 3/4 - x*y/3", XYZW)
    assert p.coefficient((2, 0, 0, 0)) == Fraction(1, 2)
    assert p.coefficient((0, 0, 0, 0)) == Fraction(3, 4)
    assert p.coefficient((1, 1, 0, 0)) == Fraction(-1, 3)
    assert parse("x**3", XYZW) == parse("x^3", XYZW)


@pytest.mark.parametrize("text", ["u + x", "x +", "x^-1", "x^(-2)", "x / y", "1.5*x", "x^y", "f(x)", "x^1.0", "x / 0"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, XYZW)


@given(polynomials(4))
def test_parse_print_roundtrip(p):
    assert parse(p.to_string(XYZW), XYZW) == p


@given(polynomials(4))
def test_printing_is_canonical(p):
    q = parse(p.to_string(XYZW), XYZW)
    assert q.to_string(XYZW) == p.to_string(XYZW)


def test_print_format():
    p = parse("3*x^2*z - y + 1/2", XYZW)
    assert p.to_string(XYZW) == "3*x^2*z - y + 1/2"
    assert parse("-x", XYZW).to_string(XYZW) == "-x"
    assert Polynomial.zero(4).to_string(XYZW) == "0"


# ---------------------------------------------------------------- arithmetic against sympy

@given(polynomials(), polynomials())
def test_arithmetic_matches_sympy(p, q):
    s = oracles.symbols(3)
    P, Q = oracles.to_sympy(p, s), oracles.to_sympy(q, s)
    assert add(p, q) == oracles.from_sympy(P + Q, s)
    assert mul(p, q) == oracles.from_sympy(P * Q, s)
    assert p - q == oracles.from_sympy(P - Q, s)
    assert scale(p, Fraction(-2, 3)) == oracles.from_sympy(P * sympy.Rational(-2, 3), s)
    assert p ** 2 == oracles.from_sympy(P ** 2, s)


@given(polynomials(), st.integers(0, 2))
def test_partial_matches_sympy(p, i):
    s = oracles.symbols(3)
    assert partial(p, i) == oracles.from_sympy(sympy.diff(oracles.to_sympy(p, s), s[i]), s)


@given(polynomials(), polynomials(), st.integers(0, 2))
def test_leibniz_rule(p, q, i):
    assert partial(p * q, i) == partial(p, i) * q + p * partial(q, i)


@given(polynomials(), st.integers(0, 2))
def test_toric_derivative(p, i):
    assert toric_derivative(p, i) == Polynomial.variable(3, i) * partial(p, i)


def test_no_zero_coefficients_stored():
    p = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert list(p.terms) == [(1, 0)]
    assert (p - p).terms == {}


def test_partial_examples():
    x2z2 = parse("x^2*z^2", XYZW)
    assert partial(x2z2, 0) == parse("2*x*z^2", XYZW)
    f = fixtures.lambda_section(7)
    assert partial(f, 0) == parse("2*x*z^2 + 2*x*w^2 + 7*y*z*w", XYZW)
    assert not partial(parse("y^2", XYZW), 0)


def test_divide_monomial_and_shift():
    p = parse("x^2*y + x*y^3", XYZW)
    assert p.divide_monomial((1, 1, 0, 0)) == parse("x + y^2", XYZW)
    assert p.divide_monomial((2, 0, 0, 0)) is None
    assert p.shift((0, 0, 1, 0)) == p * parse("z", XYZW)


# ---------------------------------------------------------------- homogeneity

def test_is_homogeneous_examples():
    fan = fixtures.p1xp1()
    assert is_homogeneous(fan, parse("x^2*z^2 + y^2*w^2", XYZW)).free == (2, 2)
    assert is_homogeneous(fan, parse("x + z", XYZW)) is None
    assert is_homogeneous(fan, Polynomial.constant(4, 1)) == lattice.degree_of(fan, (0, 0, 0, 0))
    assert is_homogeneous(fan, Polynomial.zero(4)) is None


def test_homogeneity_with_torsion():
    fan = fixtures.p2_mod_3()
    names = ["a", "b", "c"]
    assert is_homogeneous(fan, parse("a^3 + b^3 + c^3", names)) is not None
    # same free degree, different torsion
    assert is_homogeneous(fan, parse("a + b", names)) is None


# ---------------------------------------------------------------- Euler formula

def test_euler_apply_examples():
    f = fixtures.lambda_section(3)
    assert euler_apply(lattice.EulerField((1, 1, 0, 0)), f) == f.scale(2)
    assert not euler_apply(lattice.EulerField((5, -1, 2, 7)), Polynomial.constant(4, 1))
    g = parse("a^3 - 2*a*b*c + c^2*b", "abc")
    assert euler_apply(lattice.EulerField((1, 1, 1)), g) == g.scale(3)


@given(st.data())
def test_euler_formula_on_random_sections(data):
    import random
    name = data.draw(st.sampled_from(sorted(fixtures.FIXTURES)))
    fan = fixtures.FIXTURES[name]()
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    f = fixtures.random_homogeneous(fan, rng)
    beta = is_homogeneous(fan, f)
    for theta in lattice.euler_basis(fan):
        assert euler_apply(theta, f) == f.scale(lattice.euler_pairing(theta, beta))


# ---------------------------------------------------------------- charts

def test_dehomogenize_p1():
    fan = fixtures.projective_space(1)          # rays -1, +1 for x0, x1
    f = parse("x0^2", ["x0", "x1"])
    u = np.array([[0.5 + 1j], [2.0]])
    on_x1 = dehomogenize(fan, f, (1,))            # x0 = 1
    on_x0 = dehomogenize(fan, f, (0,))
    assert np.allclose(on_x1(u), 1)
    assert np.allclose(on_x0(u), u[:, 0] ** 2)


def test_dehomogenize_constant_and_lambda_example():
    fan = fixtures.p1xp1()
    u = np.array([[0.3 - 0.2j, 1.5 + 0.5j], [-1.0, 2.0j]])
    c = dehomogenize(fan, Polynomial.constant(4, Fraction(7, 2)), (0, 2))
    assert np.allclose(c(u), 3.5)
    f = dehomogenize(fan, fixtures.lambda_section(5), (0, 2))
    x, z = u[:, 0], u[:, 1]
    assert np.allclose(f(u), x**2 * z**2 + x**2 + z**2 + 1 + 5 * x * z)


def test_dehomogenize_rejects_dependent_rays():
    with pytest.raises(ValueError):
        dehomogenize(fixtures.p1xp1(), fixtures.lambda_section(1), (0, 1))


@given(polynomials(4, 2, 4), st.sampled_from([(0, 2), (0, 3), (1, 2), (1, 3)]))
def test_dehomogenize_matches_exact_evaluation(p, chart):
    fan = fixtures.p1xp1()
    pt = [Fraction(1)] * 4
    vals = [Fraction(2, 3), Fraction(-5, 4)]
    for i, v in zip(chart, vals):
        pt[i] = v
    num = dehomogenize(fan, p, chart)(np.array([[complex(v) for v in vals]]))[0]
    assert num == pytest.approx(complex(float(p(pt))), abs=1e-9)
