import random

import pytest
import sympy
from hypothesis import given, strategies as st

import oracles
from torres import fixtures, lattice
from torres.coxring import Polynomial, is_homogeneous, parse, toric_derivative
from torres.differentials import (JacobianError, omega_terms, poly_det, subset_determinant, toric_jacobian,
                                  verify_defining_identity)

XYZW = ["x", "y", "z", "w"]


# the value displayed for the lambda example, as a function of lambda
def lambda_jacobian_reference(lam):
    return parse(f"4*({lam}*x^4*z^2*w^2 + 4*x^3*y*z*w^3 + 4*x^3*y*z^3*w + {lam}*x^2*y^2*z^4 + "
                 f"{lam}*x^2*y^2*w^4 + 4*x*y^3*z^3*w + 4*x*y^3*z*w^3 + {lam}*y^4*z^2*w^2)", XYZW)


# ---------------------------------------------------------------- Omega

def test_omega_p1():
    # Omega = x0 dx1 - x1 dx0
    terms = {t.I: (t.det_nI, t.xhat_I) for t in omega_terms(fixtures.projective_space(1))}
    assert terms == {(0,): (-1, (0, 1)), (1,): (1, (1, 0))}


def test_omega_p1xp1():
    # (x dy - y dx) ^ (z dw - w dz) expanded in increasing index order
    terms = {t.I: (t.det_nI, t.xhat_I) for t in omega_terms(fixtures.p1xp1())}
    assert terms == {
        (0, 2): (1, (0, 1, 0, 1)), (0, 3): (-1, (0, 1, 1, 0)),
        (1, 2): (-1, (1, 0, 0, 1)), (1, 3): (1, (1, 0, 1, 0)),
    }


def test_omega_skips_dependent_subsets():
    terms = omega_terms(fixtures.p1xp1())
    assert all(t.I not in [(0, 1), (2, 3)] for t in terms) and len(terms) == 4


# ---------------------------------------------------------------- Jacobian

def test_p1_squares():
    fan = fixtures.projective_space(1)
    res = toric_jacobian(fan, [parse("x0^2", ["x0", "x1"]), parse("x1^2", ["x0", "x1"])])
    assert res.J == parse("2*x0*x1", ["x0", "x1"])
    assert res.degree == lattice.degree_of(fan, (1, 1))


@pytest.mark.parametrize("lam", [1, 7, -3, 0])
def test_lambda_example(lam):
    fan = fixtures.p1xp1()
    res = toric_jacobian(fan, fixtures.lambda_sequence(lam))
    assert res.J == lambda_jacobian_reference(lam)
    assert res.degree.free == (4, 4)


@pytest.mark.parametrize("n, d", [(n, d) for n in (1, 2) for d in (1, 2, 3)])
def test_projective_space_reduction(n, d):
    fan = fixtures.projective_space(n)
    rng = random.Random(100 * n + d)
    beta = lattice.degree_of(fan, [d] + [0] * n)
    for _ in range(3):
        f_seq = [fixtures.random_section(fan, beta, rng) for _ in range(n + 1)]
        J = toric_jacobian(fan, f_seq).J
        assert J.scale(d) == oracles.jacobian_determinant(f_seq)


@pytest.mark.parametrize("m, p", [(2, 2), (2, 3)])
def test_bilinear_forms_on_products(m, p):
    fan = fixtures.product_of_projective_spaces(m, p)
    rng = random.Random(m * 10 + p)
    alpha = lattice.degree_of(fan, [1] + [0] * (m - 1) + [1] + [0] * (p - 1))
    f_seq = [fixtures.random_section(fan, alpha, rng) for _ in range(m + p - 1)]
    res = toric_jacobian(fan, f_seq)
    expected = lattice.degree_of(fan, [p - 1] + [0] * (m - 1) + [m - 1] + [0] * (p - 1))
    assert res.degree == expected
    assert res.J  # random forms give a nonzero Jacobian
    assert is_homogeneous(fan, res.J) == expected


def test_rejects_inhomogeneous_input():
    fan = fixtures.projective_space(1)
    names = ["x0", "x1"]
    with pytest.raises(JacobianError):
        toric_jacobian(fan, [parse("x0^2 + x1", names), parse("x1^2", names)])
    with pytest.raises(JacobianError):
        toric_jacobian(fan, [parse("x0^2", names), parse("x1^3", names)])
    with pytest.raises(JacobianError):
        toric_jacobian(fan, [parse("x0^2", names)])


# ---------------------------------------------------------------- defining identity

def test_identity_p1():
    fan = fixtures.projective_space(1)
    names = ["x0", "x1"]
    f_seq = [parse("x0^2", names), parse("x1^2", names)]
    assert verify_defining_identity(fan, f_seq, parse("2*x0*x1", names))
    assert not verify_defining_identity(fan, f_seq, parse("-2*x0*x1", names))


def test_identity_lambda_example_includes_dependent_subsets():
    fan = fixtures.p1xp1()
    f_seq = fixtures.lambda_sequence(1)
    res = toric_jacobian(fan, f_seq)
    assert verify_defining_identity(fan, f_seq, res.J)
    assert len(res.witnesses) == 6
    assert not subset_determinant(f_seq, (0, 1)) and not subset_determinant(f_seq, (2, 3))


def test_identity_reports_offending_subset():
    fan = fixtures.projective_space(1)
    names = ["x0", "x1"]
    bad = [parse("x0^2 + x1", names), parse("x1^2", names)]
    check = verify_defining_identity(fan, bad, parse("2*x0*x1", names))
    assert not check and check.offending_subset in [(0,), (1,)]


# ---------------------------------------------------------------- algebraic properties

def _random_case(seed):
    rng = random.Random(seed)
    name = sorted(fixtures.FIXTURES)[seed % len(fixtures.FIXTURES)]
    fan = fixtures.FIXTURES[name]()
    beta = fixtures.ample_classes(fan)[rng.randrange(2)]
    f_seq = [fixtures.random_section(fan, beta, rng, 3) for _ in range(fan.rank + 1)]
    return fan, beta, f_seq, rng


@given(st.integers(0, 10**6))
def test_antisymmetry(seed):
    fan, _, f_seq, rng = _random_case(seed)
    i, j = rng.sample(range(len(f_seq)), 2)
    swapped = list(f_seq)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert toric_jacobian(fan, swapped).J == -toric_jacobian(fan, f_seq).J


@given(st.integers(0, 10**6))
def test_multilinearity(seed):
    fan, beta, f_seq, rng = _random_case(seed)
    extra = fixtures.random_section(fan, beta, rng, 3)
    k = rng.randrange(len(f_seq))
    summed = list(f_seq)
    summed[k] = f_seq[k] + extra.scale(2)
    other = list(f_seq)
    other[k] = extra
    if not all(summed) or not all(other):
        return
    J = toric_jacobian(fan, f_seq).J
    assert toric_jacobian(fan, summed).J == J + toric_jacobian(fan, other).J.scale(2)


@given(st.integers(0, 10**6))
def test_dependent_subsets_vanish(seed):
    fan, _, f_seq, _ = _random_case(seed)
    for I in lattice.n_subsets(fan):
        if lattice.det_nI(fan, I) == 0:
            assert not subset_determinant(f_seq, I)


def test_poly_det_matches_sympy():
    rng = random.Random(5)
    fan = fixtures.p1xp1()
    beta = lattice.degree_of(fan, (1, 0, 1, 0))
    M = [[fixtures.random_section(fan, beta, rng, 3) for _ in range(3)] for _ in range(3)]
    s = oracles.symbols(4)
    ref = sympy.Matrix([[oracles.to_sympy(p, s) for p in row] for row in M]).det()
    assert poly_det(M) == oracles.from_sympy(ref, s)


def test_toric_derivative_sequence_has_common_degree():
    f = fixtures.lambda_section(2)
    seq = [f, toric_derivative(f, 0), toric_derivative(f, 2)]
    fan = fixtures.p1xp1()
    assert len({is_homogeneous(fan, g) for g in seq}) == 1
    assert isinstance(seq[1], Polynomial)
