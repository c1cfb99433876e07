import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from torres import fixtures, lattice, polytopes
from torres.lattice import build_fan


def p1():
    return build_fan([[1], [-1]], [[0], [1]])


@pytest.mark.parametrize("d", range(5))
def test_interval(d):
    P = polytopes.polytope_of_divisor(p1(), (d, d))
    assert len(P.lattice_points) == 2 * d + 1
    assert P.normalized_volume == 2 * d


@pytest.mark.parametrize("d", range(1, 5))
def test_simplex(d):
    P = polytopes.polytope_of_divisor(fixtures.projective_space(2), (d, 0, 0))
    assert len(P.lattice_points) == (d + 1) * (d + 2) // 2
    assert P.normalized_volume == d * d


def test_square():
    P = polytopes.polytope_of_divisor(fixtures.p1xp1(), (2, 0, 2, 0))
    assert len(P.lattice_points) == 9 and P.normalized_volume == 8
    assert sorted(P.vertices) == [(-2, -2), (-2, 0), (0, -2), (0, 0)]


def test_points_satisfy_inequalities():
    fan = fixtures.hirzebruch(1)
    P = polytopes.polytope_of_divisor(fan, (1, 2, 1, 0))
    for m in P.lattice_points:
        assert P.contains(m)
        assert all(sum(x * y for x, y in zip(m, r)) >= -a for r, a in zip(fan.rays, (1, 2, 1, 0)))


def test_empty_polytope_is_not_an_error():
    P = polytopes.polytope_of_divisor(fixtures.p1xp1(), (-1, 0, 0, 0))
    assert P.is_empty and P.lattice_points == () and P.normalized_volume == 0


def test_unbounded_region_is_rejected():
    fan = build_fan([[1, 0], [0, 1], [-1, 0]], [[0, 1], [1, 2]])
    with pytest.raises(polytopes.UnboundedPolytopeError):
        polytopes.polytope_of_divisor(fan, (1, 0, 0))


def test_torus_divisor_length_is_checked():
    with pytest.raises(ValueError):
        polytopes.polytope_of_divisor(fixtures.p1xp1(), polytopes.TorusDivisor((1, 2)).a[:1])


CASES = [
    ("P1", (1, 2)), ("P2", (1, 1, 0)), ("P1xP1", (1, 0, 2, 0)), ("F1", (0, 1, 1, 1)),
    ("F1", (1, 1, 0, 0)), ("P121", (0, 1, 1)), ("P121", (2, 0, 0)),
]


@pytest.mark.parametrize("name, a", CASES)
def test_points_and_volume_match_brute_force(name, a):
    fan = fixtures.FIXTURES[name]()
    P = polytopes.polytope_of_divisor(fan, a)
    ref = oracles.polytope_points(fan.rays, a)
    assert sorted(P.lattice_points) == sorted(ref)
    assert float(P.normalized_volume) == pytest.approx(oracles.region_normalized_volume(fan.rays, a), abs=1e-9)


LATTICE_CASES = [c for c in CASES if c != ("P121", (0, 1, 1))]  # that one has rational vertices


def test_rational_vertices_give_fractional_volume():
    P = polytopes.polytope_of_divisor(fixtures.weighted_121(), (0, 1, 1))
    assert not P.is_lattice_polytope and P.normalized_volume == Fraction(9, 2)


@pytest.mark.parametrize("name, a", LATTICE_CASES)
def test_ehrhart_consistency(name, a):
    """Point counts of kP are a degree-n polynomial whose leading coefficient is vol/n!."""
    fan = fixtures.FIXTURES[name]()
    n = fan.rank
    P = polytopes.polytope_of_divisor(fan, a)
    assert P.is_lattice_polytope
    counts = [len(polytopes.polytope_of_divisor(fan, [k * x for x in a]).lattice_points) for k in range(n + 2)]
    fit = oracles.interpolate(list(range(n + 1)), counts[:n + 1])
    assert fit.eval(n + 1) == counts[n + 1]
    lead = fit.coeff_monomial(fit.gens[0] ** n)
    assert lead * math.factorial(n) == P.normalized_volume


def test_monomial_basis_examples():
    p2 = fixtures.projective_space(2)
    basis = polytopes.monomial_basis(p2, lattice.degree_of(p2, (2, 0, 0)))
    assert sorted(basis) == sorted(oracles.monomials_of_total_degree(3, 2))
    fan = fixtures.p1xp1()
    basis = polytopes.monomial_basis(fan, lattice.degree_of(fan, (2, 0, 2, 0)))
    assert sorted(basis) == sorted((i, 2 - i, j, 2 - j) for i in range(3) for j in range(3))
    assert polytopes.monomial_basis(fan, lattice.degree_of(fan, (-1, 0, 0, 0))) == []


def test_monomial_basis_is_sorted_and_distinct():
    fan = fixtures.hirzebruch(1)
    alpha = lattice.degree_of(fan, (1, 1, 1, 1))
    basis = polytopes.monomial_basis(fan, alpha)
    assert basis == sorted(basis, reverse=True) and len(set(basis)) == len(basis)
    assert all(min(e) >= 0 and lattice.degree_of(fan, e) == alpha for e in basis)


@given(st.data())
def test_graded_dimension_is_representative_independent(data):
    name = data.draw(st.sampled_from(sorted(fixtures.FIXTURES)))
    fan = fixtures.FIXTURES[name]()
    a = data.draw(st.lists(st.integers(0, 3), min_size=fan.nrays, max_size=fan.nrays))
    m = data.draw(st.lists(st.integers(-2, 2), min_size=fan.rank, max_size=fan.rank))
    b = [x + y for x, y in zip(a, lattice.character_divisor(fan, m))]
    d1, d2 = lattice.degree_of(fan, a), lattice.degree_of(fan, b)
    assert polytopes.monomial_basis(fan, d1) == polytopes.monomial_basis(fan, d2)


def test_ampleness_examples():
    assert polytopes.is_ample(fixtures.projective_space(2), (1, 0, 0))
    fan = fixtures.p1xp1()
    assert polytopes.is_cartier(fan, (1, 0, 0, 0)) and not polytopes.is_ample(fan, (1, 0, 0, 0))
    assert polytopes.is_ample(fan, (1, 0, 1, 0))
    assert not polytopes.is_ample(fan, (0, 0, 0, 0))


def test_weighted_fan_cartier_needs_even_degree():
    fan = fixtures.weighted_121()
    assert not polytopes.is_cartier(fan, (1, 0, 0))
    assert polytopes.is_ample(fan, (2, 0, 0)) and polytopes.is_ample(fan, (0, 1, 0))


def test_hirzebruch_ampleness():
    fan = fixtures.hirzebruch(1)
    # rays (1,0),(0,1),(-1,1),(0,-1): the fibre class alone is nef but not ample
    assert not polytopes.is_ample(fan, (1, 0, 0, 0))
    assert polytopes.is_ample(fan, (1, 1, 1, 1))


@pytest.mark.parametrize("name", sorted(fixtures.FIXTURES))
def test_critical_piece_is_nonempty_for_ample_classes(name):
    fan = fixtures.FIXTURES[name]()
    for beta in fixtures.ample_classes(fan)[:4]:
        rho = lattice.critical_degree(fan, beta)
        assert polytopes.monomial_basis(fan, rho)


@pytest.mark.parametrize("name", sorted(fixtures.FIXTURES))
def test_ample_volume_counts_points_via_cartier_polytope(name):
    fan = fixtures.FIXTURES[name]()
    for beta in fixtures.ample_classes(fan)[:3]:
        P = polytopes.polytope_of_divisor(fan, beta.representative)
        assert P.dimension == fan.rank and P.normalized_volume > 0
        assert len(P.lattice_points) == len(polytopes.monomial_basis(fan, beta))
