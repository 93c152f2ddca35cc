from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ponderation import index_sets as ix
from ponderation import ring
from ponderation.scalars import GaussianRational, dump_scalar, exact_div, parse_scalar

POINTS = list(ix.iter_truncated(2, 6))

sets2 = st.one_of(
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=3).map(lambda p: ix.Finite(2, p)),
    st.lists(st.sampled_from([ix.EVEN, ix.ODD, ix.ANY]), min_size=2, max_size=2).map(lambda c: ix.parity(*c)),
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=2).map(lambda p: ix.Cofinite(2, p)),
)
ponds = st.one_of(
    st.sampled_from([1, -2, 3]).map(ring.constant),
    st.tuples(st.integers(0, 2), st.sampled_from([1, -1, Fraction(1, 2)])).map(lambda t: ring.power(*t)),
)
elements = st.lists(st.tuples(sets2, ponds), min_size=1, max_size=3).map(
    lambda terms: ring.RingElement(2, tuple(terms)))


def same(a, b):
    return all(a(g) == b(g) for g in POINTS)


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_ring_laws_pointwise(a, b, c):
    assert same(ring.mul(a, b), ring.mul(b, a))
    assert same(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)))
    assert same(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)))
    assert same(ring.mul(ring.unit(2), a), a)
    assert same(ring.add(a, -a), ring.zero(2))


@settings(max_examples=40, deadline=None)
@given(elements, elements)
def test_module_action_is_associative(a, b):
    m = ring.module_element(ring.g1(), ring.unit(2))
    lhs = ring.module_action(a, ring.module_action(b, m))
    rhs = ring.module_action(ring.mul(a, b), m)
    for g in POINTS:
        assert lhs(g) == rhs(g)


@settings(max_examples=40, deadline=None)
@given(elements)
def test_element_json_round_trip(a):
    back = ring.ring_from_json(a.to_json())
    assert same(back, a)


def test_generator_values():
    assert ring.g1()((3,)) == -6
    assert ring.g1()((1, 2)) == -24  # (3+1)! (-1)^3
    assert ring.g2()((2,)) == GaussianRational(-2, 0)
    assert ring.g3(3)((1, 1)) == 9
    assert ring.g_shift()((2, 1)) == 24
    assert ring.factorial_power(2)((3,)) == 36
    assert [ring.factorial_power(k).symbol_domain for k in (1, 2, 3)] == ["entire", "disc", "divergent"]


def test_ideal_classification():
    assert ring.ideal_classify(ix.singleton((2, 1))) == "minimal"
    assert ring.ideal_classify(ix.Cofinite(2, [(0, 0)])) == "maximal"
    assert ring.ideal_classify(ix.A_e()) == "neither"
    assert ring.ideal_classify(ix.Finite(1, [(0,), (1,)])) == "neither"


def test_direct_sum_certificates():
    rho = ring.add(ring.element(ix.full(2), ring.power(1)), ring.indicator(ix.singleton((1, 1))))
    cells = [ix.parity_class(c) for c in ("ee", "eo", "oe", "oo")]
    assert ring.direct_sum_check(rho, cells, m_max=8).passed
    A = ix.Finite(2, [(0, 1), (2, 2)])
    assert ring.direct_sum_check(rho, [A, ix.complement(A)], m_max=8).passed
    bad = ring.direct_sum_check(rho, [ix.parity(ix.EVEN, ix.ANY), ix.full(2)], m_max=4)
    assert not bad.passed and "overlap" in bad.reason


def test_socle_witness_separates():
    for r in range(1, 6):
        w = ring.socle_noninjectivity_witness(r)
        assert w.sigma_f != w.chi_odd_f
        assert ring.socle_membership(w.sigma)
    assert not ring.socle_membership(ring.indicator(ix.A_e()))


def test_simple_module_generation():
    chi = ring.indicator(ix.singleton((2,)))
    cert = ring.simple_module_generation_check((2,), ring.scale(chi, 3), [ring.scale(chi, Fraction(5, 7)), chi])
    assert cert.passed and cert.data["factors"] == [Fraction(5, 21), Fraction(1, 3)]
    with pytest.raises(ValueError):
        ring.simple_module_generation_check((1,), chi, [chi])


def test_coercivity():
    assert ring.check_coercivity(ring.power(2, 3), 20).passed
    fake = ring.user_ponderation(lambda g: sum(g) ** 3, 2, (1, 1), 1)
    assert not ring.check_coercivity(fake, 20).passed


def test_constructor_errors():
    with pytest.raises(ValueError):
        ring.constant(0)
    with pytest.raises(ValueError):
        ring.mul(ring.unit(1), ring.unit(2))
    with pytest.raises(ValueError):
        ring.g3(-1)
    with pytest.raises(ValueError):
        ring.unit(1)((1, 2))


@given(st.fractions(), st.fractions())
def test_scalar_json_round_trip(a, b):
    z = GaussianRational(a, b).simplify()
    assert parse_scalar(dump_scalar(z)) == z
    assert parse_scalar(dump_scalar(a)) == a


def test_exact_div_stays_exact():
    assert exact_div(6, 3) == 2 and isinstance(exact_div(6, 3), int)
    assert exact_div(1, 3) == Fraction(1, 3)
    assert exact_div(GaussianRational(2, 2), 2) == GaussianRational(1, 1)
    assert isinstance(exact_div(1.0, 3), float)
