import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from ponderation import index_sets as ix
from ponderation import ring, series

small_complex = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(small_complex)
def test_unit_kernel_is_bessel_I(w):
    # I_0^1(w) = sum w^m / m!^2, summed naively as the oracle
    got = series.kernel_value(ring.unit(1), (w,), (1,))
    ref = sum(w ** m / math.factorial(m) ** 2 for m in range(80))
    assert abs(got - ref) <= 1e-13 * max(1, abs(ref))


@pytest.mark.parametrize("x", [0.1, 1.0, 3.7])
def test_unit_kernel_against_scipy(x):
    assert series.kernel_value(ring.unit(1), (x,), (1,)) == pytest.approx(sp.iv(0, 2 * math.sqrt(x)), rel=1e-14)
    # n = 2: I_1^1(w1, w2) = (1/2) I_1(2 sqrt s)/sqrt s with s = w1 + w2
    s = x + 0.4
    ref = 0.5 * sp.iv(1, 2 * math.sqrt(s)) / math.sqrt(s)
    assert series.kernel_value(ring.unit(2), (x, 0.4), (1, 1)) == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("tag,n", [("g1", 1), ("g2", 1), ("g1", 2), ("g2", 2), ("g3", 1), ("g3", 2),
                                   ("g", 2), ("g_ee", 2), ("g_oo", 2), ("g_eo", 2), ("g_oe", 2),
                                   ("g1_e", 1), ("g1_o", 1)])
def test_series_matches_closed_form(tag, n):
    weight = series.catalog_weight(tag, n)
    for zbar in [(0.3 + 0.2j,), (-1.1 + 0.5j,), (1.4,)]:
        z = zbar * n
        u = (1.0,) * n
        ser = series.kernel_value(weight, z, u)
        assert abs(ser - series.closed_form(tag, z, u)) <= 1e-12 * max(1, abs(ser))
        via_mode = series.kernel_series(series.KernelQuery(weight, z, u, mode="closed_form")).value
        assert via_mode == series.closed_form(tag, z, u)


def test_g1_closed_form_explicitly():
    assert series.closed_form("g1", (1,), (1,)) == pytest.approx(math.exp(-1))
    assert series.closed_form("g", (0.5, 0.5), (1, 1)) == pytest.approx(0.5 * math.e)
    assert series.closed_form("g_oo", (1, 1), (1, 1)) == pytest.approx(0.5 * math.sinh(1) ** 2)


def test_exact_band_values():
    assert series.multinomial_band(ring.unit(2), 3, (1, 2), (1, 1)) == 27
    assert series.multinomial_band(ring.indicator(ix.A_e()), 4, (2,), (1,)) == 16
    assert series.multinomial_band(ring.unit(2), 2, (Fraction(1, 2), 1), (1, 1)) == Fraction(9, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 20), st.integers(-20, 20), st.integers(-20, 20), st.sampled_from(["ee", "oo", "eo", "oe"]))
def test_parity_formula_equals_enumeration(m, a, b, par):
    assert series.parity_band_sum(m, a, b, par) == series.parity_band_enumerate(m, a, b, par)


def test_modes_agree():
    weight = ring.add(ring.element(ix.parity_class("eo"), ring.power(2)), ring.indicator(ix.full(2)))
    z, u = (0.7 - 0.2j, -0.4 + 0.9j), (1, 1)
    gen = series.kernel_value(weight, z, u)
    assert series.kernel_value(weight, z, u, mode="parity") == pytest.approx(gen, rel=1e-13)
    rad = ring.element(ix.full(2), ring.power(1, 3))
    assert series.kernel_value(rad, z, u, mode="radial") == pytest.approx(series.kernel_value(rad, z, u), rel=1e-13)


def test_tail_bound_shrinks_with_truncation():
    w = series.catalog_weight("g1", 1)
    tails = [series.kernel_series(series.KernelQuery(w, (1.5,), (1,), m_max=m)).tail_bound for m in (5, 10, 20)]
    assert tails[0] > tails[1] > tails[2]
    short = series.kernel_value(w, (1.5,), (1,), m_max=10)
    assert abs(short - math.exp(-1.5)) < 10 * tails[1]


def test_symbol_and_convolution():
    theta = ring.element(ix.A_e(), ring.power(1))
    psi = ring.add(ring.indicator(ix.full(1)), ring.indicator(ix.singleton((3,))))
    z, u = (0.4 + 0.3j,), (0.8 - 0.1j,)
    a = series.convolve(theta, psi, z, u).value
    b = series.symbol(ring.mul(theta, psi), z, u).value
    assert abs(a - b) <= 1e-14
    one = series.symbol(ring.unit(1), z, u)
    assert one.value == pytest.approx(1.0) and one.denominator_magnitude > 0


def test_symbol_outside_neighborhood():
    # I_0^1(w) = J_0(2 sqrt(-w)) vanishes at w = -(j_{0,1}/2)^2
    w0 = -(sp.jn_zeros(0, 1)[0] / 2) ** 2
    with pytest.raises(series.SeriesDomainError):
        series.symbol(ring.unit(1), (w0,), (1,))


def test_factorial_orders_and_domains():
    assert series.factorial_order(ring.unit(1)) == 0
    g1w = series.catalog_weight("g1", 1)
    assert series.factorial_order(g1w) == 1
    prod = series.PointwiseProduct(g1w, g1w)
    assert prod.factorial_order == 2 and prod.symbol_domain == "disc"
    series.kernel_value(prod, (0.5,), (1,))
    with pytest.raises(series.SeriesDomainError):
        series.kernel_value(prod, (1.5,), (1,))
    cubic = ring.module_element(ring.factorial_power(3))
    with pytest.raises(series.SeriesDomainError):
        series.kernel_value(cubic, (0.01,), (1,))


def test_disc_weight_converges_inside():
    # sum_m m!^2 w^m/(m! m!) = 1/(1-w)
    w2 = ring.module_element(ring.factorial_power(2))
    assert series.kernel_value(w2, (0.3,), (1,), m_max=60) == pytest.approx(1 / 0.7, rel=1e-12)


def test_query_validation():
    with pytest.raises(ValueError):
        series.KernelQuery(ring.unit(1), (1,), (1, 2))
    with pytest.raises(ValueError):
        series.KernelQuery(ring.unit(1), (1,), (1,), mode="bogus")
    with pytest.raises(ValueError):
        series.multinomial_band(ring.unit(2), 61, (1, 1), (1, 1))


def test_hankel_candidate_differs_from_series():
    w = series.catalog_weight("g3", 1)
    ser = series.kernel_value(w, (0.5,), (1,))
    assert ser == pytest.approx(sp.iv(0, 2 * math.sqrt(1.0)), rel=1e-13)  # sum (2w)^m/m!^2
    assert series.hankel_candidate((0.5,), (1,)) == pytest.approx(sp.jv(1, 1.0))
    assert abs(ser - series.hankel_candidate((0.5,), (1,))) > 0.5


def test_g2_is_rotated_g1():
    for w in (0.3, 1.1 - 0.4j):
        a = series.kernel_value(series.catalog_weight("g2", 1), (w,), (1,))
        b = series.kernel_value(series.catalog_weight("g1", 1), (1j * w,), (1,))
        assert abs(a - b) <= 1e-14
        assert abs(a - cmath.exp(-1j * w)) <= 1e-14
