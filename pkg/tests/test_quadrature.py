import math

import numpy as np
import pytest
from scipy import integrate, special as sp

from ponderation import quadrature as qd


def quad_moment(k, n, s):
    """int_0^inf r^(2k+2n-1) (2r)^(2s) K_{2s}(2r) dr by adaptive quadrature."""
    def f(r):
        return r ** (2 * k + 2 * n - 1) * (2 * r) ** (2 * s) * sp.kv(2 * s, 2 * r)
    a = integrate.quad(f, 0, 1, limit=200, epsabs=0, epsrel=1e-13)[0]
    b = integrate.quad(f, 1, np.inf, limit=200, epsabs=0, epsrel=1e-13)[0]
    return a + b


@pytest.mark.parametrize("n,s", [(1, 0.0), (1, 0.5), (1, 1.0), (2, 0.0), (2, 0.75)])
def test_exact_moment_formula_against_quad(n, s):
    for k in range(5):
        assert qd.exact_radial_moment(k, n, s) == pytest.approx(quad_moment(k, n, s), rel=1e-10)


@pytest.mark.parametrize("n,s", [(1, 0.0), (1, 0.5), (2, 0.0), (2, 1.0)])
def test_grid_moments_up_to_exactness_degree(n, s):
    grid = qd.build_grid(n, 48, 16, s=s)
    for k in range(16):
        assert grid.radial_moment(k) == pytest.approx(qd.exact_radial_moment(k, n, s), rel=1e-10)
    assert grid.moment_error <= qd.MOMENT_TOL


def test_mu0_mass_and_monomial_norms_n1():
    # ||z^k||^2 in L^2(mu_0) = 2 pi * pi^-2 * (k!)^2/4 = (k!)^2/(2 pi)
    grid = qd.build_grid(1, 64, 32)
    z = grid.nodes[:, 0]
    for k in range(8):
        assert grid.integrate(np.abs(z) ** (2 * k)).real == pytest.approx(math.factorial(k) ** 2 / (2 * math.pi),
                                                                          rel=1e-12)
    assert abs(grid.integrate(z ** 2 * np.conj(z))) < 1e-14


def test_n2_grid_orthogonality_and_norms():
    grid = qd.build_grid(2, 32, 16, t_order=12)
    z1, z2 = grid.nodes[:, 0], grid.nodes[:, 1]
    for a, b in [(0, 0), (1, 0), (2, 1), (3, 3)]:
        got = grid.integrate(np.abs(z1) ** (2 * a) * np.abs(z2) ** (2 * b)).real
        # angles give (2pi)^2, the t integral a! b!/(a+b+1)!, then the radial moment with k = a+b
        ref = (math.pi ** -4 * (2 * math.pi) ** 2 * math.factorial(a) * math.factorial(b)
               / math.factorial(a + b + 1) / 2 * qd.exact_radial_moment(a + b, 2, 0.0))
        assert got == pytest.approx(ref, rel=1e-12)
    assert abs(grid.integrate(z1 * np.conj(z2))) < 1e-14


def test_n2_norm_against_dblquad():
    a, b = 1, 2
    grid = qd.build_grid(2, 32, 16, t_order=12)
    got = grid.integrate(np.abs(grid.nodes[:, 0]) ** (2 * a) * np.abs(grid.nodes[:, 1]) ** (2 * b)).real

    def integrand(t, rho):
        return rho ** (2 * a + 2 * b + 3) * (1 - t) ** a * t ** b * sp.k0(2 * rho) / 2
    val = integrate.dblquad(integrand, 0, 40, 0, 1, epsabs=0, epsrel=1e-11)[0]
    ref = math.pi ** -4 * (2 * math.pi) ** 2 * val
    assert got == pytest.approx(ref, rel=1e-9)


def test_build_grid_validation():
    with pytest.raises(ValueError):
        qd.build_grid(3)
    with pytest.raises(ValueError):
        qd.build_grid(1, 8)
    with pytest.raises(ValueError):
        qd.build_grid(1, 32, 4)
    with pytest.raises(ValueError):
        qd.build_grid(1, 32, 16, s=-1)


def test_grid_is_cached_and_deterministic():
    a = qd.build_grid(1, 40, 16)
    b = qd.build_grid(1, 40, 16)
    assert a is b
    r1, w1 = qd._lanczos_gauss(*qd._discretized_weight(1, 0.0, 40), 40)
    assert np.array_equal(r1, a.radial_nodes) and np.array_equal(w1, a.radial_weights)
