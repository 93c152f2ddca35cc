"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly:
    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import cmath
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from ponderation import index_sets as ix
from ponderation import operators as ops
from ponderation import quadrature, ring, series, special
from ponderation.verification import random_star_pair, run_suite

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, title: str, ok: bool, detail: str) -> bool:
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS[number] = (ok, line)
    return ok


def _fresh_caches():
    series.kernel_coefficients.cache_clear()
    quadrature.build_grid.cache_clear()
    quadrature.radial_rule.cache_clear()
    ops.calibration.cache_clear()


# 1 -------------------------------------------------------------------------

def criterion_1() -> bool:
    _fresh_caches()
    t0 = time.perf_counter()
    weight = series.catalog_weight("g1", 1)
    axis = np.linspace(-2.0, 2.0, 9)
    worst = 0.0
    for x in axis:
        for y in axis:
            w = complex(x, y)
            got = series.kernel_value(weight, (w,), (1.0,), m_max=60)
            worst = max(worst, abs(got - cmath.exp(-w)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    return record(1, "g1 kernel equals exp(-w) on 9x9 grid", ok,
                  f"max err {worst:.2e} (tol 1e-12), {elapsed:.3f}s (< 1s)")


# 2 -------------------------------------------------------------------------

def criterion_2() -> bool:
    _fresh_caches()
    t0 = time.perf_counter()
    rng = random.Random(2)
    points = []
    for _ in range(40):
        w = [cmath.rect(rng.uniform(0, 1.5), rng.uniform(-math.pi, math.pi)) for _ in range(2)]
        points.append((tuple(w), (1.0, 1.0)))
    exact = {
        "g_ee": lambda a, b: 0.5 * cmath.cosh(a) * cmath.cosh(b),
        "g_oo": lambda a, b: 0.5 * cmath.sinh(a) * cmath.sinh(b),
        "g_eo": lambda a, b: 0.5 * cmath.cosh(a) * cmath.sinh(b),
        "g_oe": lambda a, b: 0.5 * cmath.sinh(a) * cmath.cosh(b),
    }
    worst_family = 0.0
    worst_sum = 0.0
    for z, u in points:
        parts = {}
        for tag, fn in exact.items():
            parts[tag] = series.kernel_value(series.catalog_weight(tag, 2), z, u, m_max=60)
            worst_family = max(worst_family, abs(parts[tag] - fn(*z)))
        worst_sum = max(worst_sum, abs(sum(parts.values()) - 0.5 * cmath.exp(z[0] + z[1])))
        direct = series.kernel_value(series.catalog_weight("g", 2), z, u, m_max=60)
        worst_sum = max(worst_sum, abs(direct - 0.5 * cmath.exp(z[0] + z[1])))
    elapsed = time.perf_counter() - t0
    ok = worst_family <= 1e-10 and worst_sum <= 1e-12 and elapsed < 5.0
    return record(2, "hyperbolic family and four-part sum", ok,
                  f"family err {worst_family:.2e} (tol 1e-10), sum err {worst_sum:.2e} (tol 1e-12), "
                  f"{elapsed:.2f}s (< 5s)")


# 3 -------------------------------------------------------------------------

def criterion_3() -> bool:
    rng = random.Random(3)
    pairs = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(25)]
    mismatches = 0
    checked = 0
    for a, b in pairs:
        for m in range(17):
            for par in ("ee", "oo", "eo", "oe"):
                lhs = series.parity_band_sum(m, a, b, par)
                # independent count over all (g1, g2) with g1 + g2 = m
                rhs = sum(math.comb(m, g) * a ** g * b ** (m - g) for g in range(m + 1)
                          if g % 2 == (par[0] == "o") and (m - g) % 2 == (par[1] == "o"))
                checked += 1
                if not (isinstance(lhs, int) and lhs == rhs):
                    mismatches += 1
                if series.parity_band_enumerate(m, a, b, par) != rhs:
                    mismatches += 1
    return record(3, "signed-binomial parity formula", mismatches == 0,
                  f"{checked} band sums over 25 pairs, m <= 16, {mismatches} mismatches")


# 4 -------------------------------------------------------------------------

def criterion_4() -> bool:
    rng = random.Random(4)
    worst = 0.0
    for i in range(20):
        n = 1 + i % 2
        theta, psi = random_star_pair(rng, n)
        prod = ring.mul(theta, psi)
        for _ in range(50):
            w = [cmath.rect(rng.uniform(0, 1.0), rng.uniform(-math.pi, math.pi)) for _ in range(n)]
            zbar, u = tuple(w), (1.0,) * n
            a = series.convolve(theta, psi, zbar, u).value
            b = series.symbol(prod, zbar, u).value
            worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    return record(4, "star convolution is a ring homomorphism", worst <= 1e-12,
                  f"20 pairs x 50 points, max err {worst:.2e} (tol 1e-12)")


# 5 -------------------------------------------------------------------------

def _quad_oracle(k: int) -> float:
    from scipy import integrate, special as sp

    def f(r):
        return r ** (2 * k + 1) * sp.k0(2 * r)

    # split at 1 so the log singularity and the tail are each handled adaptively
    a, _ = integrate.quad(f, 0, 1, limit=200, epsabs=0, epsrel=1e-13)
    b, _ = integrate.quad(f, 1, np.inf, limit=200, epsabs=0, epsrel=1e-13)
    return a + b


def criterion_5() -> bool:
    _fresh_caches()
    t0 = time.perf_counter()
    grid = quadrature.build_grid(1, 64, 32)
    got = [grid.radial_moment(k) for k in range(7)]
    elapsed = time.perf_counter() - t0
    oracle = [_quad_oracle(k) for k in range(7)]
    closed = [math.factorial(k) ** 2 / 4 for k in range(7)]
    err_grid = max(abs(g / o - 1) for g, o in zip(got, oracle))
    err_oracle = max(abs(o / c - 1) for o, c in zip(oracle, closed))
    ok = err_grid <= 1e-8 and err_oracle <= 1e-8 and elapsed < 2.0
    return record(5, "radial moments of K0(2r)", ok,
                  f"grid vs quad {err_grid:.2e}, quad vs (k!)^2/4 {err_oracle:.2e} (tol 1e-8), "
                  f"grid build {elapsed:.2f}s (< 2s)")


# 6 -------------------------------------------------------------------------

DIAGONAL_WEIGHTS = {
    "1": lambda: ring.unit(1),
    "g1": lambda: series.catalog_weight("g1", 1),
    "g2": lambda: series.catalog_weight("g2", 1),
    "chi_A_e": lambda: ring.indicator(ix.A_e()),
    "chi_A_o": lambda: ring.indicator(ix.A_o()),
    "chi_2": lambda: ring.indicator(ix.singleton((2,))),
}

PAIRS = [("1", "1"), ("chi_A_e", "chi_A_o"), ("1", "chi_A_e"), ("g1", "chi_A_e"), ("g1", "chi_A_o"),
         ("g2", "chi_A_e"), ("chi_2", "g2"), ("chi_A_o", "g1"), ("g2", "1"), ("chi_A_e", "chi_2")]


def criterion_6() -> bool:
    _fresh_caches()
    t0 = time.perf_counter()
    grid = quadrature.build_grid(1, 64, 64)
    weights = {k: make() for k, make in DIAGONAL_WEIGHTS.items()}
    worst_off = worst_spread = worst_kappa = 0.0
    for w in weights.values():
        rows = ops.diagonal_action(ops.weight_operator(w, 1, "paper"), 6, grid)
        kappa, spread = ops.kappa_spread(rows)
        worst_off = max(worst_off, *(r.off_diagonal_residual for r in rows))
        worst_spread = max(worst_spread, spread)
        worst_kappa = max(worst_kappa, abs(kappa * math.pi ** 2 - 1))
    f = ops.TestFunction.parse("1 + z - 2z^2 + z^3")
    u = [0.5, -0.3 + 0.6j, 0.8j]
    worst_comp = 0.0
    for a, b in PAIRS:
        res = ops.compose(ops.weight_operator(weights[a], 1, "calibrated"),
                          ops.weight_operator(weights[b], 1, "calibrated"), f, u, grid)
        worst_comp = max(worst_comp, res.max_rel_difference)
    elapsed = time.perf_counter() - t0
    ok = worst_off <= 1e-8 and worst_spread <= 1e-6 and worst_comp <= 1e-5 and elapsed < 30.0
    return record(6, "diagonal action and composition law", ok,
                  f"off-diagonal {worst_off:.2e} (tol 1e-8), kappa spread {worst_spread:.2e} (tol 1e-6), "
                  f"|kappa pi^2 - 1| {worst_kappa:.2e}, compose {worst_comp:.2e} (tol 1e-5), "
                  f"{elapsed:.2f}s (< 30s)")


# 7 -------------------------------------------------------------------------

def criterion_7() -> bool:
    grid = quadrature.build_grid(1, 64, 64)
    u = np.array([0.6, -0.4 + 0.3j, 1.1j])
    keep = kill = 0.0
    for k in range(5):
        for j in range(7):
            vals = ops.named_transform("simple", ops.TestFunction.monomial((j,)), u, grid, "paper",
                                       alpha=(k,)).values
            if j == k:
                keep = max(keep, float(np.max(np.abs(vals / u ** k - 1))))
            else:
                kill = max(kill, float(np.max(np.abs(vals))))
    ok = keep <= 1e-6 and kill <= 1e-8
    return record(7, "simple-module projector", ok,
                  f"z^k -> u^k rel err {keep:.2e} (tol 1e-6), other monomials {kill:.2e} (tol 1e-8)")


# 8 -------------------------------------------------------------------------

def criterion_8() -> bool:
    bad = []
    for r in range(1, 6):
        for n in (1, 2):
            w = ring.socle_noninjectivity_witness(r, n, [Fraction(r + i, 3) for i in range(r)])
            pts = w.points
            g = w.gamma_star
            # pointwise re-evaluation from the point list alone
            sigma_g = sum((Fraction(r + i, 3) for i, p in enumerate(pts[:r]) if p == g), Fraction(0))
            f_g = sum(1 for p in pts if p == g)
            odd_g = sum(1 for i, p in enumerate(pts) if p == g and i % 2 == 0)
            engine = (w.sigma(g) * w.f(g), ring.indicator(w.a_odd)(g) * w.f(g))
            if not (sigma_g * f_g != odd_g * f_g and engine == (sigma_g * f_g, odd_g * f_g)
                    and ring.socle_membership(w.sigma)):
                bad.append((r, n))
    return record(8, "socle non-injectivity witnesses", not bad,
                  f"r = 1..5 in n = 1, 2; failures {bad or 'none'}")


# 9 -------------------------------------------------------------------------

ALGEBRAIC_SUITES = ("ring_axioms", "module_axioms", "ideal_classification", "free_modules",
                    "projective_decompositions")


def criterion_9() -> bool:
    counts = {}
    for name in ALGEBRAIC_SUITES:
        rep = run_suite(name, seed=9)
        counts[name] = (rep.cases, len(rep.failures))
    failures = sum(f for _, f in counts.values())
    detail = ", ".join(f"{k} {c}/{f}" for k, (c, f) in counts.items())
    return record(9, "algebraic suites", failures == 0, f"cases/failures: {detail}")


# 10 ------------------------------------------------------------------------

def criterion_10() -> bool:
    from scipy import special as sp
    from scipy.optimize import brentq

    t0 = time.perf_counter()
    k0 = special.bessel_K(0, 1.0)
    zero = brentq(lambda x: special.bessel_J(0, x), 2.0, 3.0, xtol=1e-15)
    rng = random.Random(10)
    wr = 0.0
    for _ in range(20):
        nu, x = rng.uniform(0, 3), rng.uniform(0.05, 40)
        lhs = special.bessel_I(nu, x) * special.bessel_K(nu + 1, x) + special.bessel_I(nu + 1, x) * special.bessel_K(nu, x)
        wr = max(wr, abs(lhs * x - 1))
    rates = [special.macdonald_asymptotic_check(s).decay_rate for s in (0.0, 0.5, 1.0)]
    elapsed = time.perf_counter() - t0
    err_k0 = abs(k0 / sp.k0(1.0) - 1)
    err_zero = abs(zero - sp.jn_zeros(0, 1)[0])
    err_rate = max(abs(r + 2) for r in rates)
    ok = err_k0 <= 1e-14 and err_zero <= 1e-12 and wr <= 1e-12 and err_rate <= 1e-3 and elapsed < 2.0
    return record(10, "special-function sanity", ok,
                  f"K0(1) {err_k0:.1e}, J0 zero {err_zero:.1e}, Wronskian {wr:.1e}, "
                  f"decay rate {max(rates, key=lambda r: abs(r + 2)):.5f}, {elapsed:.2f}s (< 2s)")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(check, acceptance_lines):
    ok = check()
    number = CRITERIA.index(check) + 1
    acceptance_lines.append(RESULTS[number][1])
    print(RESULTS[number][1])
    assert ok, RESULTS[number][1]


if __name__ == "__main__":
    for check in CRITERIA:
        check()
    for i in sorted(RESULTS):
        print(RESULTS[i][1])
    raise SystemExit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
