"""Modified Bessel functions I and K (MacDonald), Bessel J, and helpers.

K_nu uses Temme's series for x < 2, Steed's continued fraction on [2, 30)
and the Hankel asymptotic expansion for x >= 30.  I_nu is the power series
for x <= 18 and the asymptotic expansion beyond, falling back to the series
when the expansion cannot reach double precision.  J_n is the periodic
trapezoid rule on Bessel's integral, which works for complex arguments.

References: Numerical Recipes (bessik), Abramowitz & Stegun 9.7, 6.1.34.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EPS = 1e-16
MAXIT = 10_000
K_ASYMPTOTIC_X = 30.0
I_SWITCH_X = 18.0

# Taylor coefficients of 1/Gamma(z) about 0 (A&S 6.1.34), c[k] multiplies z^k.
_RGAMMA = (
    0.0, 1.0, 0.57721566490153286, -0.65587807152025388, -0.042002635034095236,
    0.16653861138229149, -0.042197734555544337, -0.0096219715278769736,
    0.0072189432466630995, -0.0011651675918590651, -0.00021524167411495097,
    0.00012805028238811619, -2.0134854780788239e-5, -1.2504934821426707e-6,
    1.1330272319816959e-6, -2.0563384169776071e-7, 6.1160951044814158e-9,
    5.0020076444692229e-9, -1.1812745704870201e-9, 1.0434267116911005e-10,
    7.7822634399050713e-12, -3.6968056186422057e-12, 5.100370287454476e-13,
    -2.0583260535665068e-14, -5.348122539423018e-15, 1.2267786282382608e-15,
    -1.1812593016974588e-16, 1.1866922547516003e-18,
)


@dataclass(frozen=True)
class SpecialFunctionResult:
    value: float | complex
    method: str  # power_series | integral_representation | asymptotic | continued_fraction
    est_error: float


def _gamma_split(mu: float) -> tuple[float, float, float, float]:
    """gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu) for |mu| <= 1/2, cancellation-free."""
    # 1/Gamma(1+mu) = sum_j c[j+1] mu^j; split into even and odd powers of mu
    even = 0.0
    odd_over_mu = 0.0
    mu2 = mu * mu
    p = 1.0
    for j in range(0, len(_RGAMMA) - 1, 2):
        even += _RGAMMA[j + 1] * p
        if j + 2 < len(_RGAMMA):
            odd_over_mu += _RGAMMA[j + 2] * p
        p *= mu2
    gampl = even + mu * odd_over_mu
    gammi = even - mu * odd_over_mu
    return -odd_over_mu, even, gampl, gammi


def _k_small(xmu: float, x: float) -> tuple[float, float, float]:
    """Temme's series: K_mu(x), K_{mu+1}(x) for x < 2, |mu| <= 1/2."""
    xmu2 = xmu * xmu
    x2 = 0.5 * x
    pimu = math.pi * xmu
    fact = 1.0 if abs(pimu) < EPS else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = xmu * d
    fact2 = 1.0 if abs(e) < EPS else math.sinh(e) / e
    gam1, gam2, gampl, gammi = _gamma_split(xmu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    sum1 = p
    delta = 0.0
    for i in range(1, MAXIT):
        ff = (i * ff + p + q) / (i * i - xmu2)
        c *= d / i
        p /= i - xmu
        q /= i + xmu
        delta = c * ff
        total += delta
        sum1 += c * (p - i * ff)
        if abs(delta) < abs(total) * EPS:
            break
    return total, sum1 * 2.0 / x, abs(delta) + EPS * abs(total)


def _k_steed(xmu: float, x: float) -> tuple[float, float, float]:
    """Steed's CF2 for K_mu(x), K_{mu+1}(x), x >= 2, |mu| <= 1/2."""
    xmu2 = xmu * xmu
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - xmu2
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    dels = 0.0
    for i in range(2, MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < EPS:
            break
    h = a1 * h
    kmu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    k1 = kmu * (xmu + x + 0.5 - h) / x
    return kmu, k1, abs(dels / s) * abs(kmu) + EPS * abs(kmu)


def _hankel_series(nu: float, x: float, sign: int) -> tuple[float, float]:
    """Sum_k (sign)^k a_k(nu)/x^k to its smallest term; returns (sum, last term)."""
    four_nu2 = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    prev = math.inf
    for k in range(1, 200):
        term *= sign * (four_nu2 - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(term) >= prev:
            return total, prev
        total += term
        prev = abs(term)
        if abs(term) < EPS * abs(total):
            break
    return total, abs(term)


def _k_asymptotic(nu: float, x: float) -> tuple[float, float]:
    s, last = _hankel_series(nu, x, +1)
    pref = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
    return pref * s, pref * last + EPS * abs(pref * s)


def bessel_K(nu: float, x: float, full_output: bool = False):
    """MacDonald function K_nu(x) for real nu and x > 0."""
    if not x > 0:
        raise ValueError(f"bessel_K: x must be > 0, got {x}")
    nu = abs(float(nu))
    x = float(x)
    if x >= K_ASYMPTOTIC_X:
        val, err = _k_asymptotic(nu, x)
        res = SpecialFunctionResult(val, "asymptotic", err)
        return res if full_output else res.value
    nl = int(nu + 0.5)
    xmu = nu - nl
    if x < 2.0:
        kmu, k1, err = _k_small(xmu, x)
        method = "power_series"
    else:
        kmu, k1, err = _k_steed(xmu, x)
        method = "continued_fraction"
    rel = err / abs(kmu) if kmu else 0.0
    for i in range(1, nl + 1):
        kmu, k1 = k1, (xmu + i) * 2.0 / x * k1 + kmu
    res = SpecialFunctionResult(kmu, method, rel * abs(kmu) * (1 + nl) + EPS * abs(kmu))
    return res if full_output else res.value


def K_plus(nu: float, t: float) -> float:
    """t^nu K_nu(t)."""
    if nu == 0:
        return bessel_K(0.0, t)
    return t ** nu * bessel_K(nu, t)


def _i_series(nu: float, x: float) -> tuple[float, float]:
    if x == 0.0:
        return (1.0 if nu == 0 else 0.0), 0.0
    lead = math.exp(nu * math.log(0.5 * x) - math.lgamma(nu + 1.0))
    y = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, MAXIT):
        term *= y / (k * (k + nu))
        total += term
        if term < EPS * total:
            break
    return lead * total, lead * (term + EPS * total)


def bessel_I(nu: float, x: float, full_output: bool = False):
    """Modified Bessel function of the first kind, real nu >= 0, x >= 0."""
    nu = float(nu)
    x = float(x)
    if x < 0 or nu < 0:
        raise ValueError("bessel_I: need x >= 0 and nu >= 0")
    if x > I_SWITCH_X:
        s, last = _hankel_series(nu, x, -1)
        if last < 1e-15 * abs(s):
            pref = math.exp(x) / math.sqrt(2.0 * math.pi * x)
            res = SpecialFunctionResult(pref * s, "asymptotic", pref * last)
            return res if full_output else res.value
    val, err = _i_series(nu, x)
    res = SpecialFunctionResult(val, "power_series", err)
    return res if full_output else res.value


def modified_I0_sqrt(w):
    """Entire function sum_m w^m / (m!)^2, i.e. I_0(2 sqrt(w)).

    Accepts scalars or numpy arrays (real or complex).
    """
    arr = np.asarray(w, dtype=complex)
    term = np.ones_like(arr)
    total = np.ones_like(arr)
    scale = np.maximum(np.abs(arr), 1.0)
    m = 0
    while True:
        m += 1
        term = term * arr / (m * m)
        total = total + term
        if m > 2 * np.sqrt(scale.max()) + 2 and np.all(np.abs(term) <= EPS * np.abs(total) + 1e-300):
            break
        if m > MAXIT:
            break
    if np.ndim(w) == 0:
        out = complex(total)
        return out.real if np.isrealobj(w) else out
    return total if np.iscomplexobj(w) else total.real


def _j_trapezoid(n: int, x: np.ndarray, npts: int) -> np.ndarray:
    tau = 2.0 * np.pi * np.arange(npts) / npts
    out = np.empty(x.shape, dtype=complex)
    flat_x = x.ravel()
    flat_out = out.ravel()
    chunk = max(1, 2_000_000 // npts)
    phase = np.exp(-1j * n * tau)
    sin_tau = np.sin(tau)
    for start in range(0, flat_x.size, chunk):
        xs = flat_x[start:start + chunk, None]
        flat_out[start:start + chunk] = (np.exp(1j * xs * sin_tau) * phase).mean(axis=1)
    return out


def bessel_J(n: int, x, full_output: bool = False):
    """Bessel J_n for integer n >= 0 and real or complex x (scalar or array)."""
    if int(n) != n or n < 0:
        raise ValueError("bessel_J: n must be a non-negative integer")
    n = int(n)
    arr = np.asarray(x, dtype=complex)
    radius = float(np.abs(arr).max()) if arr.size else 0.0
    npts = 2 * int(math.ceil(radius)) + n + 48
    val = _j_trapezoid(n, arr, npts)
    if full_output:
        err = np.abs(val - _j_trapezoid(n, arr, npts + 16)) + EPS * np.abs(val)
    if not np.iscomplexobj(x):
        val = val.real
    if np.ndim(x) == 0:
        val = val.item()
        if full_output:
            return SpecialFunctionResult(val, "integral_representation", float(err.max()) if np.size(err) else 0.0)
        return val
    if full_output:
        return SpecialFunctionResult(val, "integral_representation", float(err.max()))
    return val


@dataclass(frozen=True)
class AsymptoticFitReport:
    s: float
    r_range: tuple[float, float]
    decay_rate: float
    power_exponent: float
    constant: float
    expected_power: float
    residual: float


def macdonald_asymptotic_check(s: float, r_range=(20.0, 60.0), samples: int = 81) -> AsymptoticFitReport:
    """Fit log K+_{2s}(2r) ~ a*log r + b*r + c + d/r + e/r^2 on ``r_range``.

    The 1/r terms absorb the (1 + O(1/r)) correction so that ``b`` (decay rate)
    and ``a`` (power exponent) are not biased by it.
    """
    lo, hi = r_range
    if not (10.0 <= lo < hi <= 80.0):
        raise ValueError("r_range must lie inside [10, 80]")
    r = np.linspace(lo, hi, samples)
    y = np.array([math.log(K_plus(2 * s, 2 * ri)) for ri in r])
    basis = np.column_stack([np.log(r), r, np.ones_like(r), 1.0 / r, 1.0 / r ** 2])
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    resid = float(np.max(np.abs(basis @ coef - y)))
    return AsymptoticFitReport(
        s=s, r_range=(lo, hi), decay_rate=float(coef[1]), power_exponent=float(coef[0]),
        constant=float(coef[2]), expected_power=2 * s - 0.5, residual=resid,
    )
