"""Product quadrature for the measures mu_s on C and C^2.

The radial factor is a Gauss rule for the weight r^(2n-1) K+_{2s}(2r) on
(0, inf), built by the discretized Stieltjes procedure: the weight is sampled
on a fine trapezoid grid in t = log r (which absorbs the logarithmic
singularity of K_0 at the origin and the exponential decay at infinity), and
a Lanczos run with full reorthogonalization produces the Jacobi matrix.
Angles use the equispaced trapezoid rule; in C^2 the split
|z_1|^2 = r^2 (1 - t), |z_2|^2 = r^2 t uses Gauss-Legendre in t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .special import K_plus

LOG_STEP = 0.02
LOG_START = -25.0
MOMENT_TOL = 1e-8


def exact_radial_moment(k: int, n: int, s: float = 0.0) -> float:
    """int_0^inf r^(2k+2n-1) K+_{2s}(2r) dr = 2^(2s-2) Gamma(k+n) Gamma(k+n+2s)."""
    if float(2 * s).is_integer():
        return math.ldexp(float(math.factorial(k + n - 1) * math.factorial(k + n - 1 + int(2 * s))), int(2 * s) - 2)
    return math.exp((2 * s - 2) * math.log(2.0) + math.lgamma(k + n) + math.lgamma(k + n + 2 * s))


def _discretized_weight(n: int, s: float, order: int):
    r_max = min(3.0 * order + 60.0, 340.0)
    t = np.arange(LOG_START, math.log(r_max) + LOG_STEP, LOG_STEP)
    r = np.exp(t)
    kp = np.array([K_plus(2 * s, 2.0 * x) for x in r])
    w = LOG_STEP * r ** (2 * n) * kp  # dr = r dt
    keep = w > 0
    return r[keep], w[keep]


def _lanczos_gauss(x: np.ndarray, w: np.ndarray, order: int):
    """Gauss nodes/weights for the discrete measure sum_i w_i delta(x_i)."""
    mu0 = float(np.sum(w))
    q = np.sqrt(w / mu0)
    basis = np.zeros((order, len(x)))
    alpha = np.zeros(order)
    beta = np.zeros(order - 1)
    basis[0] = q
    for j in range(order):
        v = x * basis[j]
        alpha[j] = basis[j] @ v
        v = v - alpha[j] * basis[j]
        if j > 0:
            v = v - beta[j - 1] * basis[j - 1]
        v = v - basis[: j + 1].T @ (basis[: j + 1] @ v)  # full reorthogonalization
        if j + 1 < order:
            beta[j] = np.linalg.norm(v)
            basis[j + 1] = v / beta[j]
    nodes = np.linalg.eigvalsh(np.diag(alpha) + np.diag(beta, 1) + np.diag(beta, -1))
    # Christoffel numbers 1/sum p_k(x)^2 keep relative accuracy for the tiny
    # weights at large nodes, which mu0 * v0^2 from the eigenvectors does not.
    p_prev = np.zeros_like(nodes)
    p = np.full_like(nodes, 1.0 / math.sqrt(mu0))
    acc = p * p
    for k in range(order - 1):
        p_next = ((nodes - alpha[k]) * p - (beta[k - 1] * p_prev if k else 0.0)) / beta[k]
        p_prev, p = p, p_next
        acc = acc + p * p
    return nodes, 1.0 / acc


@lru_cache(maxsize=32)
def radial_rule(n: int, s: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule for int_0^inf h(r) r^(2n-1) K+_{2s}(2r) dr."""
    x, w = _discretized_weight(n, s, order)
    return _lanczos_gauss(x, w, order)


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    n: int
    s: float
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    angular_order: int
    t_nodes: np.ndarray | None
    t_weights: np.ndarray | None
    nodes: np.ndarray = field(repr=False)  # (N, n) complex
    weights: np.ndarray = field(repr=False)  # (N,) positive, includes pi^-2n 2^-2s
    moment_error: float = 0.0
    accuracy_class: str = ""

    @property
    def radial_order(self) -> int:
        return len(self.radial_nodes)

    @property
    def size(self) -> int:
        return len(self.weights)

    def integrate(self, values: np.ndarray) -> complex:
        return complex(np.dot(self.weights, values))

    def mass(self) -> float:
        return float(np.sum(self.weights))

    def radial_moment(self, k: int) -> float:
        """Gauss-rule value of int r^(2k+2n-1) K+_{2s}(2r) dr."""
        return float(np.dot(self.radial_weights, self.radial_nodes ** (2 * k)))


def measure_constant(n: int, s: float) -> float:
    return math.pi ** (-2 * n) * 2.0 ** (-2 * s)


def _moment_check(r, w, n, s, order) -> float:
    worst = 0.0
    for k in range(0, order // 3 + 1):
        exact = exact_radial_moment(k, n, s)
        worst = max(worst, abs(float(np.dot(w, r ** (2 * k)) / exact) - 1.0))
    return worst


@lru_cache(maxsize=16)
def build_grid(n: int = 1, radial_order: int = 64, angular_order: int = 32, s: float = 0.0,
               t_order: int | None = None) -> QuadratureGrid:
    if n not in (1, 2):
        raise ValueError(f"unsupported dimension n={n} (grids exist for n = 1, 2)")
    if radial_order < 16:
        raise ValueError("radial_order must be >= 16")
    if angular_order < 8:
        raise ValueError("angular_order must be >= 8")
    if s < 0:
        raise ValueError("s must be >= 0")
    s = float(s)
    r, w = radial_rule(n, s, radial_order)
    err = _moment_check(r, w, n, s, radial_order)
    if err > MOMENT_TOL:
        raise RuntimeError(f"radial rule failed its moment test (max relative error {err:.2e})")
    theta = 2 * math.pi * np.arange(angular_order) / angular_order
    dtheta = 2 * math.pi / angular_order
    c = measure_constant(n, s)
    if n == 1:
        R, TH = np.meshgrid(r, theta, indexing="ij")
        W = np.broadcast_to((c * w * dtheta)[:, None], R.shape)
        nodes = (R * np.exp(1j * TH)).reshape(-1, 1)
        t_nodes = t_weights = None
    else:
        t_order = t_order or max(16, radial_order // 3)
        x, wx = np.polynomial.legendre.leggauss(t_order)
        t_nodes, t_weights = (x + 1) / 2, wx / 2
        R, T, TH1, TH2 = np.meshgrid(r, t_nodes, theta, theta, indexing="ij")
        W = (c * w[:, None, None, None] * (0.5 * t_weights)[None, :, None, None]
             * dtheta ** 2 * np.ones_like(R))
        z1 = R * np.sqrt(1 - T) * np.exp(1j * TH1)
        z2 = R * np.sqrt(T) * np.exp(1j * TH2)
        nodes = np.stack([z1.ravel(), z2.ravel()], axis=1)
    return QuadratureGrid(
        n=n, s=s, radial_nodes=r, radial_weights=w, angular_order=angular_order,
        t_nodes=t_nodes, t_weights=t_weights, nodes=nodes, weights=np.ascontiguousarray(W).ravel(),
        moment_error=err,
        accuracy_class=f"radial moments to {MOMENT_TOL:g} up to degree {2 * (radial_order // 3)}",
    )
