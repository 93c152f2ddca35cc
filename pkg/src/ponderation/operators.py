"""Integral operators B_psi on monomial test functions, evaluated by quadrature.

The series route computes

    B_psi f(u) = norm * int I_{n-1}^psi(zbar, u) f(z) dmu_0(z)
               = norm * sum_gamma coef_gamma u^gamma int zbar^gamma f(z) dmu_0(z),

so the grid is visited once per test function (the moments) and the output is
a polynomial in u.  The named route evaluates closed-form kernels (exponential,
Bessel, cosh/sinh products, the monomial projector) at every node instead.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import index_sets as ix
from . import ring
from . import series
from .index_sets import MultiIndex, mfactorial, order
from .quadrature import QuadratureGrid, build_grid
from .scalars import dump_scalar, parse_scalar
from .special import bessel_J, modified_I0_sqrt

VALIDATED_RADIUS = 1.5
NORMALIZATIONS = ("paper", "calibrated")
SERIES_TAGS = ("identity", "laplace", "fourier", "hankel", "hyper_cc", "hyper_ss", "hyper_cs",
               "hyper_sc", "simple", "theta_exploration", "series")
NAMED_TAGS = SERIES_TAGS[:-1]
NODE_CHUNK = 40_000


# ---------------------------------------------------------------- test functions

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"^z(\d*)(?:\^(\d+))?$")


@dataclass(frozen=True)
class TestFunction:
    """Finite combination sum_gamma c_gamma z^gamma with exact coefficients where given."""

    n: int
    terms: tuple[tuple[MultiIndex, object], ...]

    __test__ = False  # not a pytest class

    @classmethod
    def from_mapping(cls, coeffs: Mapping, n: int | None = None) -> "TestFunction":
        acc: dict[MultiIndex, object] = {}
        for gamma, c in coeffs.items():
            gamma = ix.multi_index((gamma,) if isinstance(gamma, int) else gamma)
            acc[gamma] = acc.get(gamma, 0) + c
        dims = {len(g) for g in acc}
        if n is None:
            n = dims.pop() if len(dims) == 1 else 1
        if any(d != n for d in dims):
            raise ValueError("monomials of mixed dimension")
        return cls(n, tuple(sorted((g, c) for g, c in acc.items() if c != 0)))

    @classmethod
    def monomial(cls, gamma, coef=1) -> "TestFunction":
        gamma = ix.multi_index((gamma,) if isinstance(gamma, int) else gamma)
        return cls.from_mapping({gamma: coef}, len(gamma))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TestFunction":
        """Read ``"z^1+3z^2"``, ``"2*z1^1 z2^2 - z2"``, ``"(1+2j)z^3"`` or ``"1"``."""
        compact = re.sub(r"\s*\*\s*|\s+", " ", text.strip())
        compact = re.sub(r"\(([^)]*)\)", lambda m: "(" + m.group(1).replace("+", "P").replace("-", "M") + ")",
                         compact)
        raw = []
        for sign, body in _TERM_RE.findall(compact.replace(" ", "")):
            body = body.replace("P", "+").replace("M", "-")
            coef_txt, factors = _split_term(body)
            coef = parse_scalar(coef_txt) if coef_txt else 1
            raw.append((-coef if sign == "-" else coef, factors))
        if not raw:
            raise ValueError(f"cannot parse test function {text!r}")
        width = max([n or 1] + [max(factors, default=0) for _, factors in raw])
        if n is not None and width > n:
            raise ValueError(f"{text!r} uses more than {n} variables")
        coeffs: dict[MultiIndex, object] = {}
        for coef, factors in raw:
            gamma = [0] * width
            for j, k in factors.items():
                gamma[j - 1] += k
            key = tuple(gamma)
            coeffs[key] = coeffs.get(key, 0) + coef
        return cls.from_mapping(coeffs, width)

    @classmethod
    def from_json(cls, obj) -> "TestFunction":
        if isinstance(obj, str):
            return cls.parse(obj)
        if isinstance(obj, dict):
            obj = obj.get("terms", obj)
        coeffs = {}
        for item in obj:
            if isinstance(item, dict):
                coeffs[tuple(item["gamma"])] = parse_scalar(item.get("coef", 1))
            else:
                gamma, coef = item
                coeffs[tuple(gamma) if isinstance(gamma, list) else gamma] = parse_scalar(coef)
        return cls.from_mapping(coeffs)

    def to_json(self) -> list:
        return [{"gamma": list(g), "coef": dump_scalar(c)} for g, c in self.terms]

    @property
    def degree(self) -> int:
        return max((order(g) for g, _ in self.terms), default=0)

    def coefficient(self, gamma) -> object:
        gamma = tuple(gamma)
        return next((c for g, c in self.terms if g == gamma), 0)

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        out = np.zeros(z.shape[0], dtype=complex)
        for gamma, c in self.terms:
            mono = np.ones(z.shape[0], dtype=complex)
            for j, g in enumerate(gamma):
                if g:
                    mono = mono * z[:, j] ** g
            out = out + complex(c) * mono
        return out

    def __add__(self, other: "TestFunction") -> "TestFunction":
        merged = dict(self.terms)
        for g, c in other.terms:
            merged[g] = merged.get(g, 0) + c
        return TestFunction.from_mapping(merged, self.n)

    def scale(self, c) -> "TestFunction":
        return TestFunction.from_mapping({g: c * v for g, v in self.terms}, self.n)


def _split_term(body: str) -> tuple[str, dict[int, int]]:
    m = re.search(r"z", body)
    coef_txt = body if m is None else body[: m.start()]
    rest = "" if m is None else body[m.start():]
    coef_txt = coef_txt.strip("()")
    factors: dict[int, int] = {}
    for piece in re.findall(r"z\d*(?:\^\d+)?", rest):
        fm = _FACTOR_RE.match(piece)
        j = int(fm.group(1)) if fm.group(1) else 1
        factors[j] = factors.get(j, 0) + (int(fm.group(2)) if fm.group(2) else 1)
    if re.sub(r"z\d*(?:\^\d+)?", "", rest):
        raise ValueError(f"cannot parse term {body!r}")
    return coef_txt, factors


def inner_product(f: TestFunction, g: TestFunction, grid: QuadratureGrid | None = None,
                  s: float | None = None) -> complex:
    """<f, g>_s = int f conj(g) dmu_s by quadrature."""
    if grid is None:
        grid = build_grid(f.n, s=0.0 if s is None else s)
    elif s is not None and float(s) != grid.s:
        grid = build_grid(grid.n, grid.radial_order, grid.angular_order, s)
    if f.n != grid.n or g.n != grid.n:
        raise ValueError("test function and grid dimensions differ")
    return grid.integrate(f(grid.nodes) * np.conj(g(grid.nodes)))


# ---------------------------------------------------------------- descriptors and weights

def central_binomial_weight() -> ring.GeneratorSequence:
    """gamma -> C(2|gamma|, |gamma|); I_0 of it is I_0(2 sqrt w)^2 at n = 1."""
    return _tag_weight("theta_exploration", 1, None, 2)


@lru_cache(maxsize=64)
def _tag_weight(tag: str, n: int, alpha: tuple | None, c):
    if tag == "identity":
        return ring.unit(n)
    if tag == "laplace":
        return ring.module_element(ring.g1(), ring.unit(n))
    if tag == "fourier":
        return ring.module_element(ring.g2(), ring.unit(n))
    if tag == "hankel":
        return ring.module_element(ring.g3(c), ring.unit(n))
    if tag.startswith("hyper_"):
        if n != 2:
            raise ValueError("hyperbolic transforms live in n = 2")
        cells = tag[6:].replace("c", "e").replace("s", "o")  # cosh is the even part, sinh the odd
        return ring.module_element(ring.g_shift(), ring.element(ix.parity_class(cells), 1))
    if tag == "simple":
        if alpha is None or len(alpha) != n:
            raise ValueError(f"simple tag needs alpha with {n} entries")
        return ring.indicator(ix.singleton(alpha))
    if tag == "theta_exploration":
        if n != 1:
            raise ValueError("theta exploration is defined for n = 1")
        return ring.GeneratorSequence("central_binomial", lambda m, n: math.comb(2 * m, m), "entire")
    raise ValueError(f"unknown operator tag {tag!r}")


@dataclass(frozen=True)
class OperatorDescriptor:
    tag: str
    n: int = 1
    normalization: str = "paper"
    kernel: str = "series"  # series | named
    weight: object = field(default=None, compare=False)
    alpha: tuple | None = None
    c: float = 2
    M: float | None = None

    def __post_init__(self):
        if self.tag not in SERIES_TAGS:
            raise ValueError(f"unknown operator tag {self.tag!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
        if self.kernel not in ("series", "named"):
            raise ValueError("kernel must be 'series' or 'named'")
        if self.tag == "series" and (self.weight is None or self.kernel != "series"):
            raise ValueError("tag 'series' needs an explicit weight and the series kernel")
        if self.alpha is not None:
            object.__setattr__(self, "alpha", ix.multi_index(
                (self.alpha,) if isinstance(self.alpha, int) else self.alpha))
        self.series_weight()  # validate tag/n/alpha early

    def series_weight(self):
        if self.tag == "series":
            return self.weight
        return _tag_weight(self.tag, self.n, self.alpha, self.c)

    def with_normalization(self, normalization: str) -> "OperatorDescriptor":
        return OperatorDescriptor(self.tag, self.n, normalization, self.kernel, self.weight,
                                  self.alpha, self.c, self.M)


def weight_operator(weight, n: int | None = None, normalization: str = "paper") -> OperatorDescriptor:
    n = n if n is not None else getattr(weight, "n", 1)
    return OperatorDescriptor("series", n, normalization, "series", weight)


# ---------------------------------------------------------------- moments

def _moment_matrix(grid: QuadratureGrid, fvals: np.ndarray, m_max: int) -> np.ndarray:
    """M[a] = sum_i W_i f_i zbar_i^a (n = 1) or M[a, b] with zbar_1^a zbar_2^b (n = 2)."""
    wf = grid.weights * fvals
    powers = np.arange(m_max + 1)
    if grid.n == 1:
        out = np.zeros(m_max + 1, dtype=complex)
    else:
        out = np.zeros((m_max + 1, m_max + 1), dtype=complex)
    for lo in range(0, grid.size, NODE_CHUNK):
        zb = np.conj(grid.nodes[lo:lo + NODE_CHUNK])
        v1 = zb[:, :1] ** powers
        if grid.n == 1:
            out += v1.T @ wf[lo:lo + NODE_CHUNK]
        else:
            v2 = zb[:, 1:2] ** powers
            out += (v1 * wf[lo:lo + NODE_CHUNK, None]).T @ v2
    return out


def monomial_moments(grid: QuadratureGrid, f: TestFunction, exponents: np.ndarray) -> np.ndarray:
    """int zbar^gamma f dmu for each row gamma of ``exponents``."""
    m_max = int(exponents.max()) if exponents.size else 0
    mat = _moment_matrix(grid, f(grid.nodes), m_max)
    if grid.n == 1:
        return mat[exponents[:, 0]]
    return mat[exponents[:, 0], exponents[:, 1]]


def stated_constant(n: int) -> float:
    """(pi/2)^-n."""
    return (2.0 / math.pi) ** n


@dataclass(frozen=True)
class Calibration:
    constant: float  # 1 / lambda_0 of the identity weight
    spread: float  # max_k |lambda_k / lambda_0 - 1|
    degrees_checked: int


@lru_cache(maxsize=16)
def calibration(grid: QuadratureGrid, k_check: int = 6) -> Calibration:
    """Scale making the identity weight act as the identity; measured at k = 0."""
    weight = _tag_weight("identity", grid.n, None, 2)
    lams = []
    for k in range(k_check + 1):
        gamma = (k,) + (0,) * (grid.n - 1)
        coefs = series.kernel_coefficients(weight, grid.n, float(grid.n - 1), k)
        idx = int(np.flatnonzero((coefs.exponents == gamma).all(axis=1))[0])
        mom = monomial_moments(grid, TestFunction.monomial(gamma), coefs.exponents[idx:idx + 1])[0]
        lams.append((stated_constant(grid.n) * coefs.coefs[idx] * mom).real)
    spread = max(abs(lam / lams[0] - 1.0) for lam in lams)
    return Calibration(1.0 / lams[0], spread, k_check)


def normalization_constant(op: OperatorDescriptor, grid: QuadratureGrid) -> float:
    c = stated_constant(op.n)
    if op.normalization == "calibrated":
        c *= calibration(grid).constant
    return c


# ---------------------------------------------------------------- series route

@dataclass(frozen=True)
class OperatorResult:
    values: np.ndarray
    u_points: np.ndarray
    constant: float
    exponents: np.ndarray = field(repr=False, default=None)
    output_coefficients: np.ndarray = field(repr=False, default=None)

    def coefficient(self, gamma) -> complex:
        """Coefficient of u^gamma in B f(u)."""
        gamma = np.asarray(gamma)
        hit = np.flatnonzero((self.exponents == gamma).all(axis=1))
        return complex(self.output_coefficients[hit[0]]) if hit.size else 0j


def _as_points(u_points, n: int) -> np.ndarray:
    u = np.asarray(u_points, dtype=complex)
    if u.ndim == 0:
        u = u.reshape(1, 1)
    elif u.ndim == 1:
        u = u.reshape(-1, 1) if n == 1 else u.reshape(1, -1)
    if u.shape[1] != n:
        raise ValueError(f"u points must have {n} coordinates")
    if np.any(np.abs(u) > VALIDATED_RADIUS):
        warnings.warn(f"u outside the validated polydisc |u_j| <= {VALIDATED_RADIUS}", stacklevel=3)
    return u


def _check_grid(op: OperatorDescriptor, f: TestFunction, grid: QuadratureGrid):
    if grid.n != op.n or f.n != op.n:
        raise ValueError("operator, test function and grid dimensions differ")
    if grid.s != 0.0:
        raise ValueError("operators integrate against mu_0; build the grid with s = 0")


def _evaluate_polynomial(exponents: np.ndarray, coefs: np.ndarray, u: np.ndarray) -> np.ndarray:
    out = np.empty(len(u), dtype=complex)
    for i, point in enumerate(u):
        mono = np.ones(len(coefs), dtype=complex)
        for j in range(u.shape[1]):
            mono = mono * point[j] ** exponents[:, j]
        terms = coefs * mono
        out[i] = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return out


def apply_operator(op: OperatorDescriptor, f: TestFunction, u_points, grid: QuadratureGrid,
                   m_max: int = series.DEFAULT_M_MAX) -> OperatorResult:
    """B f(u) through the series kernel I_{n-1}^psi; use :func:`evaluate` for named kernels."""
    _check_grid(op, f, grid)
    u = _as_points(u_points, op.n)
    weight = op.series_weight()
    M = float(op.n - 1) if op.M is None else float(op.M)
    reach = float(np.abs(grid.radial_nodes).max()) * float(np.abs(u).max(initial=0.0)) * op.n
    series.check_domain(weight, [reach])
    coefs = series.kernel_coefficients(weight, op.n, M, m_max)
    moments = monomial_moments(grid, f, coefs.exponents)
    const = normalization_constant(op, grid)
    out_coefs = const * coefs.coefs * moments
    return OperatorResult(_evaluate_polynomial(coefs.exponents, out_coefs, u), u, const,
                          coefs.exponents, out_coefs)


# ---------------------------------------------------------------- named route

def _bessel_type_kernel(x: np.ndarray, n: int) -> np.ndarray:
    """2^{1-n} sum_m x^m / (m! (m+n-1)!), vectorized."""
    if n == 1:
        return modified_I0_sqrt(x)
    term = np.full(x.shape, 1.0 / math.factorial(n - 1), dtype=complex)
    total = term.copy()
    m = 0
    limit = 2 * math.sqrt(float(np.abs(x).max(initial=0.0))) + 40
    while m < limit or np.any(np.abs(term) > 1e-17 * np.abs(total)):
        m += 1
        term = term * x / (m * (m + n - 1))
        total = total + term
    return 2.0 ** (1 - n) * total


def documented_ratio(tag: str, n: int) -> float:
    """Named-route constant divided by series-route constant (stated normalization)."""
    return math.pi ** (2 * n) if tag == "simple" else 1.0


def named_kernel(tag: str, zbar: np.ndarray, u: np.ndarray, alpha=None, c=2) -> np.ndarray:
    """Closed-form kernel with its stated prefactor, at node rows ``zbar`` for one point ``u``."""
    n = zbar.shape[1]
    w = zbar * u[None, :]
    s = w.sum(axis=1)
    if tag == "identity":
        return stated_constant(n) * _bessel_type_kernel(s, n)
    if tag == "laplace":
        return 2 / math.pi ** n * np.exp(-s)
    if tag == "fourier":
        return 2 / math.pi ** n * np.exp(-1j * s)
    if tag == "hankel":
        return 2 / math.pi ** n * bessel_J(n, c * s)
    if tag.startswith("hyper_"):
        if n != 2:
            raise ValueError("hyperbolic transforms live in n = 2")
        fn = {"c": np.cosh, "s": np.sinh}
        return 2 / math.pi ** 2 * fn[tag[6]](w[:, 0]) * fn[tag[7]](w[:, 1])
    if tag == "simple":
        alpha = tuple(alpha)
        k = sum(alpha)
        pref = 2 * np.prod(u ** np.array(alpha)) / (math.pi ** n * math.factorial(k + n - 1) * mfactorial(alpha))
        # K_0(2|z|) dnu = pi^{2n} dmu_0 on the s = 0 grid
        return pref * math.pi ** (2 * n) * np.prod(zbar ** np.array(alpha), axis=1)
    if tag == "theta_exploration":
        if n != 1:
            raise ValueError("theta exploration is defined for n = 1")
        return stated_constant(1) * modified_I0_sqrt(s) ** 2
    raise ValueError(f"no named kernel for tag {tag!r}")


def named_convergence_radius(tag: str, c=2) -> float:
    """Bound on |u| (Euclidean) below which the named kernel is integrable against mu_0.

    mu_0 decays like e^{-2|z|}; exponential-type kernels grow like e^{|z||u|}
    (e^{c|z||u|} for J_n of complex argument).  Bessel-I type kernels grow
    only like e^{2 sqrt(|z||u|)} and have no bound.
    """
    if tag in ("laplace", "fourier") or tag.startswith("hyper_"):
        return 2.0
    if tag == "hankel":
        return 2.0 / c
    return math.inf


def named_transform(tag: str, f: TestFunction, u_points, grid: QuadratureGrid,
                    normalization: str = "paper", alpha=None, c=2) -> OperatorResult:
    """Transform with an explicit closed-form kernel evaluated at every node."""
    if tag not in NAMED_TAGS:
        raise ValueError(f"unknown named transform {tag!r}")
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    n = grid.n
    if f.n != n:
        raise ValueError("test function and grid dimensions differ")
    if grid.s != 0.0:
        raise ValueError("operators integrate against mu_0; build the grid with s = 0")
    if tag == "simple" and (alpha is None or len(alpha) != n):
        raise ValueError(f"simple tag needs alpha with {n} entries")
    u = _as_points(u_points, n)
    radius = named_convergence_radius(tag, c)
    reach = float(np.linalg.norm(u, axis=1).max(initial=0.0))
    if reach >= radius:
        raise series.SeriesDomainError(f"{tag} kernel is not integrable for |u| >= {radius:g} (got {reach:.3g})")
    zbar = np.conj(grid.nodes)
    wf = grid.weights * f(grid.nodes)
    const = 1.0
    if normalization == "calibrated":
        const = calibration(grid).constant / documented_ratio(tag, n)
    vals = np.empty(len(u), dtype=complex)
    for i, point in enumerate(u):
        acc = 0j
        for lo in range(0, grid.size, NODE_CHUNK):
            acc += np.dot(named_kernel(tag, zbar[lo:lo + NODE_CHUNK], point, alpha, c), wf[lo:lo + NODE_CHUNK])
        vals[i] = const * acc
    return OperatorResult(vals, u, const)


def evaluate(op: OperatorDescriptor, f: TestFunction, u_points, grid: QuadratureGrid,
             m_max: int = series.DEFAULT_M_MAX) -> OperatorResult:
    if op.kernel == "named":
        return named_transform(op.tag, f, u_points, grid, op.normalization, op.alpha, op.c)
    return apply_operator(op, f, u_points, grid, m_max)


@dataclass(frozen=True)
class RouteComparison:
    tag: str
    series_values: np.ndarray
    named_values: np.ndarray
    measured_ratio: complex
    documented_ratio: float
    max_abs_difference: float  # after dividing the named route by the documented ratio


def compare_routes(tag: str, f: TestFunction, u_points, grid: QuadratureGrid, alpha=None, c=2,
                   m_max: int = series.DEFAULT_M_MAX) -> RouteComparison:
    """Series route (stated constants) against the named route for one tag."""
    op = OperatorDescriptor(tag, grid.n, "paper", alpha=alpha, c=c)
    ser = apply_operator(op, f, u_points, grid, m_max).values
    nam = named_transform(tag, f, u_points, grid, "paper", op.alpha, c).values
    big = np.argmax(np.abs(ser))
    # a vanishing image (f has no monomial the weight keeps) leaves the ratio undefined
    ratio = nam[big] / ser[big] if abs(ser[big]) > 1e-12 else complex("nan")
    doc = documented_ratio(tag, grid.n)
    return RouteComparison(tag, ser, nam, ratio, doc, float(np.max(np.abs(nam / doc - ser))))


# ---------------------------------------------------------------- composition

@dataclass(frozen=True)
class CompositionResult:
    values: np.ndarray
    direct_values: np.ndarray
    expansion_residual: float
    truncation_residual: float
    intermediate: TestFunction
    max_rel_difference: float  # max |outer - direct| over max |direct|


class CompositionError(RuntimeError):
    pass


def compose(op1: OperatorDescriptor, op2: OperatorDescriptor, f: TestFunction, u_points,
            grid: QuadratureGrid, m_max: int = series.DEFAULT_M_MAX, degree: int | None = None,
            tol: float = 1e-6) -> CompositionResult:
    """op1(op2(f)) via a monomial re-expansion of op2(f), checked against apply(psi1 psi2)."""
    if op1.normalization != "calibrated" or op2.normalization != "calibrated":
        raise ValueError("composition needs calibrated normalization on both operators")
    if op1.n != op2.n:
        raise ValueError("operators act in different dimensions")
    n = op1.n
    degree = max(f.degree, 8) if degree is None else degree
    degree = min(degree, m_max)
    inner = apply_operator(op2, f, np.zeros((1, n)), grid, m_max)
    deg = inner.exponents.sum(axis=1)
    keep = deg <= degree
    total = float(np.sum(np.abs(inner.output_coefficients)))
    trunc = float(np.sum(np.abs(inner.output_coefficients[~keep]))) / total if total > 0 else 0.0
    if trunc > tol:
        raise CompositionError(f"intermediate result has {trunc:.2e} of its weight above degree {degree}")
    g_nodes = _evaluate_nodes(inner.exponents[keep], inner.output_coefficients[keep], grid.nodes)
    coeffs = {}
    for gamma in ix.iter_truncated(n, degree):
        mono = TestFunction.monomial(gamma)
        mono_vals = mono(grid.nodes)
        norm = grid.integrate(np.abs(mono_vals) ** 2).real
        c = grid.integrate(g_nodes * np.conj(mono_vals)) / norm
        if c != 0:
            coeffs[gamma] = c
    g_fun = TestFunction.from_mapping(coeffs, n)
    diff = g_nodes - g_fun(grid.nodes)
    scale = grid.integrate(np.abs(g_nodes) ** 2).real
    resid = math.sqrt(grid.integrate(np.abs(diff) ** 2).real / scale) if scale > 0 else 0.0
    if resid > tol:
        raise CompositionError(f"monomial re-expansion residual {resid:.2e} exceeds {tol:g}; raise m_max or degree")
    outer = apply_operator(op1, g_fun, u_points, grid, m_max).values
    product = series._product_weight(op1.series_weight(), op2.series_weight())
    direct = apply_operator(weight_operator(product, n, "calibrated"), f, u_points, grid, m_max).values
    scale = float(np.max(np.abs(direct)))
    rel = float(np.max(np.abs(outer - direct))) / scale if scale > 0 else float(np.max(np.abs(outer)))
    return CompositionResult(outer, direct, resid, trunc, g_fun, rel)


def _evaluate_nodes(exponents: np.ndarray, coefs: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    out = np.zeros(len(nodes), dtype=complex)
    for gamma, c in zip(exponents, coefs):
        if c == 0:
            continue
        mono = np.ones(len(nodes), dtype=complex)
        for j, g in enumerate(gamma):
            if g:
                mono = mono * nodes[:, j] ** int(g)
        out += c * mono
    return out


# ---------------------------------------------------------------- diagonal action (n = 1)

@dataclass(frozen=True)
class DiagonalEntry:
    k: int
    eigenvalue: complex  # coefficient of u^k in B(z^k)
    weight_value: complex  # psi(k)
    kappa: complex | None  # eigenvalue / psi(k)
    off_diagonal_residual: float


def diagonal_action(op: OperatorDescriptor, k_max: int, grid: QuadratureGrid,
                    u_points=(0.3, 0.7, -0.5 + 0.4j, 0.9j), m_max: int = series.DEFAULT_M_MAX
                    ) -> list[DiagonalEntry]:
    """Measure B(z^k) = lambda_k u^k for k <= k_max and the departure from it."""
    if op.n != 1:
        raise ValueError("diagonal action is measured at n = 1")
    weight = op.series_weight()
    u = np.asarray(u_points, dtype=complex).reshape(-1, 1)
    rows = []
    for k in range(k_max + 1):
        res = apply_operator(op, TestFunction.monomial((k,)), u, grid, m_max)
        lam = res.coefficient((k,))
        resid = float(np.max(np.abs(res.values - lam * u[:, 0] ** k)))
        psi_k = complex(weight((k,)))
        rows.append(DiagonalEntry(k, lam, psi_k, lam / psi_k if psi_k != 0 else None, resid))
    return rows


def kappa_spread(rows: Sequence[DiagonalEntry]) -> tuple[complex, float]:
    """Common kappa and the largest relative deviation from it."""
    ks = [r.kappa for r in rows if r.kappa is not None]
    if not ks:
        return complex("nan"), 0.0
    ref = ks[0]
    return ref, max(abs(k / ref - 1) for k in ks)


# ---------------------------------------------------------------- reports

def hankel_comparison(f: TestFunction, u_points, grid: QuadratureGrid, c=2,
                      m_max: int = series.DEFAULT_M_MAX) -> list[dict]:
    """Series kernel of c^|gamma| next to the J_n kernel proposed for it (stated constants)."""
    cmp = compare_routes("hankel", f, u_points, grid, c=c, m_max=m_max)
    u = _as_points(u_points, grid.n)
    rows = []
    for point, s_val, j_val in zip(u, cmp.series_values, cmp.named_values):
        rows.append({
            "u": [complex(x) for x in point],
            "series_bessel_I_type": complex(s_val),
            "hankel_J_candidate": complex(j_val),
            "abs_difference": float(abs(s_val - j_val)),
        })
    return rows


def theta_eigenvalues(grid: QuadratureGrid, k_max: int = 6, m_max: int = series.DEFAULT_M_MAX) -> list[dict]:
    """lambda_k of the kernel I_0(2 sqrt w)^2 next to C(2k, k)/pi^2 and the identity eigenvalue."""
    op = OperatorDescriptor("theta_exploration", 1, "paper")
    ident = OperatorDescriptor("identity", 1, "paper")
    theta_rows = diagonal_action(op, k_max, grid, m_max=m_max)
    id_rows = diagonal_action(ident, k_max, grid, m_max=m_max)
    out = []
    for t, i in zip(theta_rows, id_rows):
        predicted = math.comb(2 * t.k, t.k) / math.pi ** 2
        out.append({
            "k": t.k,
            "lambda_theta": complex(t.eigenvalue),
            "central_binomial_over_pi2": predicted,
            "lambda_identity": complex(i.eigenvalue),
            "ratio_to_identity": complex(t.eigenvalue / i.eigenvalue),
            "off_diagonal_residual": t.off_diagonal_residual,
        })
    return out


def exact_fraction(x: float, max_den: int = 10_000) -> Fraction:
    return Fraction(x).limit_denominator(max_den)
