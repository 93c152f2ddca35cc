"""Kernel series I_M^psi, symbols a_psi, star-convolution and closed forms.

    I_M^psi(zbar, u) = 2^-M sum_m 1/(m! (m+M)!) sum_{|gamma|=m} m!/gamma! psi(gamma) w^gamma

with w_j = zbar_j * u_j.  Summation is ascending in m, lexicographic within a
band, and uses ``math.fsum`` on real and imaginary parts so results do not
depend on evaluation order elsewhere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import index_sets as ix
from .index_sets import mfactorial
from .ring import GeneratorSequence, ModuleElement
from .scalars import exact_div, is_exact

DEFAULT_M_MAX = 60
MAX_BAND_ORDER = 60
DENOMINATOR_EPS = 1e-12
MODES = ("generic", "radial", "parity", "closed_form")


class SeriesDomainError(ValueError):
    """Evaluation point outside the domain where the series is defined."""


@dataclass(frozen=True)
class SymbolValue:
    value: complex
    tail_bound: float
    denominator_magnitude: float = math.nan


@dataclass(frozen=True)
class KernelQuery:
    weight: object
    zbar: tuple
    u: tuple
    M: float | None = None
    m_max: int = DEFAULT_M_MAX
    mode: str = "generic"

    def __post_init__(self):
        if self.m_max < 0:
            raise ValueError("m_max must be >= 0")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.zbar) != len(self.u):
            raise ValueError("zbar and u must have the same dimension")


class PointwiseProduct:
    """gamma -> theta(gamma) * psi(gamma), multiplied as scalars."""

    def __init__(self, theta, psi):
        dims = {d for d in (getattr(theta, "n", None), getattr(psi, "n", None)) if d is not None}
        if len(dims) > 1:
            raise ValueError("dimension mismatch")
        self.theta, self.psi, self.n = theta, psi, (dims.pop() if dims else None)
        self.factorial_order = factorial_order(theta) + factorial_order(psi)
        self.symbol_domain = domain_for_order(self.factorial_order)

    def __call__(self, gamma):
        a = self.theta(gamma)
        if a == 0:
            return 0
        return a * self.psi(gamma)

    def radial_components(self):
        return None


def factorial_order(weight) -> int:
    """k such that |weight(gamma)| grows like |gamma|!^k (ring elements have k = 0)."""
    if isinstance(weight, ModuleElement):
        return weight.generator.factorial_order
    return getattr(weight, "factorial_order", 0)


def domain_for_order(k: int) -> str:
    """Entire for k <= 1, the unit disc for k = 2, divergent beyond."""
    return "entire" if k <= 1 else ("disc" if k == 2 else "divergent")


def _fsum_complex(values) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def _check_band_feasible(m: int, n: int):
    if n >= 2 and m > MAX_BAND_ORDER:
        raise ValueError(
            f"band m={m} with n={n} exceeds the enumeration guard (m <= {MAX_BAND_ORDER}); "
            "use radial or parity mode"
        )


def multinomial_band(weight, m: int, zbar: Sequence, u: Sequence):
    """sum_{|gamma|=m} m!/gamma! psi(gamma) zbar^gamma u^gamma, exact for exact inputs."""
    if m < 0:
        raise ValueError("m must be >= 0")
    n = len(zbar)
    _check_band_feasible(m, n)
    w = [a * b for a, b in zip(zbar, u)]
    fm = math.factorial(m)
    total = 0
    for gamma in ix.compositions(m, n):
        val = weight(gamma)
        if val == 0:
            continue
        mono = 1
        for wj, gj in zip(w, gamma):
            mono = mono * wj ** gj
        total = total + (fm // mfactorial(gamma)) * val * mono
    return total


_SIGNS = {"e": 1, "o": -1}


def parity_band_sum(m: int, a, b, parities: str):
    """sum over gamma1+gamma2=m with prescribed parities of m!/(g1! g2!) a^g1 b^g2.

    Uses 1/4 sum_{e1,e2 = +-1} s1(e1) s2(e2) (e1 a + e2 b)^m where s(-1) is
    +1 for an even slot and -1 for an odd slot.
    """
    if len(parities) != 2 or set(parities) - {"e", "o"}:
        raise ValueError(f"parities must be one of ee, oo, eo, oe; got {parities!r}")
    s1, s2 = _SIGNS[parities[0]], _SIGNS[parities[1]]
    total = (a + b) ** m + s2 * (a - b) ** m + s1 * (-a + b) ** m + s1 * s2 * (-a - b) ** m
    return exact_div(total, 4) if is_exact(total) else total / 4


def parity_band_enumerate(m: int, a, b, parities: str):
    """Direct enumeration counterpart of :func:`parity_band_sum`."""
    want = [0 if p == "e" else 1 for p in parities]
    total = 0
    for g1 in range(m + 1):
        g2 = m - g1
        if g1 % 2 == want[0] and g2 % 2 == want[1]:
            total = total + math.comb(m, g1) * a ** g1 * b ** g2
    return total


# ---------------------------------------------------------------- coefficient tables

@dataclass(frozen=True)
class KernelCoefficients:
    """I_M^psi = sum_gamma coef_gamma w^gamma with coef = 2^-M psi(gamma)/(gamma! (|gamma|+M)!)."""

    n: int
    M: float
    m_max: int
    exponents: np.ndarray  # (K, n) int
    coefs: np.ndarray  # (K,) complex
    band_starts: np.ndarray  # start offset of each band m in the arrays

    def evaluate(self, w: Sequence[complex]) -> tuple[list[complex], complex]:
        """Band contributions for m = 0..m_max and their compensated total."""
        w = np.asarray(w, dtype=complex)
        mono = np.ones(len(self.coefs), dtype=complex)
        for j in range(self.n):
            mono = mono * w[j] ** self.exponents[:, j]
        terms = self.coefs * mono
        bands = []
        for m in range(self.m_max + 1):
            lo, hi = self.band_starts[m], self.band_starts[m + 1]
            seg = terms[lo:hi]
            bands.append(complex(math.fsum(seg.real), math.fsum(seg.imag)))
        return bands, _fsum_complex(bands)


def _factorial_shift(m: int, M: float):
    """(m+M)! as an exact int when M is integral, else Gamma(m+M+1) as float."""
    if float(M).is_integer():
        return math.factorial(m + int(M))
    return None


def _coef(val, gamma_fact: int, m: int, M: float) -> complex:
    fs = _factorial_shift(m, M)
    if fs is not None:
        q = exact_div(val, gamma_fact * fs) if is_exact(val) else complex(val) / (gamma_fact * float(fs))
        out = complex(q) * 2.0 ** (-M)
    else:
        out = complex(val) / gamma_fact * math.exp(-math.lgamma(m + M + 1) - M * math.log(2.0))
    return out


@lru_cache(maxsize=256)
def kernel_coefficients(weight, n: int, M: float, m_max: int) -> KernelCoefficients:
    for m in range(m_max + 1):
        _check_band_feasible(m, n)
    exps, coefs, starts = [], [], [0]
    for m in range(m_max + 1):
        for gamma in ix.compositions(m, n):
            val = weight(gamma)
            exps.append(gamma)
            coefs.append(0j if val == 0 else _coef(val, mfactorial(gamma), m, M))
        starts.append(len(exps))
    return KernelCoefficients(
        n=n, M=M, m_max=m_max,
        exponents=np.array(exps, dtype=np.int64).reshape(-1, n),
        coefs=np.array(coefs, dtype=complex),
        band_starts=np.array(starts),
    )


# ---------------------------------------------------------------- kernel series

def _weight_n(weight, n_hint: int) -> int:
    n = getattr(weight, "n", None)
    if n is not None and n != n_hint:
        raise ValueError(f"weight has n={n}, points have n={n_hint}")
    return n_hint


def check_domain(weight, w: Sequence[complex]):
    domain = getattr(weight, "symbol_domain", "entire")
    if domain == "divergent":
        raise SeriesDomainError("divergent generator: the kernel series has zero radius of convergence")
    if domain == "disc" and abs(sum(w)) >= 1:
        raise SeriesDomainError(f"disc-domain generator evaluated outside |zbar.u| < 1 (|zbar.u| = {abs(sum(w)):.3g})")


def _radial_bands(comps, w, M, m_max):
    s = sum(w)
    bands = []
    for m in range(m_max + 1):
        f = sum((fn(m) for _, fn in comps), 0)
        bands.append(_coef(f, math.factorial(m), m, M) * s ** m if f != 0 else 0j)
    return bands


def _cells(A) -> list[str] | None:
    """Parity cells (as 'ee', 'eo', ...) making up A, or None if A is not a parity union."""
    if isinstance(A, ix.Cofinite) and not A.excluded:
        return ["full"]
    if isinstance(A, ix.Parity):
        choices = [("e", "o") if c == ix.ANY else (c[0],) for c in A.constraints]
        return ["".join(p) for p in _product(choices)]
    if isinstance(A, ix.Union) and all(isinstance(c, ix.Parity) for c in A.children):
        out = []
        for c in A.children:
            out.extend(_cells(c))
        return sorted(set(out))
    return None


def _product(choices):
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for tail in _product(choices[1:]):
            yield (head,) + tail


def _parity_bands(comps, w, M, m_max):
    a, b = w
    plan = []
    for A, fn in comps:
        cells = _cells(A)
        if cells is None:
            raise ValueError("parity mode needs every term set to be a union of parity cells")
        plan.append((cells, fn))
    bands = []
    for m in range(m_max + 1):
        scale = _coef(1, math.factorial(m), m, M)
        acc = []
        for cells, fn in plan:
            f = fn(m)
            if f == 0:
                continue
            if cells == ["full"]:
                acc.append(complex(f) * (a + b) ** m)
            else:
                for cell in cells:
                    acc.append(complex(f) * parity_band_sum(m, a, b, cell))
        bands.append(scale * _fsum_complex(acc) if acc else 0j)
    return bands


def kernel_series(q: KernelQuery) -> SymbolValue:
    """Truncated I_M^psi(zbar, u); ``tail_bound`` is the magnitude of the last band."""
    n = _weight_n(q.weight, len(q.zbar))
    M = float(n - 1) if q.M is None else float(q.M)
    if M < 0:
        raise ValueError("M must be >= 0")
    w = [complex(a) * complex(b) for a, b in zip(q.zbar, q.u)]
    check_domain(q.weight, w)
    if q.mode == "closed_form":
        tag, params = catalog_tag(q.weight)
        if M != n - 1:
            raise ValueError("closed forms are stated for M = n - 1")
        return SymbolValue(closed_form(tag, q.zbar, q.u, **params), 0.0)
    if q.mode == "generic":
        bands, total = kernel_coefficients(q.weight, n, M, q.m_max).evaluate(w)
        return SymbolValue(total, abs(bands[-1]))
    comps = q.weight.radial_components() if hasattr(q.weight, "radial_components") else None
    if comps is None:
        raise ValueError(f"{q.mode} mode needs a weight that is radial on each term")
    if q.mode == "radial":
        if not all(_cells(A) == ["full"] for A, _ in comps):
            raise ValueError("radial mode needs every term set to be all of N^n")
        bands = _radial_bands(comps, w, M, q.m_max)
    else:
        if n != 2:
            raise ValueError("parity mode is defined for n = 2")
        bands = _parity_bands(comps, w, M, q.m_max)
    return SymbolValue(_fsum_complex(bands), abs(bands[-1]))


def kernel_value(weight, zbar, u, M=None, m_max=DEFAULT_M_MAX, mode="generic") -> complex:
    return kernel_series(KernelQuery(weight, tuple(zbar), tuple(u), M, m_max, mode)).value


def _unit_weight(n: int):
    from .ring import unit
    return _UNIT_CACHE.setdefault(n, unit(n))


_UNIT_CACHE: dict = {}


def symbol(weight, zbar, u, m_max: int = DEFAULT_M_MAX, mode: str = "generic") -> SymbolValue:
    """a_psi = I_{n-1}^psi / I_{n-1}^1 near the diagonal."""
    n = len(zbar)
    den = kernel_series(KernelQuery(_unit_weight(n), tuple(zbar), tuple(u), None, m_max, "generic"))
    if abs(den.value) <= DENOMINATOR_EPS:
        raise SeriesDomainError(
            f"outside symbol neighborhood: |I^1_(n-1)| = {abs(den.value):.3g} <= {DENOMINATOR_EPS}"
        )
    num = kernel_series(KernelQuery(weight, tuple(zbar), tuple(u), None, m_max, mode))
    ratio = num.value / den.value
    tail = num.tail_bound / abs(den.value) + abs(ratio) * den.tail_bound / abs(den.value)
    return SymbolValue(ratio, tail, abs(den.value))


@lru_cache(maxsize=256)
def _product_weight(theta, psi) -> PointwiseProduct:
    return PointwiseProduct(theta, psi)


def convolve(theta, psi, zbar, u, m_max: int = DEFAULT_M_MAX) -> SymbolValue:
    """a_theta * a_psi = I^{theta psi}/I^1 with theta*psi formed as scalars in each band."""
    return symbol(_product_weight(theta, psi), zbar, u, m_max)


# ---------------------------------------------------------------- closed forms

CLOSED_FORM_TAGS = ("g1", "g2", "g3", "g", "g_ee", "g_oo", "g_eo", "g_oe", "g1_e", "g1_o")


def _g3_series(c, s: complex, n: int) -> complex:
    total = []
    term = 1.0 / math.factorial(n - 1)
    x = c * s
    m = 0
    acc = term
    total.append(complex(term))
    while True:
        m += 1
        term = term * x / (m * (m + n - 1))
        total.append(term)
        acc = acc + term
        if m > 2 * abs(x) + 10 and abs(term) <= 1e-17 * max(abs(acc), 1e-300):
            break
    return 2.0 ** (1 - n) * _fsum_complex(total)


def closed_form(tag: str, zbar, u, c=None) -> complex:
    """Closed form of I_{n-1}^psi for the catalog weights.

    g1: 2^{1-n} e^{-zbar.u};  g2: 2^{1-n} e^{-i zbar.u};  g (n=2): e^{w1+w2}/2;
    g_ee/g_oo/g_eo/g_oe: the cosh/sinh products over 2;  g1_e/g1_o (n=1): cosh(w),
    sinh(-w);  g3: the series sum_m c^m s^m/(m!(m+n-1)!) summed to machine precision.
    """
    n = len(zbar)
    w = [complex(a) * complex(b) for a, b in zip(zbar, u)]
    s = sum(w)
    if tag == "g1":
        return 2.0 ** (1 - n) * cmath.exp(-s)
    if tag == "g2":
        return 2.0 ** (1 - n) * cmath.exp(-1j * s)
    if tag == "g3":
        return _g3_series(2 if c is None else c, s, n)
    if tag in ("g1_e", "g1_o"):
        if n != 1:
            raise ValueError(f"{tag} is defined for n = 1")
        return cmath.cosh(s) if tag == "g1_e" else cmath.sinh(-s)
    if tag in ("g", "g_ee", "g_oo", "g_eo", "g_oe"):
        if n != 2:
            raise ValueError(f"{tag} is defined for n = 2")
        if tag == "g":
            return 0.5 * cmath.exp(w[0] + w[1])
        f = {"e": cmath.cosh, "o": cmath.sinh}
        return 0.5 * f[tag[2]](w[0]) * f[tag[3]](w[1])
    raise ValueError(f"unknown closed-form tag {tag!r}")


def hankel_candidate(zbar, u, c=2) -> complex:
    """J_n(c zbar.u), the oscillatory kernel proposed for the g3 operator."""
    from .special import bessel_J
    n = len(zbar)
    s = sum(complex(a) * complex(b) for a, b in zip(zbar, u))
    return complex(bessel_J(n, complex(c * s)))


def catalog_tag(weight) -> tuple[str, dict]:
    """Map a catalog module element (generator times chi_A * 1) to its closed-form tag."""
    if not isinstance(weight, ModuleElement):
        raise ValueError("closed_form mode needs a catalog module element")
    g: GeneratorSequence = weight.generator
    terms = weight.factor.terms
    if len(terms) != 1 or terms[0][1].descriptor != {"kind": "constant", "value": 1}:
        raise ValueError("closed_form mode needs factor chi_A * 1")
    cells = _cells(terms[0][0])
    n = weight.n
    if cells == ["full"]:
        if g.name in ("g1", "g2"):
            return g.name, {}
        if g.name == "g3":
            return "g3", {"c": g.params["c"]}
        if g.name == "g" and n == 2:
            return "g", {}
    elif g.name == "g" and n == 2 and cells is not None and len(cells) == 1:
        return "g_" + cells[0], {}
    elif g.name == "g1" and n == 1 and cells in (["e"], ["o"]):
        return "g1_" + cells[0], {}
    raise ValueError(f"no closed form for generator {g.name} with this factor")


@lru_cache(maxsize=64)
def catalog_weight(tag: str, n: int | None = None, c=2):
    """Inverse of :func:`catalog_tag`: build the weight behind a closed-form tag."""
    from .ring import element, g1, g2, g3, g_shift, module_element, unit

    if tag in ("g1", "g2"):
        gen = g1() if tag == "g1" else g2()
        return module_element(gen, unit(n or 1))
    if tag == "g3":
        return module_element(g3(c), unit(n or 1))
    if tag == "g":
        return module_element(g_shift(), unit(2))
    if tag.startswith("g_"):
        return module_element(g_shift(), element(ix.parity_class(tag[2:]), 1))
    if tag in ("g1_e", "g1_o"):
        return module_element(g1(), element(ix.parity_class(tag[3]), 1))
    raise ValueError(f"unknown tag {tag!r}")
