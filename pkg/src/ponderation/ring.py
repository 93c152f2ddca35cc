"""The ring R of ponderation functions, gR modules and algebraic certificates.

Elements are finite sums ``sum_i chi_{A_i} * phi_i`` evaluated pointwise on
N^n.  Ponderation functions carry their growth data (degree, bounds,
threshold) next to an evaluator, and a JSON descriptor when they are built
from the stock constructors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import index_sets as ix
from .index_sets import IndexSet, MultiIndex
from .scalars import GaussianRational, dump_scalar, exact_div, is_exact, parse_scalar

DEFAULT_M_MAX = 24


# ---------------------------------------------------------------- ponderations

@dataclass(frozen=True, eq=False)
class PonderationFunction:
    evaluator: Callable[[MultiIndex], object]
    degree: float
    bounds: tuple[float, float]
    threshold: int = 0
    descriptor: dict = field(default_factory=lambda: {"kind": "user", "name": "anonymous"})

    def __post_init__(self):
        c, C = self.bounds
        if not (0 < c <= C):
            raise ValueError(f"need 0 < c <= C, got {self.bounds}")
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")

    def __call__(self, gamma):
        return self.evaluator(tuple(gamma))

    @property
    def radial(self) -> bool:
        return _descriptor_radial(self.descriptor)

    def radial_value(self, m: int):
        """phi at any gamma with |gamma| = m (only for radial descriptors)."""
        if not self.radial:
            raise ValueError("ponderation is not radial")
        return self.evaluator((m,))

    def to_json(self) -> dict:
        if self.descriptor.get("kind") == "user":
            raise ValueError("user-defined ponderation has no JSON form")
        return dict(self.descriptor)


def _descriptor_radial(desc: dict) -> bool:
    kind = desc.get("kind")
    if kind in ("constant", "power"):
        return True
    if kind == "product":
        return all(_descriptor_radial(d) for d in desc["factors"])
    return bool(desc.get("radial", False))


def _int_power(base: int, d):
    if isinstance(d, int) or (isinstance(d, float) and d.is_integer() and d >= 0):
        return base ** int(d)
    return float(base) ** d


def constant(value) -> PonderationFunction:
    """Constant ponderation (degree 0)."""
    if value == 0:
        raise ValueError("the zero function is not a ponderation")
    mag = abs(complex(value))
    return PonderationFunction(
        evaluator=lambda gamma, v=value: v,
        degree=0.0,
        bounds=(mag, mag),
        threshold=0,
        descriptor={"kind": "constant", "value": dump_scalar(value)},
    )


def power(d, coeff=1, threshold: int = 1) -> PonderationFunction:
    """``coeff * |gamma|^d``; exact when d is a non-negative integer and coeff exact."""
    if coeff == 0:
        raise ValueError("coeff must be non-zero")
    mag = abs(complex(coeff))

    def ev(gamma, d=d, coeff=coeff):
        return coeff * _int_power(sum(gamma), d)

    return PonderationFunction(
        evaluator=ev,
        degree=float(d),
        bounds=(mag, mag),
        threshold=threshold,
        descriptor={"kind": "power", "degree": d, "coeff": dump_scalar(coeff), "threshold": threshold},
    )


def user_ponderation(fn, degree, bounds, threshold=0, name="user", radial=False) -> PonderationFunction:
    return PonderationFunction(fn, float(degree), tuple(bounds), threshold,
                               {"kind": "user", "name": name, "radial": radial})


def indicator_as_ponderation(A: IndexSet) -> PonderationFunction:
    """chi_A posed as a degree-0 ponderation with c = C = 1 (only valid if A is cofinite)."""
    return user_ponderation(lambda g, A=A: 1 if A._member(g) else 0, 0, (1, 1), 0,
                            name="indicator")


def ponderation_product(phi: PonderationFunction, psi: PonderationFunction) -> PonderationFunction:
    if phi.descriptor.get("kind") == "constant" and psi.descriptor.get("kind") == "constant":
        return constant(phi(()) * psi(()))
    desc = {"kind": "product", "factors": [phi.descriptor, psi.descriptor]}
    if desc["factors"][0].get("kind") == "user" or desc["factors"][1].get("kind") == "user":
        desc = {"kind": "user", "name": "product", "radial": phi.radial and psi.radial}
    return PonderationFunction(
        evaluator=lambda g, a=phi, b=psi: a.evaluator(g) * b.evaluator(g),
        degree=phi.degree + psi.degree,
        bounds=(phi.bounds[0] * psi.bounds[0], phi.bounds[1] * psi.bounds[1]),
        threshold=max(phi.threshold, psi.threshold),
        descriptor=desc,
    )


def ponderation_from_json(desc: dict) -> PonderationFunction:
    kind = desc["kind"]
    if kind == "constant":
        return constant(parse_scalar(desc["value"]))
    if kind == "power":
        return power(desc["degree"], parse_scalar(desc.get("coeff", 1)), desc.get("threshold", 1))
    if kind == "product":
        factors = [ponderation_from_json(f) for f in desc["factors"]]
        out = factors[0]
        for f in factors[1:]:
            out = ponderation_product(out, f)
        return out
    raise ValueError(f"cannot decode ponderation of kind {kind!r}")


@dataclass(frozen=True)
class CoercivityReport:
    passed: bool
    checked: int
    first_violation: MultiIndex | None = None
    detail: str = ""


def _coercivity_samples(n: int, t: int):
    yield (t,) * n
    if n > 1:
        yield (t,) * (n - 1) + (t + 1,)
        yield (t,) + (2 * t + 3,) * (n - 1)


def check_coercivity(phi: PonderationFunction, sample_budget: int, n: int = 1) -> CoercivityReport:
    """Sample c|gamma|^d <= |phi(gamma)| <= C|gamma|^d for min_j gamma_j in [T, T+budget]."""
    if sample_budget < 1:
        raise ValueError("sample_budget must be >= 1")
    c, C = phi.bounds
    checked = 0
    for t in range(phi.threshold, phi.threshold + sample_budget + 1):
        for gamma in _coercivity_samples(n, t):
            size = sum(gamma)
            scale = float(size) ** phi.degree if size else (1.0 if phi.degree == 0 else 0.0)
            val = abs(complex(phi(gamma)))
            slack = 1e-12 * max(C * scale, 1e-300)
            checked += 1
            if not (c * scale - slack <= val <= C * scale + slack):
                return CoercivityReport(False, checked, gamma,
                                        f"|phi|={val:g} outside [{c * scale:g}, {C * scale:g}]")
    return CoercivityReport(True, checked)


# ---------------------------------------------------------------- ring elements

@dataclass(frozen=True, eq=False)
class RingElement:
    n: int
    terms: tuple[tuple[IndexSet, PonderationFunction], ...] = ()

    def __post_init__(self):
        for A, _ in self.terms:
            if A.n != self.n:
                raise ValueError(f"term set has n={A.n}, element has n={self.n}")

    def __call__(self, gamma):
        gamma = ix.multi_index(gamma)
        if len(gamma) != self.n:
            raise ValueError(f"dimension mismatch: element n={self.n}, index n={len(gamma)}")
        total = 0
        for A, phi in self.terms:
            if A._member(gamma):
                total = total + phi.evaluator(gamma)
        return total

    eval = __call__

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return mul(self, other)
        if isinstance(other, ModuleElement):
            return module_action(self, other)
        return NotImplemented

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return add(self, -other)

    def radial_components(self):
        """[(A_i, m -> phi_i(m))] when every ponderation is radial, else None."""
        if not all(phi.radial for _, phi in self.terms):
            return None
        return [(A, phi.radial_value) for A, phi in self.terms]

    symbol_domain = "entire"

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"set": ix.to_json(A), "ponderation": phi.to_json()}
                                       for A, phi in self.terms]}


def _check_same_n(*elts) -> int:
    dims = {e.n for e in elts}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def zero(n: int) -> RingElement:
    return RingElement(n, ())


def unit(n: int) -> RingElement:
    return RingElement(n, ((ix.full(n), constant(1)),))


def element(A: IndexSet, phi: PonderationFunction | object = 1) -> RingElement:
    """chi_A * phi; a bare number is wrapped as a constant ponderation."""
    if not isinstance(phi, PonderationFunction):
        phi = constant(phi)
    return RingElement(A.n, ((A, phi),))


def indicator(A: IndexSet) -> RingElement:
    return element(A, 1)


def add(rho: RingElement, sigma: RingElement) -> RingElement:
    n = _check_same_n(rho, sigma)
    return RingElement(n, rho.terms + sigma.terms)


def scale(rho: RingElement, c) -> RingElement:
    if c == 0:
        return zero(rho.n)
    k = constant(c)
    return RingElement(rho.n, tuple((A, ponderation_product(k, phi)) for A, phi in rho.terms))


def mul(rho: RingElement, sigma: RingElement) -> RingElement:
    """(chi_A phi)(chi_B psi) = chi_{A cap B} (phi psi), term by term."""
    n = _check_same_n(rho, sigma)
    terms = []
    for A, phi in rho.terms:
        for B, psi in sigma.terms:
            AB = ix.intersect(A, B)
            if isinstance(AB, ix.Finite) and not AB.points:
                continue
            terms.append((AB, ponderation_product(phi, psi)))
    return RingElement(n, tuple(terms))


def equal(rho, sigma, m_max: int = DEFAULT_M_MAX) -> bool:
    """Pointwise equality on |gamma| <= m_max."""
    n = _check_same_n(rho, sigma)
    return all(rho(g) == sigma(g) for g in ix.iter_truncated(n, m_max))


def support(rho, m_max: int = DEFAULT_M_MAX) -> list[MultiIndex]:
    return [g for g in ix.iter_truncated(rho.n, m_max) if rho(g) != 0]


def ring_from_json(obj: dict) -> RingElement:
    n = obj["n"]
    terms = tuple((ix.from_json(t["set"]) if not isinstance(t["set"], str) else ix.named_set(t["set"], n),
                   ponderation_from_json(t["ponderation"]))
                  for t in obj["terms"])
    return RingElement(n, terms)


# ---------------------------------------------------------------- generators and modules

@dataclass(frozen=True, eq=False)
class GeneratorSequence:
    """A non-vanishing sequence g outside R; catalog entries are radial in |gamma|."""

    name: str
    radial_fn: Callable[[int, int], object]  # (|gamma|, n) -> value
    symbol_domain: str  # entire | disc | divergent
    params: dict = field(default_factory=dict)
    in_ring: bool = False
    factorial_order: int = 0  # k when |g(gamma)| grows like |gamma|!^k

    def __call__(self, gamma):
        gamma = tuple(gamma)
        return self.radial_fn(sum(gamma), len(gamma))

    def to_json(self) -> dict:
        return {"name": self.name, **{k: dump_scalar(v) if not isinstance(v, int) else v
                                      for k, v in self.params.items()}}


def g1() -> GeneratorSequence:
    """(|gamma|+n-1)! (-1)^|gamma|."""
    return GeneratorSequence("g1", lambda m, n: math.factorial(m + n - 1) * (-1) ** m, "entire",
                             factorial_order=1)


def g2() -> GeneratorSequence:
    """(|gamma|+n-1)! (-i)^|gamma|."""
    minus_i = GaussianRational(0, -1)
    return GeneratorSequence("g2", lambda m, n: math.factorial(m + n - 1) * minus_i ** m, "entire",
                             factorial_order=1)


def g3(c=2) -> GeneratorSequence:
    """c^|gamma|, c > 0."""
    if not c > 0:
        raise ValueError("g3 needs c > 0")
    return GeneratorSequence("g3", lambda m, n, c=c: c ** m, "entire", {"c": c})


def g_shift() -> GeneratorSequence:
    """(|gamma|+1)!, the generator of the hyperbolic family in n = 2."""
    return GeneratorSequence("g", lambda m, n: math.factorial(m + 1), "entire", factorial_order=1)


def factorial_power(k: int) -> GeneratorSequence:
    """|gamma|!^k: entire symbol for k = 1, disc for k = 2, divergent for k >= 3."""
    if k < 1:
        raise ValueError("k must be >= 1")
    domain = "entire" if k == 1 else ("disc" if k == 2 else "divergent")
    return GeneratorSequence("factorial_power", lambda m, n, k=k: math.factorial(m) ** k, domain,
                             {"k": k}, factorial_order=k)


def generator_from_json(obj) -> GeneratorSequence:
    if isinstance(obj, str):
        obj = {"name": obj}
    name = obj["name"]
    if name == "g1":
        return g1()
    if name == "g2":
        return g2()
    if name == "g3":
        return g3(parse_scalar(obj.get("c", 2)))
    if name == "g":
        return g_shift()
    if name == "factorial_power":
        return factorial_power(int(obj.get("k", 1)))
    raise ValueError(f"unknown generator {name!r}")


@dataclass(frozen=True, eq=False)
class ModuleElement:
    """The function gamma -> g(gamma) * factor(gamma), an element of gR."""

    generator: GeneratorSequence
    factor: RingElement

    @property
    def n(self) -> int:
        return self.factor.n

    @property
    def symbol_domain(self) -> str:
        return self.generator.symbol_domain

    def __call__(self, gamma):
        gamma = ix.multi_index(gamma)
        f = self.factor(gamma)
        if f == 0:
            return 0
        return self.generator(gamma) * f

    eval = __call__

    def __add__(self, other):
        if not isinstance(other, ModuleElement) or other.generator.to_json() != self.generator.to_json():
            raise ValueError("can only add elements of the same module gR")
        return ModuleElement(self.generator, add(self.factor, other.factor))

    def __rmul__(self, psi):
        if isinstance(psi, RingElement):
            return module_action(psi, self)
        return NotImplemented

    def radial_components(self):
        comps = self.factor.radial_components()
        if comps is None:
            return None
        n = self.n
        gfn = self.generator.radial_fn
        return [(A, (lambda m, f=f: gfn(m, n) * f(m))) for A, f in comps]

    def to_json(self) -> dict:
        return {"generator": self.generator.to_json(), "factor": self.factor.to_json()}


def module_element(g: GeneratorSequence, factor: RingElement | None = None, n: int = 1) -> ModuleElement:
    return ModuleElement(g, factor if factor is not None else unit(n))


def module_action(psi: RingElement, m: ModuleElement) -> ModuleElement:
    """(psi, g phi) -> g (psi phi)."""
    _check_same_n(psi, m.factor)
    return ModuleElement(m.generator, mul(psi, m.factor))


def module_from_json(obj: dict) -> ModuleElement:
    return ModuleElement(generator_from_json(obj["generator"]), ring_from_json(obj["factor"]))


def weight_from_json(obj: dict):
    return module_from_json(obj) if "generator" in obj else ring_from_json(obj)


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class Certificate:
    passed: bool
    checked: int
    witness: MultiIndex | None = None
    reason: str = ""
    data: dict = field(default_factory=dict)


def direct_sum_check(rho, parts: Sequence[IndexSet], m_max: int = DEFAULT_M_MAX) -> Certificate:
    """Certify rho = sum_i chi_{P_i} rho with P_i a partition, and vanishing cross products."""
    n = rho.n
    if any(P.n != n for P in parts):
        raise ValueError("dimension mismatch between element and parts")
    pieces = [mul(indicator(P), rho) if isinstance(rho, RingElement)
              else module_action(indicator(P), rho) for P in parts]
    checked = 0
    for gamma in ix.iter_truncated(n, m_max):
        checked += 1
        hits = [i for i, P in enumerate(parts) if P._member(gamma)]
        if len(hits) > 1:
            return Certificate(False, checked, gamma, f"parts {hits} overlap")
        if not hits:
            return Certificate(False, checked, gamma, "parts do not cover")
        value = rho(gamma)
        if sum((p(gamma) for p in pieces), 0) != value:
            return Certificate(False, checked, gamma, "decomposition does not reproduce rho")
        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                if pieces[i](gamma) * pieces[j](gamma) != 0:
                    return Certificate(False, checked, gamma, f"cross product {i},{j} non-zero")
    return Certificate(True, checked)


def ideal_classify(A: IndexSet) -> str:
    """minimal iff |A| = 1, maximal iff |A^c| = 1, neither otherwise."""
    cls = ix.cardinality_class(A)
    if cls.kind == "finite" and cls.k == 1:
        return "minimal"
    if cls.kind == "cofinite" and cls.k == 1:
        return "maximal"
    return "neither"


def simple_module_generation_check(alpha, m: RingElement, targets: Sequence[RingElement],
                                   m_max: int = DEFAULT_M_MAX) -> Certificate:
    """For each target t in chi_alpha R exhibit rho = t(alpha)/m(alpha) with m*rho = t."""
    alpha = ix.multi_index(alpha)
    m_alpha = m(alpha)
    if m_alpha == 0:
        raise ValueError("zero element cannot generate")
    factors = []
    checked = 0
    for idx, t in enumerate(targets):
        r = exact_div(t(alpha), m_alpha)
        factors.append(r)
        prod = mul(m, element(ix.full(m.n), r)) if r != 0 else zero(m.n)
        for gamma in ix.iter_truncated(m.n, m_max):
            checked += 1
            if not _same(prod(gamma), t(gamma)):
                return Certificate(False, checked, gamma, f"target {idx} not reached", {"factors": factors})
    return Certificate(True, checked, None, "", {"factors": factors})


def _same(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(complex(a) - complex(b)) <= 1e-12 * max(1.0, abs(complex(b)))


def lex_points(n: int, count: int) -> list[MultiIndex]:
    """First ``count`` points of N^n in lexicographic order (last coordinate varies)."""
    return [(0,) * (n - 1) + (k,) for k in range(count)]


@dataclass(frozen=True)
class SocleWitness:
    r: int
    points: tuple[MultiIndex, ...]
    gamma_star: MultiIndex
    sigma_f: object
    chi_odd_f: object
    sigma: RingElement
    f: RingElement
    a_odd: IndexSet


def socle_noninjectivity_witness(r: int, n: int = 1, sigma_values: Sequence | None = None) -> SocleWitness:
    """Point where sigma*f and chi_{A_odd}*f differ, for a candidate sigma in soc(R).

    sigma = sum_{i<=r} chi_{A_i} phi_i (phi_i = 1 unless ``sigma_values`` given),
    f = sum_{i<=2r+1} chi_{A_i}.  The witness lies in A_{2r+1}.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    pts = lex_points(n, 2 * r + 1)
    vals = list(sigma_values) if sigma_values is not None else [1] * r
    if len(vals) != r:
        raise ValueError("sigma_values must have length r")
    sigma = RingElement(n, tuple((ix.singleton(p), constant(v)) for p, v in zip(pts[:r], vals)))
    f = RingElement(n, tuple((ix.singleton(p), constant(1)) for p in pts))
    a_odd = ix.Finite(n, pts[0::2])
    sigma_f = mul(sigma, f)
    odd_f = mul(indicator(a_odd), f)
    gamma_star = pts[2 * r]
    return SocleWitness(r, tuple(pts), gamma_star, sigma_f(gamma_star), odd_f(gamma_star),
                        sigma, f, a_odd)


def socle_membership(rho: RingElement, m_max: int = DEFAULT_M_MAX) -> bool:
    """Truncation-sound test for rho in soc(R): all term sets finite."""
    if not rho.terms:
        return True
    return all(ix.cardinality_class(A).kind == "finite" for A, _ in rho.terms)
