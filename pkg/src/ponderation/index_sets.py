"""Decidable subsets of N^n: finite, cofinite, parity cells and boolean trees.

Every set built here is a finite union of parity cells modified on a finite
set of points.  :func:`canonical` computes that normal form exactly, which
gives decidable equality and cardinality classification.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

MultiIndex = tuple[int, ...]

EVEN, ODD, ANY = "even", "odd", "any"


def order(gamma: Sequence[int]) -> int:
    """|gamma| = sum of coordinates."""
    return sum(gamma)


def mfactorial(gamma: Sequence[int]) -> int:
    """gamma! = product of coordinate factorials (exact)."""
    out = 1
    for g in gamma:
        out *= math.factorial(g)
    return out


def multi_index(coords: Iterable[int]) -> MultiIndex:
    gamma = tuple(int(c) for c in coords)
    if not gamma:
        raise ValueError("multi-index needs n >= 1 coordinates")
    if any(c < 0 for c in gamma):
        raise ValueError(f"negative coordinate in {gamma}")
    return gamma


def _parity(k: int) -> str:
    return EVEN if k % 2 == 0 else ODD


class IndexSet:
    """Base class.  Subclasses are immutable; use the module-level operations."""

    n: int

    def __contains__(self, gamma) -> bool:
        return contains(self, gamma)

    def _member(self, gamma: MultiIndex) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.n == other.n and canonical(self) == canonical(other)

    def __hash__(self):
        return hash(canonical(self))


def _sorted_points(n: int, points) -> tuple[MultiIndex, ...]:
    pts = sorted({multi_index(p) for p in points})
    for p in pts:
        if len(p) != n:
            raise ValueError(f"point {p} has dimension {len(p)}, expected {n}")
    return tuple(pts)


@dataclass(frozen=True, eq=False)
class Finite(IndexSet):
    n: int
    points: tuple[MultiIndex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", _sorted_points(self.n, self.points))

    def _member(self, gamma):
        return gamma in self.points


@dataclass(frozen=True, eq=False)
class Cofinite(IndexSet):
    n: int
    excluded: tuple[MultiIndex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "excluded", _sorted_points(self.n, self.excluded))

    def _member(self, gamma):
        return gamma not in self.excluded


@dataclass(frozen=True, eq=False)
class Parity(IndexSet):
    constraints: tuple[str, ...]

    def __post_init__(self):
        cs = tuple(self.constraints)
        if not cs or any(c not in (EVEN, ODD, ANY) for c in cs):
            raise ValueError(f"bad parity constraints {cs!r}")
        object.__setattr__(self, "constraints", cs)

    @property
    def n(self) -> int:
        return len(self.constraints)

    def _member(self, gamma):
        return all(c == ANY or c == _parity(g) for c, g in zip(self.constraints, gamma))


@dataclass(frozen=True, eq=False)
class Union(IndexSet):
    n: int
    children: tuple[IndexSet, ...]

    def _member(self, gamma):
        return any(c._member(gamma) for c in self.children)


@dataclass(frozen=True, eq=False)
class Intersection(IndexSet):
    n: int
    children: tuple[IndexSet, ...]

    def _member(self, gamma):
        return all(c._member(gamma) for c in self.children)


@dataclass(frozen=True, eq=False)
class Complement(IndexSet):
    child: IndexSet

    @property
    def n(self) -> int:
        return self.child.n

    def _member(self, gamma):
        return not self.child._member(gamma)


# ---------------------------------------------------------------- constructors

def full(n: int) -> IndexSet:
    return Cofinite(n, ())


def empty(n: int) -> IndexSet:
    return Finite(n, ())


def singleton(gamma) -> IndexSet:
    gamma = multi_index(gamma)
    return Finite(len(gamma), (gamma,))


def parity(*constraints: str) -> IndexSet:
    if all(c == ANY for c in constraints):
        return full(len(constraints))
    return Parity(tuple(constraints))


def parity_class(code: str) -> IndexSet:
    """``"e"`` / ``"o"`` / ``"ee"`` / ``"oe"`` ... to the matching parity cell."""
    table = {"e": EVEN, "o": ODD, "a": ANY}
    try:
        return parity(*(table[ch] for ch in code))
    except KeyError:
        raise ValueError(f"unknown parity code {code!r}") from None


def A_e() -> IndexSet:
    return parity_class("e")


def A_o() -> IndexSet:
    return parity_class("o")


# ---------------------------------------------------------------- operations

def _check_dims(*sets: IndexSet) -> int:
    dims = {s.n for s in sets}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def contains(A: IndexSet, gamma) -> bool:
    gamma = multi_index(gamma)
    if len(gamma) != A.n:
        raise ValueError(f"dimension mismatch: set has n={A.n}, index has n={len(gamma)}")
    return A._member(gamma)


def _is_full(A: IndexSet) -> bool:
    return isinstance(A, Cofinite) and not A.excluded


def _is_empty(A: IndexSet) -> bool:
    return isinstance(A, Finite) and not A.points


def complement(A: IndexSet) -> IndexSet:
    if isinstance(A, Finite):
        return Cofinite(A.n, A.points)
    if isinstance(A, Cofinite):
        return Finite(A.n, A.excluded)
    if isinstance(A, Complement):
        return A.child
    if isinstance(A, Parity):
        constrained = [i for i, c in enumerate(A.constraints) if c != ANY]
        if len(constrained) == 1:
            i = constrained[0]
            cs = list(A.constraints)
            cs[i] = ODD if cs[i] == EVEN else EVEN
            return Parity(tuple(cs))
    return Complement(A)


def _merge_parity_union(cells: list[Parity]) -> list[Parity]:
    """Merge pairs of parity cells differing in exactly one even/odd slot."""
    cells = list(dict.fromkeys(cells))
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(cells, 2):
            diff = [i for i, (x, y) in enumerate(zip(a.constraints, b.constraints)) if x != y]
            if len(diff) == 1 and {a.constraints[diff[0]], b.constraints[diff[0]]} == {EVEN, ODD}:
                cs = list(a.constraints)
                cs[diff[0]] = ANY
                cells.remove(a)
                cells.remove(b)
                cells.append(Parity(tuple(cs)))
                changed = True
                break

    def covers(big: Parity, small: Parity) -> bool:
        return all(x == ANY or x == y for x, y in zip(big.constraints, small.constraints))

    return [c for c in cells if not any(o is not c and covers(o, c) for o in cells)]


def union(A: IndexSet, B: IndexSet, *more: IndexSet) -> IndexSet:
    n = _check_dims(A, B, *more)
    flat: list[IndexSet] = []
    for s in (A, B, *more):
        flat.extend(s.children if isinstance(s, Union) else (s,))
    if any(_is_full(s) for s in flat):
        return full(n)
    finite_pts: set = set()
    cofinite: Cofinite | None = None
    cells: list[Parity] = []
    others: list[IndexSet] = []
    for s in flat:
        if isinstance(s, Finite):
            finite_pts.update(s.points)
        elif isinstance(s, Cofinite):
            cofinite = s if cofinite is None else Cofinite(n, set(cofinite.excluded) & set(s.excluded))
        elif isinstance(s, Parity):
            cells.append(s)
        else:
            others.append(s)
    cells = _merge_parity_union(cells)
    parts: list[IndexSet] = [c if any(x != ANY for x in c.constraints) else full(n) for c in cells]
    if any(_is_full(p) for p in parts):
        return full(n)
    if cofinite is not None:
        cofinite = Cofinite(n, [p for p in cofinite.excluded
                                if p not in finite_pts
                                and not any(q._member(p) for q in parts + others)])
        if _is_full(cofinite) or not (parts or others):
            return cofinite
        parts.insert(0, cofinite)
        finite_pts = set()
    parts.extend(others)
    finite_pts = {p for p in finite_pts if not any(q._member(p) for q in parts)}
    if finite_pts:
        parts.insert(0, Finite(n, finite_pts))
    if not parts:
        return empty(n)
    if len(parts) == 1:
        return parts[0]
    return Union(n, tuple(parts))


def intersect(A: IndexSet, B: IndexSet, *more: IndexSet) -> IndexSet:
    n = _check_dims(A, B, *more)
    flat: list[IndexSet] = []
    for s in (A, B, *more):
        flat.extend(s.children if isinstance(s, Intersection) else (s,))
    if any(_is_empty(s) for s in flat):
        return empty(n)
    flat = [s for s in flat if not _is_full(s)]
    if not flat:
        return full(n)
    finite = [s for s in flat if isinstance(s, Finite)]
    if finite:
        pts = set(finite[0].points)
        for f in finite[1:]:
            pts &= set(f.points)
        rest = [s for s in flat if not isinstance(s, Finite)]
        return Finite(n, [p for p in pts if all(s._member(p) for s in rest)])
    excluded: set = set()
    merged: list[str] | None = None
    others: list[IndexSet] = []
    has_cofinite = False
    for s in flat:
        if isinstance(s, Cofinite):
            has_cofinite = True
            excluded.update(s.excluded)
        elif isinstance(s, Parity):
            if merged is None:
                merged = list(s.constraints)
            else:
                for i, c in enumerate(s.constraints):
                    if c == ANY:
                        continue
                    if merged[i] == ANY:
                        merged[i] = c
                    elif merged[i] != c:
                        return empty(n)
        else:
            others.append(s)
    parts: list[IndexSet] = []
    if merged is not None:
        cell = parity(*merged)
        if not _is_full(cell):
            parts.append(cell)
    parts.extend(others)
    if has_cofinite and excluded:
        excluded = {p for p in excluded if all(q._member(p) for q in parts)}
        if excluded or not parts:
            parts.insert(0, Cofinite(n, excluded))
    if not parts:
        return full(n)
    if len(parts) == 1:
        return parts[0]
    return Intersection(n, tuple(parts))


def difference(A: IndexSet, B: IndexSet) -> IndexSet:
    return intersect(A, complement(B))


# ---------------------------------------------------------------- normal form

def _listed_points(A: IndexSet) -> set:
    if isinstance(A, Finite):
        return set(A.points)
    if isinstance(A, Cofinite):
        return set(A.excluded)
    if isinstance(A, Parity):
        return set()
    if isinstance(A, Complement):
        return _listed_points(A.child)
    out: set = set()
    for c in A.children:
        out |= _listed_points(c)
    return out


def canonical(A: IndexSet) -> tuple:
    """Exact normal form ``(n, cells, exceptions)``.

    Off the finitely many listed points, membership depends only on the parity
    pattern of gamma, so A equals (union of ``cells``) symmetric-difference
    ``exceptions``.
    """
    n = A.n
    listed = _listed_points(A)
    bound = 1 + max((max(p) for p in listed), default=0)
    cells = []
    for pattern in itertools.product((0, 1), repeat=n):
        rep = tuple(bound + ((bound + b) % 2) for b in pattern)
        if A._member(rep):
            cells.append(tuple(EVEN if b == 0 else ODD for b in pattern))
    cell_set = set(cells)

    def in_cells(p):
        return tuple(_parity(x) for x in p) in cell_set

    exceptions = tuple(sorted(p for p in listed if A._member(p) != in_cells(p)))
    return (n, tuple(cells), exceptions)


def equal(A: IndexSet, B: IndexSet) -> bool:
    _check_dims(A, B)
    return canonical(A) == canonical(B)


@dataclass(frozen=True)
class CardinalityClass:
    kind: str  # "finite" | "cofinite" | "infinite_coinfinite"
    k: int | None = None

    def __str__(self):
        return self.kind if self.k is None else f"{self.kind}({self.k})"


def cardinality_class(A: IndexSet) -> CardinalityClass:
    n, cells, exceptions = canonical(A)
    if not cells:
        return CardinalityClass("finite", len(exceptions))
    if len(cells) == 2 ** n:
        return CardinalityClass("cofinite", len(exceptions))
    return CardinalityClass("infinite_coinfinite")


def iter_truncated(n: int, m_max: int):
    """All gamma in N^n with |gamma| <= m_max, lexicographic order."""
    if n == 1:
        for k in range(m_max + 1):
            yield (k,)
        return
    for head in range(m_max + 1):
        for tail in iter_truncated(n - 1, m_max - head):
            yield (head,) + tail


def compositions(m: int, n: int):
    """All gamma in N^n with |gamma| == m, lexicographic order."""
    if n == 1:
        yield (m,)
        return
    for head in range(m + 1):
        for tail in compositions(m - head, n - 1):
            yield (head,) + tail


def enumerate_truncated(A: IndexSet, m_max: int) -> list[MultiIndex]:
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    if isinstance(A, Finite):
        return [p for p in A.points if order(p) <= m_max]
    return [g for g in iter_truncated(A.n, m_max) if A._member(g)]


# ---------------------------------------------------------------- JSON

def to_json(A: IndexSet) -> dict:
    if isinstance(A, Finite):
        return {"type": "finite", "n": A.n, "points": [list(p) for p in A.points]}
    if isinstance(A, Cofinite):
        return {"type": "cofinite", "n": A.n, "excluded": [list(p) for p in A.excluded]}
    if isinstance(A, Parity):
        return {"type": "parity", "constraints": list(A.constraints)}
    if isinstance(A, Complement):
        return {"type": "complement", "child": to_json(A.child)}
    kind = "union" if isinstance(A, Union) else "intersection"
    return {"type": kind, "n": A.n, "children": [to_json(c) for c in A.children]}


def from_json(obj) -> IndexSet:
    if isinstance(obj, str):
        return named_set(obj)
    kind = obj["type"]
    if kind == "finite":
        return Finite(obj["n"], [tuple(p) for p in obj["points"]])
    if kind == "cofinite":
        return Cofinite(obj["n"], [tuple(p) for p in obj.get("excluded", [])])
    if kind == "parity":
        return parity(*obj["constraints"])
    if kind == "complement":
        return complement(from_json(obj["child"]))
    if kind in ("union", "intersection"):
        children = [from_json(c) for c in obj["children"]]
        if len(children) == 1:
            return children[0]
        op = union if kind == "union" else intersect
        return op(*children)
    raise ValueError(f"unknown IndexSet type {kind!r}")


def named_set(name: str, n: int | None = None) -> IndexSet:
    """Shorthands: ``full``, ``A_e``, ``A_o``, ``A_ee``, ``A_oo``, ``A_eo``, ``A_oe``."""
    if name == "full":
        return full(n or 1)
    if name.startswith("A_") and set(name[2:]) <= {"e", "o"}:
        return parity_class(name[2:])
    raise ValueError(f"unknown set name {name!r}")
