import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from ponderation import index_sets as ix

N = 2
BOX = list(ix.iter_truncated(N, 7))


@st.composite
def index_sets(draw, n=N, depth=2):
    kind = draw(st.sampled_from(["finite", "cofinite", "parity"] + (["union", "inter", "comp"] if depth else [])))
    point = st.tuples(*[st.integers(0, 5)] * n)
    if kind == "finite":
        return ix.Finite(n, draw(st.lists(point, max_size=4)))
    if kind == "cofinite":
        return ix.Cofinite(n, draw(st.lists(point, max_size=3)))
    if kind == "parity":
        return ix.parity(*draw(st.lists(st.sampled_from([ix.EVEN, ix.ODD, ix.ANY]), min_size=n, max_size=n)))
    a = draw(index_sets(n=n, depth=depth - 1))
    if kind == "comp":
        return ix.complement(a)
    b = draw(index_sets(n=n, depth=depth - 1))
    return ix.union(a, b) if kind == "union" else ix.intersect(a, b)


def members(A):
    return {g for g in BOX if g in A}


@settings(max_examples=80, deadline=None)
@given(index_sets(), index_sets())
def test_boolean_operations_match_pointwise_logic(A, B):
    assert members(ix.union(A, B)) == members(A) | members(B)
    assert members(ix.intersect(A, B)) == members(A) & members(B)
    assert members(ix.complement(A)) == set(BOX) - members(A)
    assert members(ix.difference(A, B)) == members(A) - members(B)


@settings(max_examples=60, deadline=None)
@given(index_sets())
def test_json_round_trip_preserves_membership(A):
    back = ix.from_json(ix.to_json(A))
    assert members(back) == members(A)
    assert ix.equal(back, A)


@settings(max_examples=60, deadline=None)
@given(index_sets())
def test_double_complement_is_equal(A):
    assert ix.equal(ix.complement(ix.complement(A)), A)


def test_cardinality_classes():
    assert str(ix.cardinality_class(ix.singleton((3,)))) == "finite(1)"
    assert str(ix.cardinality_class(ix.Cofinite(1, [(2,)]))) == "cofinite(1)"
    assert ix.cardinality_class(ix.A_e()).kind == "infinite_coinfinite"
    assert ix.cardinality_class(ix.union(ix.A_e(), ix.A_o())).kind == "cofinite"


def test_parity_partition_of_plane():
    cells = [ix.parity_class(c) for c in ("ee", "eo", "oe", "oo")]
    for g in BOX:
        assert sum(g in c for c in cells) == 1
    assert ix.equal(ix.union(*cells), ix.full(2))


def test_counts_of_truncations():
    for n, m in itertools.product((1, 2, 3), (0, 4, 9)):
        assert len(list(ix.iter_truncated(n, m))) == math.comb(m + n, n)
        assert all(sum(g) == m for g in ix.compositions(m, n))


def test_named_sets_and_errors():
    assert ix.equal(ix.named_set("A_e"), ix.A_e())
    assert (4,) in ix.named_set("A_e") and (3,) in ix.named_set("A_o")
    with pytest.raises(ValueError):
        ix.named_set("bogus")
    with pytest.raises(ValueError):
        ix.union(ix.full(1), ix.full(2))


def test_enumerate_truncated_finite():
    A = ix.Finite(1, [(1,), (5,), (9,)])
    assert ix.enumerate_truncated(A, 6) == [(1,), (5,)]
