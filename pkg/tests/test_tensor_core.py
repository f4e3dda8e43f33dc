"""Sparse tensors: storage, surgery, polynomial correspondence.

poly_to_tensor is checked against evaluation: contracting the symmetric
tensor of a form with v in every mode must equal evaluating the form at v.
That oracle is independent of the orbit bookkeeping inside the module.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorium.errors import (
    DegreeMismatch,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidPartition,
    NotBinary,
)
from tensorium.exact_linalg import rank_exact
from tensorium.tensor_core import (
    DENSE_JSON_MAX,
    PolyForm,
    Tensor,
    clone,
    flatten,
    indicator_tensor,
    is_clone,
    is_rank_one,
    is_symmetric,
    monomial_indicator,
    multi_slice,
    ones_tensor,
    poly_to_tensor,
    restrict,
    slice as mode_slice,
    sym_power,
    symmetrize,
    tensor_add,
    tensor_scale,
    tensor_sub,
    tensor_to_poly,
    unfold,
)

F = Fraction


def small_tensor(max_dim=3, max_order=3):
    def build(dims):
        keys = list(itertools.product(*[range(1, d + 1) for d in dims]))
        return st.lists(
            st.tuples(st.sampled_from(keys), st.fractions(min_value=-9, max_value=9, max_denominator=4)),
            max_size=6,
        ).map(lambda kv: Tensor.from_entries(tuple(dims), dict(kv)))

    return st.lists(
        st.integers(1, max_dim), min_size=1, max_size=max_order
    ).flatmap(build)


# ----------------------------------------------------------------- storage


def test_from_entries_validation():
    with pytest.raises(IndexOutOfRange):
        Tensor.from_entries((2, 2), {(1, 3): F(1)})
    with pytest.raises(IndexOutOfRange):
        Tensor.from_entries((2,), {(0,): F(1)})
    with pytest.raises(DimensionMismatch):
        Tensor.from_entries((0, 2), {})
    t = Tensor.from_entries((2, 2), {(1, 1): F(0), (2, 2): F(3)})
    assert t.nnz == 1 and t.entry((1, 1)) == 0 and t.entry((2, 2)) == 3


def test_from_dense_and_entry():
    t = Tensor.from_dense((2, 2), [F(1), F(0), F(0), F(5)])
    assert t.entry((1, 1)) == 1 and t.entry((2, 2)) == 5
    assert t.nnz == 2
    with pytest.raises(DimensionMismatch):
        Tensor.from_dense((2, 2), [F(1)] * 3)


def test_arithmetic():
    a = Tensor.from_entries((2, 2), {(1, 1): F(1), (1, 2): F(2)})
    b = Tensor.from_entries((2, 2), {(1, 2): F(-2), (2, 1): F(7)})
    s = tensor_add(a, b)
    assert s.entry((1, 2)) == 0 and s.nnz == 2
    assert tensor_sub(s, a).entry((1, 2)) == -2
    assert tensor_scale(a, F(1, 2)).entry((1, 2)) == 1
    with pytest.raises(DimensionMismatch):
        tensor_add(a, Tensor.zeros((2, 3)))


@settings(max_examples=40)
@given(small_tensor())
def test_json_roundtrip(t):
    again = Tensor.from_json_dict(t.to_json_dict())
    assert again.dims == t.dims and again.data == t.data
    # deterministic serialization
    s1 = json.dumps(t.to_json_dict(), sort_keys=True)
    s2 = json.dumps(Tensor.from_json_dict(json.loads(s1)).to_json_dict(), sort_keys=True)
    assert s1 == s2


def test_json_dense_vs_coo_threshold():
    small = ones_tensor(2, 2)  # 4 cells: dense form
    assert small.to_json_dict()["format"] == "dense"
    big = Tensor.from_entries((DENSE_JSON_MAX + 1,), {(1,): F(1)})
    assert big.to_json_dict()["format"] == "coo"
    assert big.to_json_dict()["entries"] == [[[1], "1"]]
    assert Tensor.from_json_dict(big.to_json_dict()).data == big.data


# ----------------------------------------------------------------- surgery


def test_slice_and_multi_slice():
    t = monomial_indicator(2, (3, 1))  # x^3 y indicator, order 4
    s1 = mode_slice(t, 4, 1)
    # fixing the last index to 1 leaves the positions of y in modes 1..3
    assert s1.dims == (2, 2, 2)
    assert s1.entry((1, 1, 2)) == 1 and s1.entry((1, 1, 1)) == 0
    s2 = multi_slice(t, (1, 2), (1, 1))
    assert s2.dims == (2, 2)
    assert s2.entry((1, 2)) == 1 and s2.entry((2, 1)) == 1
    with pytest.raises(IndexOutOfRange):
        mode_slice(t, 5, 1)
    with pytest.raises(IndexOutOfRange):
        multi_slice(t, (1, 1), (1, 2))


def test_flatten_known_matrix():
    t = monomial_indicator(2, (3, 1))
    m = flatten(t, [1, 2])
    want = [
        [0, 1, 1, 0],
        [1, 0, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 0, 0],
    ]
    assert [[int(x) for x in row] for row in m.to_rows()] == want
    assert rank_exact(m) == 2


@settings(max_examples=30)
@given(small_tensor(max_dim=3, max_order=3))
def test_flatten_complement_is_transpose(t):
    if t.order < 2:
        return
    modes = [1]
    comp = [j for j in range(1, t.order + 1) if j not in modes]
    a = flatten(t, modes)
    b = flatten(t, comp)
    assert a.to_rows() == b.transpose().to_rows()


def test_flatten_mode_edge_cases():
    t = ones_tensor(2, 3)
    with pytest.raises(IndexOutOfRange):
        flatten(t, [0, 1])
    col = flatten(t, [1, 2, 3])  # full J: one column (vectorisation)
    assert (col.rows, col.cols) == (8, 1)
    row = flatten(t, [])
    assert (row.rows, row.cols) == (1, 8)
    # duplicate modes collapse to the set
    assert flatten(t, [1, 1]).to_rows() == flatten(t, [1]).to_rows()


def test_unfold():
    t = monomial_indicator(2, (2, 1))
    u = unfold(t, [[1], [2, 3]])
    assert u.dims == (2, 4)
    # (1,1,2) -> column (1-1)*2 + 2 = 2;  (1,2,1) -> (2-1)*2+1 = 3;  (2,1,1) -> 1
    assert u.entry((1, 2)) == 1 and u.entry((1, 3)) == 1 and u.entry((2, 1)) == 1
    ident = unfold(t, [[1], [2], [3]])
    assert ident.data == t.data
    with pytest.raises(InvalidPartition):
        unfold(t, [[1], [2]])
    with pytest.raises(InvalidPartition):
        unfold(t, [[1], [1, 2], [3]])


@settings(max_examples=25)
@given(small_tensor(max_dim=3, max_order=3))
def test_unfold_matches_flatten(t):
    if t.order < 2:
        return
    u = unfold(t, [[1], [j for j in range(2, t.order + 1)]])
    m = flatten(t, [1])
    assert u.dims == (m.rows, m.cols)
    for (i, j), v in u.data.items():
        assert m.at(i - 1, j - 1) == v
    assert u.nnz == sum(1 for row in m.to_rows() for x in row if x != 0)


# ----------------------------------------------------------------- symmetry


def test_sym_power_small():
    t = sym_power([F(1), F(2)], 2)
    assert t.entry((1, 1)) == 1 and t.entry((1, 2)) == 2 and t.entry((2, 2)) == 4
    assert is_symmetric(t) and is_rank_one(t)


def test_symmetrize():
    t = Tensor.from_entries((2, 2), {(1, 2): F(1)})
    s = symmetrize(t)
    assert s.entry((1, 2)) == F(1, 2) and s.entry((2, 1)) == F(1, 2)
    assert is_symmetric(s)
    assert symmetrize(s).data == s.data
    assert not is_symmetric(Tensor.from_entries((2, 3), {}).zeros((2, 3)))


def test_is_rank_one():
    u, v, w = [F(1), F(2)], [F(3), F(0)], [F(1), F(-1)]
    t = Tensor.from_entries(
        (2, 2, 2),
        {
            (i, j, k): u[i - 1] * v[j - 1] * w[k - 1]
            for i in (1, 2)
            for j in (1, 2)
            for k in (1, 2)
        },
    )
    assert is_rank_one(t)
    assert not is_rank_one(Tensor.zeros((2, 2)))
    two = tensor_add(sym_power([F(1), F(0)], 2), sym_power([F(0), F(1)], 2))
    assert not is_rank_one(two)
    single = Tensor.from_entries((3, 3), {(2, 3): F(5)})
    assert is_rank_one(single)
    # product support shape but wrong value at one cell
    bad = Tensor.from_entries(
        (2, 2), {(1, 1): F(1), (1, 2): F(2), (2, 1): F(3), (2, 2): F(7)}
    )
    assert not is_rank_one(bad)


@settings(max_examples=30)
@given(
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=2, max_size=3),
    st.integers(2, 4),
)
def test_sym_power_is_rank_one(u, d):
    if all(x == 0 for x in u):
        return
    assert is_rank_one(sym_power([F(x) for x in u], d))


# ----------------------------------------------------------------- polynomials


def test_polyform_validation():
    with pytest.raises(DegreeMismatch):
        PolyForm.make(2, 3, {(2, 0): F(1)})  # degree mismatch
    with pytest.raises(DimensionMismatch):
        PolyForm.make(2, 3, {(1, 1, 1): F(1)})  # wrong arity
    p = PolyForm.make(2, 2, {(2, 0): F(1), (1, 1): F(0)})
    assert (1, 1) not in p.terms


def evaluate_poly(p: PolyForm, v: list[Fraction]) -> Fraction:
    return sum(
        (c * prod(v[i] ** e for i, e in enumerate(exps)) for exps, c in p.terms.items()),
        F(0),
    )


def contract_full(t: Tensor, v: list[Fraction]) -> Fraction:
    return sum((val * prod(v[k - 1] for k in key) for key, val in t.data.items()), F(0))


@settings(max_examples=30)
@given(
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: sum(e) == 3),
        st.fractions(min_value=-9, max_value=9, max_denominator=4),
        max_size=4,
    ),
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=2), min_size=2, max_size=2),
)
def test_poly_tensor_evaluation_oracle(terms, v):
    p = PolyForm.make(2, 3, {k: F(c) for k, c in terms.items()})
    t = poly_to_tensor(p)
    assert is_symmetric(t)
    vv = [F(x) for x in v]
    assert contract_full(t, vv) == evaluate_poly(p, vv)


@settings(max_examples=30)
@given(
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda e: sum(e) == 4),
        st.fractions(min_value=-9, max_value=9, max_denominator=4),
        max_size=4,
    )
)
def test_poly_tensor_roundtrip(terms):
    p = PolyForm.make(2, 4, {k: F(c) for k, c in terms.items()})
    q = tensor_to_poly(poly_to_tensor(p))
    assert q.terms == p.terms and q.nvars == 2 and q.degree == 4


def test_sym_power_equals_power_of_linear_form():
    # v = (a, b): v^(x)d is the symmetric tensor of (a x + b y)^d
    a, b = F(2), F(-3)
    d = 3
    p = PolyForm.make(
        2,
        d,
        {
            (d - i, i): a ** (d - i) * b**i * factorial(d) // (factorial(i) * factorial(d - i))
            for i in range(d + 1)
        },
    )
    assert poly_to_tensor(p).data == sym_power([a, b], d).data


def test_monomial_indicator_and_scaling():
    ind = monomial_indicator(2, (2, 1))
    assert ind.nnz == 3  # orbit of (1,1,2)
    assert all(v == 1 for v in ind.data.values())
    # bijective scaling divides by the orbit size
    t = poly_to_tensor(PolyForm.make(2, 3, {(2, 1): F(3)}))
    assert t.entry((1, 1, 2)) == 1
    p = PolyForm.make(2, 3, {(2, 1): F(3)})
    assert indicator_tensor(p).entry((1, 1, 2)) == 3


def test_polyform_json_roundtrip():
    p = PolyForm.make(3, 4, {(4, 0, 0): F(1), (2, 1, 1): F(12)})
    q = PolyForm.from_json_dict(p.to_json_dict())
    assert q == p
    assert p.to_json_dict()["vars"] == ["x", "y", "z"]
    # a bare variable count is accepted on input
    r = PolyForm.from_json_dict({"vars": 3, "degree": 4, "terms": p.to_json_dict()["terms"]})
    assert r == p


# ----------------------------------------------------------------- cloning


def test_clone_and_is_clone():
    core = Tensor.from_entries((2, 2), {(1, 1): F(1), (2, 2): F(-3)})
    c = clone(core, 3)
    assert c.dims == (6, 6)
    assert c.entry((2, 3)) == 1 and c.entry((5, 4)) == -3 and c.entry((1, 4)) == 0
    assert c.nnz == 2 * 9
    back = is_clone(c, 3)
    assert back is not None and back.data == core.data
    assert is_clone(c, 2) is None
    # perturb one entry: no longer a clone
    broken = tensor_add(
        c, Tensor.from_entries((6, 6), {(1, 1): F(1)})
    )
    assert is_clone(broken, 3) is None


def test_clone_identity_and_validation():
    core = Tensor.from_entries((2, 2, 2), {(1, 2, 1): F(5)})
    assert clone(core, 1).data == core.data
    with pytest.raises(NotBinary):
        clone(ones_tensor(3, 2), 2)


@settings(max_examples=20)
@given(
    st.dictionaries(
        st.tuples(st.integers(1, 2), st.integers(1, 2), st.integers(1, 2)),
        st.fractions(min_value=-5, max_value=5, max_denominator=2),
        max_size=4,
    ),
    st.integers(1, 3),
)
def test_clone_roundtrip(entries, n):
    core = Tensor.from_entries((2, 2, 2), {k: F(v) for k, v in entries.items()})
    back = is_clone(clone(core, n), n)
    assert back is not None and back.data == core.data


def test_restrict():
    t = ones_tensor(4, 2)
    r = restrict(t, [2, 4])
    assert r.dims == (2, 2) and r.nnz == 4
    r2 = restrict(t, [[1], [1, 2, 3]])
    assert r2.dims == (1, 3)
    with pytest.raises(IndexOutOfRange):
        restrict(t, [5])


def test_ones_tensor():
    t = ones_tensor(2, 3)
    assert t.nnz == 8 and t.entry((2, 1, 2)) == 1
