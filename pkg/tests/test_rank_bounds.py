"""Certified rank bounds: slice spaces, spanning certificates, Sylvester,
and the binary-monomial decompositions.

The decomposition identity is checked against an in-file binomial
expansion of sum_i mu_i (lambda_i x + y)^d, so the library's tensor route
and the polynomial route must agree independently.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorium.errors import (
    BadLength,
    DegreeMismatch,
    DimensionMismatch,
    GeneratorNotRankOne,
    GeneratorNotSymmetric,
    InconsistentInputs,
    InvalidPartition,
    LambdasNotDistinct,
    OddDegree,
    SpanFailure,
    SumMismatch,
)
from tensorium.exact_linalg import rank_exact
from tensorium.rank_bounds import (
    RankOneWitness,
    SymDecomposition,
    binary_sym_rank_one_in_modspace,
    drk_unfolding,
    monomial_decomposition,
    monomial_decomposition_target,
    slice_space_basis,
    sylvester_bound,
    tensor_to_vector,
    verify_spanning_certificate,
    verify_sym_decomposition,
)
from tensorium.tensor_core import (
    PolyForm,
    Tensor,
    flatten,
    indicator_tensor,
    sym_power,
    tensor_add,
)

F = Fraction


def quartic_indicator() -> Tensor:
    """Four-variable quartic with a rank-6 flattening; fixed test subject."""
    p = PolyForm.make(
        4,
        4,
        {(4, 0, 0, 0): F(1), (0, 4, 0, 0): F(-3), (2, 1, 1, 0): F(12), (1, 2, 0, 1): F(12)},
    )
    return indicator_tensor(p)


NINE_SQUARE_VECTORS = [
    (1, 0, 0, 0),
    (1, 1, 0, 0),
    (0, 1, 0, 0),
    (1, 0, 1, 0),
    (1, 0, 0, 1),
    (0, 1, 1, 0),
    (0, 1, 0, 1),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
]


def nine_squares() -> list[Tensor]:
    return [sym_power([F(x) for x in v], 2) for v in NINE_SQUARE_VECTORS]


# ----------------------------------------------------------------- vectors


def test_tensor_to_vector_lex():
    t = Tensor.from_entries((2, 2), {(1, 2): F(3), (2, 1): F(5)})
    assert tensor_to_vector(t) == [F(0), F(3), F(5), F(0)]


# ----------------------------------------------------------------- slice space


def test_slice_space_basis_dimension():
    t = quartic_indicator()
    b = slice_space_basis(t, [1, 2])
    assert b.dim == 6
    assert b.dim == rank_exact(flatten(t, [1, 2]))
    assert len(b.basis) == 6 and len(b.selected) == 6
    for sel, sl in zip(b.selected, b.basis):
        assert sl.dims == (4, 4)


@settings(max_examples=15, deadline=None)
@given(
    st.dictionaries(
        st.tuples(st.integers(1, 2), st.integers(1, 2), st.integers(1, 3)),
        st.fractions(min_value=-6, max_value=6, max_denominator=3),
        max_size=6,
    )
)
def test_slice_space_dim_equals_flat_rank(entries):
    t = Tensor.from_entries((2, 2, 3), {k: F(v) for k, v in entries.items()})
    b = slice_space_basis(t, [3])
    assert b.dim == rank_exact(flatten(t, [3]))


# ----------------------------------------------------------------- spanning


def test_nine_squares_certificate():
    t = quartic_indicator()
    cert = verify_spanning_certificate(t, [1, 2], nine_squares(), symmetric=True)
    assert cert.upper_bound == 9
    assert cert.basis.dim == 6
    assert len(cert.coefficients) == 6
    assert cert.symmetric


def test_spanning_failure_reports_uncovered_slice():
    t = quartic_indicator()
    too_few = [sym_power([F(1), F(0), F(0), F(0)], 2), sym_power([F(0), F(1), F(0), F(0)], 2)]
    with pytest.raises(SpanFailure):
        verify_spanning_certificate(t, [1, 2], too_few, symmetric=True)


def test_spanning_generator_guards():
    t = quartic_indicator()
    rank_two = tensor_add(
        sym_power([F(1), F(0), F(0), F(0)], 2), sym_power([F(0), F(1), F(0), F(0)], 2)
    )
    with pytest.raises(GeneratorNotRankOne):
        verify_spanning_certificate(t, [1, 2], [rank_two])
    asym = Tensor.from_entries((4, 4), {(1, 2): F(1)})
    with pytest.raises(GeneratorNotSymmetric):
        verify_spanning_certificate(t, [1, 2], [asym], symmetric=True)
    # without the symmetric flag, an asymmetric rank-one generator is fine
    with pytest.raises(SpanFailure):
        verify_spanning_certificate(t, [1, 2], [asym], symmetric=False)
    wrong_dims = sym_power([F(1), F(0)], 2)
    with pytest.raises(DimensionMismatch):
        verify_spanning_certificate(t, [1, 2], [wrong_dims])


# ----------------------------------------------------------------- unfolding


def test_drk_unfolding_shape():
    t = quartic_indicator()
    u = drk_unfolding(t, [1, 2])
    assert u.dims == (4, 4, 16)
    with pytest.raises(InvalidPartition):
        drk_unfolding(t, [1, 2, 3, 4])


# ----------------------------------------------------------------- sylvester


def test_sylvester_bound():
    assert sylvester_bound(9, 9, 6) == 12
    assert sylvester_bound(2, 3, 2) == 3
    with pytest.raises(InconsistentInputs):
        sylvester_bound(-1, 3, 2)
    with pytest.raises(InconsistentInputs):
        sylvester_bound(2, 3, 4)  # flattening rank exceeds a factor bound


# ----------------------------------------------------------------- decomposition


def expand_decomposition(dec: SymDecomposition) -> dict[tuple[int, int], Fraction]:
    """Binomial-theorem expansion of sum_i c_i (a_i x + b_i y)^d."""
    out: dict[tuple[int, int], Fraction] = {}
    d = dec.degree
    for c, (a, b) in dec.terms:
        for i in range(d + 1):
            coef = c * comb(d, i) * a ** (d - i) * b**i
            k = (d - i, i)
            out[k] = out.get(k, F(0)) + coef
    return {k: v for k, v in out.items() if v != 0}


def test_monomial_decomposition_validation():
    with pytest.raises(BadLength):
        monomial_decomposition(F(1), 3, [F(0), F(1)])
    with pytest.raises(LambdasNotDistinct):
        monomial_decomposition(F(2), 2, [F(1), F(1)])
    with pytest.raises(SumMismatch):
        monomial_decomposition(F(5), 2, [F(1), F(2)])


def test_monomial_decomposition_small():
    # alpha x^2 + 2xy with lambdas (0, 3): mu_1 = -1/3, mu_2 = 1/3
    dec = monomial_decomposition(F(3), 2, [F(0), F(3)])
    assert expand_decomposition(dec) == {(2, 0): F(3), (1, 1): F(2)}
    target = monomial_decomposition_target(F(3), 2)
    assert verify_sym_decomposition(target, dec)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_monomial_decomposition_identity(data):
    d = data.draw(st.integers(2, 7), label="d")
    lams = data.draw(
        st.lists(
            st.fractions(min_value=-8, max_value=8, max_denominator=3),
            min_size=d,
            max_size=d,
            unique=True,
        ),
        label="lambdas",
    )
    alpha = sum(lams)
    dec = monomial_decomposition(alpha, d, lams)
    # route 1: in-test binomial expansion
    want = {(d, 0): alpha, (d - 1, 1): F(d)}
    assert expand_decomposition(dec) == {k: v for k, v in want.items() if v != 0}
    # route 2: exact tensor comparison
    assert verify_sym_decomposition(monomial_decomposition_target(alpha, d), dec)


def test_verify_sym_decomposition_guards():
    dec = monomial_decomposition(F(1), 2, [F(0), F(1)])
    with pytest.raises(DegreeMismatch):
        verify_sym_decomposition(monomial_decomposition_target(F(1), 3), dec)
    bad_dims = SymDecomposition(2, [(F(1), (F(1), F(0), F(0)))])
    with pytest.raises(DimensionMismatch):
        verify_sym_decomposition(monomial_decomposition_target(F(1), 2), bad_dims)
    # a wrong coefficient is a clean False, not an exception
    wrong = SymDecomposition(2, [(F(1), (F(1), F(1)))])
    assert not verify_sym_decomposition(monomial_decomposition_target(F(1), 2), wrong)


def test_sym_decomposition_json_roundtrip():
    dec = monomial_decomposition(F(5, 2), 3, [F(0), F(1), F(3, 2)])
    again = SymDecomposition.from_json_dict(dec.to_json_dict())
    assert again.degree == dec.degree and again.terms == dec.terms


def test_sym_decomposition_evaluate_matches_powers():
    dec = SymDecomposition(2, [(F(2), (F(1), F(1)))])
    t = dec.evaluate()
    assert t.data == {(1, 1): F(2), (1, 2): F(2), (2, 1): F(2), (2, 2): F(2)}
    with pytest.raises(BadLength):
        SymDecomposition(2, []).evaluate()


# ----------------------------------------------------------------- absence


def test_binary_rank_one_membership():
    # positive pure-power coefficient: no real witness at even degree
    assert binary_sym_rank_one_in_modspace(F(3), 4) is None
    assert binary_sym_rank_one_in_modspace(F(3), 6) is None
    assert binary_sym_rank_one_in_modspace(F(1, 7), 4) is None
    # nonpositive: witness exists, rational when -k is a perfect power
    w = binary_sym_rank_one_in_modspace(F(-16), 4)
    assert isinstance(w, RankOneWitness)
    assert w.alpha == 2 and w.alpha_power == 16
    w = binary_sym_rank_one_in_modspace(F(-5), 4)
    assert w is not None and w.alpha is None and w.alpha_power == 5
    w = binary_sym_rank_one_in_modspace(F(0), 6)
    assert w is not None and w.alpha == 0
    with pytest.raises(OddDegree):
        binary_sym_rank_one_in_modspace(F(3), 5)
    with pytest.raises(OddDegree):
        binary_sym_rank_one_in_modspace(F(3), 1)


@settings(max_examples=30)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=10), st.sampled_from([2, 4, 6]))
def test_binary_rank_one_membership_sign_rule(k, d):
    w = binary_sym_rank_one_in_modspace(F(k), d)
    if k > 0:
        assert w is None
    else:
        assert w is not None and w.alpha_power == -F(k)
        if w.alpha is not None:
            assert w.alpha**d == -F(k)
