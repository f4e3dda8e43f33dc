"""Slice-space bases, spanning certificates, and Sylvester-type rank bounds.

Rank itself is never claimed exactly in general. What this module certifies:
  - lower bounds: flattening ranks, combined by sylvester_bound;
  - upper bounds: spanning certificates for slice spaces (a list of rank-one
    generators covering every slice-space basis element bounds the
    decomposable slice rank by the list length);
  - explicit decompositions, verified entrywise with zero tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import (
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
from .exact_linalg import format_rational, in_span, parse_rational
from .tensor_core import (
    DENSE_CELL_GUARD,
    PolyForm,
    Tensor,
    is_rank_one,
    is_symmetric,
    multi_slice,
    poly_to_tensor,
    sym_power,
    tensor_add,
    tensor_scale,
    unfold,
)

# -----------------------------------------------------------------
# slice spaces
# -----------------------------------------------------------------


def tensor_to_vector(t: Tensor) -> list[Fraction]:
    """Lexicographic vectorization (dense; guarded)."""
    total = prod(t.dims) if t.dims else 1
    if total > DENSE_CELL_GUARD:
        raise DimensionMismatch("tensor too large to vectorize densely")
    vec = [Fraction(0)] * total
    strides = []
    s = 1
    for d in reversed(t.dims):
        strides.append(s)
        s *= d
    strides.reverse()
    for k, v in t.data.items():
        pos = sum((ki - 1) * st for ki, st in zip(k, strides))
        vec[pos] = v
    return vec


@dataclass(frozen=True)
class SliceSpaceBasis:
    """Greedy lexicographic basis of the mode-J slice space of a tensor."""

    J: tuple[int, ...]
    basis: list[Tensor]
    selected: list[tuple[int, ...]]  # the complement-index tuples picked
    dim: int


def slice_space_basis(t: Tensor, modes) -> SliceSpaceBasis:
    """Maximal independent set of J-slices, scanned in lex complement order.

    The dim equals rank_exact(flatten(t, J)): both are the dimension of the
    span of the slices obtained by fixing the complement indices.
    """
    J = tuple(sorted(set(modes)))
    for j in J:
        if not 1 <= j <= t.order:
            raise DimensionMismatch(f"mode {j} outside 1..{t.order}")
    Jc = tuple(j for j in range(1, t.order + 1) if j not in J)
    basis: list[Tensor] = []
    selected: list[tuple[int, ...]] = []
    reduced: list[list[Fraction]] = []  # row echelon shadow of the basis
    pivots: list[int] = []
    for idx in itertools.product(*(range(1, t.dims[j - 1] + 1) for j in Jc)):
        sl = multi_slice(t, Jc, idx)
        vec = tensor_to_vector(sl)
        for piv, row in zip(pivots, reduced):
            if vec[piv] != 0:
                f = vec[piv] / row[piv]
                vec = [a - f * b for a, b in zip(vec, row)]
        piv = next((i for i, x in enumerate(vec) if x != 0), None)
        if piv is None:
            continue
        basis.append(sl)
        selected.append(idx)
        reduced.append(vec)
        pivots.append(piv)
    return SliceSpaceBasis(J, basis, selected, len(basis))


@dataclass(frozen=True)
class SpanningCertificate:
    """Witness that every slice-space basis element expands over the generators.

    Certifies (symmetric) decomposable slice rank at most len(generators).
    """

    J: tuple[int, ...]
    symmetric: bool
    generators: list[Tensor]
    basis: SliceSpaceBasis
    coefficients: list[list[Fraction]]

    @property
    def upper_bound(self) -> int:
        return len(self.generators)


def verify_spanning_certificate(
    t: Tensor, modes, gens: list[Tensor], symmetric: bool = False
) -> SpanningCertificate:
    """Check generators are rank one (symmetric if flagged) and span the slices.

    Raises GeneratorNotRankOne / GeneratorNotSymmetric / SpanFailure; on
    success returns the expansion coefficients of every basis element.
    """
    J = tuple(sorted(set(modes)))
    slice_dims = tuple(t.dims[j - 1] for j in J)
    for pos, g in enumerate(gens):
        if g.dims != slice_dims:
            raise DimensionMismatch(
                f"generator {pos + 1} has dims {g.dims}, slices have {slice_dims}"
            )
        if not is_rank_one(g):
            raise GeneratorNotRankOne(f"generator {pos + 1} is not rank one")
        if symmetric and not is_symmetric(g):
            raise GeneratorNotSymmetric(f"generator {pos + 1} is not symmetric")
    basis = slice_space_basis(t, J)
    gen_vecs = [tensor_to_vector(g) for g in gens]
    coeffs: list[list[Fraction]] = []
    for elem, where in zip(basis.basis, basis.selected):
        c = in_span(tensor_to_vector(elem), gen_vecs)
        if c is None:
            raise SpanFailure(
                f"slice-space basis element at complement index {where} is not "
                "in the generator span"
            )
        coeffs.append(c)
    return SpanningCertificate(J, symmetric, list(gens), basis, coeffs)


def drk_unfolding(t: Tensor, modes) -> Tensor:
    """Order-(|J|+1) unfolding whose last mode merges the complement.

    The decomposable slice rank over J equals the rank of this tensor.
    """
    J = sorted(set(modes))
    Jc = [j for j in range(1, t.order + 1) if j not in J]
    if not Jc:
        raise InvalidPartition("J must be a proper subset of the modes")
    return unfold(t, [[j] for j in J] + [Jc])


def sylvester_bound(drk_J: int, drk_Jc: int, flat_rank: int) -> int:
    """Lower bound drk_J + drk_Jc - flat_rank for the (symmetric) rank."""
    if min(drk_J, drk_Jc, flat_rank) < 0:
        raise InconsistentInputs("negative input")
    if flat_rank > min(drk_J, drk_Jc):
        raise InconsistentInputs(
            f"flattening rank {flat_rank} exceeds a slice rank input "
            f"({drk_J}, {drk_Jc}); violates the basic chain"
        )
    return drk_J + drk_Jc - flat_rank


# -----------------------------------------------------------------
# symmetric decompositions
# -----------------------------------------------------------------


@dataclass(frozen=True)
class SymDecomposition:
    """Sum of coeff * (vector)^(sym power degree)."""

    degree: int
    terms: list[tuple[Fraction, tuple[Fraction, ...]]]

    def evaluate(self) -> Tensor:
        if not self.terms:
            raise BadLength("empty decomposition has no ambient dimension")
        width = len(self.terms[0][1])
        acc = Tensor.zeros((width,) * self.degree)
        for coeff, vec in self.terms:
            if len(vec) != width:
                raise DimensionMismatch("decomposition vectors of unequal length")
            acc = tensor_add(acc, tensor_scale(sym_power(list(vec), self.degree), coeff))
        return acc

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {
                    "coeff": format_rational(c),
                    "vector": [format_rational(x) for x in v],
                }
                for c, v in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> SymDecomposition:
        return cls(
            int(d["degree"]),
            [
                (
                    parse_rational(term["coeff"]),
                    tuple(parse_rational(x) for x in term["vector"]),
                )
                for term in d["terms"]
            ],
        )


def monomial_decomposition(
    alpha: Fraction, d: int, lambdas: list[Fraction]
) -> SymDecomposition:
    """Rank-d symmetric decomposition of x^(d-1) * (alpha*x + d*y).

    Terms are mu_i (lambda_i x + y)^d with mu_i = 1 / prod_{j != i}
    (lambda_i - lambda_j); requires the lambdas distinct and summing to
    alpha. The emitted decomposition is exact, verifiable with
    verify_sym_decomposition.
    """
    alpha = Fraction(alpha)
    lambdas = [Fraction(x) for x in lambdas]
    if len(lambdas) != d:
        raise BadLength(f"need exactly {d} lambdas, got {len(lambdas)}")
    if len(set(lambdas)) != len(lambdas):
        raise LambdasNotDistinct(f"repeated value in {lambdas}")
    if sum(lambdas) != alpha:
        raise SumMismatch(f"sum of lambdas is {sum(lambdas)}, alpha is {alpha}")
    terms = []
    for i, li in enumerate(lambdas):
        mu = Fraction(1)
        for j, lj in enumerate(lambdas):
            if j != i:
                mu /= li - lj
        terms.append((mu, (li, Fraction(1))))
    return SymDecomposition(d, terms)


def monomial_decomposition_target(alpha: Fraction, d: int) -> PolyForm:
    """x^(d-1) * (alpha*x + d*y) as a binary form of degree d."""
    alpha = Fraction(alpha)
    return PolyForm.make(
        2, d, {(d, 0): alpha, (d - 1, 1): Fraction(d)}
    )


def verify_sym_decomposition(t: Tensor | PolyForm, dec: SymDecomposition) -> bool:
    """Exact entrywise test that the decomposition sums to the target."""
    target = poly_to_tensor(t) if isinstance(t, PolyForm) else t
    if dec.degree != target.order:
        raise DegreeMismatch(
            f"decomposition degree {dec.degree}, target order {target.order}"
        )
    value = dec.evaluate()
    if value.dims != target.dims:
        raise DimensionMismatch(f"{value.dims} vs {target.dims}")
    return value.data == target.data


# -----------------------------------------------------------------
# rank-one members of the binary mixed-monomial Mod space
# -----------------------------------------------------------------


@dataclass(frozen=True)
class RankOneWitness:
    """A decomposable member (x + alpha*y)^d; alpha is None when irrational.

    alpha_power is the value alpha^d must take; when alpha is None the
    witness exists over R but not over Q, and only the defining equation is
    reported.
    """

    d: int
    alpha: Fraction | None
    alpha_power: Fraction


def _exact_root(x: Fraction, d: int) -> Fraction | None:
    """The rational d-th root of x >= 0, if one exists."""
    if x < 0:
        return None

    def iroot(n: int) -> int | None:
        if n == 0:
            return 0
        r = round(n ** (1.0 / d))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**d == n:
                return cand
        return None

    p = iroot(x.numerator)
    q = iroot(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def binary_sym_rank_one_in_modspace(k: Fraction, d: int) -> RankOneWitness | None:
    """Search x^d - k*y^d Mod {x^(d-2)y, ..., xy^(d-2)} for a decomposable.

    Adding multiples of the mixed monomials to every slice can change any
    coefficient except those of x^d and y^d, so a decomposable member
    (ax + by)^d needs a^d = 1 and b^d = -k. For even d and k > 0 there is no
    real b, hence no witness: the minimum symmetric rank over the space is
    at least 2. For k <= 0 the real witness exists and is returned with an
    exact alpha when -k is a d-th power of a rational.
    """
    if d < 2 or d % 2 != 0:
        raise OddDegree(f"construction needs even degree >= 2, got {d}")
    k = Fraction(k)
    if k > 0:
        return None
    target = -k
    return RankOneWitness(d, _exact_root(target, d), target)
