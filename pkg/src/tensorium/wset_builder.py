"""Generators for the rank-one slice families behind the counterexamples.

Each generator is a vector u of length 4n; the slice tensors themselves are
the symmetric powers u^(order), never materialized here. The first half of u
is supported on paired coordinates (2i-1, 2i) grouped by block index i, the
second half likewise; the two halves carry independent block subsets with
family-specific scaling on the second half.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import BadLength, IndexOutOfRange, NTooSmall
from .exact_linalg import format_rational, parse_rational

Vector = tuple[Fraction, ...]

# -----------------------------------------------------------------
# building blocks
# -----------------------------------------------------------------


def alpha(i: int, n: int) -> Vector:
    """Length-2n indicator of block i: ones at positions 2i-1 and 2i."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"block index {i} outside 1..{n}")
    one = Fraction(1)
    zero = Fraction(0)
    return tuple(
        one if p in (2 * i - 1, 2 * i) else zero for p in range(1, 2 * n + 1)
    )


def _block_sum(blocks: tuple[int, ...], n: int, scale: Fraction) -> Vector:
    acc = [Fraction(0)] * (2 * n)
    for b in blocks:
        if not 1 <= b <= n:
            raise IndexOutOfRange(f"block index {b} outside 1..{n}")
        acc[2 * b - 2] += scale
        acc[2 * b - 1] += scale
    return tuple(acc)


def pi_permute(u) -> Vector:
    """(i_1..i_2n | k_1..k_2n) -> (k_2..k_2n, k_1, i_2..i_2n, i_1)."""
    u = tuple(u)
    if len(u) < 4 or len(u) % 4 != 0:
        raise BadLength(f"need length 4n, got {len(u)}")
    half = len(u) // 2
    ipart, kpart = u[:half], u[half:]
    return kpart[1:] + (kpart[0],) + ipart[1:] + (ipart[0],)


# -----------------------------------------------------------------
# the generator sets
# -----------------------------------------------------------------


@dataclass(frozen=True)
class WVector:
    """One generator: the vector, its family tag, and the block indices.

    idx holds the (strictly increasing) first-half and second-half block
    tuples that produced u. For a pi-image the tags describe the preimage.
    """

    u: Vector
    family: int
    idx: tuple[tuple[int, ...], tuple[int, ...]]

    def to_json_dict(self) -> dict:
        return {
            "u": [format_rational(x) for x in self.u],
            "family": self.family,
            "idx": [list(self.idx[0]), list(self.idx[1])],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> WVector:
        return cls(
            tuple(parse_rational(x) for x in d["u"]),
            int(d["family"]),
            (tuple(d["idx"][0]), tuple(d["idx"][1])),
        )


@dataclass
class WSet:
    """Two halves of generators; half2 is the pi-image of half1, in order."""

    n: int
    order: int  # tensor order of the generators u^(order)
    half1: list[WVector]
    half2: list[WVector]

    @property
    def size(self) -> int:
        return len(self.half1) + len(self.half2)

    def vectors(self) -> list[Vector]:
        return [w.u for w in self.half1] + [w.u for w in self.half2]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "order": self.order,
            "w1": [w.to_json_dict() for w in self.half1],
            "w2": [w.to_json_dict() for w in self.half2],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> WSet:
        return cls(
            int(d["n"]),
            int(d["order"]),
            [WVector.from_json_dict(w) for w in d["w1"]],
            [WVector.from_json_dict(w) for w in d["w2"]],
        )


# family number -> (first-half subset size, second-half subset size,
# second-half scale as a function of n). Scale None marks an empty half.
# Order matters: it fixes generator indexing for every certificate.
_ORDER6_FAMILIES: list[tuple[int, int, object]] = [
    (4, 0, None),
    (3, 0, None),
    (2, 0, None),
    (1, 0, None),
    (4, 1, lambda n: Fraction(1)),
    (2, 1, lambda n: Fraction((n - 2) ** 2, (n - 3) * (n - 1))),
    (1, 1, lambda n: Fraction(n - 2, n - 3)),
    (1, 1, lambda n: Fraction(n - 1, n - 4)),
    (3, 2, lambda n: Fraction(1)),
    (2, 2, lambda n: Fraction(n - 2, n - 3)),
    (2, 1, lambda n: Fraction(n - 2, n - 4)),
    (0, 1, lambda n: Fraction(1)),
    (3, 1, lambda n: Fraction(n - 3, n - 4)),
    (3, 1, lambda n: Fraction(n - 2, n - 1)),
    (1, 2, lambda n: Fraction(n - 1, n - 3)),
    (0, 2, lambda n: Fraction(1)),
]


def order6_family_sizes(n: int) -> list[int]:
    """Cardinality of each of the 16 families, in family order."""
    return [
        comb(n, e) * (comb(n, k) if k else 1)
        for e, k, _ in _ORDER6_FAMILIES
    ]


def w1_count_formula(n: int) -> int:
    """Closed-form count of half1 for the order-6 set."""
    return sum(order6_family_sizes(n))


def _family_vectors(
    n: int,
    family: int,
    e_size: int,
    k_size: int,
    e_scale: Fraction,
    k_scale: Fraction | None,
) -> list[WVector]:
    out = []
    blocks = range(1, n + 1)
    e_subsets = list(itertools.combinations(blocks, e_size))
    k_subsets = list(itertools.combinations(blocks, k_size))
    for es in e_subsets:
        left = _block_sum(es, n, e_scale)
        for ks in k_subsets:
            right = (
                _block_sum(ks, n, k_scale)
                if k_size
                else tuple([Fraction(0)] * (2 * n))
            )
            out.append(WVector(left + right, family, (es, ks)))
    return out


def build_w_order6(n: int) -> WSet:
    """The 16-family generator set for the order-6 counterexample.

    Families are enumerated in table order with lexicographic index tuples;
    half2 applies pi_permute elementwise. Needs n >= 5 so the scale
    denominators n-3, n-4, n-1 are nonzero.
    """
    if n < 5:
        raise NTooSmall(f"order-6 families need n >= 5, got {n}")
    half1: list[WVector] = []
    for fam, (e_size, k_size, scale) in enumerate(_ORDER6_FAMILIES, start=1):
        k_scale = scale(n) if scale is not None else None
        half1.extend(
            _family_vectors(n, fam, e_size, k_size, Fraction(1), k_scale)
        )
    if len(half1) != w1_count_formula(n):
        raise AssertionError("family enumeration disagrees with closed form")
    for w in half1:
        for p in range(0, 4 * n, 2):
            if w.u[p] != w.u[p + 1]:
                raise AssertionError(f"pair structure broken in family {w.family}")
    half2 = [WVector(pi_permute(w.u), w.family, w.idx) for w in half1]
    seen = set(w.u for w in half1)
    overlap = [w for w in half2 if w.u in seen]
    if overlap:
        raise AssertionError("halves are not disjoint")
    return WSet(n, 5, half1, half2)


# the order-4 construction is fixed at n=5 with order-3 generators
_ORDER4_N = 5

_ORDER4_FAMILIES: list[tuple[int, int, Fraction, Fraction | None]] = [
    (2, 1, Fraction(1), Fraction(1)),
    (2, 0, Fraction(1), None),
    (1, 1, Fraction(3), Fraction(4)),
    (1, 0, Fraction(1), None),
    (0, 1, Fraction(1), Fraction(1)),
]


def build_w_order4() -> WSet:
    """The five-family order-4 generator set (n = 5, order-3 generators)."""
    n = _ORDER4_N
    half1: list[WVector] = []
    for fam, (e_size, k_size, e_scale, k_scale) in enumerate(
        _ORDER4_FAMILIES, start=1
    ):
        half1.extend(_family_vectors(n, fam, e_size, k_size, e_scale, k_scale))
    if len(half1) != 95:
        raise AssertionError("order-4 enumeration should give 95 generators")
    half2 = [WVector(pi_permute(w.u), w.family, w.idx) for w in half1]
    return WSet(n, 3, half1, half2)
