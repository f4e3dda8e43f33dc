"""Sparse exact tensors with 1-based indexing, and polynomial round trips.

A Tensor is an immutable map from 1-based index tuples to nonzero Fractions.
There is no dense storage mode: dense layouts exist only at the JSON
boundary (small tensors serialize as flat "dense" arrays, everything else as
sorted COO). Ops that must materialize a dense object (flatten, ones_tensor,
clone) guard their output size.

Symmetric tensors correspond to polynomials two ways:
  - poly_to_tensor / tensor_to_poly: the exact bijection, splitting each
    coefficient uniformly over the orbit of its monomial (round-trip exact);
  - monomial_indicator / indicator_tensor: entry 1 on every orbit position,
    the scaling used by identity targets like "the clone of x^4 y" and by
    adjoined generator lists. The two differ by the orbit size per monomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidPartition,
    NonCubicalTensor,
    NotBinary,
    NotSymmetric,
)
from .exact_linalg import RatMatrix, format_rational, parse_rational

# Guard for any op that would materialize this many cells at once.
DENSE_CELL_GUARD = 4_000_000

# JSON tensors at or below this many total cells use the flat dense layout.
DENSE_JSON_MAX = 4096

Key = tuple[int, ...]


@dataclass(frozen=True)
class Tensor:
    """dims[j] is the size of mode j+1; data maps 1-based keys to nonzeros."""

    dims: tuple[int, ...]
    data: dict[Key, Fraction] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, dims: tuple[int, ...], entries: dict) -> Tensor:
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise DimensionMismatch(f"nonpositive mode size in {dims}")
        data: dict[Key, Fraction] = {}
        for key, val in entries.items():
            key = tuple(int(k) for k in key)
            _check_key(dims, key)
            v = Fraction(val)
            if v != 0:
                data[key] = v
        return cls(dims, data)

    @classmethod
    def _wrap(cls, dims: tuple[int, ...], data: dict[Key, Fraction]) -> Tensor:
        """Trusted constructor: caller guarantees canonical zero-free data."""
        return cls(dims, data)

    @classmethod
    def zeros(cls, dims: tuple[int, ...]) -> Tensor:
        return cls(tuple(dims), {})

    @classmethod
    def from_dense(cls, dims: tuple[int, ...], flat: list) -> Tensor:
        dims = tuple(dims)
        total = prod(dims) if dims else 1
        if len(flat) != total:
            raise DimensionMismatch(f"dense payload {len(flat)} != {total}")
        data = {}
        for pos, key in enumerate(_lex_keys(dims)):
            v = Fraction(flat[pos])
            if v != 0:
                data[key] = v
        return cls(dims, data)

    @property
    def order(self) -> int:
        return len(self.dims)

    @property
    def nnz(self) -> int:
        return len(self.data)

    def entry(self, key: Key) -> Fraction:
        key = tuple(key)
        _check_key(self.dims, key)
        return self.data.get(key, Fraction(0))

    def is_cubical(self) -> bool:
        return len(set(self.dims)) <= 1

    def to_json_dict(self) -> dict:
        total = prod(self.dims) if self.dims else 1
        if total <= DENSE_JSON_MAX:
            flat = [
                format_rational(self.data.get(k, Fraction(0)))
                for k in _lex_keys(self.dims)
            ]
            return {"dims": list(self.dims), "format": "dense", "entries": flat}
        return {
            "dims": list(self.dims),
            "format": "coo",
            "entries": [
                [list(k), format_rational(v)] for k, v in sorted(self.data.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> Tensor:
        dims = tuple(int(x) for x in d["dims"])
        if d.get("format", "coo") == "dense":
            return cls.from_dense(dims, [parse_rational(s) for s in d["entries"]])
        return cls.from_entries(
            dims, {tuple(k): parse_rational(v) for k, v in d["entries"]}
        )


def _check_key(dims: tuple[int, ...], key: Key) -> None:
    if len(key) != len(dims):
        raise DimensionMismatch(f"key {key} has order {len(key)}, tensor {len(dims)}")
    for k, d in zip(key, dims):
        if not 1 <= k <= d:
            raise IndexOutOfRange(f"index {k} outside 1..{d} in key {key}")


def _lex_keys(dims: tuple[int, ...]):
    if not dims:
        yield ()
        return
    yield from itertools.product(*(range(1, d + 1) for d in dims))


# -----------------------------------------------------------------
# arithmetic helpers
# -----------------------------------------------------------------


def tensor_add(a: Tensor, b: Tensor) -> Tensor:
    if a.dims != b.dims:
        raise DimensionMismatch(f"{a.dims} vs {b.dims}")
    data = dict(a.data)
    for k, v in b.data.items():
        s = data.get(k, Fraction(0)) + v
        if s:
            data[k] = s
        else:
            data.pop(k, None)
    return Tensor._wrap(a.dims, data)


def tensor_scale(t: Tensor, c) -> Tensor:
    c = Fraction(c)
    if c == 0:
        return Tensor.zeros(t.dims)
    return Tensor._wrap(t.dims, {k: v * c for k, v in t.data.items()})


def tensor_sub(a: Tensor, b: Tensor) -> Tensor:
    return tensor_add(a, tensor_scale(b, -1))


# -----------------------------------------------------------------
# slicing and reshaping
# -----------------------------------------------------------------


def slice(t: Tensor, j: int, i: int) -> Tensor:  # noqa: A001 - domain term
    """Mode-j slice at index i: order drops by one. 1-based j and i."""
    if not 1 <= j <= t.order:
        raise IndexOutOfRange(f"mode {j} outside 1..{t.order}")
    if not 1 <= i <= t.dims[j - 1]:
        raise IndexOutOfRange(f"index {i} outside 1..{t.dims[j - 1]}")
    dims = t.dims[: j - 1] + t.dims[j:]
    data = {
        k[: j - 1] + k[j:]: v for k, v in t.data.items() if k[j - 1] == i
    }
    return Tensor._wrap(dims, data)


def multi_slice(t: Tensor, modes: tuple[int, ...], idx: tuple[int, ...]) -> Tensor:
    """Fix several modes at once; modes are deduplicated and must be valid."""
    modes = tuple(modes)
    idx = tuple(idx)
    if len(modes) != len(idx):
        raise DimensionMismatch("one index per fixed mode required")
    if len(set(modes)) != len(modes):
        raise IndexOutOfRange(f"repeated mode in {modes}")
    for j, i in zip(modes, idx):
        if not 1 <= j <= t.order:
            raise IndexOutOfRange(f"mode {j} outside 1..{t.order}")
        if not 1 <= i <= t.dims[j - 1]:
            raise IndexOutOfRange(f"index {i} outside 1..{t.dims[j - 1]}")
    fixed = dict(zip(modes, idx))
    keep = [j for j in range(1, t.order + 1) if j not in fixed]
    dims = tuple(t.dims[j - 1] for j in keep)
    data = {}
    for k, v in t.data.items():
        if all(k[j - 1] == fixed[j] for j in fixed):
            data[tuple(k[j - 1] for j in keep)] = v
    return Tensor._wrap(dims, data)


def _lex_rank(key_part: tuple[int, ...], dims_part: tuple[int, ...]) -> int:
    r = 0
    for k, d in zip(key_part, dims_part):
        r = r * d + (k - 1)
    return r


def flatten(t: Tensor, modes: tuple[int, ...]) -> RatMatrix:
    """Matrix with rows indexed by J-tuples (lex), columns by the complement.

    flatten(t, J) and flatten(t, J^c) are exact transposes. J may be empty
    (single row) or everything (single column).
    """
    J = sorted(set(modes))
    for j in J:
        if not 1 <= j <= t.order:
            raise IndexOutOfRange(f"mode {j} outside 1..{t.order}")
    Jc = [j for j in range(1, t.order + 1) if j not in J]
    rdims = tuple(t.dims[j - 1] for j in J)
    cdims = tuple(t.dims[j - 1] for j in Jc)
    nrows = prod(rdims) if rdims else 1
    ncols = prod(cdims) if cdims else 1
    if nrows * ncols > DENSE_CELL_GUARD:
        raise DimensionMismatch(
            f"flattening would materialize {nrows}x{ncols} cells; "
            "use sparse ops instead"
        )
    flat = [Fraction(0)] * (nrows * ncols)
    for k, v in t.data.items():
        r = _lex_rank(tuple(k[j - 1] for j in J), rdims)
        c = _lex_rank(tuple(k[j - 1] for j in Jc), cdims)
        flat[r * ncols + c] = v
    return RatMatrix(nrows, ncols, tuple(flat))


def unfold(t: Tensor, partition: list[list[int]]) -> Tensor:
    """Merge mode blocks: order becomes len(partition).

    Each block lists 1-based modes; blocks must partition {1..d}. Within a
    block the given mode order sets the lex significance (first is most
    significant), matching flatten's convention when blocks are sorted.
    """
    seen: set[int] = set()
    for block in partition:
        if not block:
            raise InvalidPartition("empty block")
        for j in block:
            if not 1 <= j <= t.order or j in seen:
                raise InvalidPartition(f"mode {j} repeated or out of range")
            seen.add(j)
    if len(seen) != t.order:
        raise InvalidPartition(f"blocks cover {sorted(seen)}, need 1..{t.order}")
    bdims = [tuple(t.dims[j - 1] for j in block) for block in partition]
    dims = tuple(prod(bd) for bd in bdims)
    data = {}
    for k, v in t.data.items():
        key = tuple(
            1 + _lex_rank(tuple(k[j - 1] for j in block), bd)
            for block, bd in zip(partition, bdims)
        )
        data[key] = v
    return Tensor._wrap(dims, data)


# -----------------------------------------------------------------
# symmetry
# -----------------------------------------------------------------


def sym_power(u: list[Fraction], d: int) -> Tensor:
    """u^(tensor d): entry at (k_1..k_d) is the product of u[k_i]."""
    if d < 1:
        raise DimensionMismatch("power must be at least 1")
    u = [Fraction(x) for x in u]
    n = len(u)
    support = [i + 1 for i, x in enumerate(u) if x != 0]
    if len(support) ** d > DENSE_CELL_GUARD:
        raise DimensionMismatch("symmetric power support too large to materialize")
    data = {}
    for key in itertools.product(support, repeat=d):
        data[key] = prod(u[k - 1] for k in key)
    return Tensor._wrap((n,) * d, data)


def is_symmetric(t: Tensor) -> bool:
    if not t.is_cubical():
        return False
    groups: dict[Key, list[Fraction]] = {}
    for k, v in t.data.items():
        groups.setdefault(tuple(sorted(k)), []).append(v)
    for rep, vals in groups.items():
        if any(v != vals[0] for v in vals):
            return False
        # every permutation of rep must be stored, not implicitly zero
        orbit = factorial(len(rep))
        for g in set(rep):
            orbit //= factorial(rep.count(g))
        if len(vals) != orbit:
            return False
    return True


def symmetrize(t: Tensor) -> Tensor:
    """Average over all mode permutations. Cost grows with d! * nnz."""
    if not t.is_cubical():
        raise NonCubicalTensor(f"dims {t.dims}")
    d = t.order
    if t.nnz * factorial(d) > 8 * DENSE_CELL_GUARD:
        raise DimensionMismatch("symmetrization too large")
    acc: dict[Key, Fraction] = {}
    for k, v in t.data.items():
        for p in itertools.permutations(k):
            acc[p] = acc.get(p, Fraction(0)) + v
    scale = Fraction(1, factorial(d))
    data = {k: v * scale for k, v in acc.items() if v != 0}
    return Tensor._wrap(t.dims, data)


def is_rank_one(t: Tensor) -> bool:
    """True iff t is a nonzero outer product v_1 x ... x v_d.

    Equivalent to every single-mode flattening having rank <= 1; checked by
    factoring the sparse support, which avoids materializing flattenings.
    The zero tensor is not rank one (it has rank 0).
    """
    if not t.data:
        return False
    d = t.order
    if d == 0:
        return True  # scalar, nonzero
    ref = min(t.data)
    a = t.data[ref]
    vecs: list[dict[int, Fraction]] = [dict() for _ in range(d)]
    for k, v in t.data.items():
        diff = [j for j in range(d) if k[j] != ref[j]]
        if len(diff) == 1:
            vecs[diff[0]][k[diff[0]]] = v
    for j in range(d):
        vecs[j][ref[j]] = a
    expected = prod(len(vj) for vj in vecs)
    if expected != t.nnz:
        return False
    scale = a ** (d - 1)
    for k, v in t.data.items():
        num = Fraction(1)
        for j in range(d):
            w = vecs[j].get(k[j])
            if w is None:
                return False
            num *= w
        if num != v * scale:
            return False
    return True


# -----------------------------------------------------------------
# polynomial forms
# -----------------------------------------------------------------


@dataclass(frozen=True)
class PolyForm:
    """Homogeneous polynomial: exponent tuples (length nvars) to coefficients."""

    nvars: int
    degree: int
    terms: dict[tuple[int, ...], Fraction]

    @classmethod
    def make(cls, nvars: int, degree: int, terms: dict) -> PolyForm:
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise DimensionMismatch(f"exponent tuple {exps} invalid for {nvars} vars")
            if sum(exps) != degree:
                raise DegreeMismatch(
                    f"term {exps} has degree {sum(exps)}, expected {degree}"
                )
            c = Fraction(coeff)
            if c != 0:
                clean[exps] = c
        return cls(nvars, degree, clean)

    def to_json_dict(self) -> dict:
        return {
            "vars": _var_names(self.nvars),
            "degree": self.degree,
            "terms": [
                [list(e), format_rational(c)] for e, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> PolyForm:
        # "vars" is a name list; a bare count is accepted too
        raw = d["vars"]
        nvars = len(raw) if isinstance(raw, (list, tuple)) else int(raw)
        return cls.make(
            nvars,
            int(d["degree"]),
            {tuple(e): parse_rational(c) for e, c in d["terms"]},
        )


def _var_names(nvars: int) -> list[str]:
    letters = ("x", "y", "z", "w")
    return [letters[i] if i < 4 else f"v{i + 1}" for i in range(nvars)]


def _orbit_of_exponents(exps: tuple[int, ...]) -> tuple[list[Key], int]:
    """All index tuples whose coordinate counts match exps, plus their number."""
    positions: list[int] = []
    for var, e in enumerate(exps, start=1):
        positions.extend([var] * e)
    orbit = sorted(set(itertools.permutations(positions)))
    return orbit, len(orbit)


def poly_to_tensor(p: PolyForm) -> Tensor:
    """The symmetric tensor of p: each coefficient split over its orbit."""
    data: dict[Key, Fraction] = {}
    for exps, coeff in p.terms.items():
        orbit, size = _orbit_of_exponents(exps)
        share = coeff / size
        for key in orbit:
            data[key] = share
    return Tensor._wrap((p.nvars,) * p.degree, data)


def tensor_to_poly(t: Tensor) -> PolyForm:
    """Inverse of poly_to_tensor. Requires a symmetric cubical tensor."""
    if not t.is_cubical():
        raise NonCubicalTensor(f"dims {t.dims}")
    if not is_symmetric(t):
        raise NotSymmetric("tensor_to_poly needs a symmetric tensor")
    n = t.dims[0] if t.dims else 0
    d = t.order
    terms: dict[tuple[int, ...], Fraction] = {}
    for k, v in t.data.items():
        if tuple(sorted(k)) != k:
            continue
        exps = [0] * n
        for idx in k:
            exps[idx - 1] += 1
        _, size = _orbit_of_exponents(tuple(exps))
        terms[tuple(exps)] = v * size
    return PolyForm.make(n, d, terms)


def monomial_indicator(nvars: int, exps: tuple[int, ...]) -> Tensor:
    """Symmetric tensor with entry 1 on every orbit position of the monomial."""
    exps = tuple(int(e) for e in exps)
    if len(exps) != nvars or any(e < 0 for e in exps):
        raise DimensionMismatch(f"bad exponents {exps}")
    d = sum(exps)
    orbit, _ = _orbit_of_exponents(exps)
    return Tensor._wrap((nvars,) * d, {k: Fraction(1) for k in orbit})


def indicator_tensor(p: PolyForm) -> Tensor:
    """Sum of coeff * monomial_indicator over the terms of p.

    This is the scaling printed identity targets use; it differs from
    poly_to_tensor by the orbit size of each monomial.
    """
    data: dict[Key, Fraction] = {}
    for exps, coeff in p.terms.items():
        orbit, _ = _orbit_of_exponents(exps)
        for key in orbit:
            s = data.get(key, Fraction(0)) + coeff
            if s:
                data[key] = s
            else:
                data.pop(key, None)
    return Tensor._wrap((p.nvars,) * p.degree, data)


# -----------------------------------------------------------------
# clones and restrictions
# -----------------------------------------------------------------


def clone(t: Tensor, n: int) -> Tensor:
    """Blow each binary index up into a block of size n: dims go 2 -> 2n.

    Index 1 becomes the block {1..n}, index 2 the block {n+1..2n}; the entry
    is constant on each product block.
    """
    if any(d != 2 for d in t.dims):
        raise NotBinary(f"clone needs all modes of size 2, got {t.dims}")
    if n < 1:
        raise DimensionMismatch("block size must be positive")
    d = t.order
    if t.nnz * n**d > 8 * DENSE_CELL_GUARD:
        raise DimensionMismatch(
            "clone would materialize too many entries; keep it implicit"
        )
    ranges = {1: range(1, n + 1), 2: range(n + 1, 2 * n + 1)}
    data: dict[Key, Fraction] = {}
    for k, v in t.data.items():
        for key in itertools.product(*(ranges[b] for b in k)):
            data[key] = v
    return Tensor._wrap((2 * n,) * d, data)


def is_clone(t: Tensor, n: int) -> Tensor | None:
    """Recover the binary core if t = clone(core, n); None otherwise."""
    if n < 1 or any(d != 2 * n for d in t.dims):
        return None
    d = t.order
    rep = {1: 1, 2: n + 1}
    core: dict[Key, Fraction] = {}
    expected_nnz = 0
    for b in itertools.product((1, 2), repeat=d):
        v = t.data.get(tuple(rep[x] for x in b), Fraction(0))
        if v != 0:
            core[b] = v
            expected_nnz += n**d
    if t.nnz != expected_nnz:
        return None
    for k, v in t.data.items():
        b = tuple(1 if x <= n else 2 for x in k)
        if core.get(b) != v:
            return None
    return Tensor._wrap((2,) * d, core)


def restrict(t: Tensor, block) -> Tensor:
    """Restrict to an index subset per mode, reindexed to 1..len(subset).

    block is either one iterable of indices (applied to every mode) or a
    list of per-mode iterables.
    """
    if block and isinstance(next(iter(block)), int):
        blocks = [list(block)] * t.order
    else:
        blocks = [list(b) for b in block]
    if len(blocks) != t.order:
        raise DimensionMismatch(f"{len(blocks)} blocks for order {t.order}")
    maps: list[dict[int, int]] = []
    for j, b in enumerate(blocks):
        for idx in b:
            if not 1 <= idx <= t.dims[j]:
                raise IndexOutOfRange(f"index {idx} outside mode {j + 1}")
        if len(set(b)) != len(b):
            raise IndexOutOfRange(f"repeated index in block for mode {j + 1}")
        maps.append({idx: pos + 1 for pos, idx in enumerate(b)})
    dims = tuple(len(b) for b in blocks)
    data = {}
    for k, v in t.data.items():
        try:
            key = tuple(maps[j][k[j]] for j in range(t.order))
        except KeyError:
            continue
        data[key] = v
    return Tensor._wrap(dims, data)


def ones_tensor(size: int, d: int) -> Tensor:
    """All-ones cubical tensor of shape size^d."""
    if size < 0 or d < 1:
        raise DimensionMismatch("size must be >= 0 and order >= 1")
    if size**d > DENSE_CELL_GUARD:
        raise DimensionMismatch("ones tensor too large to materialize")
    data = {k: Fraction(1) for k in itertools.product(range(1, size + 1), repeat=d)}
    return Tensor._wrap((size,) * d, data)
