"""Adjoining constructions and Mod spaces.

Adjoining grows every mode of a core tensor by extra labeled indices, each
new index carrying a prescribed order-(d-1) slice; entries hit by two or
more new indices are zero. A ModSpace is the affine family obtained from a
base tensor by adding, independently for every mode and every slice of that
mode, an element of the span of that mode's increment generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotSymmetric,
    ParameterShapeMismatch,
)
from .exact_linalg import format_rational, parse_rational, solve_rational
from .tensor_core import Key, Tensor, is_symmetric, tensor_sub

# -----------------------------------------------------------------
# adjoining
# -----------------------------------------------------------------


@dataclass(frozen=True)
class AdjoinSpec:
    """Core tensor plus, per mode, the ordered list of adjoined slices."""

    core: Tensor
    adjoined: list[list[Tensor]]

    def to_json_dict(self) -> dict:
        return {
            "core": self.core.to_json_dict(),
            "adjoined": [[t.to_json_dict() for t in mode] for mode in self.adjoined],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> AdjoinSpec:
        return cls(
            Tensor.from_json_dict(d["core"]),
            [[Tensor.from_json_dict(t) for t in mode] for mode in d["adjoined"]],
        )


def _reduced_dims(dims: tuple[int, ...], j: int) -> tuple[int, ...]:
    return dims[:j] + dims[j + 1 :]


def adjoin(spec: AdjoinSpec) -> Tensor:
    """Materialize the adjoined tensor.

    Entry rule: core entries are kept; an entry whose mode-j index is the
    w-th adjoined label (and all other indices are core indices) equals the
    w-th adjoined slice of mode j at those indices; entries with two or more
    adjoined indices are zero.
    """
    core = spec.core
    d = core.order
    if len(spec.adjoined) != d:
        raise DimensionMismatch(
            f"adjoined lists for {len(spec.adjoined)} modes, core has order {d}"
        )
    for j, gens in enumerate(spec.adjoined):
        want = _reduced_dims(core.dims, j)
        for g in gens:
            if g.dims != want:
                raise DimensionMismatch(
                    f"mode {j + 1} slice has dims {g.dims}, expected {want}"
                )
    dims = tuple(core.dims[j] + len(spec.adjoined[j]) for j in range(d))
    data: dict[Key, Fraction] = dict(core.data)
    for j, gens in enumerate(spec.adjoined):
        base = core.dims[j]
        for w, g in enumerate(gens, start=1):
            label = base + w
            for k, v in g.data.items():
                data[k[:j] + (label,) + k[j:]] = v
    return Tensor._wrap(dims, data)


def sadjoin(core: Tensor, m: list[Tensor]) -> Tensor:
    """Symmetric adjoining: the same slice list on every mode.

    Requires a symmetric cubical core and symmetric order-(d-1) slices; the
    result is then symmetric.
    """
    if not core.is_cubical() or not is_symmetric(core):
        raise NotSymmetric("core must be a symmetric cubical tensor")
    for g in m:
        if g.order != core.order - 1 or not is_symmetric(g):
            raise NotSymmetric(
                f"adjoined slice with dims {g.dims} is not symmetric of order "
                f"{core.order - 1}"
            )
    return adjoin(AdjoinSpec(core, [list(m) for _ in range(core.order)]))


# -----------------------------------------------------------------
# Mod spaces
# -----------------------------------------------------------------


@dataclass(frozen=True)
class ModSpace:
    """base tensor + per-mode increment generator lists (kept as given).

    Generators are not span-reduced; parameter vectors refer to them by
    position, which keeps reported witnesses aligned with the labeled
    generators.
    """

    base: Tensor
    gens: list[list[Tensor]]

    def __post_init__(self) -> None:
        if len(self.gens) != self.base.order:
            raise DimensionMismatch(
                f"{len(self.gens)} generator lists for order {self.base.order}"
            )
        for j, mode_gens in enumerate(self.gens):
            want = _reduced_dims(self.base.dims, j)
            for g in mode_gens:
                if g.dims != want:
                    raise DimensionMismatch(
                        f"mode {j + 1} generator dims {g.dims}, expected {want}"
                    )

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.to_json_dict(),
            "gens": [[t.to_json_dict() for t in mode] for mode in self.gens],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> ModSpace:
        return cls(
            Tensor.from_json_dict(d["base"]),
            [[Tensor.from_json_dict(t) for t in mode] for mode in d["gens"]],
        )


def sym_mod_space(base: Tensor, gens: list[Tensor]) -> ModSpace:
    """ModSpace with the same generator list in every mode."""
    return ModSpace(base, [list(gens) for _ in range(base.order)])


Params = list[list[list[Fraction]]]


def _check_params(ms: ModSpace, params: Params) -> None:
    if len(params) != ms.base.order:
        raise ParameterShapeMismatch(
            f"{len(params)} modes of parameters, tensor has {ms.base.order}"
        )
    for j, per_slice in enumerate(params):
        if len(per_slice) != ms.base.dims[j]:
            raise ParameterShapeMismatch(
                f"mode {j + 1} has {ms.base.dims[j]} slices, got {len(per_slice)} "
                "parameter vectors"
            )
        for i, coeffs in enumerate(per_slice):
            if len(coeffs) != len(ms.gens[j]):
                raise ParameterShapeMismatch(
                    f"mode {j + 1} slice {i + 1}: {len(coeffs)} coefficients for "
                    f"{len(ms.gens[j])} generators"
                )


def mod_space_sample(ms: ModSpace, params: Params) -> Tensor:
    """The member of the family at the given per-mode per-slice coefficients."""
    _check_params(ms, params)
    data: dict[Key, Fraction] = dict(ms.base.data)
    for j, per_slice in enumerate(params):
        for i, coeffs in enumerate(per_slice, start=1):
            for c, g in zip(coeffs, ms.gens[j]):
                c = Fraction(c)
                if c == 0:
                    continue
                for k, v in g.data.items():
                    key = k[:j] + (i,) + k[j:]
                    s = data.get(key, Fraction(0)) + c * v
                    if s:
                        data[key] = s
                    else:
                        data.pop(key, None)
    return Tensor._wrap(ms.base.dims, data)


def mod_space_contains(ms: ModSpace, t: Tensor) -> Params | None:
    """Solve for parameters with mod_space_sample(ms, params) = t.

    The increments from different modes overlap on entries, so this is one
    global linear system over all unknowns (mode, slice, generator), solved
    exactly. Returns a witness (free coordinates at zero) or None.
    """
    if t.dims != ms.base.dims:
        raise DimensionMismatch(f"{t.dims} vs {ms.base.dims}")
    residual = tensor_sub(t, ms.base)
    unknowns: list[tuple[int, int, int]] = []
    columns: list[dict[Key, Fraction]] = []
    support: set[Key] = set(residual.data)
    for j, mode_gens in enumerate(ms.gens):
        for i in range(1, ms.base.dims[j] + 1):
            for g_idx, g in enumerate(mode_gens):
                col = {k[:j] + (i,) + k[j:]: v for k, v in g.data.items()}
                unknowns.append((j, i, g_idx))
                columns.append(col)
                support.update(col)
    keys = sorted(support)
    if len(keys) * max(1, len(unknowns)) > 16_000_000:
        raise DimensionMismatch("membership system too large for dense solving")
    a_rows = [[col.get(k, Fraction(0)) for col in columns] for k in keys]
    b = [residual.data.get(k, Fraction(0)) for k in keys]
    x = solve_rational(a_rows, b)
    if x is None:
        return None
    params: Params = [
        [[Fraction(0)] * len(ms.gens[j]) for _ in range(ms.base.dims[j])]
        for j in range(ms.base.order)
    ]
    for (j, i, g_idx), val in zip(unknowns, x):
        params[j][i - 1][g_idx] = val
    return params


def params_to_json(params: Params) -> list:
    return [
        [[format_rational(c) for c in coeffs] for coeffs in per_slice]
        for per_slice in params
    ]


def params_from_json(obj: list) -> Params:
    return [
        [[parse_rational(c) for c in coeffs] for coeffs in per_slice]
        for per_slice in obj
    ]


# -----------------------------------------------------------------
# substitution families
# -----------------------------------------------------------------


@dataclass(frozen=True)
class SubstitutionFamily:
    """The family (T_1 + c_1 T_n | ... | T_{n-1} + c_{n-1} T_n) along a mode.

    T_i are the mode-j slices of the source. Evaluation at concrete rational
    parameters yields a tensor whose mode j has size n - 1; the parameters
    are supplied by the caller, nothing here searches for good values.
    """

    source: Tensor
    mode: int

    def __post_init__(self) -> None:
        if not 1 <= self.mode <= self.source.order:
            raise IndexOutOfRange(f"mode {self.mode} outside 1..{self.source.order}")
        if self.source.dims[self.mode - 1] < 2:
            raise IndexOutOfRange("substitution needs mode size at least 2")

    @property
    def parameter_count(self) -> int:
        return self.source.dims[self.mode - 1] - 1

    def evaluate(self, cs: list[Fraction]) -> Tensor:
        n = self.source.dims[self.mode - 1]
        if len(cs) != n - 1:
            raise ParameterShapeMismatch(f"need {n - 1} parameters, got {len(cs)}")
        j = self.mode - 1
        dims = self.source.dims[:j] + (n - 1,) + self.source.dims[j + 1 :]
        data: dict[Key, Fraction] = {
            k: v for k, v in self.source.data.items() if k[j] < n
        }
        for k, v in self.source.data.items():
            if k[j] == n:
                for i, c in enumerate(cs, start=1):
                    c = Fraction(c)
                    if c == 0:
                        continue
                    key = k[:j] + (i,) + k[j + 1 :]
                    s = data.get(key, Fraction(0)) + c * v
                    if s:
                        data[key] = s
                    else:
                        data.pop(key, None)
        return Tensor._wrap(dims, data)


def substitution_family(t: Tensor, j: int) -> SubstitutionFamily:
    return SubstitutionFamily(t, j)
