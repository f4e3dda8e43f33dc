"""Command-line front end.

Verbs mirror the library: tensor surgery (flatten, unfold, slice, clone,
adjoin, sadjoin), affine spaces (modspace-sample, modspace-contains),
rank bounds (spanning-cert, sylvester, monomial-decomp, verify-decomp),
generator sets (wset build), the certificate battery (verify ...), and
counterexample build. All rationals cross the boundary as "p/q" strings;
output is deterministic JSON (sorted keys). Exit codes: 0 success or
verification pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certificates as cert
from .constructions import (
    AdjoinSpec,
    ModSpace,
    adjoin,
    mod_space_contains,
    mod_space_sample,
    params_from_json,
    params_to_json,
    sadjoin,
)
from .errors import TensoriumError
from .exact_linalg import parse_rational, rank_exact
from .rank_bounds import (
    SymDecomposition,
    monomial_decomposition,
    sylvester_bound,
    verify_spanning_certificate,
    verify_sym_decomposition,
)
from .tensor_core import PolyForm, Tensor, clone, flatten, multi_slice, poly_to_tensor, unfold
from .wset_builder import build_w_order4, build_w_order6, order6_family_sizes

# ----------------------------------------------------------------- helpers


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _modes(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _partition(text: str) -> list[list[int]]:
    return [_modes(group) for group in text.split("|")]


def _canonical_order(order: int) -> int:
    # generator order; tensor orders 4 and 6 are accepted as aliases
    if order in (3, 5):
        return order
    if order in (4, 6):
        return order - 1
    raise TensoriumError(f"order must be one of 3,5 (or aliases 4,6), got {order}")


def _load_tensor(path: str) -> Tensor:
    return Tensor.from_json_dict(_load_json(path))


# ----------------------------------------------------------------- verbs


def _cmd_flatten(args) -> int:
    t = _load_tensor(args.tensor)
    m = flatten(t, _modes(args.modes))
    payload = m.to_json_dict()
    payload["rank"] = rank_exact(m)
    _emit(payload, args.out)
    return 0


def _cmd_unfold(args) -> int:
    t = _load_tensor(args.tensor)
    _emit(unfold(t, _partition(args.partition)).to_json_dict(), args.out)
    return 0


def _cmd_slice(args) -> int:
    t = _load_tensor(args.tensor)
    modes = _modes(args.modes)
    idx = _modes(args.index)
    _emit(multi_slice(t, modes, idx).to_json_dict(), args.out)
    return 0


def _cmd_clone(args) -> int:
    t = _load_tensor(args.tensor)
    _emit(clone(t, args.n).to_json_dict(), args.out)
    return 0


def _cmd_adjoin(args) -> int:
    spec = AdjoinSpec.from_json_dict(_load_json(args.spec))
    _emit(adjoin(spec).to_json_dict(), args.out)
    return 0


def _cmd_sadjoin(args) -> int:
    core = _load_tensor(args.tensor)
    slices = [Tensor.from_json_dict(d) for d in _load_json(args.slices)]
    _emit(sadjoin(core, slices).to_json_dict(), args.out)
    return 0


def _cmd_modspace_sample(args) -> int:
    ms = ModSpace.from_json_dict(_load_json(args.modspace))
    params = params_from_json(_load_json(args.params))
    _emit(mod_space_sample(ms, params).to_json_dict(), args.out)
    return 0


def _cmd_modspace_contains(args) -> int:
    ms = ModSpace.from_json_dict(_load_json(args.modspace))
    t = _load_tensor(args.tensor)
    params = mod_space_contains(ms, t)
    _emit(
        {
            "contains": params is not None,
            "params": None if params is None else params_to_json(params),
        },
        args.out,
    )
    return 0


def _cmd_spanning_cert(args) -> int:
    t = _load_tensor(args.tensor)
    modes = _modes(args.modes)
    gens = [Tensor.from_json_dict(d) for d in _load_json(args.gens)]
    c = verify_spanning_certificate(t, modes, gens, symmetric=args.symmetric)
    _emit(
        {
            "modes": list(c.J),
            "symmetric": c.symmetric,
            "slice_space_dim": c.basis.dim,
            "generators": len(c.generators),
            "upper_bound": c.upper_bound,
        },
        args.out,
    )
    return 0


def _cmd_sylvester(args) -> int:
    bound = sylvester_bound(args.drk_j, args.drk_jc, args.flat_rank)
    _emit({"lower_bound": bound}, args.out)
    return 0


def _cmd_monomial_decomp(args) -> int:
    alpha = parse_rational(args.alpha)
    lambdas = [parse_rational(x) for x in args.lambdas.split(",")]
    dec = monomial_decomposition(alpha, args.degree, lambdas)
    _emit(dec.to_json_dict(), args.out)
    return 0


def _cmd_verify_decomp(args) -> int:
    dec = SymDecomposition.from_json_dict(_load_json(args.decomp))
    if args.poly:
        target: Tensor | PolyForm = PolyForm.from_json_dict(_load_json(args.poly))
    else:
        target = _load_tensor(args.tensor)
    ok = verify_sym_decomposition(target, dec)
    _emit({"valid": ok}, args.out)
    return 0 if ok else 1


def _cmd_wset_build(args) -> int:
    order = _canonical_order(args.order)
    if order == 3:
        w = build_w_order4()
        sizes = None
    else:
        if args.n is None:
            raise TensoriumError("--n is required for the order-5 generator set")
        w = build_w_order6(args.n)
        sizes = order6_family_sizes(args.n)
    summary = {
        "n": w.n,
        "order": w.order,
        "half1_count": len(w.half1),
        "total": w.size,
    }
    if sizes is not None:
        summary["family_sizes"] = sizes
    if args.out:
        _emit(w.to_json_dict(), args.out)
        sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    else:
        _emit(summary, None)
    return 0


_VERIFY_CHOICES = ("cond3", "patterns", "ones", "indep", "examples", "counts", "oracle", "all")


def _cmd_verify(args) -> int:
    n = args.n
    p = int(args.modular) if args.modular else None
    what = args.what
    certs: list[cert.Certificate]
    if what == "cond3":
        certs = [cert.verify_condition3(n)]
    elif what == "patterns":
        certs = [cert.verify_zero_patterns(cert.build_w_order6(n))]
    elif what == "ones":
        certs = [cert.verify_forced_ones(n)]
    elif what == "indep":
        order = _canonical_order(args.order)
        w = build_w_order4() if order == 3 else build_w_order6(n)
        mode = "exact" if args.exact else "modular"
        certs = [cert.verify_independence(w, mode=mode, p=p)]
    elif what == "examples":
        certs = cert.verify_worked_examples()
    elif what == "counts":
        certs = [cert.verify_counts(n)]
    elif what == "oracle":
        certs = [cert.verify_oracle_equivalence()]
    else:
        certs = cert.run_battery(n=n, p=p)
    _emit([c.to_json_dict() for c in certs], args.out)
    return 1 if any(c.verdict == "fail" for c in certs) else 0


def _cmd_counterexample_build(args) -> int:
    inst = cert.assemble_counterexample(args.n)
    _emit(inst.report(), args.out)
    return 0


def _cmd_poly_tensor(args) -> int:
    p = PolyForm.from_json_dict(_load_json(args.poly))
    _emit(poly_to_tensor(p).to_json_dict(), args.out)
    return 0


# ----------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tensorium")
    sub = top.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    p = add("flatten", _cmd_flatten)
    p.add_argument("--tensor", required=True)
    p.add_argument("--modes", required=True, help="comma list, e.g. 1,2")

    p = add("unfold", _cmd_unfold)
    p.add_argument("--tensor", required=True)
    p.add_argument("--partition", required=True, help='groups split by "|", e.g. 1|2|3,4')

    p = add("slice", _cmd_slice)
    p.add_argument("--tensor", required=True)
    p.add_argument("--modes", required=True)
    p.add_argument("--index", required=True, help="one index per sliced mode")

    p = add("clone", _cmd_clone)
    p.add_argument("--tensor", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("adjoin", _cmd_adjoin)
    p.add_argument("--spec", required=True, help="AdjoinSpec JSON file")

    p = add("sadjoin", _cmd_sadjoin)
    p.add_argument("--tensor", required=True)
    p.add_argument(
        "--slices", required=True, help="JSON array of symmetric order-(d-1) tensors"
    )

    p = add("modspace-sample", _cmd_modspace_sample)
    p.add_argument("--modspace", required=True)
    p.add_argument("--params", required=True)

    p = add("modspace-contains", _cmd_modspace_contains)
    p.add_argument("--modspace", required=True)
    p.add_argument("--tensor", required=True)

    p = add("spanning-cert", _cmd_spanning_cert)
    p.add_argument("--tensor", required=True)
    p.add_argument("--modes", required=True)
    p.add_argument("--gens", required=True, help="JSON array of rank-one tensors")
    p.add_argument("--symmetric", action="store_true")

    p = add("sylvester", _cmd_sylvester)
    p.add_argument("drk_j", type=int)
    p.add_argument("drk_jc", type=int)
    p.add_argument("flat_rank", type=int)

    p = add("monomial-decomp", _cmd_monomial_decomp)
    p.add_argument("--alpha", required=True, help='rational, e.g. "3" or "-2/5"')
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--lambdas", required=True, help="comma list of distinct rationals")

    p = add("verify-decomp", _cmd_verify_decomp)
    p.add_argument("--decomp", required=True)
    p.add_argument("--tensor")
    p.add_argument("--poly")

    p = add("poly-tensor", _cmd_poly_tensor)
    p.add_argument("--poly", required=True, help="PolyForm JSON file")

    wset = sub.add_parser("wset")
    wsub = wset.add_subparsers(dest="action", required=True)
    p = wsub.add_parser("build")
    p.set_defaults(fn=_cmd_wset_build)
    p.add_argument("--out", help="write the full generator set here")
    p.add_argument("--order", type=int, required=True, help="3 or 5 (aliases 4, 6)")
    p.add_argument("--n", type=int)

    p = add("verify", _cmd_verify)
    p.add_argument("what", choices=_VERIFY_CHOICES)
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--order", type=int, default=5, help="for indep: 3 or 5")
    p.add_argument("--modular", help="prime for modular rank checks")
    p.add_argument("--exact", action="store_true", help="force exact elimination")

    ce = sub.add_parser("counterexample")
    csub = ce.add_subparsers(dest="action", required=True)
    p = csub.add_parser("build")
    p.set_defaults(fn=_cmd_counterexample_build)
    p.add_argument("--out")
    p.add_argument("--n", type=int, default=7)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except TensoriumError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"error: invalid JSON input: {exc}\n")
        return 2
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: bad input: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
