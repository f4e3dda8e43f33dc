#!/usr/bin/env python3
"""Run the whole certificate battery and write a JSON report.

Mirrors tensorium.certificates.run_battery step by step so each
certificate gets a progress line with wall-clock timing. The two
expensive steps (the order-6 modular Gram elimination and the
truncated-instance materialization cross-check) can be skipped with
--fast for a seconds-scale smoke run.

Exit code 0 when every certificate is accepted (verdict "pass",
"probabilistic", or "not-applicable"), 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from tensorium.certificates import (
    verify_condition3,
    verify_counts,
    verify_forced_ones,
    verify_independence,
    verify_oracle_equivalence,
    verify_worked_examples,
    verify_zero_patterns,
)
from tensorium.wset_builder import build_w_order4, build_w_order6


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7, help="block count (default 7)")
    ap.add_argument(
        "--prime",
        type=int,
        default=None,
        help="prime for the modular independence check (default 2^61-1)",
    )
    ap.add_argument(
        "--fast",
        action="store_true",
        help="skip the two long steps (big Gram elimination, materialization)",
    )
    ap.add_argument("--out", default=None, help="write the JSON report here")
    args = ap.parse_args(argv)

    certs = []
    t0 = time.perf_counter()

    def step(fn):
        start = time.perf_counter()
        got = fn()
        batch = got if isinstance(got, list) else [got]
        certs.extend(batch)
        elapsed = time.perf_counter() - start
        for c in batch:
            print(f"{c.verdict:>14}  {c.claim_id}  ({elapsed:.1f}s)")

    step(verify_worked_examples)
    step(lambda: verify_counts(args.n))
    step(lambda: verify_condition3(args.n))
    w6 = build_w_order6(args.n)
    step(lambda: verify_zero_patterns(w6))
    step(lambda: verify_forced_ones(args.n))
    step(lambda: verify_independence(build_w_order4(), mode="exact"))
    if not args.fast:
        step(lambda: verify_independence(w6, mode="modular", p=args.prime))
        step(verify_oracle_equivalence)

    total = time.perf_counter() - t0
    accepted = sum(c.verdict != "fail" for c in certs)
    print(f"{accepted}/{len(certs)} certificates accepted in {total:.1f}s")

    report = {
        "n": args.n,
        "elapsed_seconds": round(total, 2),
        "certificates": [c.to_json_dict() for c in certs],
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"report written to {args.out}")
    else:
        sys.stdout.write(text)

    return 0 if accepted == len(certs) else 1


if __name__ == "__main__":
    raise SystemExit(main())
