#!/usr/bin/env python3
"""Assemble the order-6 counterexample and print its bookkeeping report.

The tensor itself stays implicit (its entry oracle is exact); the report
records the mode dimensions, the generator counts, and the rank ledger:
a rank upper bound strictly below the symmetric-rank lower bound, plus
the border-rank bound showing how far both sit from it.

Optionally dumps the full generator set as JSON for downstream tools.
"""

from __future__ import annotations

import argparse
import json
import sys

from tensorium.certificates import assemble_counterexample


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7, help="block count (default 7, minimum 7)")
    ap.add_argument("--out", default=None, help="write the report JSON here")
    ap.add_argument(
        "--wset-out",
        default=None,
        help="also dump the generator set (half1 + half2) as JSON",
    )
    args = ap.parse_args(argv)

    cx = assemble_counterexample(args.n)
    report = cx.report()
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"report written to {args.out}")
    else:
        sys.stdout.write(text)

    if args.wset_out:
        with open(args.wset_out, "w") as fh:
            json.dump(cx.wset.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"generator set written to {args.wset_out}")

    gap = report["symmetric_rank"] - report["rank"]
    print(
        f"order-6 tensor, modes {report['dims_per_mode']}^6: "
        f"rank {report['rank']} < symmetric rank {report['symmetric_rank']} "
        f"(gap {gap}), border rank <= {report['border_rank_upper_bound']}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
