#!/usr/bin/env python3
"""Opt-in slow tier: E7/E8 representative minimality and cuspidality sweeps.

Runs every E7 and E8 catalog row with the shift-closure minimality
certification enabled (budgeted breadth-first search over the
non-increasing shift closure).  Expect minutes.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from weyldl.casetables import load_case_records, verify_case


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--closure-budget", type=int, default=10 ** 7)
    args = ap.parse_args()

    records = [
        r for r in load_case_records(max_rank=8) if r.family == "E" and r.rank >= 7
    ]
    t0 = time.time()
    bad = 0
    for rec in records:
        t1 = time.time()
        report = verify_case(rec, slow=True, closure_budget=args.closure_budget)
        status = "PASS" if report.passed else "FAIL"
        bad += 0 if report.passed else 1
        print(f"{status} {rec.label:12s} [{time.time() - t1:.1f}s] {report.subchecks}")
    print(f"{len(records) - bad}/{len(records)} cases pass in {time.time() - t0:.1f}s")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
