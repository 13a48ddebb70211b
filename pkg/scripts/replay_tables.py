#!/usr/bin/env python3
"""Replay the bundled case catalog and write the aggregate JSON report.

Usage:
    python scripts/replay_tables.py [--filter F4] [--q 2*sqrt2] [--slow] [--out report.json]

Equivalent to `weyldl verify-paper`, kept as a runnable experiment script.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from weyldl.casetables import verify_all
from weyldl.criterion import parse_q_literal


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--filter")
    ap.add_argument("--q")
    ap.add_argument("--slow", action="store_true")
    ap.add_argument("--out")
    args = ap.parse_args()

    t0 = time.time()
    q = parse_q_literal(args.q) if args.q else None
    report = verify_all(type_filter=args.filter, q=q, slow=args.slow)
    for line in report.summary_lines():
        print(line)
    print(f"elapsed: {time.time() - t0:.1f}s")
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
        print(f"report written to {args.out}")
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
