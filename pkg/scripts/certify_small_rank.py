#!/usr/bin/env python3
"""Certify every twisted class of every group of rank <= 4, both routes.

Writes one certificate JSON per (group, class, route) under --out-dir and
prints a summary line per group.  The two routes must both be accepted
by the independent checker for every class.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from weyldl.conjugacy import partition_memo, pi_of
from weyldl.criterion import certify_min_element, check_certificate, minimal_q
from weyldl.lifting import constructive_certificate
from weyldl.rootdata import build_root_system, build_twist
from weyldl.weyl import WeylGroup

GROUPS = [
    ("A", 1, 1), ("A", 2, 1), ("A", 2, 2), ("A", 3, 1), ("A", 3, 2),
    ("A", 4, 1), ("A", 4, 2), ("B", 2, 1), ("B", 2, 2), ("B", 3, 1),
    ("B", 4, 1), ("C", 2, 1), ("C", 3, 1), ("C", 4, 1), ("D", 4, 1),
    ("D", 4, 2), ("D", 4, 3), ("F", 4, 1), ("F", 4, 2), ("G", 2, 1),
    ("G", 2, 2),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=None)
    args = ap.parse_args()
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    t0 = time.time()
    total = 0
    for family, rank, order in GROUPS:
        W = WeylGroup(build_root_system(family, rank))
        twist = build_twist(family, rank, order)
        q = minimal_q(family, order)
        classes = partition_memo(W, pi_of(twist))
        for k, cls in enumerate(classes):
            solver = certify_min_element(W, twist, cls, q)
            constructive = constructive_certificate(W, twist, cls, q)
            assert check_certificate(solver) and check_certificate(constructive)
            if out_dir:
                tag = f"{order if order > 1 else ''}{family}{rank}-class{k:02d}"
                (out_dir / f"{tag}-solver.json").write_text(solver.to_json() + "\n")
                (out_dir / f"{tag}-constructive.json").write_text(
                    constructive.to_json() + "\n"
                )
        total += len(classes)
        name = f"{order if order > 1 else ''}{family}{rank}"
        print(f"{name}: {len(classes)} classes certified by both routes")
    print(f"{total} classes total in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
