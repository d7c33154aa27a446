#!/usr/bin/env python3
"""Scan exponents of the diagonal-plus-field cosets of PSL2(3^f).

The f = 4 case iterates over the 265680 elements of PSL2(81) and takes a
few minutes; everything else is quick.

Usage: python scripts/coset_exponent_scan.py [--max-f 3] [--threads N]
"""

import argparse
import time

from groupword.groups import psl2_coset
from groupword.wordmap import coset_exponent


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-f", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    for f in range(1, args.max_f + 1):
        q = 3**f
        t = 0 if f == 1 else 1
        t0 = time.perf_counter()
        e = coset_exponent(psl2_coset(q, 1, t), threads=args.threads)
        dt = time.perf_counter() - t0
        mark = "ok" if e == 4 * f else "MISMATCH"
        print(f"f={f}  q={q:>4}  exp(S.alpha) = {e:>3}  expected {4 * f:>3}  "
              f"[{mark}]  ({dt:.1f}s)")


if __name__ == "__main__":
    main()
