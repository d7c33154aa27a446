#!/usr/bin/env python3
"""Run the full acceptance suite and write the JSON report next to this script.

Usage: python scripts/run_verify.py [--slow] [--threads N] [--filter TEXT]
"""

import argparse
import pathlib
import sys

from groupword.report import dumps
from groupword.verify import run_checks


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--slow", action="store_true")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--filter", default="")
    ap.add_argument("--out", default="verify_report.json")
    args = ap.parse_args()
    rep = run_checks(filter_text=args.filter, threads=args.threads,
                     slow=args.slow)
    for row in rep["checks"]:
        print(f"{'PASS' if row['ok'] else 'FAIL'}  {row['id']}  "
              f"({row['seconds']}s)")
    out = pathlib.Path(args.out)
    out.write_text(dumps(rep))
    print(f"wrote {out} ({rep['passed']}/{rep['run']} passed)")
    return 0 if rep["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
