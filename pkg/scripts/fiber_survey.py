#!/usr/bin/env python3
"""Survey exact fiber distributions of a word over a family of small groups.

Example:
    python scripts/fiber_survey.py --word "x y x^-1 y^-1" \
        --groups sym:3,sym:4,alt:4,alt:5,sl2:5
"""

import argparse
from fractions import Fraction

from groupword.specdsl import parse_group_spec
from groupword.wordmap import fiber_distribution
from groupword.words import parse_word


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--word", required=True)
    ap.add_argument("--groups", required=True, help="comma-separated specs")
    ap.add_argument("--max-tuples", type=int, default=10**8)
    args = ap.parse_args()
    w = parse_word(args.word)
    print(f"word: {w}   (length {len(w)}, {len(w.variables())} variables)")
    for spec in args.groups.split(","):
        G = parse_group_spec(spec.strip())
        dist = fiber_distribution(w, G, max_tuples=args.max_tuples)
        E = dist.group
        g, p = dist.argmax()
        p_id = dist.proportion(E.ops.identity)
        print(f"  {spec.strip():<18} |G|={E.order:<6} p(1)={p_id!s:<12} "
              f"max fiber {p} at {E.ops.fmt(g)}")


if __name__ == "__main__":
    main()
