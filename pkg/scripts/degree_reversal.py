"""Projective degrees of mu and of its interpolated inverse for registry examples.

For a birational map the two sequences are reverses of each other.

    python3 scripts/degree_reversal.py fano-i iii
"""
import argparse
import random
import time

from forge.harness import build_example


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("examples", nargs="+")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    code = 0
    for ex in a.examples:
        b = build_example(ex, seed=a.seed)
        t = time.time()
        d = b.mu.projective_degrees(random.Random(1))
        e = b.inverse.projective_degrees(random.Random(2))
        ok = d == e[::-1]
        code |= not ok
        print(f"{ex}: mu {d}, inverse {e}, reversal {'holds' if ok else 'FAILS'} ({time.time() - t:.0f} s)")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
