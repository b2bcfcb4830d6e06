"""Wall time of every check of an example, slowest first.

    python3 scripts/check_timings.py 0 --checks all
"""
import argparse

from forge.harness import run_checks


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("example")
    ap.add_argument("--checks", choices=("mandatory", "all"), default="mandatory")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    r = run_checks(a.example, seed=a.seed, level=a.checks)
    print(f"{a.example}: {r.status}, total {r.elapsed_ms / 1000:.1f} s (build included in the first check)")
    for c in sorted(r.checks, key=lambda c: -c.elapsed_ms):
        print(f"{c.elapsed_ms / 1000:8.1f} s  {'ok ' if c.passed else 'BAD'} {c.name}")
    return r.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
