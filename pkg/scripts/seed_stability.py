"""Congruence class counts and lattice data of a registry example over several seeds.

    python3 scripts/seed_stability.py iii --seeds 0 1 2
"""
import argparse
import time
from dataclasses import dataclass, field

from forge.harness import run_checks


@dataclass
class Config:
    example: str = "iii"
    seeds: list = field(default_factory=lambda: [0, 1, 2])
    checks: tuple = ("surface", "congruence_classes", "congruence_total", "lattice")


def main(cfg: Config):
    rows = []
    for s in cfg.seeds:
        t = time.time()
        r = run_checks(cfg.example, seed=s, level="all", only=cfg.checks)
        vals = {c.name: c.computed for c in r.checks}
        rows.append(vals)
        print(f"seed {s} ({time.time() - t:.0f} s, prime {r.prime}, {'pass' if r.passed else r.status})")
        for k, v in vals.items():
            print(f"  {k}: {v}")
    stable = all(r == rows[0] for r in rows)
    print("stable across seeds" if stable else "seed-dependent values")
    return 0 if stable else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("example", nargs="?", default="iii")
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    a = ap.parse_args()
    raise SystemExit(main(Config(a.example, a.seeds)))
