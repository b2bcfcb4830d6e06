"""Command line: ``forge example <id>`` and ``forge verify-all``."""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ..algebra.textio import format_ideal
from .checks import CheckReport, run_checks
from .registry import REGISTRY


def dump_ideals(bundle, directory: str | Path) -> list:
    """Write every scheme computed so far in the text format; returns the written paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, X in bundle.computed_schemes().items():
        par = X.parametrization.components if X.parametrization is not None else None
        path = out / f"{bundle.spec.id}_{name}.txt"
        path.write_text(format_ideal(X.ideal.gens, X.nvars, X.p, par))
        written.append(path)
    return written


def _emit(report: CheckReport, out: str | None, timing: bool, quiet: bool = False):
    if not quiet:
        for line in report.lines():
            print(line)
        tag = "PASS" if report.passed else report.status.upper()
        print(f"{report.example}: {tag} (prime {report.prime}, seed {report.seed}, {report.elapsed_ms} ms)")
    if out:
        Path(out).write_text(report.to_json(timing) + "\n")


def cmd_example(args) -> int:
    report, bundle = run_checks(args.id, args.prime, args.seed, args.checks, keep_bundle=True)
    _emit(report, args.out, not args.no_timing)
    if args.dump_ideals and bundle is not None:
        for path in dump_ideals(bundle, args.dump_ideals):
            print(f"wrote {path}")
    return report.exit_code


def _job(job):
    ex, prime, seed, level = job
    return run_checks(ex, prime, seed, level)


def cmd_verify_all(args) -> int:
    ids = args.examples or list(REGISTRY)
    jobs = [(ex, args.prime, s, args.checks) for ex in ids for s in args.seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_job, jobs))
    else:
        reports = [_job(j) for j in jobs]
    code = 0
    for r in reports:
        out = None
        if args.out_dir:
            Path(args.out_dir).mkdir(parents=True, exist_ok=True)
            out = str(Path(args.out_dir) / f"{r.example}_seed{r.seed}.json")
        _emit(r, out, not args.no_timing)
        code = max(code, r.exit_code)
    print(f"verify-all: {sum(r.passed for r in reports)}/{len(reports)} reports pass, seeds {args.seeds}")
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="forge", description="Build registry examples and check their invariants.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--prime", type=int, default=None, help="fixed prime (default: 65537, retry at 32003)")
        p.add_argument("--checks", choices=("mandatory", "all"), default="mandatory")
        p.add_argument("--no-timing", action="store_true", help="omit wall times from the JSON report")

    p = sub.add_parser("example", help="run the checks of one example")
    p.add_argument("id", choices=sorted(REGISTRY))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--dump-ideals", metavar="DIR", help="write computed ideals in text format")
    common(p)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("verify-all", help="run every example (optionally over several seeds)")
    p.add_argument("--examples", nargs="*", choices=sorted(REGISTRY))
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", help="write one JSON report per (example, seed)")
    common(p)
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 2


if __name__ == "__main__":
    sys.exit(main())
