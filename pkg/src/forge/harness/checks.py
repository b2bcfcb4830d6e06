"""Check runner: computes registry invariants and compares them with expected values."""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from typing import Callable

from ..algebra.groebner import CapacityError
from ..congruences import (LatticeData, count_secant_lines, fiber_curve_data, multiplicity_witness,
                           trisecant_locus_dim)
from ..constructions import ConstructionError
from ..invariants import (check_condition_K3, graded_piece_basis, graded_piece_dim, sectional_genus,
                          singular_scheme)
from ..maps import round_trip_ok
from .recipes import Bundle
from .registry import PRIMES, ExampleSpec, get

log = logging.getLogger(__name__)

CHECKS: dict = {}


def check(name: str):
    def deco(fn: Callable):
        CHECKS[name] = fn
        return fn
    return deco


def _gen_degrees(gens) -> dict:
    out: dict = {}
    for g in gens:
        out[g.degree()] = out.get(g.degree(), 0) + 1
    return out


@check("surface")
def _surface(b: Bundle):
    h = b.S.hilbert()
    return [h.dimension, h.degree, sectional_genus(b.S.ideal, b.rng("genus"))]


@check("h0_I2")
def _h0_2(b: Bundle):
    return graded_piece_dim(b.S.ideal, 2)


@check("h0_I3")
def _h0_3(b: Bundle):
    return graded_piece_dim(b.S.ideal, 3)


def _singular_points(b: Bundle) -> int:
    def run():
        sl = singular_scheme(b.S.ideal, b.rng("sing"))
        if sl.dimension < 0:
            return 0
        if sl.dimension > 0:
            return -1
        return sl.points
    return b._get("singular_points", run)


@check("singular_points")
def _sing(b: Bundle):
    return _singular_points(b)


@check("congruence_classes")
def _classes(b: Bundle):
    return {f"{e},{s}": n for (e, s), n in sorted(b.congruence.classes.items())}


@check("congruence_total")
def _total(b: Bundle):
    return b.congruence.total_lines


@check("top_class_orbit_degree")
def _top(b: Bundle):
    e = max(c.e for c in b.congruence.curves)
    return sum(c.orbit_degree for c in b.congruence.curves if c.e == e)


@check("image_Z")
def _image_Z(b: Bundle):
    Z = b.Z
    return [Z.hilbert().degree, sectional_genus(Z.ideal, b.rng("Zgenus")), _gen_degrees(Z.ideal.gens)]


@check("image_W")
def _image_W(b: Bundle):
    W = b.W
    return [W.hilbert().dimension, W.hilbert().degree, _gen_degrees(W.ideal.gens)]


@check("fiber_curve")
def _fiber(b: Bundle):
    return list(fiber_curve_data(b.S, b.mu_ext, b.point, b.rng("fiber")))


@check("mu_projective_degrees")
def _mu_deg(b: Bundle):
    return b.mu.projective_degrees(b.rng("mu_deg"))


@check("inverse_projective_degrees")
def _inv_deg(b: Bundle):
    return b.inverse.projective_degrees(b.rng("inv_deg"))


@check("inverse_round_trip")
def _round_trip(b: Bundle):
    return round_trip_ok(b.mu, b.inverse, b.rng("round_trip"), 100)


@check("U_invariants")
def _U(b: Bundle):
    U = b.U.scheme
    return [U.hilbert().dimension, U.hilbert().degree, sectional_genus(U.ideal, b.rng("Ugenus"))]


@check("U_generators")
def _U_gens(b: Bundle):
    return b.U.generator_degrees()


@check("U_multiplicity")
def _U_mult(b: Bundle):
    return min(multiplicity_witness(b.inverse, b.U.scheme, b.rng("Umult"), count=20))


@check("lattice")
def _lattice(b: Bundle):
    d, g = b.S.hilbert().degree, sectional_genus(b.S.ideal, b.rng("genus"))
    L = LatticeData.from_invariants(d, 2 * g - 2 - d, b.spec.lattice["K2"], b.spec.lattice["chi_top"],
                                    _singular_points(b))
    return [L.self_intersection, L.discriminant]


@check("condition_K3")
def _k3(b: Bundle):
    return check_condition_K3(graded_piece_basis(b.S.ideal, 3))


@check("secant_lines")
def _secants(b: Bundle):
    return count_secant_lines(b.S, b.point, b.rng("secant"))


@check("trisecant_locus_dim")
def _trisecant(b: Bundle):
    return trisecant_locus_dim(b.S, b.rng("trisecant"))


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def normalize(v):
    """JSON-canonical form (string keys, lists for tuples)."""
    return json.loads(json.dumps(v, sort_keys=True, default=int))


def matches(expected, computed) -> bool:
    """Equality after normalization; None entries in an expected list are wildcards."""
    e, c = normalize(expected), normalize(computed)
    if isinstance(e, list) and isinstance(c, list) and len(e) == len(c):
        return all(x is None or x == y for x, y in zip(e, c))
    return e == c


@dataclass
class CheckResult:
    name: str
    expected: object
    computed: object
    provenance: str
    mandatory: bool
    passed: bool
    error: str | None = None
    elapsed_ms: int = 0

    def to_dict(self, timing: bool = True) -> dict:
        d = {"name": self.name, "expected": normalize(self.expected), "computed": normalize(self.computed),
             "provenance": self.provenance, "mandatory": self.mandatory, "pass": self.passed}
        if self.error:
            d["error"] = self.error
        if timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d


@dataclass
class CheckReport:
    example: str
    prime: int
    seed: int
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0
    status: str = "ok"            # ok | check-failure | build-error | resource-error
    message: str = ""
    primes_tried: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "ok" and all(c.passed for c in self.checks if c.mandatory)

    @property
    def exit_code(self) -> int:
        if self.status in ("build-error", "resource-error"):
            return 2
        return 0 if self.passed else 1

    def to_dict(self, timing: bool = True) -> dict:
        d = {"example": self.example, "prime": self.prime, "seed": self.seed,
             "checks": [c.to_dict(timing) for c in self.checks], "status": self.status,
             "pass": self.passed, "primes_tried": self.primes_tried}
        if self.message:
            d["message"] = self.message
        if timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def lines(self) -> list:
        out = []
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            opt = "" if c.mandatory else " (optional)"
            out.append(f"[{flag}] {self.example}/{c.name}{opt}: expected {normalize(c.expected)}, "
                       f"computed {normalize(c.computed)}" + (f" [{c.error}]" if c.error else ""))
        return out


def selected_checks(spec: ExampleSpec, level: str = "mandatory", only=None) -> list:
    names = [n for n, ex in spec.expected.items() if level == "all" or ex.mandatory]
    if only is not None:
        names = [n for n in names if n in set(only)]
    return names


def _run_once(spec: ExampleSpec, prime: int, seed: int, names: list) -> tuple:
    b = Bundle(spec, prime, seed).build()
    results = []
    for name in names:
        ex = spec.expected[name]
        t0 = time.perf_counter()
        try:
            val = CHECKS[name](b)
            err = None
        except (CapacityError, MemoryError) as exc:
            raise exc
        except Exception as exc:  # a failing computation is a failed check, not a crash
            val, err = None, f"{type(exc).__name__}: {exc}"
        ok = err is None and matches(ex.value, val)
        ms = int(1000 * (time.perf_counter() - t0))
        log.info("%s/%s: %s (%d ms)", spec.id, name, "pass" if ok else "FAIL", ms)
        results.append(CheckResult(name, ex.value, val, ex.provenance, ex.mandatory, ok, err, ms))
    return b, results


def run_checks(example_id: str, prime: int | None = None, seed: int = 0, level: str = "mandatory",
               only=None, keep_bundle: bool = False):
    """Run the selected checks; with ``prime=None`` a failure at the first prime is retried at the second."""
    spec = get(example_id)
    names = selected_checks(spec, level, only)
    primes = [prime] if prime is not None else list(PRIMES)
    t0 = time.perf_counter()
    report = bundle = None
    for q in primes:
        report = CheckReport(example_id, q, seed, primes_tried=(report.primes_tried if report else []) + [q])
        try:
            bundle, report.checks = _run_once(spec, q, seed, names)
        except ConstructionError as exc:
            report.status, report.message = "build-error", str(exc)
        except (CapacityError, MemoryError) as exc:
            report.status, report.message = "resource-error", f"{type(exc).__name__}: {exc}"
        if report.passed:
            break
        for c in report.checks:
            if c.mandatory and not c.passed:
                report.status = "check-failure"
                break
    report.elapsed_ms = int(1000 * (time.perf_counter() - t0))
    return (report, bundle) if keep_bundle else report
