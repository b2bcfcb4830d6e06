"""Example registry: recipes and expected invariants as plain data."""
from __future__ import annotations

from dataclasses import dataclass, field

PUBLISHED, DERIVED, TRIVIAL = "published", "derived", "trivial"
PRIMES = (65537, 32003)


@dataclass(frozen=True)
class Step:
    op: str
    args: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Expected:
    value: object
    provenance: str = PUBLISHED
    mandatory: bool = True


@dataclass(frozen=True)
class FlopData:
    """Parameters of mu: X -> W and of its inverse."""
    e: int                          # degree of the congruence curves
    system: str                     # "multisecant" (forms of degree 3e-1, multiplicity e) or "quadrics"
    index: int                      # i(W), registry data
    inverse_degree: int             # i(W) e - 1
    U_degrees: tuple                # interpolation degrees for U
    target: str = "P4"              # "P4" or "image"


@dataclass(frozen=True)
class ExampleSpec:
    id: str
    title: str
    recipe: tuple
    flop: FlopData | None
    lattice: dict                   # K^2, topological Euler number of the smooth model
    expected: dict
    cubic_system: bool = True       # S is cut out by cubics and Phi is defined


def _s(op, **args):
    return Step(op, args)


REGISTRY: dict = {}


def register(spec: ExampleSpec) -> ExampleSpec:
    REGISTRY[spec.id] = spec
    return spec


register(ExampleSpec(
    id="iii",
    title="degree 10 surface of sectional genus 6 (plane curves of degree 10 with 10 triple points)",
    recipe=(
        _s("plane_surface", degree=10, multiplicities=[3] * 10, name="S38"),
        _s("random_cubic"),
    ),
    flop=FlopData(e=2, system="multisecant", index=5, inverse_degree=9, U_degrees=(5,)),
    lattice={"K2": -1, "chi_top": 13},
    expected={
        "surface": Expected([2, 10, 6]),
        "h0_I3": Expected(10),
        "singular_points": Expected(0, DERIVED),
        "congruence_classes": Expected({"1,2": 7, "2,5": 1}),
        "congruence_total": Expected(8, DERIVED),
        "fiber_curve": Expected([1, 2, 5]),
        "mu_projective_degrees": Expected([3, 15, 27, 9, 1], DERIVED),
        "inverse_projective_degrees": Expected([1, 9, 27, 15, 3]),
        "inverse_round_trip": Expected(True, TRIVIAL),
        "U_invariants": Expected([2, 12, 14]),
        "U_generators": Expected({5: 9}),
        "U_multiplicity": Expected(2),
        "lattice": Expected([46, 38], DERIVED),
        "condition_K3": Expected(True),
        "secant_lines": Expected(7, mandatory=False),
        "trisecant_locus_dim": Expected(3, mandatory=False),
    },
))

register(ExampleSpec(
    id="0",
    title="degree 9 rational surface of sectional genus 2 with 5 nodes",
    recipe=(
        _s("s42"),
        _s("random_cubic"),
    ),
    # W = G(1,4) cap P^7 has index 3, so the inverse has degree 3 * 3 - 1 = 8
    flop=FlopData(e=3, system="multisecant", index=3, inverse_degree=8, U_degrees=(2, 3), target="image"),
    lattice={"K2": 5, "chi_top": 7},
    expected={
        "surface": Expected([2, 9, 2]),
        "h0_I3": Expected(9),
        "singular_points": Expected(5),
        "congruence_classes": Expected({"1,2": 9, "2,5": 7, "3,8": 1}),
        "congruence_total": Expected(17),
        "top_class_orbit_degree": Expected(1),
        "image_Z": Expected([14, 15, {3: 7}]),
        "image_W": Expected([4, 5, {2: 5}]),
        "fiber_curve": Expected([1, 3, 8], mandatory=False),
        "inverse_round_trip": Expected(True, TRIVIAL),
        "U_invariants": Expected([2, 21, 18]),
        "U_generators": Expected({2: 5, 3: 8}),
        "U_multiplicity": Expected(3),
        "lattice": Expected([41, 42]),
        "condition_K3": Expected(False),
        "secant_lines": Expected(9, mandatory=False),
        "trisecant_locus_dim": Expected(3, mandatory=False),
    },
))

register(ExampleSpec(
    id="i",
    title="general projection of the octic surface given by plane quartics through 8 points",
    recipe=(
        _s("plane_surface", degree=4, multiplicities=[1] * 8, name="S8"),
        _s("project", centers="general", count=1, name="S14"),
        _s("random_cubic"),
    ),
    flop=FlopData(e=2, system="multisecant", index=5, inverse_degree=9, U_degrees=(5,)),
    lattice={"K2": 1, "chi_top": 11},
    expected={
        "surface": Expected([2, 8, 3]),
        "h0_I3": Expected(13),
        "singular_points": Expected(0, DERIVED),
        "congruence_classes": Expected({"1,2": 7, "2,5": 1}),
        "congruence_total": Expected(8, DERIVED),
        "image_Z": Expected([28, None, {2: 16}], mandatory=False),
        "lattice": Expected([26, 14], DERIVED),
        "condition_K3": Expected(True),
        "secant_lines": Expected(7, mandatory=False),
        "U_invariants": Expected([2, 10, 7], mandatory=False),
    },
))

register(ExampleSpec(
    id="ii",
    title="rational scroll of degree 7 with 3 nodes",
    recipe=(
        _s("plane_system", degree=4, multiplicities=[3]),
        _s("project", centers="secant", count=3, name="scroll7"),
        _s("random_cubic"),
    ),
    flop=FlopData(e=2, system="multisecant", index=5, inverse_degree=9, U_degrees=(5, 6)),
    lattice={"K2": 8, "chi_top": 4},
    expected={
        "surface": Expected([2, 7, 0]),
        "h0_I3": Expected(13),
        "singular_points": Expected(3),
        "congruence_classes": Expected({"1,2": 7, "2,5": 1}),
        "congruence_total": Expected(8, DERIVED),
        "image_Z": Expected([29, None, {2: 15}], mandatory=False),
        "lattice": Expected([25, 26], DERIVED),
        "condition_K3": Expected(True),
        "secant_lines": Expected(7, mandatory=False),
        "U_invariants": Expected([2, 10, 8], mandatory=False),
    },
))

register(ExampleSpec(
    id="fano-i",
    title="quintic del Pezzo surface (plane cubics through 4 points)",
    recipe=(
        _s("plane_surface", degree=3, multiplicities=[1] * 4, name="dP5"),
        _s("random_cubic"),
    ),
    flop=FlopData(e=1, system="quadrics", index=5, inverse_degree=4, U_degrees=(4,)),
    lattice={"K2": 5, "chi_top": 7},
    expected={
        "surface": Expected([2, 5, 1]),
        "h0_I2": Expected(5),
        "secant_lines": Expected(1),
        "inverse_round_trip": Expected(True, TRIVIAL),
        "U_invariants": Expected([2, 9, 8]),
        "lattice": Expected([13, 14], DERIVED),
    },
    cubic_system=False,
))


def get(example_id: str) -> ExampleSpec:
    try:
        return REGISTRY[example_id]
    except KeyError:
        raise KeyError(f"unknown example {example_id!r}; known: {sorted(REGISTRY)}") from None
