"""Recipe interpreter and the lazily derived objects of an example."""
from __future__ import annotations

import random
from typing import Callable

import numpy as np

from ..algebra.ideal import Ideal
from ..algebra.poly import Polynomial
from ..congruences import (classify_congruence, cubics_through, multisecant_system,
                           recover_associated_surface)
from ..constructions import (ConstructionError, build_s42, fat_point_surface, plane_system, projected_surface,
                             secant_point)
from ..invariants import graded_piece_basis
from ..maps import RationalMap
from ..schemes import Parametrization, ProjectiveScheme, _new_generators, interpolate_ideal
from .registry import ExampleSpec, get

STEPS: dict = {}


def step(name: str):
    def deco(fn: Callable):
        STEPS[name] = fn
        return fn
    return deco


@step("plane_surface")
def _plane_surface(b: "Bundle", degree: int, multiplicities, name: str = ""):
    b.S = fat_point_surface(degree, multiplicities, b.rng("S"), b.prime, name=name)


@step("plane_system")
def _plane_system(b: "Bundle", degree: int, multiplicities):
    b.par = Parametrization(plane_system(degree, multiplicities, b.rng("S"), b.prime))


@step("project")
def _project(b: "Bundle", centers: str, count: int, name: str = ""):
    rng = b.rng("center")
    par = b.par if b.S is None else b.S.parametrization
    if centers == "general":
        pts = [np.array([rng.randrange(b.prime) for _ in range(par.target_nvars)], dtype=np.int64)
               for _ in range(count)]
    elif centers == "secant":
        pts = [secant_point(par, rng) for _ in range(count)]
    else:
        raise ValueError(f"unknown center kind {centers!r}")
    b.S = projected_surface(par, pts, rng, name=name)


@step("s42")
def _s42(b: "Bundle"):
    c = build_s42(b.rng("S"), b.prime)
    b.extras["construction"] = c
    b.S = c.surface


@step("random_cubic")
def _random_cubic(b: "Bundle"):
    rng = b.rng("X")
    C = graded_piece_basis(b.S.ideal, 3)
    f = Polynomial(b.S.nvars, {}, b.prime)
    for g in C:
        f = f + g.scale(rng.randrange(1, b.prime))
    I = Ideal([f], b.S.nvars, b.prime)
    I.saturated = True
    b.X = ProjectiveScheme(I, b.S.nvars, name="X")


class Bundle:
    """S, X and everything derived from them, computed on first use."""

    def __init__(self, spec: ExampleSpec, prime: int, seed: int):
        self.spec = spec
        self.prime = prime
        self.seed = seed
        self.S: ProjectiveScheme | None = None
        self.X: ProjectiveScheme | None = None
        self.par: Parametrization | None = None
        self.extras: dict = {}
        self._cache: dict = {}

    def rng(self, label: str) -> random.Random:
        return random.Random(f"{self.spec.id}:{self.prime}:{self.seed}:{label}")

    def build(self) -> "Bundle":
        for st in self.spec.recipe:
            try:
                STEPS[st.op](self, **st.args)
            except ConstructionError:
                raise
            except (ArithmeticError, ValueError) as exc:
                raise ConstructionError(st.op, str(exc)) from exc
        if self.S is None or self.X is None:
            raise ConstructionError("recipe", "did not produce S and X")
        return self

    def _get(self, key: str, fn: Callable):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def point(self) -> np.ndarray:
        rng = self.rng("point")
        return self._get("point", lambda: np.array([rng.randrange(self.prime) for _ in range(self.S.nvars)],
                                                   dtype=np.int64))

    @property
    def Phi(self) -> RationalMap:
        return self._get("Phi", lambda: cubics_through(self.S, "Phi"))

    @property
    def Z(self) -> ProjectiveScheme:
        """Saturated image of Phi."""
        return self._get("Z", lambda: self.Phi.image(self.rng("Z")))

    @property
    def Z_equations(self) -> ProjectiveScheme:
        """Generators of the image of Phi up to degree 3 (no saturation certificate)."""
        def run():
            if "Z" in self._cache:
                return self._cache["Z"]
            rng = self.rng("Zeq")
            par = self.Phi.parametrization()
            n = par.target_nvars
            gens: list = []
            for d in (2, 3):
                gens += _new_generators(gens, interpolate_ideal(par, d, rng), d, n, self.prime)
            return ProjectiveScheme(Ideal(gens, n, self.prime), n, par, "Z")
        return self._get("Z_equations", run)

    @property
    def congruence(self):
        return self._get("congruence", lambda: classify_congruence(self.S, self.Phi, self.point, self.rng("class"),
                                                                  Z=self.Z_equations, seed=self.seed))

    @property
    def mu_ext(self) -> RationalMap:
        def run():
            fd = self.spec.flop
            if fd.system == "quadrics":
                return RationalMap(ProjectiveScheme.projective_space(self.S.nvars, self.prime),
                                   graded_piece_basis(self.S.ideal, 2), "mu")
            return multisecant_system(self.S, fd.e, self.rng("mu"))
        return self._get("mu_ext", run)

    @property
    def mu(self) -> RationalMap:
        return self._get("mu", lambda: RationalMap(self.X, self.mu_ext.components, "mu"))

    @property
    def W(self) -> ProjectiveScheme:
        def run():
            if self.spec.flop.target == "P4":
                return ProjectiveScheme.projective_space(self.mu.target_nvars, self.prime)
            W = self.mu_ext.image(self.rng("W"))
            W.name = "W"
            return W
        return self._get("W", run)

    @property
    def inverse(self) -> RationalMap:
        return self._get("inverse", lambda: self.mu.inverse_by_interpolation(self.spec.flop.inverse_degree, self.W,
                                                                             self.rng("inverse")))

    @property
    def U(self):
        fd = self.spec.flop
        return self._get("U", lambda: recover_associated_surface(self.inverse, list(fd.U_degrees), self.rng("U"),
                                                                 multiplicity=fd.e))

    def computed_schemes(self) -> dict:
        out = {"S": self.S, "X": self.X}
        for k in ("Z", "W"):
            if k in self._cache:
                out[k] = self._cache[k]
        if "U" in self._cache:
            out["U"] = self._cache["U"].scheme
        return out


def build_example(example_id: str, prime: int = 65537, seed: int = 0) -> Bundle:
    return Bundle(get(example_id), prime, seed).build()
