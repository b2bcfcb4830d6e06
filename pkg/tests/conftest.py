import os
import random

import pytest
from hypothesis import HealthCheck, settings

from forge.algebra.poly import Polynomial

P = 65537

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=20, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list = []


def var(n, i, p=P):
    return Polynomial.var(n, i, p)


def poly(n, terms, p=P):
    """Polynomial from {exponent tuple: coefficient}."""
    return Polynomial(n, terms, p)


def random_form(n, d, rng, p=P, density=1.0):
    from forge.algebra.monomials import monomials_of_degree
    t = {m: rng.randrange(1, p) for m in monomials_of_degree(n, d) if rng.random() < density}
    if not t:
        t = {monomials_of_degree(n, d)[0]: 1}
    return Polynomial(n, t, p)


_BUNDLES: dict = {}


def bundle(example_id, prime=P, seed=0):
    """Built example shared by every test in the session (derived objects are cached on it)."""
    from forge.harness import build_example
    key = (example_id, prime, seed)
    if key not in _BUNDLES:
        _BUNDLES[key] = build_example(example_id, prime, seed)
    return _BUNDLES[key]


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
