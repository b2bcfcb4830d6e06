"""Acceptance criteria, each timed against its budget.

Bundles are built fresh in this module so that every criterion's time
includes the work it triggers; criteria on the same example share the
objects computed before them.  A criterion that fails at the first prime
is rerun from scratch at the second.
"""
import time

from forge.congruences import LatticeData, discriminant, self_intersection_in_cubic
from forge.harness import CHECKS, PRIMES, build_example
from forge.invariants import check_condition_K3, graded_piece_basis

from .conftest import ACCEPTANCE_LINES

_BUILT: dict = {}


def built(example_id, prime):
    key = (example_id, prime)
    if key not in _BUILT:
        _BUILT[key] = build_example(example_id, prime, 0)
    return _BUILT[key]


def check(b, name):
    return CHECKS[name](b)


def expect(label, computed, expected):
    assert computed == expected, f"{label}: computed {computed}, expected {expected}"
    return f"{label} {computed}"


def criterion(n, budget, body):
    """Run body(prime) at each prime until it passes; record one line; fail the test if it did not."""
    err = None
    for prime in PRIMES:
        t0 = time.perf_counter()
        try:
            summary, err = body(prime), None
        except (AssertionError, ArithmeticError, ValueError) as exc:
            summary, err = None, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        if err is None:
            break
    timely = dt <= budget
    ok = err is None and timely
    detail = summary if err is None else err
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({dt:.1f} s of {budget} s, p = {prime}) {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert err is None, line
    assert timely, line


def test_criterion_01_row_iii_surface():
    def body(p):
        b = built("iii", p)
        return "; ".join([expect("(dim, deg, g)", check(b, "surface"), [2, 10, 6]),
                          expect("h0(I(3))", check(b, "h0_I3"), 10)])
    criterion(1, 120, body)


def test_criterion_02_row_iii_congruence():
    def body(p):
        b = built("iii", p)
        return "; ".join([expect("classes", check(b, "congruence_classes"), {"1,2": 7, "2,5": 1}),
                          expect("fiber (dim, deg, length)", check(b, "fiber_curve"), [1, 2, 5])])
    criterion(2, 300, body)


def test_criterion_03_row_iii_map_data():
    def body(p):
        b = built("iii", p)
        return "; ".join([expect("mu degrees", check(b, "mu_projective_degrees"), [3, 15, 27, 9, 1]),
                          expect("inverse degrees", check(b, "inverse_projective_degrees"), [1, 9, 27, 15, 3]),
                          expect("round trip on 100 points", check(b, "inverse_round_trip"), True)])
    criterion(3, 600, body)


def test_criterion_04_row_iii_K3_recovery():
    def body(p):
        b = built("iii", p)
        return "; ".join([expect("U (dim, deg, g)", check(b, "U_invariants"), [2, 12, 14]),
                          expect("U generators", check(b, "U_generators"), {5: 9})])
    criterion(4, 600, body)


def test_criterion_05_row_0_construction():
    def body(p):
        b = built("0", p)
        return "; ".join([expect("(dim, deg, g)", check(b, "surface"), [2, 9, 2]),
                          expect("singular points", check(b, "singular_points"), 5),
                          expect("h0(I(3))", check(b, "h0_I3"), 9),
                          expect("Z (deg, g, gens)", check(b, "image_Z"), [14, 15, {3: 7}])])
    criterion(5, 900, body)


def test_criterion_06_row_0_congruence():
    def body(p):
        b = built("0", p)
        return "; ".join([expect("total", check(b, "congruence_total"), 17),
                          expect("classes", check(b, "congruence_classes"), {"1,2": 9, "2,5": 7, "3,8": 1}),
                          expect("e = 3 orbit degree", check(b, "top_class_orbit_degree"), 1)])
    criterion(6, 900, body)


def test_criterion_07_row_0_flop_side():
    def body(p):
        b = built("0", p)
        return "; ".join([expect("W (dim, deg, gens)", check(b, "image_W"), [4, 5, {2: 5}]),
                          expect("U (dim, deg, g)", check(b, "U_invariants"), [2, 21, 18]),
                          expect("U generators", check(b, "U_generators"), {2: 5, 3: 8})])
    criterion(7, 1800, body)


def test_criterion_08_lattice():
    def body(p):
        # (d, HK, K^2, chi_top, nodes) -> (S^2, disc)
        rows = {"0": ((9, -7, 5, 7, 5), (41, 42)), "fano-i": ((5, -5, 5, 7, 0), (13, 14)),
                "iii": ((10, 0, -1, 13, 0), (46, 38))}
        out = []
        for ex, (inv, (s2, disc)) in rows.items():
            s = self_intersection_in_cubic(*inv)
            L = LatticeData.from_invariants(*inv)
            assert (s, discriminant(inv[0], s)) == (s2, disc) == (L.self_intersection, L.discriminant), ex
            # the same numbers from the invariants computed on the built surface
            out.append(expect(ex, check(built(ex, p), "lattice"), [s2, disc]))
        return "; ".join(out)
    criterion(8, 30, body)


def test_criterion_09_condition_K3():
    def body(p):
        t = check_condition_K3(graded_piece_basis(built("iii", p).S.ideal, 3))
        f = check_condition_K3(graded_piece_basis(built("0", p).S.ideal, 3))
        return "; ".join([expect("S38", t, True), expect("S42", f, False)])
    criterion(9, 120, body)


def _property_suites(p):
    import random

    from forge.algebra.groebner import GroebnerBasis, buchberger, groebner_basis, s_pairs_reduce_to_zero
    from forge.algebra.ideal import Ideal, saturate, saturate_irrelevant
    from forge.algebra.monomials import GREVLEX
    from forge.algebra.poly import Polynomial
    from forge.maps import round_trip_ok
    from forge.schemes import solve_zero_dim_ideal

    from .conftest import random_form

    r = random.Random(2024)
    for _ in range(20):
        n = r.randint(3, 4)
        gens = [random_form(n, r.randint(1, 3), r, p, density=0.5) for _ in range(r.randint(1, 3))]
        F = groebner_basis(gens, engine="f4")
        assert F == GroebnerBasis(buchberger(gens), GREVLEX, n, p), "F4 and Buchberger disagree"
        assert s_pairs_reduce_to_zero(F.polys)
        J = Ideal([Polynomial.var(n, 0, p), Polynomial.var(n, 1, p)])
        S1 = saturate(Ideal(gens), J)
        assert saturate(S1, J).gb() == S1.gb(), "saturation not idempotent"
        T1 = saturate_irrelevant(Ideal(gens), r)
        assert saturate_irrelevant(T1, r).gb() == T1.gb()
    degrees, sampled = {}, []
    for ex in ("fano-i", "iii", "i", "ii", "0"):
        b = built(ex, p)
        mu, inv = b.mu, b.inverse
        assert round_trip_ok(mu, inv, random.Random(5), 20), f"{ex}: round trip"
        # birationality is certified by the round trip, so the top entries use map degree 1
        d = mu.projective_degrees(random.Random(6), map_degree=1)
        e = inv.projective_degrees(random.Random(7), map_degree=1)
        assert d == e[::-1], f"{ex}: {d} vs {e}"
        degrees[ex] = d
        schemes = {"S": b.S, **{k: v for k, v in b.computed_schemes().items() if k in ("Z", "W")}}
        for name, X in schemes.items():
            if X.parametrization is None:
                continue
            sampled.append(f"{ex}/{name}")
            _, pts = X.parametrization.sample(r, 50)
            assert all(X.contains(x) for x in pts), f"{ex}/{name}: sample off the scheme"
    for _ in range(10):
        d1, d2 = r.randint(1, 4), r.randint(1, 4)
        res = solve_zero_dim_ideal(Ideal([random_form(3, d1, r, p), random_form(3, d2, r, p)]), r)
        assert res.degree == d1 * d2 == sum(o.degree * o.multiplicity for o in res.orbits)
    return ("reversal " + ", ".join(f"{ex} {d}" for ex, d in degrees.items())
            + "; 50-point membership on " + ", ".join(sampled))


def test_criterion_10_property_suites():
    criterion(10, 300, _property_suites)
