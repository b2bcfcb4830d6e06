"""Registry data, report schema, determinism and the command line."""
import json

import pytest

from forge.algebra.textio import parse_ideal
from forge.harness import CHECKS, REGISTRY, run_checks
from forge.harness.checks import matches, normalize, selected_checks
from forge.harness.cli import main
from forge.harness.registry import DERIVED, PUBLISHED, TRIVIAL, ExampleSpec, Step


def test_registry_is_well_formed():
    assert {"iii", "0", "i", "ii", "fano-i"} <= set(REGISTRY)
    for spec in REGISTRY.values():
        assert spec.expected
        for name, ex in spec.expected.items():
            assert name in CHECKS, name
            assert ex.provenance in (PUBLISHED, DERIVED, TRIVIAL)
        fd = spec.flop
        assert fd.inverse_degree == fd.index * fd.e - 1


def test_normalize_and_wildcards():
    assert normalize({2: 16, 3: 1}) == {"2": 16, "3": 1}
    assert normalize((1, [2, 3])) == [1, [2, 3]]
    assert matches([28, None, {2: 16}], [28, 29, {"2": 16}])
    assert not matches([28, None, {2: 16}], [27, 29, {2: 16}])
    assert not matches([1, None], [1, 2, 3])
    assert matches({"1,2": 7}, {"1,2": 7}) and not matches({"1,2": 7}, {"1,2": 6})


def test_selected_checks_levels():
    spec = REGISTRY["iii"]
    mand = selected_checks(spec)
    full = selected_checks(spec, "all")
    assert set(mand) < set(full)
    assert "trisecant_locus_dim" in full and "trisecant_locus_dim" not in mand
    assert selected_checks(spec, "all", only=["surface"]) == ["surface"]


def test_fano_report_passes_and_has_schema():
    r = run_checks("fano-i")
    assert r.passed and r.exit_code == 0 and r.primes_tried == [65537]
    d = r.to_dict()
    assert {"example", "prime", "seed", "checks", "status", "pass", "elapsed_ms"} <= set(d)
    for c in d["checks"]:
        assert {"name", "expected", "computed", "provenance", "mandatory", "pass"} <= set(c)


def test_reports_are_deterministic():
    a = run_checks("fano-i", seed=1).to_json(timing=False)
    b = run_checks("fano-i", seed=1).to_json(timing=False)
    assert a == b
    assert "elapsed_ms" not in a


def test_seed_changes_the_construction_not_the_answer():
    a, b = run_checks("fano-i", seed=0), run_checks("fano-i", seed=5)
    assert [c.computed for c in a.checks] == [c.computed for c in b.checks]


def test_cli_example_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["example", "fano-i", "--out", str(out), "--no-timing", "--dump-ideals", str(tmp_path / "ideals")])
    assert code == 0
    text = capsys.readouterr().out
    assert "[PASS] fano-i/surface" in text
    rep = json.loads(out.read_text())
    assert rep["pass"] is True and rep["example"] == "fano-i"
    S = parse_ideal((tmp_path / "ideals" / "fano-i_S.txt").read_text())
    assert S.nvars == 6 and S.prime == 65537 and len(S.generators) == 5
    assert len(S.parametrization) == 6


def test_cli_verify_all_jobs_agree(tmp_path):
    d1, d2 = tmp_path / "serial", tmp_path / "pool"
    base = ["verify-all", "--examples", "fano-i", "--seeds", "0", "1", "--no-timing"]
    assert main(base + ["--out-dir", str(d1)]) == 0
    assert main(base + ["--out-dir", str(d2), "--jobs", "2"]) == 0
    for s in (0, 1):
        name = f"fano-i_seed{s}.json"
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


@pytest.fixture
def broken(monkeypatch):
    # a recipe that never produces the cubic fourfold
    spec = ExampleSpec("broken", "surface without a fourfold",
                       (Step("plane_surface", {"degree": 3, "multiplicities": [1] * 4}),),
                       REGISTRY["fano-i"].flop, {}, dict(REGISTRY["fano-i"].expected))
    monkeypatch.setitem(REGISTRY, "broken", spec)
    return spec


def test_build_error_exit_code(broken, capsys):
    r = run_checks("broken")
    assert r.status == "build-error" and r.exit_code == 2
    assert r.primes_tried == [65537, 32003]
    assert main(["example", "broken"]) == 2


def test_check_failure_exit_code(monkeypatch):
    from forge.harness.registry import Expected
    spec = REGISTRY["fano-i"]
    bad = ExampleSpec(spec.id, spec.title, spec.recipe, spec.flop, spec.lattice,
                      {"surface": Expected([2, 6, 1])}, spec.cubic_system)
    monkeypatch.setitem(REGISTRY, "fano-i", bad)
    r = run_checks("fano-i", prime=65537)
    assert r.status == "check-failure" and r.exit_code == 1
    assert r.checks[0].computed == [2, 5, 1]
