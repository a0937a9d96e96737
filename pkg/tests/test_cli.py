"""Golden command-line invocations: exit codes and report shapes."""

import json
from pathlib import Path

from krl.cli import run_cli

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"
DATA = Path(__file__).resolve().parent / "data"


def run(capsys, *argv):
    code = run_cli([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_l2_passes(capsys):
    code, out, _ = run(capsys, "validate", FIX / "l2.krl")
    assert code == 0
    assert "PASS separator.modus-ponens" in out
    assert "FLAG classical=yes" in out


def test_validate_aks3_passes(capsys):
    code, out, _ = run(capsys, "validate", FIX / "aks3.krl")
    assert code == 0 and "PASS aks.s-axiom" in out


def test_validate_broken_lattice_fails(capsys):
    code, out, _ = run(capsys, "validate", DATA / "bad-antisym.krl")
    assert code == 1
    assert "FAIL order.antisymmetric witness=(e0, e1)" in out


def test_validate_incomplete_table_is_usage_error(capsys):
    code, out, err = run(capsys, "validate", DATA / "bad-imp.krl")
    assert code == 2
    assert "e0 e0" in err


def test_validate_missing_file(capsys):
    code, _, err = run(capsys, "validate", FIX / "missing.krl")
    assert code == 2


def test_adjunction_on_l2(capsys):
    code, out, _ = run(capsys, "adjunction", FIX / "l2.krl")
    assert code == 0
    assert "PASS adjunction.triangle-K" in out
    assert "PASS adjunction.triangle-A" in out


def test_adjunction_on_aks3(capsys):
    code, out, _ = run(capsys, "adjunction", FIX / "aks3.krl")
    assert code == 0 and "PASS adjunction.unit-certificate" in out


def test_interior_change_diamond_detects_hypothesis_failure(capsys):
    code, out, _ = run(capsys, "interior", "change", FIX / "diamond.krl",
                       FIX / "diamond-open-x.kop")
    assert code == 1
    assert "HypothesisFailed" in out and "witness=y" in out


def test_interior_change_aks3_hat_passes(capsys, tmp_path):
    out_path = tmp_path / "changed.krl"
    code, out, _ = run(capsys, "interior", "change", FIX / "aks3.krl",
                       FIX / "aks3-hat.kop", "-o", out_path)
    assert code == 0
    assert "PASS change.application-is-closure" in out
    assert "PASS cert.density" in out
    code, out, _ = run(capsys, "validate", out_path)
    assert code == 0


def test_interior_approx_prints_operator(capsys):
    code, out, _ = run(capsys, "interior", "approx", FIX / "aks3.krl",
                       FIX / "aks3-hat.kop")
    assert code == 0 and out.startswith("interior")


def test_morphism_check_dense(capsys):
    code, out, _ = run(capsys, "morphism", "check", "--dense",
                       FIX / "h3-to-l2.kmap", FIX / "heyting3.krl", FIX / "l2.krl")
    assert code == 0
    assert "PASS morphism.computationally-dense" in out


def test_morphism_check_without_dense(capsys):
    code, out, _ = run(capsys, "morphism", "check",
                       FIX / "id-l2.kmap", FIX / "l2.krl")
    assert code == 0 and "PASS morphism.uniform-realizer" in out


def test_functor_roundtrip(capsys, tmp_path):
    out_path = tmp_path / "a3.krl"
    code, out, _ = run(capsys, "functor", "A", FIX / "aks3.krl", "-o", out_path)
    assert code == 0 and out_path.exists()
    code, out, _ = run(capsys, "validate", out_path)
    assert code == 0
    code, out, _ = run(capsys, "functor", "K", FIX / "l2.krl", "-o", tmp_path / "k.krl")
    assert code == 0
    code, out, _ = run(capsys, "validate", tmp_path / "k.krl")
    assert code == 0


def test_apply_on_powerset_algebra(capsys, tmp_path):
    out_path = tmp_path / "a3.krl"
    run(capsys, "functor", "A", FIX / "aks3.krl", "-o", out_path)
    code, out, _ = run(capsys, "apply", out_path, "{a}", "{a b}")
    assert code == 0 and out.strip() == "{a b}"


def test_apply_on_l2(capsys):
    code, out, _ = run(capsys, "apply", FIX / "l2.krl", "e1", "e0")
    assert code == 0 and out.strip() == "e0"


def test_combinators_heyting3(capsys):
    code, out, _ = run(capsys, "combinators", FIX / "heyting3.krl")
    assert code == 0
    assert "cc = m" in out and "i = e1" in out


def test_combinators_json(capsys):
    code, out, _ = run(capsys, "--json", "combinators", FIX / "l2.krl")
    assert code == 0
    assert json.loads(out) == {"i": "e1", "k": "e1", "s": "e1",
                               "cc": "e1", "nu": "e1"}


def test_enumerate_lattices(capsys):
    code, out, _ = run(capsys, "enumerate", "--kind", "lattice", "--size", "4")
    assert code == 0 and "total: 2" in out


def test_enumerate_implications(capsys):
    code, out, _ = run(capsys, "enumerate", "--kind", "imp", "--size", "2")
    assert code == 0 and "total: 6" in out


def test_usage_error_exit_code(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_validate_json_output(capsys):
    code, out, _ = run(capsys, "--json", "validate", FIX / "l2.krl")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["ok"] is True
    assert any(c["clause"] == "imp.meet-commutation" for c in payload[0]["checks"])


def test_search_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("KRL_SEARCH_BUDGET", "0")
    code, out, _ = run(capsys, "morphism", "check", "--dense",
                       FIX / "h3-to-l2.kmap", FIX / "heyting3.krl", FIX / "l2.krl")
    # the hint certificate is verified without search, so the budget does
    # not bite here
    assert code == 0
    monkeypatch.setenv("KRL_SEARCH_BUDGET", "1")
    ident = FIX / "id-l2.kmap"
    code, out, _ = run(capsys, "morphism", "check", "--dense",
                       ident, FIX / "l2.krl")
    assert code == 0  # hinted as well
