import json
from pathlib import Path

import pytest

from src.cli import main


GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def canonical(text):
    return json.dumps(json.loads(text), sort_keys=True, indent=2, ensure_ascii=False)


class TestCommands:
    def test_validate(self, capsys):
        status, out = run(capsys, "validate", "fx-zoo")
        assert status == 0
        assert out.startswith("valid (strong mode)")

    def test_check(self, capsys):
        status, out = run(capsys, "check", "fx-zoo", "example1")
        assert status == 0
        assert out.splitlines()[-1] == "model"

    def test_check_failure(self, capsys, tmp_path):
        path = tmp_path / "cats.tbox"
        path.write_text("natural Cat, Dog\nci Cat <= Dog\n")
        status, out = run(capsys, "check", "fx-zoo", str(path))
        assert status == 1
        assert "not a model" in out

    def test_mu_json(self, capsys):
        status, out = run(capsys, "--json", "mu", "fx-zoo", "Cat", "WildCat")
        assert status == 0
        payload = json.loads(out)
        assert payload["labels"] == ["σ_{(1,2)}"]
        assert payload["phi_target"] == ["c'"]

    @pytest.mark.parametrize("assertion, status", [
        ("Cat : WildCat :: Dog : Wolf", 0),
        ("Cat : WildCat :: Wolf : Dog", 1),
    ])
    def test_ana(self, capsys, assertion, status):
        assert run(capsys, "ana", "fx-zoo", assertion)[0] == status

    def test_ap_on_sets(self, capsys):
        status, out = run(capsys, "ap", "{x,y}", "{x}", "{y,z}", "{z}")
        assert status == 0
        assert "[sets]: holds" in out

    def test_ap_on_concepts(self, capsys):
        status, out = run(capsys, "ap", "(and Young Cat)", "(and Adult Cat)", "(and Young Dog)",
                          "(and Adult Dog)", "--interp", "fx-zoo", "--level", "features")
        assert status == 0
        assert "[features]" in out

    def test_infer(self, capsys):
        status, out = run(capsys, "infer", "example1")
        assert status == 0
        assert "ci (and Adult Wolf) <= Dangerous  (rule_extrapolation)" in out

    def test_infer_explain(self, capsys):
        status, out = run(capsys, "infer", "example2", "--witness", "fx-spec", "--explain")
        assert status == 0
        assert "ci Plan <= (some specifies Building)  (rule_translation)" in out

    def test_countermodel(self, capsys, tmp_path):
        path = tmp_path / "proportion.tbox"
        path.write_text("natural A, B, C, D\nana A : B :: C : D\n")
        status, out = run(capsys, "countermodel", str(path), "ana A : C :: B : D", "--max-features", "1")
        assert status == 1
        assert out.startswith("countermodel for ana A : C :: B : D")

    def test_no_countermodel(self, capsys, tmp_path):
        path = tmp_path / "inclusion.tbox"
        path.write_text("natural A, B\nci A <= B\n")
        status, out = run(capsys, "--json", "countermodel", str(path), "ci A <= B", "--max-features", "2")
        assert status == 0
        assert json.loads(out)["status"] == "none-within-bounds"


class TestUsageErrors:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_unknown_fixture(self, capsys):
        status = main(["validate", "fx-nowhere"])
        assert status == 2
        assert "error:" in capsys.readouterr().err

    def test_wrong_arity(self, capsys):
        assert main(["ap", "{a}", "{b}"]) == 2

    def test_over_the_search_cap(self, capsys, tmp_path):
        path = tmp_path / "inclusion.tbox"
        path.write_text("natural A, B\nci A <= B\n")
        assert main(["countermodel", str(path), "ci B <= A", "--max-features", "20"]) == 2


class TestJsonOutput:
    """`--json` reports keep their shape"""

    @pytest.mark.parametrize("argv, golden", [
        (["check", "fx-zoo", "example1"], "check_fx-zoo_example1.json"),
        (["mu", "fx-zoo", "Cat", "WildCat"], "mu_fx-zoo_Cat_WildCat.json"),
        (["fixtures"], "fixtures.json"),
    ])
    def test_matches_golden_file(self, capsys, argv, golden):
        status, out = run(capsys, "--json", *argv)
        assert status == 0
        assert canonical(out) == canonical((GOLDEN / golden).read_text(encoding="utf-8"))
