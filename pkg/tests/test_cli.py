import json

from kgrid.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInvariantCommand:
    def test_json_payload(self, capsys):
        code, out, _ = invoke(capsys, "invariant", "I(2,3)", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["group"] == {"k": 2, "left": [2, 3], "right": [3, 2]}
        assert payload["gamma"] == [[1, 1]]
        assert payload["exceptional_count"] == 0
        assert payload["published_table_diffs"] == []

    def test_spin_diff_reported(self, capsys):
        code, out, _ = invoke(capsys, "invariant", "IV(5)", "--json")
        assert code == 0
        payload = json.loads(out)
        diffs = payload["published_table_diffs"]
        assert len(diffs) == 1
        assert diffs[0]["factor"] == "IV(5)"
        assert diffs[0]["computed"] == [[2], [4]]
        assert diffs[0]["published"] == [[2]]

    def test_human_output(self, capsys):
        code, out, _ = invoke(capsys, "invariant", "I(2,3)")
        assert code == 0
        assert "left caps" in out and "[2, 3]" in out

    def test_quiet(self, capsys):
        code, out, _ = invoke(capsys, "invariant", "I(2,3)", "--quiet")
        assert code == 0 and out == ""


class TestClassifyCommand:
    def test_isomorphic_exit_zero(self, capsys):
        code, out, _ = invoke(capsys, "classify", "I(2,3)+III(4)", "III(4)+I(2,3)")
        assert code == 0 and "ISOMORPHIC" in out

    def test_not_isomorphic_exit_one(self, capsys):
        code, out, _ = invoke(capsys, "classify", "I(1,2)", "I(1,3)")
        assert code == 1 and "NOT_ISOMORPHIC" in out

    def test_indeterminate_exit_two(self, capsys):
        code, out, _ = invoke(capsys, "classify", "V", "VI")
        assert code == 2 and "INDETERMINATE" in out

    def test_json_carries_exit_code(self, capsys):
        code, out, _ = invoke(capsys, "classify", "IV(4)", "I(2,2)", "--json")
        payload = json.loads(out)
        assert payload["verdict"] == "ISOMORPHIC"
        assert payload["exit_code"] == code == 0


class TestVerifyCommand:
    def test_spin_report(self, capsys):
        code, out, _ = invoke(capsys, "verify", "IV(6)")
        assert code == 0
        assert "ok" in out and "DIFFERS" in out

    def test_json_report(self, capsys):
        code, out, _ = invoke(capsys, "verify", "III(3)+V", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        factors = payload["factors"]
        assert factors[0]["factor"] == "III(3)"
        assert factors[0]["span"]["ok"] is True
        assert factors[1] == {
            "factor": "V",
            "exceptional": True,
            "note": "trivial invariant; no grid model",
            "ok": True,
        }


class TestErrorExits:
    def test_parse_error_exit_64(self, capsys):
        code, _, err = invoke(capsys, "invariant", "I(2,3")
        assert code == 64
        assert "position 5" in err

    def test_range_error_exit_65(self, capsys):
        code, _, err = invoke(capsys, "classify", "II(4)", "I(1,1)")
        assert code == 65
        assert "IV(6)" in err  # names the coincidence

    def test_unknown_subcommand_exit_64(self, capsys):
        code, _, err = invoke(capsys, "frobnicate")
        assert code == 64

    def test_bad_space_literal_exit_64(self, capsys, tmp_path):
        path = tmp_path / "alpha.json"
        path.write_text("[[1]]")
        code, _, err = invoke(capsys, "lift", str(path), "M(2,x)", "M(2,2)")
        assert code == 64


class TestLiftCommand:
    def test_success(self, capsys, tmp_path):
        path = tmp_path / "alpha.json"
        path.write_text("[[2]]")
        code, out, _ = invoke(capsys, "lift", str(path), "M(1,1)", "M(2,2)",
                              "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload == {"ok": True, "mult": [[2]], "source": "M(1,1)",
                           "target": "M(2,2)"}

    def test_scalar_string_entries(self, capsys, tmp_path):
        path = tmp_path / "alpha.json"
        path.write_text('[["2"]]')
        code, out, _ = invoke(capsys, "lift", str(path), "M(1,1)", "M(2,2)")
        assert code == 0 and "lifted" in out

    def test_violation_names_summand(self, capsys, tmp_path):
        path = tmp_path / "alpha.json"
        path.write_text("[[2]]")
        code, out, _ = invoke(capsys, "lift", str(path), "M(2,1)", "M(3,3)",
                              "--json")
        assert code == 1
        payload = json.loads(out)
        assert payload["ok"] is False
        assert payload["summand"] == 0 and payload["side"] == "left"
        assert payload["needed"] == 4 and payload["cap"] == 3

    def test_negative_entry_rejected(self, capsys, tmp_path):
        path = tmp_path / "alpha.json"
        path.write_text("[[-1]]")
        code, out, _ = invoke(capsys, "lift", str(path), "M(1,1)", "M(2,2)",
                              "--json")
        assert code == 1
        assert json.loads(out)["ok"] is False

    def test_fractional_entry_rejected(self, capsys, tmp_path):
        path = tmp_path / "alpha.json"
        path.write_text('[["1/2"]]')
        code, _, err = invoke(capsys, "lift", str(path), "M(1,1)", "M(2,2)")
        assert code == 1


class TestTableCommand:
    def test_byte_deterministic(self, capsys):
        args = ("table", "--spin-max", "6", "--rect-max", "3")
        code1, out1, _ = invoke(capsys, *args)
        code2, out2, _ = invoke(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_rows_cover_families(self, capsys):
        code, out, _ = invoke(capsys, "table", "--json", "--spin-max", "5",
                              "--rect-max", "2", "--hilbert-max", "2",
                              "--symplectic-max", "5", "--hermitian-max", "2")
        assert code == 0
        rows = {r["factor"]: r for r in json.loads(out)["rows"]}
        assert rows["I(2,2)"]["matches_published"] is True
        assert rows["II(5)"]["gamma_computed"] == [[2]]
        assert rows["IV(4)"]["matches_published"] is False
        assert rows["IV(5)"]["gamma_computed"] == [[2], [4]]
        assert rows["IV(5)"]["gamma_published"] == [[2]]
