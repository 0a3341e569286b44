"""Command-line surface: formatting, JSON schema, exit codes, determinism."""

import json

import pytest

from delliptic import chow, report
from delliptic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassCommand:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "class", "m2", "--d", "2")
        assert code == 0
        assert out.strip() == "6*delta_0 + 24*delta_1"

    def test_vanishing_class(self, capsys):
        code, out, _ = run(capsys, "class", "m3", "--d", "1")
        assert code == 0
        assert out.strip() == "0"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "class", "m21", "--d", "2", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == "delliptic/1"
        assert payload["class"]["coeffs"]["delta_00"] == "1/4"
        assert payload["class"]["coeffs"]["xi_1"] == "6"

    def test_usage_error_on_bad_d(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["class", "m2", "--d", "0"])
        assert exc.value.code == 2

    def test_usage_error_on_bad_space(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["class", "m9", "--d", "2"])
        assert exc.value.code == 2


class TestSeriesCommand:
    def test_series_values_and_fit(self, capsys):
        code, out, _ = run(capsys, "series", "m2", "delta_0", "--N", "10", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["coefficients"][:4] == ["0", "0", "6", "32"]
        assert "monomials" in payload["fit"]

    def test_order_below_basis_size(self, capsys):
        code, _, err = run(capsys, "series", "m2", "delta_0", "--N", "3")
        assert code == 2
        assert "error" in err

    def test_unknown_label(self, capsys):
        code, _, err = run(capsys, "series", "m2", "delta_9", "--N", "10")
        assert code == 2
        assert "delta_9" in err


class TestQmodFitCommand:
    def test_fit_from_file(self, capsys, tmp_path):
        from delliptic.divisors import sigma

        series = ["0"] + [str(sigma(3, d)) for d in range(1, 31)]
        path = tmp_path / "series.json"
        path.write_text(json.dumps(series))
        code, out, _ = run(capsys, "qmod-fit", "--in", str(path), "--weight", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["monomials"] == [
            {"a": 0, "b": 0, "c": 0, "coeff": "-1/240"},
            {"a": 0, "b": 1, "c": 0, "coeff": "1/240"},
        ]

    def test_refusal_from_file(self, capsys, tmp_path):
        from delliptic.divisors import tau

        series = ["0"] + [str(d * tau(d)) for d in range(1, 31)]
        path = tmp_path / "series.json"
        path.write_text(json.dumps(series))
        code, out, _ = run(capsys, "qmod-fit", "--in", str(path))
        assert code == 0
        assert "not_quasimodular" in json.loads(out)

    def test_bad_input(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"not": "a list"}')
        code, _, err = run(capsys, "qmod-fit", "--in", str(path))
        assert code == 2


class TestHurwitzCommand:
    def test_count(self, capsys):
        code, out, _ = run(
            capsys,
            "hurwitz", "--d", "4",
            "--profile", "4", "--profile", "4", "--profile", "3,1",
        )
        assert code == 0
        assert out.strip() == "1"

    def test_fractional_count(self, capsys):
        code, out, _ = run(
            capsys,
            "hurwitz", "--d", "3",
            "--profile", "3", "--profile", "3", "--profile", "3",
        )
        assert code == 0
        assert out.strip() == "1/3"

    def test_size_mismatch(self, capsys):
        code, _, err = run(
            capsys, "hurwitz", "--d", "4", "--profile", "3", "--profile", "4"
        )
        assert code == 2


class TestCountCommand:
    @pytest.mark.parametrize(
        "kind,d,expected",
        [
            ("sublattices", 6, "12"),
            ("pointed-isogenies", 4, "21"),
            ("dd22", 2, "6"),
            ("dd2222", 2, "720"),
        ],
    )
    def test_counts(self, capsys, kind, d, expected):
        code, out, _ = run(capsys, "count", kind, "--d", str(d))
        assert code == 0
        assert out.strip() == expected


class TestVerifyCommand:
    def test_small_sweep_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-d", "3", "--N", "10")
        assert code == 0
        assert "PASS pairing-tables" in out
        assert "FAIL" not in out

    def test_json_report_deterministic(self, capsys, tmp_path):
        outputs = []
        for _ in range(2):
            code, out, _ = run(capsys, "verify", "--max-d", "2", "--N", "10", "--json")
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1]
        payload = json.loads(outputs[0])
        assert payload["schema"] == "delliptic/1"
        assert payload["passed"] is True
        assert sorted(payload["classes"]) == ["m2", "m21", "m2e", "m3"]
        for entries in payload["classes"].values():
            assert [e["d"] for e in entries] == [1, 2]
            assert all(e["agree"] for e in entries)
            assert all(e["solved"] == e["closed"] for e in entries)
        assert sorted(payload["series"]["m2"]) == ["delta_0", "delta_1"]

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, _, _ = run(capsys, "verify", "--max-d", "2", "--N", "10", "--out", str(path))
        assert code == 0
        payload = json.loads(path.read_text())
        assert payload["passed"] is True

    def test_corrupted_pairing_table_fails_named_check(self, capsys, monkeypatch):
        table = chow.SPACES["M21"].pairings[(2, 2)]
        corrupted = tuple(
            tuple(v + 1 if (i, j) == (0, 3) else v for j, v in enumerate(row))
            for i, row in enumerate(table)
        )
        monkeypatch.setitem(chow.SPACES["M21"].pairings, (2, 2), corrupted)
        result = report.run_verification(max_d=2, order=10)
        assert result["passed"] is False
        assert result["first_failure"] == "pairing-tables"
        by_name = {c["check"]: c for c in result["checks"]}
        assert "asymmetric" in by_name["pairing-tables"]["detail"]

        code, out, _ = run(capsys, "verify", "--max-d", "2", "--N", "10")
        assert code == 1
        assert "FAIL pairing-tables" in out
        assert "FIRST FAILURE: pairing-tables" in out

    def test_corrupted_table_fails_class_command(self, capsys, monkeypatch):
        table = chow.SPACES["M21"].pairings[(2, 2)]
        corrupted = tuple(
            tuple(v + 1 if (i, j) == (4, 4) else v for j, v in enumerate(row))
            for i, row in enumerate(table)
        )
        monkeypatch.setitem(chow.SPACES["M21"].pairings, (2, 2), corrupted)
        # pick a degree no other test computes, so the memoized caches are cold
        code, _, err = run(capsys, "class", "m21", "--d", "97")
        assert code == 1
        assert "verification failure" in err
