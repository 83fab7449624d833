import json
from pathlib import Path

import jsonschema
import pytest

from qlucas.cli import main
from qlucas.congruence import apery_polynomial

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "docs" / "report.schema.json").read_text()
)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, _ = run(capsys, argv + ["--format", "json"])
    envelope = json.loads(out)
    jsonschema.validate(envelope, SCHEMA)
    return code, envelope


class TestComputationCommands:
    def test_cyclotomic_text(self, capsys):
        code, out, _ = run(capsys, ["cyclotomic", "12"])
        assert code == 0
        assert "q^4 - q^2 + 1" in out

    def test_cyclotomic_json(self, capsys):
        code, envelope = run_json(capsys, ["cyclotomic", "12"])
        assert code == 0
        assert envelope["command"] == "cyclotomic"
        assert envelope["report"]["coefficients"] == ["1", "0", "-1", "0", "1"]
        assert envelope["report"]["degree"] == 4

    def test_qbinom(self, capsys):
        code, envelope = run_json(capsys, ["qbinom", "4", "2"])
        assert code == 0
        assert envelope["report"]["polynomial"] == "q^4 + q^3 + 2*q^2 + q + 1"

    def test_qbinom_mod(self, capsys):
        code, envelope = run_json(capsys, ["qbinom", "4", "2", "--mod", "2"])
        assert code == 0
        assert envelope["report"]["coefficients"] == ["2"]

    def test_qratio_builtin_spec(self, capsys):
        code, envelope = run_json(
            capsys, ["qratio", "--spec", "central", "--point", "2"]
        )
        assert code == 0
        assert envelope["report"]["integral"] is True
        assert envelope["report"]["coefficients"] == ["1", "1", "2", "1", "1"]

    def test_qratio_mod_hits_zero(self, capsys):
        code, envelope = run_json(
            capsys, ["qratio", "--spec", "central", "--point", "2", "--mod", "3"]
        )
        assert code == 0
        assert envelope["report"]["coefficients"] == []
        assert envelope["report"]["degree"] is None

    def test_qratio_at_one(self, capsys):
        code, envelope = run_json(
            capsys, ["qratio", "--spec", "central", "--point", "3", "--at-one"]
        )
        assert code == 0
        assert envelope["report"]["value_at_one"] == 20

    def test_qratio_nonintegral_exits_one(self, capsys):
        code, envelope = run_json(
            capsys, ["qratio", "--spec", "inverse-central", "--point", "1"]
        )
        assert code == 1
        assert envelope["report"]["integral"] is False

    def test_build_series(self, capsys):
        code, envelope = run_json(
            capsys, ["build-series", "--spec", "central", "--cap", "3"]
        )
        assert code == 0
        rows = envelope["report"]["coefficients"]
        assert len(rows) == 4
        assert rows[2] == {"exponents": [2], "coeff": ["1", "1", "2", "1", "1"]}

    def test_specialize_matches_direct_sum(self, capsys):
        code, envelope = run_json(
            capsys,
            ["specialize", "--spec", "apery", "--t", "1,0", "--m", "1,1", "--order", "3"],
        )
        assert code == 0
        rows = {tuple(r["exponents"]): r["coeff"] for r in envelope["report"]["coefficients"]}
        assert rows[(3,)] == list(apery_polynomial("a", 1, 3).to_strings())


class TestVerificationCommands:
    def test_check_landau_apery(self, capsys):
        code, envelope = run_json(capsys, ["check-landau", "--spec", "apery"])
        assert code == 0
        assert envelope["report"]["integrality"] is True
        assert envelope["report"]["criterion_D"] is True

    def test_check_landau_spec_file(self, capsys, tmp_path):
        path = tmp_path / "inverse.json"
        path.write_text(json.dumps({"dim": 1, "e": [[1], [1]], "f": [[2]]}))
        code, envelope = run_json(capsys, ["check-landau", "--spec", str(path)])
        assert code == 1
        assert envelope["report"]["integrality"] is False
        assert envelope["report"]["violating_cells"]

    def test_verify_congruence(self, capsys):
        code, envelope = run_json(
            capsys,
            ["verify-congruence", "--spec", "central", "--b-max", "4", "--n-box", "3"],
        )
        assert code == 0
        assert envelope["report"]["ok"] is True
        assert envelope["report"]["checked"] == 40

    def test_verify_plucas(self, capsys):
        code, envelope = run_json(
            capsys,
            ["verify-plucas", "--spec", "central", "--p-max", "3", "--n-box", "4"],
        )
        assert code == 0
        assert envelope["report"]["checked"] == 25

    def test_verify_inter2(self, capsys):
        code, envelope = run_json(
            capsys, ["verify-inter2", "--spec", "central", "--b", "3", "--n-box", "2"]
        )
        assert code == 0
        assert envelope["report"]["checked"] == 3

    def test_verify_apery(self, capsys):
        code, envelope = run_json(
            capsys,
            ["verify-apery", "--family", "a", "--t", "1", "--b-max", "4", "--n-max", "8"],
        )
        assert code == 0
        assert envelope["report"]["ok"] is True

    def test_extract_cofactor(self, capsys):
        code, envelope = run_json(
            capsys,
            ["extract-cofactor", "--spec", "central", "--order", "12", "--b", "2"],
        )
        assert code == 0
        assert len(envelope["report"]["residues"]) == 2
        assert envelope["report"]["check"]["ok"] is True

    def test_verify_ld_passes(self, capsys):
        code, envelope = run_json(
            capsys, ["verify-ld", "--series", "g1", "--p", "2", "--order", "12"]
        )
        assert code == 0
        assert envelope["report"]["ok"] is True

    def test_verify_ld_factorial_fails(self, capsys):
        code, envelope = run_json(
            capsys, ["verify-ld", "--series", "factorial", "--p", "2", "--order", "12"]
        )
        assert code == 1
        assert envelope["report"]["failures"]

    def test_find_relations(self, capsys):
        code, envelope = run_json(
            capsys,
            ["find-relations", "--series", "g1", "--dx", "1", "--dy", "2", "--order", "30"],
        )
        assert code == 0
        report = envelope["report"]
        assert report["count"] == 1
        assert report["candidates"][0]["pretty"] == "4*x*y1^2 - y1^2 + 1"
        assert report["candidates"][0]["stability"] == "verified"


class TestExitCodes:
    def test_unknown_spec_name(self, capsys):
        code, _, err = run(capsys, ["qratio", "--spec", "nosuch", "--point", "1"])
        assert code == 2
        assert "error" in err

    def test_bad_point_syntax(self, capsys):
        code, _, _ = run(capsys, ["qratio", "--spec", "central", "--point", "xx"])
        assert code == 2

    def test_missing_subcommand_args(self, capsys):
        code, _, _ = run(capsys, ["verify-congruence", "--spec", "central"])
        assert code == 2

    def test_nonprime_modulus(self, capsys):
        code, _, err = run(capsys, ["verify-ld", "--series", "g1", "--p", "6", "--order", "10"])
        assert code == 2
        assert "prime" in err

    def test_hypothesis_violation(self, capsys):
        code, _, _ = run(capsys, ["build-series", "--spec", "inverse-central", "--cap", "4"])
        assert code == 2

    def test_order_too_small(self, capsys):
        code, _, _ = run(
            capsys,
            ["find-relations", "--series", "g1", "--dx", "1", "--dy", "1", "--order", "3"],
        )
        assert code == 2


class TestOutputModes:
    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(
            capsys, ["cyclotomic", "12", "--format", "json", "--output", str(target)]
        )
        assert code == 0
        assert out == ""
        envelope = json.loads(target.read_text())
        jsonschema.validate(envelope, SCHEMA)
        assert envelope["report"]["degree"] == 4

    def test_text_mode_elides_long_values(self, capsys):
        code, out, _ = run(capsys, ["qbinom", "40", "20"])
        assert code == 0
        assert "characters elided" in out

    def test_json_mode_is_complete(self, capsys):
        code, envelope = run_json(capsys, ["qbinom", "40", "20"])
        assert code == 0
        assert len(envelope["report"]["coefficients"]) == 401

    def test_determinism_modulo_timestamp(self, capsys):
        argv = ["verify-congruence", "--spec", "apery", "--b-max", "3", "--n-box", "2,2"]
        _, first = run_json(capsys, argv)
        _, second = run_json(capsys, argv)
        del first["timestamp"], second["timestamp"]
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_jobs_env_default(self, capsys, monkeypatch):
        argv = ["verify-congruence", "--spec", "central", "--b-max", "3", "--n-box", "3"]
        _, serial = run_json(capsys, argv)
        monkeypatch.setenv("QLUCAS_JOBS", "2")
        _, parallel = run_json(capsys, argv)
        assert serial["report"] == parallel["report"]
        assert parallel["params"]["jobs"] == 2
