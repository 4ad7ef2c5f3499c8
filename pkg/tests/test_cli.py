import json

import pytest

from dlv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_text(capsys):
    code, out, err = run(capsys, "verify", "--n", "5", "--format", "text")
    assert code == 0
    assert out.count("Verified") == 7
    assert out.count("BeyondThreshold") == 1


def test_verify_even_n_is_usage_error(capsys):
    code, out, err = run(capsys, "verify", "--n", "4")
    assert code == 1
    assert "usage" in err


def test_verify_json(capsys):
    code, out, err = run(capsys, "verify", "--n", "3", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert document["schema"] == "verification-report"
    assert document["n"] == 3
    assert len(document["instances"]) == 4
    assert document["instances"][0]["h0"] == 1
    assert document["instances"][-1]["h0"] == "unknown"


def test_verify_single_instance(capsys):
    code, out, err = run(capsys, "verify", "--n", "5", "--m", "3", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert len(document["instances"]) == 1
    assert document["instances"][0]["certificate_value"] == -17


def test_verify_m_max_override(capsys):
    code, out, err = run(capsys, "verify", "--n", "3", "--m-max", "5", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert [i["m"] for i in document["instances"]] == [1, 2, 3, 4, 5, 6]
    assert sum(1 for i in document["instances"] if i["status"] == "BeyondThreshold") == 3


def test_pair_witness_formula(capsys):
    code, out, err = run(capsys, "pair", "--n", "3", "--expr", "(2*A - R).G_n")
    assert code == 0
    assert out.strip() == "-5"


def test_pair_class_output(capsys):
    code, out, err = run(capsys, "pair", "--n", "3", "--expr", "A - R")
    assert code == 0
    assert out.strip() == "-G + Gamma_n"


def test_pair_json(capsys):
    code, out, err = run(capsys, "pair", "--n", "7", "--expr", "D.D", "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert document["kind"] == "pairing"
    assert document["value"] == 4


def test_pair_expression_error(capsys):
    code, out, err = run(capsys, "pair", "--n", "3", "--expr", "A.Bogus")
    assert code == 1
    assert "offset" in err


def test_pair_cross_model_error(capsys):
    code, out, err = run(capsys, "pair", "--n", "3", "--expr", "A.D")
    assert code == 1
    assert "error" in err


def test_sweep_text_counter_on_stderr(capsys):
    code, out, err = run(capsys, "sweep", "--n-range", "3..5")
    assert code == 0
    assert "[1/2] n=3" in err
    assert "[2/2] n=5" in err
    assert "n=3" in out and "n=5" in out


def test_sweep_bad_range(capsys):
    for bad in ("4..6", "5..3", "3..", "x..y", "1..3"):
        code, out, err = run(capsys, "sweep", "--n-range", bad)
        assert code == 1


def test_sweep_json_deterministic(tmp_path):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    assert main(["sweep", "--n-range", "3..9", "--format", "json", "--out", str(out_a)]) == 0
    assert main(["sweep", "--n-range", "3..9", "--format", "json", "--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    document = json.loads(out_a.read_text())
    assert document["schema"] == "sweep-report"
    assert [r["n"] for r in document["reports"]] == [3, 5, 7, 9]


def test_oracle_quick_run(capsys):
    code, out, err = run(
        capsys,
        "oracle",
        "--n-range",
        "3..7",
        "--m-max",
        "5",
        "--trials",
        "50",
        "--format",
        "json",
    )
    assert code == 0
    document = json.loads(out)
    assert document["schema"] == "oracle-run"
    assert document["failures_total"] == 0
    assert {r["suite"] for r in document["reports"]} == {
        "identity",
        "bilinearity",
        "forcing-order",
        "enumeration",
    }


def test_oracle_text_output(capsys):
    code, out, err = run(
        capsys, "oracle", "--n-range", "3..3", "--m-max", "2", "--trials", "10"
    )
    assert code == 0
    assert "total failures: 0" in out


def test_schema_self_check_env(capsys, monkeypatch):
    monkeypatch.setenv("DLV_SCHEMA_CHECK", "1")
    code, out, err = run(capsys, "verify", "--n", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["schema"] == "verification-report"


def test_out_file_writing(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, err = run(capsys, "verify", "--n", "3", "--out", str(target))
    assert code == 0
    assert out == ""
    assert "Verified" in target.read_text()


def test_missing_subcommand_is_usage_error(capsys):
    code, out, err = run(capsys)
    assert code == 1


def test_unknown_flag_is_usage_error(capsys):
    code, out, err = run(capsys, "verify", "--n", "3", "--frobnicate")
    assert code == 1


def test_failed_instance_exits_two(capsys, monkeypatch):
    import dataclasses

    import dlv.cli as cli_mod

    real = cli_mod.verify

    def tampered(n, m_max=None):
        report = real(n, m_max=m_max)
        bad = dataclasses.replace(report.instances[0], status="Failed")
        return dataclasses.replace(report, instances=(bad,) + report.instances[1:])

    monkeypatch.setattr(cli_mod, "verify", tampered)
    code, out, err = run(capsys, "verify", "--n", "3")
    assert code == 2


def test_oracle_failure_exits_two(capsys, monkeypatch):
    import dlv.cli as cli_mod
    from dlv import OracleReport

    monkeypatch.setattr(
        cli_mod,
        "identity_suite",
        lambda *a, **k: OracleReport("identity", 1, ("constructed mismatch",), 0),
    )
    code, out, err = run(
        capsys, "oracle", "--n-range", "3..3", "--m-max", "1", "--trials", "5"
    )
    assert code == 2
    assert "constructed mismatch" in out


def test_failed_instance_aborts_sweep(capsys, monkeypatch):
    import dataclasses

    import dlv.cli as cli_mod

    real = cli_mod.verify

    def tampered(n, m_max=None):
        report = real(n, m_max=m_max)
        if n == 5:
            bad = dataclasses.replace(report.instances[0], status="Failed")
            report = dataclasses.replace(report, instances=(bad,) + report.instances[1:])
        return report

    monkeypatch.setattr(cli_mod, "verify", tampered)
    code, out, err = run(capsys, "sweep", "--n-range", "3..9")
    assert code == 2
    assert "aborting sweep" in err
    assert "n=7" not in out  # n=7 and n=9 never ran
