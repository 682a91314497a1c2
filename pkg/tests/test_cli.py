import json

import pytest

from tribalance.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_tribonacci(capsys):
    code, out, _ = run(capsys, "generate", "tribonacci", "14")
    assert code == 0
    assert out == "01020100102010\n"


def test_generate_fibonacci(capsys):
    code, out, _ = run(capsys, "generate", "mbonacci:2", "8")
    assert code == 0
    assert out == "01001010\n"


def test_generate_zero_length_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["generate", "tribonacci", "0"])
    assert excinfo.value.code == 2


def test_bad_word_spec_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["generate", "quadbonacci", "5"])
    assert excinfo.value.code == 2


def test_unknown_command_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 2


def test_rho_range(capsys):
    code, out, _ = run(capsys, "rho", "tribonacci", "1", "6", "--threads", "1")
    assert code == 0
    assert out.splitlines() == ["n,rho", "1,3", "2,3", "3,4", "4,3", "5,4", "6,4"]


def test_rho_single(capsys):
    code, out, _ = run(capsys, "rho", "tribonacci", "30", "30")
    assert code == 0
    assert out.splitlines()[-1] == "30,5"


def test_rho_csv_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["rho", "tribonacci", "1", "50", "--out", str(a)]) == 0
    assert main(["rho", "tribonacci", "1", "50", "--out", str(b), "--threads", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()  # LF line endings


def test_balance_profile(capsys):
    code, out, err = run(capsys, "balance", "tribonacci", "40")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,rho,max_imbalance_0,max_imbalance_1,max_imbalance_2"
    assert lines[1] == "1,3,1,1,1"
    assert "global maximum imbalance: 2" in err


def test_balance_trivial_length(capsys):
    code, out, _ = run(capsys, "balance", "tribonacci", "1")
    assert code == 0
    assert out.splitlines()[1] == "1,3,1,1,1"


def test_balance_fourbonacci_reports_witness(capsys):
    code, out, err = run(capsys, "balance", "mbonacci:4", "3305", "--threads", "2")
    assert code == 0
    assert out.splitlines()[-1].startswith("3305,")
    assert "global maximum imbalance: 3" in err
    assert "imbalance witness: 1,3305,2663,9048,891,888" in err


def test_resource_exit_code(capsys):
    code, _, err = run(capsys, "rho", "tribonacci", "1", "500", "--max-buffer", "64")
    assert code == 3
    assert "resource failure" in err


def test_saturation_cap_exit_code(capsys):
    code, _, err = run(capsys, "rho", "tribonacci", "200", "200", "--scan-cap", "10")
    assert code == 3
    assert "200" in err


def test_discrepancy(capsys):
    code, out, err = run(capsys, "discrepancy", "0", "50")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,discrepancy"
    assert lines[1] == "0,0"
    assert len(lines) == 52
    assert "contained: True" in err


def test_zeckendorf(capsys):
    assert run(capsys, "zeckendorf", "6")[1] == "011\n"
    assert run(capsys, "zeckendorf", "1")[1] == "1\n"
    assert run(capsys, "zeckendorf", "7")[1] == "0001\n"
    assert run(capsys, "zeckendorf", "0")[1] == "\n"


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0
    lines = dict(line.split("=") for line in out.splitlines())
    assert set(lines) == {
        "beta", "abs_alpha", "abs_a_alpha", "factor_i0", "factor_i1", "factor_i2",
    }
    assert lines["beta"] == "1.83928675521"
    assert lines["abs_a_alpha"] == "0.141353707564"


def test_special_report(capsys):
    code, out, _ = run(capsys, "special", "tribonacci", "1", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,right_special_word,i,j,k,bispecial,rho,rho3_closed_form"
    assert lines[1] == "1,,0,0,0,1,3,1"
    assert lines[2] == "2,0,1,0,0,1,3,1"
    assert lines[4] == "4,010,2,1,0,1,3,1"


def test_verify_subset_passes(capsys, tmp_path, monkeypatch):
    import tribalance.verify as verify

    subset = {"rho_sequence_1_42", "rho_3914_is_7", "spectral_constants_5dp",
              "zeckendorf_uniqueness_1e4"}
    monkeypatch.setattr(
        verify, "CLAIMS", tuple(c for c in verify.CLAIMS if c.claim_id in subset)
    )
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--suite", "paper", "--json", str(path))
    assert code == 0
    assert out.count("PASS") == 4
    report = json.loads(path.read_text())
    assert report["suite"] == "paper"
    ids = [c["claim_id"] for c in report["claims"]]
    assert sorted(ids) == sorted(subset)
    for claim in report["claims"]:
        assert claim["status"] == "pass"
        assert claim["runtime_ms"] >= 0
    by_id = {c["claim_id"]: c for c in report["claims"]}
    assert by_id["rho_3914_is_7"]["expected"] == 7
    assert by_id["rho_3914_is_7"]["observed"] == 7


def test_verify_degraded_mode_skips_and_fails(capsys, tmp_path, monkeypatch):
    # With a tiny buffer cap, saturation-dependent claims must report
    # "skipped", and the run must exit 1.
    import tribalance.verify as verify

    subset = {"rho_sequence_1_42", "spectral_constants_5dp"}
    monkeypatch.setattr(
        verify, "CLAIMS", tuple(c for c in verify.CLAIMS if c.claim_id in subset)
    )
    path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "--suite", "paper", "--json", str(path), "--max-buffer", "64"
    )
    assert code == 1
    report = json.loads(path.read_text())
    statuses = {c["claim_id"]: c["status"] for c in report["claims"]}
    assert statuses["rho_sequence_1_42"] == "skipped"
    assert statuses["spectral_constants_5dp"] == "pass"
