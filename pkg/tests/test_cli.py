import json

import pytest

from rtss import load_design, pg2
from rtss.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bounds_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--k", "2", "--d", "3",
                           "--alpha", "3", "--beta", "1", "--format", "text")
    assert code == 0 and out.strip() == "1/3"
    code, out, _ = run_cli(capsys, "bounds", "--k", "3", "--d", "4",
                           "--alpha", "4", "--beta", "1")
    assert code == 0 and json.loads(out)["rho_max"] == "1/4"


def test_verify_design_builtin(capsys):
    code, out, _ = run_cli(capsys, "verify-design", "--builtin", "sts9", "--k", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["ell1"] == 3 and obj["ell2"] == 5
    assert obj["repairable"] is True
    assert obj["basic_set_size"] == 6
    assert obj["rho"] == "2/3" and obj["cc"] == "3/2"


def test_deal_is_deterministic(capsys):
    argv = ("deal", "--k", "2", "--n", "4", "--q", "11", "--secret", "7",
            "--seed", "1")
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_deal_then_reconstruct_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "deal", "--k1", "1", "--k2", "3", "--n", "5",
                           "--q", "13", "--secret", "4", "9", "--seed", "2")
    assert code == 0
    shares_file = tmp_path / "deal.json"
    shares_file.write_text(out)
    code, out, _ = run_cli(capsys, "reconstruct", "--shares", str(shares_file))
    assert code == 0
    assert json.loads(out)["secret"] == [4, 9]


def test_reconstruct_bare_share_list(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "deal", "--k", "2", "--n", "4", "--q", "11",
                           "--secret", "7", "--seed", "1")
    shares = json.loads(out)["shares"][:2]
    shares_file = tmp_path / "bare.json"
    shares_file.write_text(json.dumps(shares))
    code, out, _ = run_cli(capsys, "reconstruct", "--shares", str(shares_file),
                           "--k", "2", "--q", "11", "--n", "4")
    assert code == 0 and json.loads(out)["secret"] == [7]


def test_repair_enroll_and_transcript_reaudit(capsys, tmp_path):
    transcript_file = tmp_path / "transcript.json"
    code, out, _ = run_cli(capsys, "repair-enroll", "--k", "3", "--n", "5",
                           "--q", "11", "--random-secret", "--seed", "3",
                           "--transcript-out", str(transcript_file))
    assert code == 0
    obj = json.loads(out)
    assert obj["matches_dealt"] is True
    assert obj["field_elements"] == 9 and obj["cc"] == "9"
    assert len(obj["transcript"]) == 9
    code, out, _ = run_cli(capsys, "audit", "--protocol", "enrollment",
                           "--q", "11", "--transcript", str(transcript_file),
                           "--secret-len", "1")
    assert code == 0
    reaudit = json.loads(out)
    assert reaudit["field_elements"] == 9
    assert reaudit["k2_inferred"] == 3
    assert reaudit["count_matches_protocol"] is True


def test_rts_demo(capsys):
    code, out, _ = run_cli(capsys, "rts-demo", "--design", "sts9", "--k", "2",
                           "--seed", "7", "--random-secret")
    assert code == 0
    obj = json.loads(out)
    assert obj["metrics"]["rho"] == "2/3" and obj["metrics"]["cc"] == "3/2"
    assert obj["repair"]["restored_matches"] is True
    assert obj["repair"]["structural_secrecy"] is True
    assert obj["reconstruction"]["ok"] is True


def test_rts_demo_with_block_subset(capsys):
    code, out, _ = run_cli(capsys, "rts-demo", "--design", "sts9",
                           "--blocks", "0-5,6", "--k", "2", "--seed", "1",
                           "--random-secret")
    assert code == 0
    obj = json.loads(out)
    assert obj["design"]["n"] == 7
    assert obj["metrics"]["rho"] == "2/3"


def test_gen_design_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "fano.txt"
    code, _, _ = run_cli(capsys, "gen-design", "--builtin", "fano",
                         "--out", str(out_file))
    assert code == 0
    assert load_design(out_file.read_text()) == pg2(2)
    code, out, _ = run_cli(capsys, "verify-design", "--file", str(out_file),
                           "--k", "2")
    assert code == 0
    assert json.loads(out)["ell1"] == 3


def test_audit_enrollment_cli(capsys):
    code, out, _ = run_cli(capsys, "audit", "--protocol", "enrollment",
                           "--q", "5", "--k", "2", "--n", "4", "--case", "ii")
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "uniform"
    assert obj["total_runs"] == 625


def test_audit_rts_sweep(capsys):
    code, out, _ = run_cli(capsys, "audit", "--protocol", "rts", "--q", "7",
                           "--k", "2", "--design", "dualk:4", "--sweep")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 4
    assert all(r["verdict"] == "uniform" for r in reports)


def test_compare_formats(capsys):
    code, out, _ = run_cli(capsys, "compare")
    assert code == 0
    rows = json.loads(out)
    assert {"scheme": "sts9", "k": 2, "d": 3, "n": 12, "rho_ours": "2/3",
            "rho_glf_bound": "1/3", "cc_ours": "3/2"} in rows
    code, out, _ = run_cli(capsys, "compare", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["scheme", "k", "d", "n", "rho_ours",
                                "rho_glf_bound", "cc_ours"]
    assert len(lines) == len(rows) + 1


def test_domain_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "deal", "--k", "5", "--n", "3",
                             "--q", "11", "--secret", "1", "--seed", "0")
    assert code == 1
    assert out == ""
    assert err.startswith("error:") and "\n" not in err.strip()


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["deal", "--does-not-exist"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_missing_secret_is_domain_error(capsys):
    code, _, err = run_cli(capsys, "deal", "--k", "2", "--n", "4", "--q", "11")
    assert code == 1 and "--secret" in err


def test_unknown_design_source(capsys):
    code, _, err = run_cli(capsys, "verify-design", "--design",
                           "no-such-design", "--k", "2")
    assert code == 1 and "builtin" in err
