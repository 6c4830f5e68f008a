"""Command-line interface: formats, exit codes, config handling."""

import json

from twinselmer import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_text_golden(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "61", "--kind", "phi",
    )
    assert code == cli.EXIT_OK
    assert "dim2=1, elements={1, 61}" in out


def test_compute_json_round_trips(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "61", "--kind", "phi", "--format", "json",
    )
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["elements"] == [1, 61]
    assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == out


def test_compute_csv_schema(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "61", "--format", "csv",
    )
    assert code == cli.EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "# twinselmer-csv v1 selmer"
    assert lines[1] == "d,member,failed_place"
    assert "61,True," in out


def test_compute_seed_table(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "61", "--seed-table", "--format", "json",
    )
    payload = json.loads(out)
    verdicts = payload["verdicts"]
    # members carry a verdict at every place
    assert set(verdicts["1"]) == {"inf", "2", "3", "5", "61"}
    assert verdicts["61"]["61"]["solvable"] is True


def test_verify_pass_and_strictness(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--theorem", "1.2B", "--epsilon", "+1",
        "--p", "3", "--q", "5", "--D", "61",
    )
    assert code == cli.EXIT_OK and "pass" in out
    # not-applicable is success unless --strict
    code, out, _ = run_cli(
        capsys, "verify", "--theorem", "1.2C", "--epsilon", "+1",
        "--p", "3", "--q", "5", "--D", "7",
    )
    assert code == cli.EXIT_OK and "not-applicable" in out
    code, _, _ = run_cli(
        capsys, "verify", "--theorem", "1.2C", "--epsilon", "+1",
        "--p", "3", "--q", "5", "--D", "7", "--strict",
    )
    assert code == cli.EXIT_FAILURE


def test_verify_theorem_example_size_16(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--theorem", "1.4ex", "--epsilon", "+1",
        "--p", "3", "--q", "5", "--D", "41",
    )
    assert code == cli.EXIT_OK
    assert "pass" in out and '"order_phi_hat": 16' in out


def test_search_corollary(capsys):
    code, out, err = run_cli(
        capsys, "search", "--epsilon", "+1", "--corollary", "1.2B",
        "--n", "1", "--bound", "100",
    )
    assert code == cli.EXIT_OK
    assert "D=61" in out
    assert "search:" in err  # progress lines on the diagnostic stream


def test_search_none_found(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--epsilon", "+1", "--corollary", "1.2C",
        "--n", "1", "--bound", "10",
    )
    assert code == cli.EXIT_FAILURE and "none" in out


def test_search_target_dim(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--epsilon", "+1", "--target-dim", "4",
        "--kind", "phi_hat", "--bound", "10000", "--format", "json",
    )
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["found"] is True
    assert payload["params"]["d_primes"] == [41]


def test_search_time_budget_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.ENV_TIME_BUDGET, "0.0")
    code, out, _ = run_cli(
        capsys, "search", "--epsilon", "+1", "--corollary", "1.2B",
        "--n", "1", "--bound", "100",
    )
    assert code == cli.EXIT_FAILURE and "none" in out


def test_audit_agrees(capsys):
    code, out, _ = run_cli(
        capsys, "audit", "--epsilon", "-1", "--p", "5", "--q", "7", "--D", "11,13",
    )
    assert code == cli.EXIT_OK
    assert "0 discrepancies" in out


def test_audit_json(capsys):
    code, out, _ = run_cli(
        capsys, "audit", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "7", "--format", "json",
    )
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["count"] == 0 and payload["discrepancies"] == []


def test_invalid_params_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "4", "--q", "6", "--D", "7",
    )
    assert code == cli.EXIT_USAGE and "error" in err
    code, _, err = run_cli(capsys, "compute", "--epsilon", "+1", "--p", "3")
    assert code == cli.EXIT_USAGE and "--q" in err


def test_n_cap(capsys):
    code, _, err = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "11,13", "--n-cap", "1",
    )
    assert code == cli.EXIT_USAGE and "cap" in err
    code, _, _ = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "11,13", "--n-cap", "2",
    )
    assert code == cli.EXIT_OK


def test_config_overrides_flags(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# golden instance\nD=61\nformat=json\n")
    code, out, _ = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "7", "--config", str(cfg),
    )
    assert code == cli.EXIT_OK
    assert json.loads(out)["elements"] == [1, 61]


def test_config_rejects_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("unknown_key=1\n")
    code, _, err = run_cli(
        capsys, "compute", "--epsilon", "+1", "--p", "3", "--q", "5",
        "--D", "7", "--config", str(cfg),
    )
    assert code == cli.EXIT_USAGE and "unknown key" in err


def test_negative_epsilon_parses(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--epsilon", "-1", "--p", "3", "--q", "5", "--D", "41",
        "--kind", "phi_hat",
    )
    assert code == cli.EXIT_OK and "dim2=3" in out
