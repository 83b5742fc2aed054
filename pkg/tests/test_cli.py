"""Command-line surface: flags, exit codes, golden outputs."""

from __future__ import annotations

import pytest

from partition_ais.cli import main


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_writes_golden_gstar_file(tmp_path, capsys):
    out = tmp_path / "g8.txt"
    code, stdout, _ = _run(capsys, [
        "generate", "--family", "gstar", "--n", "8", "--s", "2",
        "--eps", "1/4", "--out", str(out),
    ])
    assert code == 0
    assert stdout.startswith("config: command=generate family=gstar n=8 s=2 eps=1/4")
    assert "W=144" in stdout
    expected = (
        "partition v1\nn=8\nmeta=gstar;s=2;eps=1/4;scale=1\n"
        "39\n39\n11\n11\n11\n11\n11\n11\n"
    )
    assert out.read_text(encoding="utf-8") == expected


def test_pstar_writes_the_same_file_as_gstar(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    assert main(["generate", "--family", "gstar", "--n", "8", "--s", "2",
                 "--eps", "1/4", "--out", str(a)]) == 0
    assert main(["generate", "--family", "pstar", "--n", "8",
                 "--eps", "1/4", "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_generate_odd_n_fails_with_validation_code(tmp_path, capsys):
    code, _, stderr = _run(capsys, [
        "generate", "--family", "gstar", "--n", "9", "--s", "2",
        "--eps", "1/4", "--out", str(tmp_path / "x.txt"),
    ])
    assert code == 2
    assert "even" in stderr


def test_generate_rejects_float_eps(tmp_path, capsys):
    code, _, stderr = _run(capsys, [
        "generate", "--family", "gstar", "--n", "8", "--s", "2",
        "--eps", "0.25", "--out", str(tmp_path / "x.txt"),
    ])
    assert code == 2
    assert "q/r" in stderr


def test_solve_dp_and_lpt(tmp_path, capsys):
    inst = tmp_path / "g8.txt"
    assert main(["generate", "--family", "gstar", "--n", "8", "--s", "2",
                 "--eps", "1/4", "--out", str(inst)]) == 0
    capsys.readouterr()

    code, stdout, _ = _run(capsys, ["solve", "--in", str(inst), "--method", "dp"])
    assert code == 0
    assert "makespan=72" in stdout

    code, stdout, _ = _run(capsys, [
        "solve", "--in", str(inst), "--method", "brute", "--assignment",
    ])
    assert code == 0
    assert "makespan=72" in stdout
    line = [l for l in stdout.splitlines() if l.startswith("assignment=")][0]
    bits = line.removeprefix("assignment=")
    # every optimal split of this instance puts one heavy and three light
    # jobs on each machine
    assert sorted(bits) == ["0"] * 4 + ["1"] * 4

    code, stdout, _ = _run(capsys, ["solve", "--in", str(inst), "--method", "lpt"])
    assert code == 0
    assert "makespan=" in stdout


def test_solve_brute_capacity_exit_code(tmp_path, capsys):
    inst = tmp_path / "u25.txt"
    assert main(["generate", "--family", "uniform", "--n", "25", "--max-p", "10",
                 "--seed", "1", "--out", str(inst)]) == 0
    capsys.readouterr()
    code, _, stderr = _run(capsys, ["solve", "--in", str(inst), "--method", "brute"])
    assert code == 3
    assert "capacity" in stderr


def test_solve_missing_file(capsys):
    code, _, stderr = _run(capsys, ["solve", "--in", "/nonexistent/x.txt", "--method", "dp"])
    assert code == 2
    assert stderr


def test_run_requires_an_instance(capsys):
    code, _, stderr = _run(capsys, ["run", "--algo", "rls", "--budget", "100"])
    assert code == 2
    assert "--in or --family" in stderr


def test_run_ageing_demands_tau(capsys):
    code, _, stderr = _run(capsys, [
        "run", "--family", "gstar", "--n", "8", "--s", "2", "--eps", "1/4",
        "--algo", "ageing", "--budget", "100",
    ])
    assert code == 2
    assert "tau" in stderr


def test_run_rejects_stray_algorithm_flags(capsys):
    code, _, stderr = _run(capsys, [
        "run", "--family", "gstar", "--n", "8", "--s", "2", "--eps", "1/4",
        "--algo", "rls", "--tau", "5", "--budget", "100",
    ])
    assert code == 2
    assert "ageing" in stderr
    code, _, stderr = _run(capsys, [
        "run", "--family", "gstar", "--n", "8", "--s", "2", "--eps", "1/4",
        "--algo", "rls", "--restart-len", "5", "--budget", "100",
    ])
    assert code == 2
    assert "restart" in stderr


def test_run_is_deterministic_and_writes_csv(tmp_path, capsys):
    outputs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        code, stdout, _ = _run(capsys, [
            "run", "--family", "gstar", "--n", "8", "--s", "2", "--eps", "1/4",
            "--algo", "rls", "--trials", "5", "--seed", "3",
            "--budget", "5000", "--threads", "1", "--out", str(out),
        ])
        assert code == 0
        assert stdout.startswith("config: command=run")
        assert "summary:" in stdout
        assert "success_rate=" in stdout
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    header = outputs[0].decode().splitlines()[0]
    assert header == (
        "trial,seed,n,family,algorithm,mu,tau,evaluations,"
        "best_makespan,optimum,ratio,terminated_by,reinit_count"
    )


def test_run_budget_only_mode_for_dp_infeasible_instances(tmp_path, capsys):
    inst = tmp_path / "huge.txt"
    inst.write_text(
        f"partition v1\nn=2\n{1 << 61}\n{1 << 61}\n", encoding="utf-8"
    )
    code, _, stderr = _run(capsys, [
        "run", "--in", str(inst), "--algo", "rls", "--budget", "50",
    ])
    assert code == 2
    assert "--no-target" in stderr

    code, stdout, _ = _run(capsys, [
        "run", "--in", str(inst), "--algo", "rls", "--budget", "50", "--no-target",
    ])
    assert code == 0
    assert "target=none" in stdout

    code, _, stderr = _run(capsys, [
        "run", "--in", str(inst), "--algo", "rls", "--budget", "50",
        "--target-ratio", "3/2",
    ])
    assert code == 2


def test_run_target_ratio_mode(capsys):
    code, stdout, _ = _run(capsys, [
        "run", "--family", "uniform", "--n", "20", "--max-p", "100",
        "--instance-seed", "5", "--algo", "iahyp", "--trials", "3",
        "--budget", "100000", "--target-ratio", "3/2", "--threads", "1",
    ])
    assert code == 0
    assert "target=ratio<=3/2" in stdout
    assert "success_rate=1" in stdout


def test_sweep_prints_one_line_per_size(capsys):
    code, stdout, _ = _run(capsys, [
        "sweep", "--n-list", "8,12", "--s", "2", "--eps", "1/4",
        "--algo", "iahyp", "--trials", "5", "--seed", "1",
        "--budget", "100000", "--threads", "1",
    ])
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0].startswith("config: command=sweep")
    assert any(l.startswith("n=8 optimum=72") for l in lines)
    assert any(l.startswith("n=12 optimum=120") for l in lines)


def test_sweep_with_empty_n_list_is_a_no_op(capsys):
    code, stdout, _ = _run(capsys, [
        "sweep", "--n-list", "", "--s", "2", "--eps", "1/4",
        "--algo", "rls", "--budget", "100",
    ])
    assert code == 0
    assert stdout.startswith("config: command=sweep")
    assert not [l for l in stdout.splitlines() if l.startswith("n=")]


def test_sweep_merged_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = _run(capsys, [
        "sweep", "--n-list", "8,12", "--s", "2", "--eps", "1/4",
        "--algo", "rls", "--trials", "2", "--seed", "4",
        "--budget", "2000", "--threads", "1", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 4
    assert sum(",8,gstar," in l for l in lines) == 2
    assert sum(",12,gstar," in l for l in lines) == 2


def test_verify_suites_pass(capsys):
    code, stdout, _ = _run(capsys, ["verify", "--suite", "properties"])
    assert code == 0
    assert "verify: ok" in stdout
    assert "PASS local_optima_n12" in stdout

    code, stdout, _ = _run(capsys, ["verify", "--suite", "oracles"])
    assert code == 0
    assert "PASS dp_equals_brute_200" in stdout


def test_unknown_flags_are_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--family", "gstar", "--n", "8", "--s", "2",
              "--eps", "1/4", "--out", "/tmp/x", "--frobnicate"])
    assert exc.value.code == 2
