import json
import subprocess
import sys

import numpy as np
import pytest

from simplex_lab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sample_csv_schema(capsys):
    code, out, _ = run_cli(
        capsys, "sample", "--dist", "dirichlet", "--a", "0.5,0.5", "-n", "10", "--seed", "1"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x0,x1"
    assert len(lines) == 11
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    assert np.allclose(rows.sum(axis=1), 1.0)


def test_sample_reproducible_bytes(capsys):
    args = ("sample", "--dist", "qb-mixture", "--a", "1,2,3", "--k", "2", "-n", "50", "--seed", "7")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_sample_jsonl_schema(capsys):
    code, out, _ = run_cli(
        capsys,
        "sample", "--dist", "qb-ewens", "--a", "1,2,3", "--k", "3",
        "-n", "5", "--seed", "3", "--format", "jsonl",
    )
    assert code == 0
    for line in out.splitlines():
        obj = json.loads(line)
        assert set(obj) == {"x"}
        assert len(obj["x"]) == 3


def test_sample_repeated_a_flag(capsys):
    code, out, _ = run_cli(
        capsys, "sample", "--dist", "bernoulli", "--a", "1", "--a", "2,3", "-n", "4", "--seed", "2"
    )
    assert code == 0
    assert out.splitlines()[0] == "x0,x1,x2"


def test_sample_nu_nonexistent_exits_3(capsys):
    code, out, err = run_cli(
        capsys, "sample", "--dist", "nu", "--c", "0.5", "--d", "2", "-n", "3", "--seed", "1"
    )
    assert code == 3
    assert "not a probability" in err
    assert out == ""


def test_sample_nu_ok(capsys):
    code, out, _ = run_cli(
        capsys, "sample", "--dist", "nu", "--c", "2.5", "--d", "2", "-n", "20", "--seed", "4"
    )
    assert code == 0
    assert len(out.splitlines()) == 21


def test_sample_conflicting_k_and_c(capsys):
    code, _, err = run_cli(
        capsys,
        "sample", "--dist", "qb-mixture", "--a", "1,1", "--k", "2", "--c", "1.5", "-n", "1",
    )
    assert code == 2
    assert "mutually exclusive" in err


def test_sample_missing_flags_exit_2(capsys):
    code, _, err = run_cli(capsys, "sample", "--dist", "qb-mixture", "--a", "1,1", "-n", "1")
    assert code == 2
    code, _, err = run_cli(capsys, "sample", "--dist", "dirichlet", "-n", "1")
    assert code == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--nope"])
    assert exc.value.code == 2


def test_tc_dirichlet_value(capsys):
    code, out, _ = run_cli(capsys, "tc", "--dist", "dirichlet", "--a", "1,1", "--f", "1,2")
    assert code == 0
    assert float(out.split("=")[1]) == pytest.approx(0.5)


def test_tc_qb_value_and_methods(capsys):
    code, out, _ = run_cli(capsys, "tc", "--dist", "qb", "--a", "1,1", "--k", "1", "--f", "1,2")
    assert code == 0
    assert float(out.splitlines()[0].split("=")[1]) == pytest.approx(0.75)

    code, out, _ = run_cli(
        capsys,
        "tc", "--dist", "qb", "--a", "1,2,3", "--k", "2", "--f", "1,2,3", "--method", "both",
    )
    lines = out.splitlines()
    v1 = float(lines[0].split("=")[1])
    v2 = float(lines[1].split("=")[1])
    gap = float(lines[2].split("=")[1])
    assert v1 == pytest.approx(v2, rel=1e-10)
    assert gap < 1e-10


def test_tc_with_mc(capsys):
    code, out, _ = run_cli(
        capsys,
        "tc", "--dist", "qb", "--a", "1,2", "--k", "2", "--f", "1,2",
        "--mc", "50000", "--seed", "5",
    )
    assert code == 0
    z = float(out.splitlines()[-1].split("=")[1])
    assert z < 4.0


def test_tc_rejects_nonpositive_f(capsys):
    code, _, err = run_cli(capsys, "tc", "--dist", "dirichlet", "--a", "1,1", "--f", "0,2")
    assert code == 2


def test_weights_face_table(capsys):
    code, out, _ = run_cli(capsys, "weights", "--a", "0.5,0.5", "--k", "2")
    assert code == 0
    lines = out.splitlines()
    table = dict(line.split(" ") for line in lines[:-1])
    assert float(table["{0}"]) == pytest.approx(0.375)
    assert float(table["{1}"]) == pytest.approx(0.375)
    assert float(table["{0,1}"]) == pytest.approx(0.25)
    assert lines[-1].startswith("sum ")
    assert float(lines[-1].split(" ")[1]) == pytest.approx(1.0)


def test_weights_dimension_table(capsys):
    code, out, _ = run_cli(capsys, "weights", "--c", "2", "--d", "2")
    assert code == 0
    lines = out.splitlines()
    vals = [float(line.rsplit(" ", 1)[1]) for line in lines[:-1]]
    assert vals == pytest.approx([0.5, 0.5, 0.0])
    assert float(lines[-1].split(" ")[1]) == pytest.approx(1.0)


def test_weights_flag_conflicts(capsys):
    code, _, err = run_cli(capsys, "weights", "--a", "1,1", "--k", "2", "--c", "2.0", "--d", "2")
    assert code == 2
    code, _, err = run_cli(capsys, "weights", "--a", "1,1")
    assert code == 2


def test_verify_core_suite_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "core", "--seed", "42")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("[PASS]") for line in lines[:-1])
    payload = json.loads(lines[0].split(" ", 2)[2])
    assert set(payload) == {"statistic", "p_value", "pass", "n_used"}


def test_verify_deterministic_output(capsys):
    _, out1, _ = run_cli(capsys, "verify", "--suite", "transforms", "--seed", "42", "-n", "20000")
    _, out2, _ = run_cli(capsys, "verify", "--suite", "transforms", "--seed", "42", "-n", "20000")
    assert out1 == out2


def test_chain_csv_stream(capsys, tmp_path):
    out_path = tmp_path / "chain.csv"
    code, _, _ = run_cli(
        capsys,
        "chain", "--a", "1,2,3", "--k", "2", "-n", "100",
        "--burn-in", "10", "--seed", "9", "--out", str(out_path),
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "x0,x1,x2"
    assert len(lines) == 101
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    assert np.allclose(rows.sum(axis=1), 1.0, atol=1e-12)


def test_process_jsonl(capsys):
    code, out, _ = run_cli(
        capsys, "process", "--k", "3", "--mass", "2.0", "-n", "8", "--seed", "11"
    )
    assert code == 0
    for line in out.splitlines():
        obj = json.loads(line)
        assert set(obj) == {"atoms"}
        atoms = obj["atoms"]
        assert 1 <= len(atoms) <= 3
        assert sum(w for _, w in atoms) == pytest.approx(1.0, abs=1e-12)


def test_process_beta_base(capsys):
    code, out, _ = run_cli(
        capsys, "process", "--k", "2", "--base", "beta:2,5", "-n", "4", "--seed", "12"
    )
    assert code == 0
    assert len(out.splitlines()) == 4


def test_process_piecewise_linear_base(capsys):
    code, out, _ = run_cli(
        capsys,
        "process", "--k", "2", "--base", "pwl:0:0,0.5:0.8,1:1", "-n", "4", "--seed", "13",
    )
    assert code == 0
    assert len(out.splitlines()) == 4
    code, _, err = run_cli(capsys, "process", "--k", "2", "--base", "nope", "-n", "1")
    assert code == 2


def test_chain_with_explicit_start_point(capsys, tmp_path):
    out_path = tmp_path / "c.csv"
    code, _, _ = run_cli(
        capsys,
        "chain", "--a", "1,2,3", "--k", "1", "-n", "5", "--burn-in", "0",
        "--x0", "0.2,0.3,0.5", "--seed", "14", "--out", str(out_path),
    )
    assert code == 0
    assert len(out_path.read_text().splitlines()) == 6
    # an invalid start point is a usage error
    code, _, err = run_cli(
        capsys, "chain", "--a", "1,2,3", "--k", "1", "-n", "5", "--x0", "0.9,0.9,0.9"
    )
    assert code == 2


def test_cli_subprocess_determinism_and_threads_invariance(tmp_path):
    # the console surface must emit identical bytes run to run, and the
    # worker cap must never change output
    cmd = [
        sys.executable, "-m", "simplex_lab.cli",
        "sample", "--dist", "dirichlet", "--a", "0.5,0.5", "-n", "10", "--seed", "1",
    ]
    outs = []
    for threads in ("1", "4"):
        proc = subprocess.run(
            cmd, capture_output=True, env={"PATH": "/usr/bin:/bin", "SIMPLEX_LAB_THREADS": threads},
        )
        assert proc.returncode == 0
        outs.append(proc.stdout)
    assert outs[0] == outs[1]


def test_cli_backend_flag_numpy(tmp_path):
    env = {"PATH": "/usr/bin:/bin", "SIMPLEX_LAB_BACKEND": "numpy"}
    proc = subprocess.run(
        [
            sys.executable, "-m", "simplex_lab.cli",
            "sample", "--dist", "qb-ewens", "--a", "1,2,3", "--k", "2", "-n", "5", "--seed", "2",
        ],
        capture_output=True,
        env=env,
    )
    assert proc.returncode == 0
    assert proc.stdout.decode().splitlines()[0] == "x0,x1,x2"
