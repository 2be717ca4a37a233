"""End-to-end command-line interface checks (in-process)."""

import json

from qdd.cli import main

BELL = "OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n"


def test_simulate_benchmark_stats_json(tmp_path):
    out = tmp_path / "stats.json"
    code = main(
        [
            "simulate", "--benchmark", "ghz", "--qubits", "64",
            "--mode", "new", "--stats-json", str(out),
        ]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["matrix_nodes_created"] == 127
    assert payload["gc_runs"] == 0
    assert payload["mode"] == "new"
    assert payload["engine_version"]


def test_simulate_input_amplitudes(tmp_path, capsys):
    qasm = tmp_path / "bell.qasm"
    qasm.write_text(BELL)
    code = main(["simulate", "--input", str(qasm), "--amplitudes", "0,3"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.count("0.7071067811865476") == 2


def test_simulate_dot_output(tmp_path):
    qasm = tmp_path / "bell.qasm"
    qasm.write_text(BELL)
    dot = tmp_path / "bell.dot"
    assert main(["simulate", "--input", str(qasm), "--dot", str(dot)]) == 0
    assert dot.read_text().startswith("digraph")


def test_compare_agrees(tmp_path):
    out = tmp_path / "cmp.json"
    code = main(
        ["compare", "--benchmark", "qft", "--qubits", "10", "--json", str(out)]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["max_amplitude_deviation"] <= 1e-10
    assert payload["new"]["matrix_nodes_created"] <= payload["legacy"]["matrix_nodes_created"]


def test_seed_flag_accepted():
    assert main(["simulate", "--benchmark", "ghz", "--qubits", "4", "--seed", "7"]) == 0


def test_bench_emits_tables(tmp_path):
    csv_path = tmp_path / "rows.csv"
    json_path = tmp_path / "rows.json"
    code = main(
        [
            "bench", "--benchmark", "ghz", "--qubits", "8,16",
            "--modes", "new,legacy", "--csv", str(csv_path), "--json", str(json_path),
        ]
    )
    assert code == 0
    rows = json.loads(json_path.read_text())
    assert len(rows) == 4
    header = csv_path.read_text().splitlines()[0]
    assert "matrix_nodes_created" in header


def test_usage_error_exit_2():
    assert main(["simulate", "--no-such-flag"]) == 2
    assert main([]) == 2
    assert main(["simulate", "--benchmark", "ghz"]) == 2  # missing --qubits
    assert main(["simulate"]) == 2  # neither input nor benchmark


def test_unitary_kind_via_cli(tmp_path):
    out = tmp_path / "u.json"
    code = main(
        [
            "simulate", "--benchmark", "qft", "--qubits", "4",
            "--kind", "unitary", "--stats-json", str(out),
        ]
    )
    assert code == 0
    assert json.loads(out.read_text())["kind"] == "unitary"


def test_engine_error_exit_1(tmp_path):
    bad = tmp_path / "bad.qasm"
    bad.write_text("OPENQASM 2.0;\nqreg q[2];\nfrobnicate q[0];\n")
    assert main(["simulate", "--input", str(bad)]) == 1


def test_missing_file_exit_1():
    assert main(["simulate", "--input", "/nonexistent/x.qasm"]) == 1


def test_help_exit_0(capsys):
    assert main(["--help"]) == 0
    assert "simulate" in capsys.readouterr().out
