import json
import subprocess
import sys

import pytest

from randgenus.cli import main
from randgenus.graph import complete_graph, format_graph, read_graph


@pytest.fixture
def k5_file(tmp_path):
    path = tmp_path / "k5.txt"
    path.write_text(format_graph(complete_graph(5)))
    return path


@pytest.fixture
def theta_file(tmp_path):
    path = tmp_path / "theta.txt"
    path.write_text("2 3\n0 1\n0 1\n0 1\n")
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_genus_k5(capsys, k5_file):
    code, out, _ = run(capsys, "genus", "--graph", k5_file, "--mode", "exact")
    assert code == 0
    assert "genus_upper: 1" in out and "genus_lower: 1" in out and "mode: exact" in out


def test_gen_odd_parity(capsys):
    code, out, err = run(capsys, "gen", "--d", 3, "--n", 5)
    assert code == 1 and out == "" and "odd" in err


def test_unknown_flag_is_usage_error(capsys, k5_file):
    code, _, err = run(capsys, "genus", "--graph", k5_file, "--frobnicate")
    assert code == 1 and "unrecognized" in err
    assert run(capsys)[0] == 1


@pytest.mark.parametrize("orders, F, genus", [
    ("0: 0 2 4\n1: 1 3 5\n", 1, 1),
    ("0: 0 2 4\n1: 1 5 3\n", 3, 0),
])
def test_trace_theta(capsys, tmp_path, theta_file, orders, F, genus):
    rot = tmp_path / "theta.rot"
    rot.write_text(orders)
    code, out, _ = run(capsys, "trace", "--graph", theta_file, "--rotation", rot,
                       "--format", "json-lines")
    assert code == 0
    row = json.loads(out)
    assert (row["F"], row["genus"], row["alpha"]) == (F, genus, genus / 2)


def test_io_and_parse_errors(capsys, tmp_path, theta_file):
    assert run(capsys, "genus", "--graph", tmp_path / "missing.txt")[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    assert run(capsys, "cycles", "--graph", bad)[0] == 3
    rot = tmp_path / "bad.rot"
    rot.write_text("0: 0 2 3\n1: 1 4 5\n")
    assert run(capsys, "trace", "--graph", theta_file, "--rotation", rot)[0] == 3


def test_disconnected_graph(capsys, tmp_path):
    path = tmp_path / "two.txt"
    path.write_text("6 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n")
    assert run(capsys, "genus", "--graph", path)[0] == 1


def test_budget_exceeded_exit_code(capsys, tmp_path, k5_file):
    witness = tmp_path / "w.rot"
    code, out, err = run(capsys, "genus", "--graph", k5_file, "--budget", 5,
                         "--witness-out", witness)
    assert code == 2 and "mode: heuristic" in out and "budget" in err
    assert witness.read_text().count("\n") == 5


def test_gen_round_trip(capsys, tmp_path):
    out_file = tmp_path / "g.txt"
    assert run(capsys, "gen", "--d", 3, "--n", 10, "--seed", 4, "--out", out_file)[0] == 0
    g = read_graph(out_file)
    assert g.degree == (3,) * 10
    assert run(capsys, "genus", "--graph", out_file, "--mode", "bounds")[0] == 0
    assert run(capsys, "genus", "--graph", out_file, "--mode", "anneal")[0] == 0
    assert run(capsys, "trace", "--graph", out_file)[0] == 0
    code, out, _ = run(capsys, "cycles", "--graph", out_file, "--m", 5)
    assert code == 0 and "total:" in out and "expected_cycles_cap: 121.5" in out


def test_gen_directory_and_stdout(capsys, tmp_path):
    outdir = tmp_path / "graphs"
    assert run(capsys, "gen", "--d", 3, "--n", 8, "--count", 3, "--out", outdir)[0] == 0
    files = sorted(outdir.iterdir())
    assert len(files) == 3
    code, out, _ = run(capsys, "gen", "--d", 3, "--n", 8, "--count", 3)
    blocks = out.split("\n\n")
    assert [b.strip() for b in blocks] == [f.read_text().strip() for f in files]


def test_gen_no_simple_allows_multigraphs(capsys):
    code, out, _ = run(capsys, "gen", "--d", 3, "--n", 2, "--no-simple", "--no-connected")
    assert code == 0 and out.startswith("2 3\n")


def test_cycles_csv(capsys, k5_file):
    code, out, _ = run(capsys, "cycles", "--graph", k5_file, "--m", 4, "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["length,count", "1,0", "2,0", "3,10", "4,15"]


def test_experiment_outputs(capsys, tmp_path):
    out = tmp_path / "r.csv"
    summary, plot = tmp_path / "s.csv", tmp_path / "p.dat"
    code, stdout, _ = run(capsys, "experiment", "--d", 3, "--n-min", 6, "--n-max", 8,
                          "--samples", 3, "--out", out, "--summary-out", summary,
                          "--plot-out", plot)
    assert code == 0 and stdout == ""
    lines = out.read_text().splitlines()
    assert lines[0] == ("d,n,sample,seed,mode,genus_lower,genus_upper,alpha,F,E,"
                        "f_over_e,cycles_le_m,m,elapsed_ms,status")
    assert len(lines) == 7
    assert summary.read_text().count("\n") == 3
    assert plot.read_text().startswith("#")


def test_experiment_json_lines(capsys):
    code, out, _ = run(capsys, "experiment", "--n-min", 6, "--n-max", 6, "--samples", 2,
                       "--format", "json-lines", "--quiet")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 2 and rows[0]["elapsed_ms"] == ""


def test_threads_do_not_change_output(capsys, k5_file):
    args = ["experiment", "--n-min", 6, "--n-max", 10, "--samples", 4, "--seed", 3,
            "--format", "csv", "--quiet"]
    one = run(capsys, *args, "--threads", 1)
    two = run(capsys, *args, "--threads", 2)
    assert one[0] == two[0] == 0 and one[1] == two[1]
    g1 = run(capsys, "genus", "--graph", k5_file, "--format", "csv", "--threads", 1)
    g2 = run(capsys, "genus", "--graph", k5_file, "--format", "csv", "--threads", 2)
    assert g1[1] == g2[1]


def test_module_entry_point(k5_file):
    proc = subprocess.run([sys.executable, "-m", "randgenus", "genus", "--graph",
                           str(k5_file), "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("exact,1,1,0.2,5,")
