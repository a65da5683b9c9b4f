import io

import pytest

from dsum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_stats_match_prediction(capsys):
    code, out, _ = run(capsys, "build", "--n", "8", "--p", "2", "--q", "1", "--stats")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "b=3 inputs=101 adds=188 outputs=9"
    assert lines[1] == "predicted inputs=101 adds=188 outputs=9"


def test_build_writes_deterministic_files(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for target in (a, b):
        code, _, _ = run(
            capsys, "build", "--n", "4", "--p", "1", "--q", "2", "--out", str(target)
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_build_dot_output(tmp_path, capsys):
    dot = tmp_path / "c.dot"
    code, _, _ = run(
        capsys, "build", "--n", "2", "--p", "1", "--q", "1", "--dot", str(dot)
    )
    assert code == 0
    text = dot.read_text()
    assert text.startswith("digraph")
    assert "->" in text


def test_build_usage_errors(capsys):
    code, _, err = run(capsys, "build", "--n", "4", "--p", "2", "--q", "2", "--builder", "valiant")
    assert code == 1
    assert "valiant" in err


def test_eval_intersection_roundtrip(tmp_path, capsys):
    circ = tmp_path / "c.json"
    run(capsys, "build", "--n", "4", "--p", "1", "--q", "1", "--out", str(circ))
    table = tmp_path / "t.txt"
    table.write_text("- | 0 : 3\n- | 2 : 5\n0 | 0 : 7\n")
    code, out, _ = run(
        capsys, "eval", "--circuit", str(circ), "--input", str(table),
        "--semiring", "nat-sum",
    )
    assert code == 0
    assert out == "- : 8\n0 : 12\n1 : 8\n2 : 3\n3 : 8\n"
    # direct mode and threads agree with the plain run
    for extra in (["--direct"], ["--threads", "3"]):
        code, again, _ = run(
            capsys, "eval", "--circuit", str(circ), "--input", str(table),
            "--semiring", "nat-sum", *extra,
        )
        assert code == 0 and again == out


def test_eval_disjoint_form(tmp_path, capsys):
    circ = tmp_path / "c.json"
    run(capsys, "build", "--n", "4", "--p", "1", "--q", "1", "--out", str(circ))
    table = tmp_path / "t.txt"
    table.write_text("0 : 1\n1 : 2\n2 : 4\n3 : 8\n")
    code, out, _ = run(
        capsys, "eval", "--circuit", str(circ), "--input", str(table),
        "--semiring", "nat-sum",
    )
    assert code == 0
    assert out == "- : 15\n0 : 14\n1 : 13\n2 : 11\n3 : 7\n"


def test_eval_logical_n_filters_phantoms(tmp_path, capsys):
    circ = tmp_path / "c.json"
    run(capsys, "build", "--n", "3", "--p", "1", "--q", "1", "--out", str(circ))
    table = tmp_path / "t.txt"
    table.write_text("0 : 1\n1 : 2\n2 : 4\n")
    code, out, _ = run(
        capsys, "eval", "--circuit", str(circ), "--input", str(table),
        "--semiring", "nat-sum", "--n", "3",
    )
    assert code == 0
    assert out == "- : 7\n0 : 6\n1 : 5\n2 : 3\n"


def test_eval_rejects_alien_label(tmp_path, capsys):
    circ = tmp_path / "c.json"
    run(capsys, "build", "--n", "4", "--p", "1", "--q", "1", "--out", str(circ))
    table = tmp_path / "t.txt"
    table.write_text("0 | 0,1 : 2\n")
    code, _, err = run(
        capsys, "eval", "--circuit", str(circ), "--input", str(table),
        "--semiring", "nat-sum",
    )
    assert code == 2
    assert "does not label" in err


def test_eval_missing_file(tmp_path, capsys):
    code, _, err = run(
        capsys, "eval", "--circuit", str(tmp_path / "nope.json"),
        "--input", str(tmp_path / "nope.txt"), "--semiring", "nat-sum",
    )
    assert code == 2


def test_eval_overflow_exit_code(tmp_path, capsys):
    circ = tmp_path / "c.json"
    run(capsys, "build", "--n", "2", "--p", "1", "--q", "1", "--out", str(circ))
    table = tmp_path / "t.txt"
    table.write_text("0 : %d\n1 : %d\n" % ((1 << 64) - 1, 5))
    code, _, err = run(
        capsys, "eval", "--circuit", str(circ), "--input", str(table),
        "--semiring", "nat-sum",
    )
    assert code == 3
    assert "64-bit" in err


def test_verify_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "--n", "4", "--p", "1", "--q", "1",
        "--trials", "2", "--seed", "7",
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "PASS"


def test_bench_csv(tmp_path, capsys):
    csv = tmp_path / "bench.csv"
    code, _, _ = run(
        capsys, "bench", "--max-b", "2", "--p", "1", "--q", "1", "--csv", str(csv)
    )
    assert code == 0
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "b,p,q,builder,inputs,adds,outputs,predicted_adds,build_ms"
    assert len(lines) == 5  # two builders per height
    pq_rows = [l for l in lines[1:] if l.split(",")[3] == "pq"]
    for row in pq_rows:
        fields = row.split(",")
        assert fields[5] == fields[7]  # adds column equals prediction


def test_kpath_cli(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    graph.write_text("4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n")
    code, out, _ = run(
        capsys, "kpath", "--graph", str(graph), "--s", "0", "--t", "2", "--k", "2"
    )
    assert code == 0
    assert out.strip() == "count=2 weight=2"


def test_kpath_cli_no_path(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    graph.write_text("4 2\n0 1 1\n2 3 1\n")
    code, out, _ = run(
        capsys, "kpath", "--graph", str(graph), "--s", "0", "--t", "3", "--k", "2"
    )
    assert code == 0
    assert out.strip() == "no path"


def test_permanent_cli(tmp_path, capsys):
    matrix = tmp_path / "m.txt"
    matrix.write_text("2 2\n1 2\n3 4\n")
    code, out, _ = run(capsys, "permanent", "--matrix", str(matrix))
    assert code == 0
    assert out.strip() == "10"


def test_permanent_cli_min_plus(tmp_path, capsys):
    matrix = tmp_path / "m.txt"
    matrix.write_text("2 2\n2 8\n5 1\n")
    code, out, _ = run(
        capsys, "permanent", "--matrix", str(matrix), "--semiring", "min-plus"
    )
    assert code == 0
    assert out.strip() == "3"


def test_featsel_cli(tmp_path, capsys, monkeypatch):
    scores = tmp_path / "s.txt"
    scores.write_text("0 : 1\n1 : 2\n2,3 : 4\n1,2 : 3\n")
    monkeypatch.setattr("sys.stdin", io.StringIO("-\n0\n2\n0,1,2\n"))
    code, out, _ = run(
        capsys, "featsel", "--scores", str(scores), "--p", "2", "--q", "1"
    )
    assert code == 0
    assert out.strip().splitlines() == [
        "4 : 2,3",
        "4 : 2,3",
        "2 : 1",
        "error",
    ]


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys)[0] == 1
