import json
import random

import pytest

from relgraph import cli
from relgraph.certificates import Problem
from relgraph.errors import ParseError
from relgraph.generators import read_meta
from relgraph.graph import Graph, Instance
from relgraph.graphio import read_graph_file, write_graph_file
from relgraph.records import RelRecord, verify_record
from relgraph.solvers import SOLVERS, solve

from conftest import random_graph


def _write(tmp_path, name, g):
    path = tmp_path / name
    write_graph_file(path, g)
    return path


def _records(path):
    lines = path.read_text().splitlines()
    return [json.loads(l) for l in lines]


# ------------------------------------------------------------------ records

def test_record_round_trip_all_solvers():
    rng = random.Random(127)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 12))
        problem, kind = rng.choice(sorted(SOLVERS, key=str))
        k = None if problem is Problem.HAMILTONIAN_CYCLE else rng.randint(0, g.n)
        inst = Instance(g, k)
        rec = RelRecord.from_answer(problem, kind, inst, solve(problem, kind, inst), source="x", seed=3)
        back = RelRecord.from_json(rec.to_json())
        assert back == rec and back.to_json() == rec.to_json()
        assert verify_record(back, g).ok


def test_record_parse_errors():
    with pytest.raises(ParseError):
        RelRecord.from_json("{not json")
    with pytest.raises(ParseError):
        RelRecord.from_json("[1, 2]")
    with pytest.raises(ParseError):
        RelRecord.from_json('{"problem": "ham"}')


def test_tampered_record_fails():
    g = Graph.path(4)
    rec = RelRecord.from_answer("ham", "maxdeg", Instance(g), solve("ham", "maxdeg", Instance(g)))
    obj = rec.to_dict()
    obj["budget"] = "2"
    assert [c.name for c in verify_record(RelRecord.from_dict(obj), g).failures()] == ["budget"]
    obj = rec.to_dict()
    obj["edits"] = [["add", 0, 3], ["add", 0, 2]]
    assert not verify_record(RelRecord.from_dict(obj), g).ok
    assert not verify_record(rec, Graph.path(5)).ok


# -------------------------------------------------------------------- solve

def test_solve_p4(tmp_path, capsys):
    src = _write(tmp_path, "p4.txt", Graph.path(4))
    assert cli.main(["solve", "--problem", "ham", "--dist", "maxdeg", "--input", str(src)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["answer"] == "positive" and rec["distance"] == 1 and rec["budget"] == "1"
    assert rec["edits"] == [["add", 0, 3]]


def test_solve_is_k0_and_disconnected_ham(tmp_path, capsys):
    src = _write(tmp_path, "g.txt", Graph.petersen())
    out = tmp_path / "rec.jsonl"
    assert cli.main(["solve", "--problem", "is", "--dist", "edits", "--k", "0",
                     "--input", str(src), "--output", str(out)]) == 0
    rec = _records(out)[0]
    assert rec["answer"] == "positive" and rec["distance"] == 0
    two = Graph.from_edges(8, [(i, (i + 1) % 4) for i in range(4)] + [(4 + i, 4 + (i + 1) % 4) for i in range(4)])
    src = _write(tmp_path, "two.txt", two)
    assert cli.main(["solve", "--problem", "ham", "--dist", "edits", "--input", str(src), "--output", str(out)]) == 0
    assert cli.main(["verify", "--record", str(out), "--graph", str(src)]) == 0


def test_solve_usage_errors(tmp_path, capsys):
    src = _write(tmp_path, "g.txt", Graph.path(4))
    assert cli.main(["solve", "--problem", "ds", "--dist", "maxdeg", "--k", "1", "--input", str(src)]) == 2
    assert "supported" in capsys.readouterr().err
    assert cli.main(["solve", "--problem", "is", "--dist", "edits", "--input", str(src)]) == 2
    assert cli.main(["solve", "--problem", "is", "--dist", "edits", "--k", "9", "--input", str(src)]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve", "--problem", "nope", "--dist", "edits", "--input", str(src)])
    assert exc.value.code == 2


def test_io_errors_exit_4(tmp_path):
    assert cli.main(["solve", "--problem", "ham", "--dist", "edits", "--input", str(tmp_path / "missing")]) == 4
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    assert cli.main(["solve", "--problem", "ham", "--dist", "edits", "--input", str(bad)]) == 4


# ------------------------------------------------------------------- curate

def _corpus(tmp_path, count, seed=131):
    rng = random.Random(seed)
    d = tmp_path / "corpus"
    d.mkdir()
    for i in range(count):
        g = random_graph(rng, rng.randint(1, 14))
        _write(d, f"g{i:03d}.txt", g)
        (d / f"g{i:03d}.k").write_text(f"{int(g.n ** 0.5)}\n")
    return d


def test_curate_and_verify(tmp_path, capsys):
    d = _corpus(tmp_path, 20)
    out = tmp_path / "data.jsonl"
    assert cli.main(["curate", "--problem", "is", "--dist", "maxdeg", "--in-dir", str(d),
                     "--out", str(out), "--k-policy", "file", "--seed", "7"]) == 0
    rows = _records(out)
    summary = rows[-1]["summary"]
    assert summary["records"] == 20 == summary["positive"] + summary["negative"]
    assert sum(summary["distance_histogram"].values()) == 20
    for row in rows[:-1]:
        n = read_graph_file(row["source"]).n
        assert row["k"] == int(n ** 0.5)
    assert cli.main(["verify", "--record", str(out)]) == 0
    assert "20/20 records verified" in capsys.readouterr().out


def test_curate_is_deterministic_and_parallel_safe(tmp_path):
    d = _corpus(tmp_path, 12)
    outs = []
    for name, jobs in (("a", "1"), ("b", "1"), ("c", "2")):
        out = tmp_path / f"{name}.jsonl"
        assert cli.main(["curate", "--problem", "coloring", "--dist", "edits", "--in-dir", str(d),
                         "--out", str(out), "--seed", "11", "--jobs", jobs]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_curate_empty_and_skips(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    out = tmp_path / "out.jsonl"
    assert cli.main(["curate", "--problem", "ds", "--dist", "edits", "--in-dir", str(empty), "--out", str(out)]) == 0
    summary = _records(out)[0]["summary"]
    assert summary["records"] == 0 and summary["distance_histogram"] == {} and summary["skipped"] == 0
    (empty / "broken.txt").write_text("garbage\n")
    _write(empty, "fine.txt", Graph.cycle(5))
    assert cli.main(["curate", "--problem", "ds", "--dist", "edits", "--in-dir", str(empty), "--out", str(out)]) == 4
    summary = _records(out)[-1]["summary"]
    assert summary["records"] == 1 and summary["skipped"] == 1
    assert cli.main(["curate", "--problem", "ds", "--dist", "edits", "--in-dir", str(empty),
                     "--k-policy", "sqrt", "--out", str(out)]) == 2


def test_verify_flags_flipped_answer(tmp_path, capsys):
    src = _write(tmp_path, "c5.txt", Graph.cycle(5))
    out = tmp_path / "rec.jsonl"
    assert cli.main(["solve", "--problem", "is", "--dist", "maxdeg", "--k", "2", "--input", str(src),
                     "--output", str(out)]) == 0
    rec = _records(out)[0]
    rec["answer"] = "negative" if rec["answer"] == "positive" else "positive"
    out.write_text(json.dumps(rec) + "\n")
    capsys.readouterr()
    assert cli.main(["verify", "--record", str(out), "--graph", str(src)]) == 1
    text = capsys.readouterr().out
    assert "FAIL certificate" in text and "0/1 records verified" in text


# ----------------------------------------------------------------- generate

def test_generate_robust_path(tmp_path, capsys):
    src = _write(tmp_path, "p4.txt", Graph.path(4))
    prefix = tmp_path / "gadget"
    assert cli.main(["generate", "--reduction", "ham-robust", "--source", str(src),
                     "--beta", "49/100", "--out-prefix", str(prefix)]) == 0
    assert capsys.readouterr().out.split("\n")[:2] == ["q = 2", "n = 40"]
    g = read_graph_file(tmp_path / "gadget.txt")
    meta = read_meta((tmp_path / "gadget.meta").read_text())
    assert g == meta.graph() and g.n == 40


def test_generate_blowup_and_validation(tmp_path, capsys):
    src = _write(tmp_path, "c5.txt", Graph.cycle(5))
    prefix = tmp_path / "blow"
    assert cli.main(["generate", "--reduction", "domset-blowup", "--source", str(src),
                     "--beta", "0.9", "--k", "2", "--out-prefix", str(prefix)]) == 0
    q_line, n_line = capsys.readouterr().out.split("\n")[:2]
    q = int(q_line.split("=")[1])
    assert int(n_line.split("=")[1]) == 5 * q
    assert cli.main(["generate", "--reduction", "domset-blowup", "--source", str(src),
                     "--beta", "0.9", "--out-prefix", str(prefix)]) == 2
    bent = _write(tmp_path, "bent.txt", Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]))
    assert cli.main(["generate", "--reduction", "ham-robust", "--source", str(bent),
                     "--beta", "1/4", "--s", "0", "--t", "4", "--out-prefix", str(prefix)]) == 2
    assert "deg(s) = 2" in capsys.readouterr().err


# ------------------------------------------------------------------- oracle

def test_oracle_command(tmp_path, capsys):
    pet = _write(tmp_path, "petersen.txt", Graph.petersen())
    assert cli.main(["oracle", "--problem", "ham", "--input", str(pet)]) == 1
    assert capsys.readouterr().out.strip() == "negative"
    assert cli.main(["oracle", "--problem", "coloring", "--k", "3", "--input", str(pet)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "positive" and len(json.loads(out[1])["parts"]) == 3
    big = _write(tmp_path, "big.txt", Graph.cycle(30))
    assert cli.main(["oracle", "--problem", "ham", "--input", str(big)]) == 3
    assert cli.main(["oracle", "--problem", "ham", "--input", str(pet), "--cutoff", "5"]) == 3
