"""Command-line contract: exit codes, reports, seeds, artifacts."""

import json

import numpy as np
import pytest

from helpers import cycle, path
from retracts import dump_embedded, dump_graph, parse_graph
from retracts.cli import main
from helpers import k4_embedded, cycle_embedded


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(out):
    rows = []
    for line in out.splitlines():
        key, _, value = line.partition(": ")
        rows.append((key, value))
    return rows, dict(rows)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_gen_then_ecc_matches_oracle(tmp_path, capsys):
    gpath = str(tmp_path / "g.txt")
    code, out, _ = run(capsys, "gen", "--family", "chordal-bipartite",
                       "--n", "60", "--seed", "7", "--out", gpath)
    assert code == 0
    _, rows = report(out)
    assert rows["seed"] == "7"
    code, out1, _ = run(capsys, "ecc", "--class", "chordal-bipartite",
                        "--in", gpath)
    code2, out2, _ = run(capsys, "ecc", "--class", "oracle", "--in", gpath)
    assert code == 0 and code2 == 0
    assert report(out1)[1]["result"] == report(out2)[1]["result"]


def test_diam_split_c4_exit_2(tmp_path, capsys):
    p = write(tmp_path, "c4.txt", dump_graph(cycle(4)))
    code, out, _ = run(capsys, "diam", "--class", "split", "--in", p)
    assert code == 2
    _, rows = report(out)
    assert rows["result"] == "certificate"
    cert = json.loads(rows["certificate"])
    assert cert == {"structure": "C4", "vertices": [0, 1, 2, 3]}


def test_planar_embed_then_check(tmp_path, capsys):
    p = write(tmp_path, "c4e.txt", dump_embedded(cycle_embedded(4)))
    host = str(tmp_path / "host.txt")
    vmap = str(tmp_path / "map.txt")
    code, out, _ = run(capsys, "planar-embed", "--in", p, "--out", host,
                       "--map", vmap)
    assert code == 0
    assert "stage.stellate-2" in report(out)[1]
    code, out, _ = run(capsys, "check", "--property", "planar-retract",
                       "--in", host)
    assert code == 0
    assert report(out)[1]["verdict"] == "pass"
    lines = open(vmap).read().split()
    assert lines[:2] == ["0", "0"]


def test_seed_autogenerated_and_replayable(tmp_path, capsys):
    gpath = str(tmp_path / "g.txt")
    run(capsys, "gen", "--family", "chordal-bipartite", "--n", "40",
        "--seed", "3", "--out", gpath)
    code, out, _ = run(capsys, "diam", "--class", "bipartite-retract",
                       "--in", gpath)
    assert code == 0
    _, rows = report(out)
    seed = rows["seed"]
    assert seed.isdigit()
    code, out2, _ = run(capsys, "diam", "--class", "bipartite-retract",
                        "--in", gpath, "--seed", seed)
    assert report(out2)[1]["result"] == rows["result"]


def test_report_golden_shape(tmp_path, capsys):
    p = write(tmp_path, "p4.txt", dump_graph(path(4)))
    code, out, _ = run(capsys, "ecc", "--class", "oracle", "--in", p)
    assert code == 0
    rows, mapping = report(out)
    keys = [k for k, _ in rows]
    assert keys[:2] == ["command", "class"]
    assert "input-sha256" in keys and "wall-ms" in keys
    assert keys.index("result") < keys.index("wall-ms")
    assert mapping["result"] == "3 2 2 3"
    assert len(mapping["input-sha256"]) == 64
    # identical rerun except timing
    _, out2, _ = run(capsys, "ecc", "--class", "oracle", "--in", p)
    strip = lambda text: [l for l in text.splitlines()
                          if not l.startswith("wall-ms")]
    assert strip(out) == strip(out2)


def test_usage_errors_exit_1(tmp_path, capsys):
    p = write(tmp_path, "p4.txt", dump_graph(path(4)))
    assert run(capsys, "diam", "--class", "bogus", "--in", p)[0] == 1
    assert run(capsys, "diam", "--class", "oracle")[0] == 1
    assert run(capsys, "ecc", "--class", "oracle", "--in",
               str(tmp_path / "missing.txt"))[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "gen", "--family", "split", "--seed", "1")[0] == 1


def test_malformed_input_exit_1(tmp_path, capsys):
    p = write(tmp_path, "bad.txt", "3 1\n0 1\n0 2\n")
    code, out, err = run(capsys, "diam", "--class", "oracle", "--in", p)
    assert code == 1 and "input error" in err


def test_kchromatic_disclaimer_and_colors(tmp_path, capsys):
    text = ("6 12\n0 2\n0 3\n0 4\n0 5\n1 2\n1 3\n1 4\n1 5\n2 4\n2 5\n"
            "3 4\n3 5\n")
    p = write(tmp_path, "k222.txt", text)
    colors = write(tmp_path, "cols.txt", "colors 1 1 2 2 3 3\n")
    code, out, _ = run(capsys, "diam", "--class", "k-chromatic-retract",
                       "--in", p, "--colors", colors, "--seed", "5")
    assert code == 0
    _, rows = report(out)
    assert rows["result"] == "2"
    assert "note" in rows and "wrong" in rows["note"]


def test_kchromatic_certificate_exit_2(tmp_path, capsys):
    p = write(tmp_path, "c4.txt", dump_graph(cycle(4)))
    code, out, _ = run(capsys, "diam", "--class", "k-chromatic-retract",
                       "--in", p, "--seed", "1")
    assert code == 2
    assert json.loads(report(out)[1]["certificate"]) == {"k": 2}


def test_check_helly_fail_exit_2(tmp_path, capsys):
    p = write(tmp_path, "c4.txt", dump_graph(cycle(4)))
    code, out, _ = run(capsys, "check", "--property", "helly", "--in", p)
    assert code == 2
    _, rows = report(out)
    assert rows["verdict"] == "fail"
    cert = json.loads(rows["certificate"])
    assert cert["centers"] == [0, 1, 2, 3]


def test_check_chordal_bipartite_pass(tmp_path, capsys):
    p = write(tmp_path, "c4.txt", dump_graph(cycle(4)))
    code, out, _ = run(capsys, "check", "--property", "chordal-bipartite",
                       "--in", p)
    assert code == 0 and report(out)[1]["verdict"] == "pass"


def test_check_split_retract(tmp_path, capsys):
    p = write(tmp_path, "p4.txt", dump_graph(path(4)))
    assert run(capsys, "check", "--property", "split-retract",
               "--in", p)[0] == 0
    paw = write(tmp_path, "paw.txt",
                dump_graph(parse_graph("4 4\n0 1\n0 2\n1 2\n0 3\n")))
    code, out, _ = run(capsys, "check", "--property", "split-retract",
                       "--in", paw)
    assert code == 2 and report(out)[1]["verdict"] == "fail"


def test_reduce_split_artifacts(tmp_path, capsys):
    paw = write(tmp_path, "paw.txt", "4 4\n0 1\n0 2\n1 2\n0 3\n")
    out_path = str(tmp_path / "pruned.txt")
    log_path = str(tmp_path / "log.txt")
    code, out, _ = run(capsys, "reduce-split", "--in", paw,
                       "--out", out_path, "--log", log_path)
    assert code == 0
    assert open(log_path).read().split() == ["1", "2", "3"]
    assert parse_graph(open(out_path).read()).n == 1
    assert report(out)[1]["result"] == "n=1 m=0 removed=3"


def test_ecc_dump_trees(tmp_path, capsys):
    p = write(tmp_path, "p4.txt", dump_graph(path(4)))
    trees = str(tmp_path / "trees.txt")
    code, out, _ = run(capsys, "ecc", "--class", "chordal-bipartite",
                       "--in", p, "--dump-trees", trees)
    assert code == 0
    lines = open(trees).read().splitlines()
    assert lines[0] == "side 0" and lines[1] == "0: 0 2"
    assert "side 1" in lines


def test_bench_emits_table(capsys):
    code, out, _ = run(capsys, "bench", "--family", "split", "--n", "128",
                       "--seed", "2")
    assert code == 0
    _, rows = report(out)
    assert "bench.128" in rows
    assert "fast-ms=" in rows["bench.128"]
    assert "oracle-ms=" in rows["bench.128"]


def test_threads_flag_accepted(tmp_path, capsys):
    gpath = str(tmp_path / "g.txt")
    run(capsys, "gen", "--family", "chordal-bipartite", "--n", "30",
        "--seed", "1", "--out", gpath)
    code, out, _ = run(capsys, "diam", "--class", "bipartite-retract",
                       "--in", gpath, "--seed", "4", "--threads", "2")
    assert code == 0
    assert report(out)[1]["threads"] == "2"
