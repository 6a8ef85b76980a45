import subprocess
import sys

import pytest

from spanroot import bench
from spanroot.cli import main
from spanroot.generate import fuzz_corpus
from spanroot.io import write_weights

from test_io import GSTAR


@pytest.fixture
def gstar_file(tmp_path):
    p = tmp_path / "gstar.txt"
    p.write_text(GSTAR)
    return p


def _heads(text):
    return [tuple(line.split("\t")[:2]) for line in text.splitlines() if line]


def test_decode_constrained(gstar_file, capsys):
    assert main(["decode", "--input", str(gstar_file)]) == 0
    out = capsys.readouterr().out
    assert _heads(out) == [("1", "0"), ("2", "3"), ("3", "1"), ("4", "2")]


def test_decode_unconstrained_to_file(gstar_file, tmp_path):
    out = tmp_path / "heads.txt"
    code = main(["decode", "--input", str(gstar_file), "--mode", "unconstrained",
                 "--output", str(out)])
    assert code == 0
    assert _heads(out.read_text()) == [("1", "0"), ("2", "0"), ("3", "4"), ("4", "2")]


def test_decode_drops_self_loop(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text("n 1\ne 1 1 5\ne 0 1 5\n")
    assert main(["decode", "--input", str(p)]) == 0
    cap = capsys.readouterr()
    assert "dropped 1 edge(s): 1 self-loop(s)" in cap.err
    assert cap.out == "1\t0\t_\n\n"


def test_decode_trace(gstar_file, capsys):
    main(["decode", "--input", str(gstar_file), "--trace"])
    err = capsys.readouterr().err
    assert "weight 210 contract:opt=1 optimization=1 reduction=0" in err


def test_decode_partial_failure(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text("n 2\ne 0 1 1\ne 0 2 1\n\nn 1\ne 0 1 3\n")
    assert main(["decode", "--input", str(p)]) == 2
    cap = capsys.readouterr()
    assert cap.out == "1\t_\t_\n2\t_\t_\n\n1\t0\t_\n\n"
    assert "sentence 1 (line 1): NoFeasibleRemoval" in cap.err


def test_decode_parse_error(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text("n 1\ne 0 1 abc\n")
    assert main(["decode", "--input", str(p)]) == 1
    assert "line 2:" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["decode", "--input", str(tmp_path / "nope")]) == 1


def _write_heads(path, sents):
    path.write_text("".join(
        "".join(f"{k}\t{h}\t_\n" for k, h in enumerate(s, 1)) + "\n" for s in sents))
    return str(path)


def test_eval_identical(tmp_path, capsys):
    g = _write_heads(tmp_path / "g", [[0, 1, 1], [2, 0]])
    assert main(["eval", "--gold", g, "--pred-constrained", g, "--pred-unconstrained", g]) == 0
    out = capsys.readouterr().out
    assert "malformed_rate=0.000000" in out
    assert "rel_delta_uas=0.000000" in out and "rel_delta_exact=0.000000" in out


def test_eval_malformed_share(tmp_path, capsys):
    gold = [[0, 1, 2]] * 50
    unc = [[0, 0, 2]] * 3 + [[0, 1, 2]] * 47
    g = _write_heads(tmp_path / "g", gold)
    u = _write_heads(tmp_path / "u", unc)
    assert main(["eval", "--gold", g, "--pred-constrained", g, "--pred-unconstrained", u,
                 "--format", "csv"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    rec = dict(zip(header.split(","), row.split(",")))
    assert rec["malformed_rate"] == "0.060000"
    assert rec["sentences"] == "50"


def test_eval_length_mismatch(tmp_path, capsys):
    g = _write_heads(tmp_path / "g", [[0, 1]])
    p = _write_heads(tmp_path / "p", [[0, 1], [0]])
    assert main(["eval", "--gold", g, "--pred-constrained", p, "--pred-unconstrained", g]) == 1
    assert "1 gold sentences but 2 predicted" in capsys.readouterr().err


def test_oracle_worked_example(gstar_file, capsys):
    assert main(["oracle", "--input", str(gstar_file)]) == 0
    assert capsys.readouterr().out == "unconstrained 260 constrained 210 PASS PASS\n"


def test_oracle_single_token(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text("n 1\ne 0 1 5\n")
    assert main(["oracle", "--input", str(p)]) == 0
    assert capsys.readouterr().out == "unconstrained 5 constrained 5 PASS PASS\n"


def test_oracle_no_trees(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text("n 2\ne 0 1 1\ne 0 2 1.5\n\nn 2\ne 0 1 1\n")
    assert main(["oracle", "--input", str(p)]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "unconstrained 2.500000 constrained none PASS PASS",
        "unconstrained none constrained none PASS PASS",
    ]


def test_oracle_too_large(tmp_path, capsys):
    p = tmp_path / "w.txt"
    p.write_text("n 3\ne 0 1 1\ne 0 2 1\ne 0 3 1\n")
    assert main(["oracle", "--input", str(p), "--max-n", "2"]) == 1
    assert "limit is 2" in capsys.readouterr().err


def test_oracle_fuzz_file(tmp_path, capsys):
    p = tmp_path / "fuzz.txt"
    write_weights(p, fuzz_corpus(5, 300))
    assert main(["oracle", "--input", str(p)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 300
    assert all(line.endswith("PASS PASS") for line in lines)


def test_bench_small(capsys):
    assert main(["bench", "--min-n", "4", "--max-n", "16", "--trials", "2"]) == 0
    rows = bench.read_csv(capsys.readouterr().out)
    assert [(n, a) for n, a, _ in rows] == [
        (n, a) for n in (4, 8, 16) for a in bench.ALGORITHMS]


def test_bench_bad_min_n(capsys):
    assert main(["bench", "--min-n", "1"]) == 1


def test_module_entry_point(gstar_file):
    res = subprocess.run([sys.executable, "-m", "spanroot", "oracle", "--input", str(gstar_file)],
                         capture_output=True, text=True, check=True)
    assert res.stdout.endswith("PASS PASS\n")
