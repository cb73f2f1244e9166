"""Command line behaviour: exact output, exit codes, move-list parsing."""

import hashlib
import json
import pathlib

import pytest

from hkhovanov.cli import main, parse_moves, spec_to_str
from hkhovanov.moves import MoveSpec

from helpers import corpus_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_tsv_exact_bytes(capsys):
    code, out, err = run(capsys, "compute", corpus_path("loop_a"))
    assert code == 0 and err == ""
    assert out == "i\tj\th\tdim\n0\t-1\t-1*[a]\t1\n0\t1\t1*[a]\t1\n"


def test_compute_json_document(capsys):
    path = corpus_path("torus_link2")
    code, out, err = run(capsys, "compute", path, "--format", "json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    data = pathlib.Path(path).read_bytes()
    assert doc["diagram"] == hashlib.sha256(data).hexdigest()
    assert doc["flavor"] == "homotopical"
    assert doc["genus"] == 1
    assert doc["legend"] == {"[a]": [1, 0], "[b]": [0, 1]}
    assert len(doc["table"]) == 7
    assert sum(row["dim"] for row in doc["table"]) == 8
    assert {"i": 0, "j": 0, "h": "0", "dim": 2} in doc["table"]
    assert {"i": 0, "j": 2, "h": "2*[a]", "dim": 1} in doc["table"]
    assert {"i": 0, "j": -2, "h": "-2*[b]", "dim": 1} in doc["table"]


def test_identical_invocations_are_byte_identical(capsys):
    for fmt in ("tsv", "json"):
        argv = ("compute", corpus_path("trefoil_g1"), "--format", fmt)
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second and first[0] == 0


def rows(out):
    body = [ln.split("\t") for ln in out.splitlines()[1:]]
    return [(int(i), int(j), h, int(dim)) for i, j, h, dim in body]


def test_no_shift_moves_the_table_by_the_writhe_normalization(capsys):
    # one negative crossing: i moves by 1, j by 2, h untouched
    _, shifted, _ = run(capsys, "compute", corpus_path("kink_minus"))
    _, raw, _ = run(capsys, "compute", corpus_path("kink_minus"), "--no-shift")
    assert {(i - 1, j - 2, h, d) for i, j, h, d in rows(raw)} \
        == set(rows(shifted))


def test_classical_flavor_collapses_the_third_grading(capsys):
    code, out, _ = run(capsys, "compute", corpus_path("torus_link2"),
                       "--flavor", "classical")
    assert code == 0
    got = rows(out)
    assert all(h == "0" for _, _, h, _ in got)
    assert got == [(0, -2, "0", 1), (0, 0, "0", 2), (0, 2, "0", 1)]


def test_verify_d2_files_and_random(capsys):
    code, out, err = run(capsys, "verify-d2", corpus_path("neutral1"),
                         "--random", "5", "--seed", "7")
    assert code == 0 and err == ""
    assert "all slices zero" in out
    assert "random[4]: classical d^2 zero" in out


def test_verify_d2_without_work_is_an_error(capsys):
    code, out, err = run(capsys, "verify-d2")
    assert code == 2 and "error:" in err


def test_verify_table1(capsys):
    code, out, _ = run(capsys, "verify-table1")
    assert code == 0
    assert "39/39 cells hold" in out
    assert "classical row: 3/3 cells hold" in out
    assert "final row: holds" in out


def test_verify_moves_explicit_sequence(capsys):
    code, out, _ = run(capsys, "verify-moves", corpus_path("trefoil_rh"),
                       "--moves", "r1+:edge=3,r2:edges=1,4")
    assert code == 0
    assert "r1+:edge=3: tables agree" in out
    assert "r2:edges=1,4: tables agree" in out
    assert "all moves preserve the table" in out


def test_verify_moves_default_site_enumeration(capsys):
    code, out, _ = run(capsys, "verify-moves", corpus_path("kink_plus"))
    assert code == 0
    assert "r1rm:crossing=0: tables agree" in out
    assert "all moves preserve the table" in out


def test_dump_cube_classifies_every_edge(capsys):
    code, out, _ = run(capsys, "dump-cube", corpus_path("neutral1"))
    assert code == 0
    assert "# genus 1, 1 crossings" in out
    assert "neutral 0 -> 0, differential zero" in out
    code, out, _ = run(capsys, "dump-cube", corpus_path("trefoil_rh"))
    assert code == 0
    assert out.count("\nedge ") == 12  # 3 * 2^2 cube edges
    assert "merge" in out and "split" in out and "neutral" not in out


def test_missing_file_is_a_diagnostic(capsys):
    code, out, err = run(capsys, "compute", "/nonexistent/diagram.json")
    assert code == 2 and out == ""
    assert err.startswith("error:")


def test_broken_json_reports_the_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nonsense")
    code, _, err = run(capsys, "compute", bad)
    assert code == 2
    assert "error:" in err and "line 1" in err


def test_schema_violations_are_diagnosed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"genus": -1, "edges": [], "crossings": []}))
    code, _, err = run(capsys, "compute", bad)
    assert code == 2 and "genus must be a nonnegative integer" in err
    bad.write_text(json.dumps({
        "genus": 0,
        "edges": [{"id": 0, "word": ""}],
        "crossings": [{"slots": [7, 7, 7, 7]}],
    }))
    code, _, err = run(capsys, "compute", bad)
    assert code == 2 and "unknown edge 7" in err


def test_parse_moves_grammar():
    assert parse_moves("r1+:edge=3,r2:edges=1,4") == [
        MoveSpec("r1+", {"edge": 3}),
        MoveSpec("r2", {"edges": (1, 4)}),
    ]
    spec, = parse_moves("r2:edges=0,3,splits=1,0,over=2")
    assert spec == MoveSpec("r2", {"edges": (0, 3), "splits": (1, 0),
                                   "over": 2})
    assert parse_moves("r2rm:crossings=3,4") == [
        MoveSpec("r2rm", {"crossings": (3, 4)})]


def test_parse_moves_rejections():
    with pytest.raises(ValueError, match="unknown move kind"):
        parse_moves("r9:edge=1")
    with pytest.raises(ValueError, match="before any move kind"):
        parse_moves("edge=1")
    with pytest.raises(ValueError, match="dangling value"):
        parse_moves("r1+:3")
    with pytest.raises(ValueError, match="empty move list"):
        parse_moves("  ,  ")
    with pytest.raises(ValueError, match="takes one value"):
        parse_moves("r1+:edge=1,2")


def test_spec_to_str_matches_the_grammar():
    assert spec_to_str(MoveSpec("r2", {"edges": (1, 4)})) == "r2:edges=1,4"
    assert spec_to_str(MoveSpec("r1rm", {"crossing": 0})) == "r1rm:crossing=0"
    for text in ("r1+:edge=3,r2:edges=1,4", "r2rm:crossings=0,1"):
        assert ",".join(map(spec_to_str, parse_moves(text))) == text
