import json
import os
import subprocess
import sys

import pytest

from fraccsp import (
    CspInstance,
    Hypergraph,
    generate_hn,
    generate_tight,
)
from fraccsp.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def dump(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def files(tmp_path, h2):
    tri = Hypergraph([["a", "b"], ["b", "c"], ["a", "c"]])
    return {
        "h2": dump(tmp_path, "h2.json", h2.to_json()),
        "tri": dump(tmp_path, "tri.json", tri.to_json()),
        "tight": dump(tmp_path, "tight.json", generate_tight(tri, 2).to_json()),
        "tmp": tmp_path,
    }


def h2_ghd_as_fhd(h2):
    nodes = []
    for k, half in enumerate(({"1", "2"}, {"3", "4"})):
        bag = [v for v in h2.vertices if set(v[2:-1].split(",")) & half]
        guard = [{"edge": sorted(e), "weight": "1/1" if str(j + 1) in half else "0/1"}
                 for j, e in enumerate(h2.edges)]
        nodes.append({"id": f"t{k + 1}", "parent": None if k == 0 else "t1", "bag": bag, "guard": guard})
    return {"nodes": nodes}


def test_rho_star_h2(capsys, files):
    code, out, _ = run(capsys, "rho-star", files["h2"])
    assert code == 0 and json.loads(out)["value"] == "2/1"


def test_alpha_star_matches(capsys, files):
    code, out, _ = run(capsys, "alpha-star", files["tri"])
    res = json.loads(out)
    assert code == 0 and res["value"] == "3/2"
    assert all(isinstance(x, str) and "/" in x for x in res["witness"].values())


def test_count_tight_triangle(capsys, files):
    code, out, _ = run(capsys, "count", files["tight"])
    assert code == 0 and json.loads(out) == {"count": 8}


def test_validate_h2_ghd_as_fhd(capsys, files, h2):
    dec = dump(files["tmp"], "dec.json", h2_ghd_as_fhd(h2))
    code, out, _ = run(capsys, "validate", files["h2"], dec)
    res = json.loads(out)
    assert code == 0 and res["valid"] is True and res["width"] == "2/1"


def test_width_aw_game_decompose(capsys, files):
    code, out, _ = run(capsys, "width", "--measure", "fhw", files["tri"])
    assert code == 0 and json.loads(out)["value"] == "3/2"
    code, out, _ = run(capsys, "width", "--measure", "tree", files["h2"])
    assert json.loads(out)["value"] == "4/1"
    code, out, _ = run(capsys, "aw", files["tri"])
    assert json.loads(out) == {"value": "3/2"}
    code, out, _ = run(capsys, "game", "--budget", "1", files["tri"])
    assert json.loads(out)["general_wins"] is False
    code, out, _ = run(capsys, "decompose", "--budget", "3/2", files["tri"])
    res = json.loads(out)
    assert code == 0 and res["success"] and res["bound"] == "13/2"
    dec = dump(files["tmp"], "sep.json", res["decomposition"])
    _, out, _ = run(capsys, "validate", files["tri"], dec)
    rep = json.loads(out)
    assert rep["valid"] and rep["special_condition"] is True


def test_decompose_failure_report(capsys, files):
    code, out, _ = run(capsys, "decompose", "--budget", "0", files["tri"])
    assert code == 0 and json.loads(out)["success"] is False


def test_solve_enumerate_project(capsys, files):
    code, out, _ = run(capsys, "solve", files["tight"])
    res = json.loads(out)
    assert code == 0 and res["satisfiable"] and set(res["solution"]) == {"a", "b", "c"}
    code, out, _ = run(capsys, "enumerate", "--limit", "3", files["tight"])
    lines = out.strip().splitlines()
    assert len(lines) == 3 and all(set(json.loads(x)) == {"a", "b", "c"} for x in lines)
    code, out, _ = run(capsys, "project", "--vars", "a", files["tight"])
    assert [json.loads(x) for x in out.strip().splitlines()] == [{"a": "1"}, {"a": "2"}]


def test_explicit_decomposition_option(capsys, files):
    code, out, _ = run(capsys, "width", "--measure", "fhw", files["tri"])
    dec = dump(files["tmp"], "w.json", json.loads(out)["decomposition"])
    code, out, _ = run(capsys, "count", "--decomposition", dec, files["tight"])
    assert code == 0 and json.loads(out) == {"count": 8}


def test_generate_round_trips(capsys, files):
    for argv, parse in (
        (["generate", "hn", "2"], Hypergraph.from_json),
        (["generate", "matching", "3"], Hypergraph.from_json),
        (["generate", "universal", "4"], Hypergraph.from_json),
        (["generate", "tight", files["tri"], "--n0", "2"], CspInstance.from_json),
        (["generate", "random", "--seed", "7", "--num-vars", "4"], CspInstance.from_json),
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        obj = json.loads(out)
        assert parse(obj).to_json() == obj
    _, out, _ = run(capsys, "generate", "hn", "2")
    assert Hypergraph.from_json(json.loads(out)) == generate_hn(2)


def test_exit_codes(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run(capsys, "rho-star", str(bad))
    assert code == 1 and out == "" and "error" in err
    code, _, err = run(capsys, "rho-star", str(tmp_path / "missing.json"))
    assert code == 1
    bogus = dump(tmp_path, "bogus.json", {"vertices": ["a"], "edges": [["a", "zz"]]})
    assert run(capsys, "aw", bogus)[0] == 1
    assert run(capsys, "game", "--budget", "-1", files["tri"])[0] == 1
    assert run(capsys, "generate", "hn", "9")[0] == 1
    odd = dump(tmp_path, "odd.json", {"nodes": [{"id": "r", "parent": None, "bag": ["a"], "guard": {"0": "1"}}]})
    assert run(capsys, "validate", files["tri"], odd)[0] == 1
    big = dump(tmp_path, "h3.json", generate_hn(3).to_json())
    code, _, err = run(capsys, "aw", big)
    assert code == 2 and "resource limit" in err


def test_reads_stdin_and_streams_in_subprocess(files):
    with open(files["h2"]) as fh:
        res = subprocess.run([sys.executable, "-m", "fraccsp", "rho-star"], stdin=fh,
                             capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["value"] == "2/1"
    res = subprocess.run([sys.executable, "-m", "fraccsp", "enumerate", files["tight"]],
                         capture_output=True, text=True, check=True)
    assert len(res.stdout.splitlines()) == 8


def test_report_writes_tables_and_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "--out", str(tmp_path / "rep"), "--n0", "2", "3")
    files = json.loads(out)
    assert code == 0
    for p in files.values():
        assert os.path.getsize(p) > 0
    with open(files["scaling_csv"]) as fh:
        head = fh.readline().strip().split(",")
    assert head[:4] == ["n0", "N", "solutions", "extension_checks"]
    with open(files["scaling_png"], "rb") as fh:
        assert fh.read(8) == b"\x89PNG\r\n\x1a\n"


@pytest.mark.parametrize("name,argv", [
    ("rho_star_triangle", ["rho-star", "{tri}"]),
    ("count_tight_triangle", ["count", "{tight}"]),
    ("aw_h2", ["aw", "{h2}"]),
    ("game_triangle_1", ["game", "--budget", "1", "{tri}"]),
])
def test_golden_outputs(capsys, files, name, argv):
    argv = [a.format(**{k: v for k, v in files.items() if k != "tmp"}) for a in argv]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    with open(os.path.join(GOLDEN, name + ".json")) as fh:
        assert json.loads(out) == json.load(fh)
