import subprocess
import sys
from pathlib import Path

import pytest

from dyergeo.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

GRAPHS = Path(__file__).resolve().parents[1] / "demos" / "graphs"


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", GRAPHS / "fig1.dyer")
    assert code == EXIT_OK and "class=general" in out
    code, _, err = run(capsys, "validate", GRAPHS / "bad_edge.dyer")
    assert code == EXIT_USAGE and "{a,b}" in err
    empty = tmp_path / "empty.dyer"
    empty.write_text("")
    code, _, err = run(capsys, "validate", empty)
    assert code == EXIT_USAGE and "no vertices" in err
    code, _, err = run(capsys, "validate", tmp_path / "missing.dyer")
    assert code == EXIT_USAGE


def test_ball_formats(capsys):
    code, out, _ = run(capsys, "ball", GRAPHS / "s3.dyer")
    assert code == EXIT_OK and "spheres=1,2,2,1" in out
    code, out, _ = run(capsys, "ball", GRAPHS / "s3.dyer", "--format", "dot")
    assert out.startswith("graph cayley")
    code, out, _ = run(capsys, "ball", GRAPHS / "z2.dyer", "--radius", "1", "--format", "csv")
    assert out.splitlines()[0] == "index,word,length" and len(out.splitlines()) == 6


def test_mediangle(capsys):
    code, out, _ = run(capsys, "mediangle", GRAPHS / "s3.dyer")
    assert code == EXIT_OK and out.rstrip().endswith("PASS")


def test_hyperplanes(capsys):
    code, out, _ = run(capsys, "hyperplanes", GRAPHS / "s3.dyer", "--radius", "6")
    assert code == EXIT_OK and "classes=3" in out and "criterion: PASS" in out
    code, out, _ = run(capsys, "hyperplanes", GRAPHS / "z2.dyer", "--format", "csv")
    assert out.startswith("u,v,class")


def test_geodesic(capsys):
    code, out, _ = run(capsys, "geodesic", GRAPHS / "s3.dyer", "u^1 v^1 u^1 v^1")
    assert code == EXIT_OK and "non-geodesic; hyperplane class repeated" in out
    code, out, _ = run(capsys, "geodesic", GRAPHS / "fig1.dyer", "a", "b", "c")
    assert code == EXIT_OK and "geodesic; no hyperplane class repeated" in out


def test_bad_word(capsys):
    code, _, err = run(capsys, "geodesic", GRAPHS / "s3.dyer", "w^1")
    assert code == EXIT_USAGE and "unknown generator" in err


def test_shorten(capsys):
    code, out, _ = run(capsys, "shorten", GRAPHS / "s3.dyer", "u v u v")
    assert code == EXIT_OK and "replacement=v^1 u^1" in out
    assert "fellow constant 2" in out
    code, out, _ = run(capsys, "shorten", GRAPHS / "s3.dyer", "u v")
    assert "nothing to shorten" in out


def test_fftp(capsys):
    code, out, _ = run(capsys, "fftp", GRAPHS / "s3.dyer", "--max-len", "6")
    assert code == EXIT_OK
    assert any(line.startswith("PASS, max constant") and line.endswith("2M=6") for line in out.splitlines())
    code, out, _ = run(capsys, "fftp", GRAPHS / "z2.dyer", "--max-len", "7", "--sample", "50", "--seed", "11")
    assert code == EXIT_OK and "seed=11" in out.splitlines()[1]


def test_automaton(capsys):
    code, out, _ = run(capsys, "automaton", GRAPHS / "zline.dyer")
    assert code == EXIT_OK and "profile_states=9 minimized_states=3" in out
    code, out, _ = run(capsys, "automaton", GRAPHS / "zline.dyer", "--format", "dot")
    assert out.startswith("digraph")
    code, out, _ = run(capsys, "automaton", GRAPHS / "z2.dyer", "--radius", "1")
    assert code == EXIT_CAP and "complete=False" in out


def test_growth(capsys):
    code, out, _ = run(capsys, "growth", GRAPHS / "z2.dyer", "--terms", "4", "--kind", "geodesic")
    assert code == EXIT_OK and out.splitlines()[-1] == "1,4,12,28"
    code, out, _ = run(capsys, "growth", GRAPHS / "zline.dyer", "--terms", "4", "--rational")
    assert out.splitlines()[-2:] == ["numerator: 1 1", "denominator: 1 -1"]
    code, out, _ = run(capsys, "growth", GRAPHS / "gp34.dyer", "--terms", "3", "--kind", "spherical")
    assert out.splitlines()[-1] == "1,5,6"


def test_resource_caps(capsys):
    code, _, err = run(capsys, "ball", GRAPHS / "z2.dyer", "--radius", "20", "--max-elements", "100")
    assert code == EXIT_CAP and "resource cap" in err
    code, _, err = run(capsys, "fftp", GRAPHS / "fig1.dyer", "--max-len", "9", "--max-seconds", "0.2")
    assert code == EXIT_CAP and "time limit" in err


def test_invalid_parameters(capsys):
    code, _, _ = run(capsys, "ball", GRAPHS / "s3.dyer", "--radius", "-1")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "fftp", GRAPHS / "s3.dyer", "--threads", "0")
    assert code == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["ball", str(GRAPHS / "s3.dyer"), "--format", "png"])


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "dyergeo", "growth", str(GRAPHS / "z2.dyer"), "--terms", "3"],
        capture_output=True, text=True, check=True,
    )
    assert r.stdout.splitlines()[-1] == "1,4,12"
