import subprocess
import sys

import pytest

from odtool import cli
from odtool.algebra import PolyMatrix, variables
from odtool.cli import ParseError, parse_matrix, serialize_matrix
from odtool.constructions import catalog

a, b = variables("a b")


def run(capsys, *argv):
    code = cli.main([str(x) for x in argv])
    out, err = capsys.readouterr()
    return code, out, err


# ------------------------------------------------------------ file format

@pytest.mark.parametrize("entry", [e for e in catalog() if e.order < 512], ids=lambda e: e.name)
def test_round_trip(entry):
    design = entry.build()
    for M, t in zip(design.matrices, design.types):
        names = [v.name for v in t.sorted().vars]
        text = serialize_matrix(M, names)
        mf = parse_matrix(text)
        assert mf.names == tuple(names)
        assert mf.matrix == M
        assert serialize_matrix(mf.matrix, names) == text


def test_serialize_format():
    M = PolyMatrix([[a, b * 2], [-(b * 2), a + 1]])
    assert serialize_matrix(M) == "od 2 vars a b\na 2*b\n-2*b a+1\n"


@pytest.mark.parametrize("text,msg", [
    ("", "empty"),
    ("od 2 vars a\na a\n", "expected 2 rows"),
    ("od 2 vars a\na\na a\n", "row 0"),
    ("od 1 vars a\nb\n", "not declared"),
    ("od 1 vars a a\na\n", "twice"),
    ("od x vars a\na\n", "bad order"),
    ("matrix 1\n1\n", "header"),
    ("od 1 vars a\na*2\n", "bad entry"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_matrix(text)


def test_comments_ignored():
    mf = parse_matrix("# two by two\nod 2 vars a b\na b\n# mid\nb -a\n")
    assert mf.matrix.order == 2


# ------------------------------------------------------------------ build

def test_build_and_verify_aod72(tmp_path, capsys):
    code, out, _ = run(capsys, "build", "aod72_example_3_4", "-o", tmp_path)
    assert code == 0 and "PASS" in out
    C, D = tmp_path / "aod72_example_3_4.C.od", tmp_path / "aod72_example_3_4.D.od"
    code, out, _ = run(capsys, "verify", "aod", "--types", "18,54/72", C, D)
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "verify", "aod", "--types", "54,18/72", C, D)
    assert code == 1 and out.startswith("FAIL") and "witness" in out
    code, _, _ = run(capsys, "verify", "full", C, D)
    assert code == 0
    code, _, _ = run(capsys, "verify", "amicable", C, D)
    assert code == 0


def test_build_pd12_and_verify(tmp_path, capsys):
    assert run(capsys, "build", "pd12", "-o", tmp_path, "-q") == (0, "", "")
    files = [tmp_path / f"pd12.{s}.od" for s in ("M1", "M2", "N")]
    code, out, _ = run(capsys, "verify", "pd", *files)
    assert code == 0, out
    code, out, _ = run(capsys, "verify", "disjoint", files[0], files[2])
    assert code == 0
    code, out, _ = run(capsys, "verify", "disjoint", files[0], files[1])
    assert code == 1


def test_build_od_single_file(tmp_path, capsys):
    code, _, _ = run(capsys, "build", "od24_product", "-o", tmp_path, "-q")
    assert code == 0
    path = tmp_path / "od24_product.od"
    mf = cli.read_matrix(path)
    weights = ",".join(["1"] * 6 + ["9", "9"])
    code, out, _ = run(capsys, "verify", "od", "--types", weights, path)
    assert code == 0, out
    named = ",".join(f"{n}={w}" for n, w in zip(mf.names, weights.split(",")))
    assert run(capsys, "verify", "od", "--types", named, path)[0] == 0
    # without --types the type is read off the Gram matrix
    assert run(capsys, "verify", "od", path)[0] == 0


def test_build_unknown(capsys):
    code, _, err = run(capsys, "build", "nosuch")
    assert code == 3 and "catalog" in err


# ----------------------------------------------------------------- verify

def test_verify_usage_errors(tmp_path, capsys):
    p = tmp_path / "x.od"
    p.write_text("od 2 vars a b\na b\nb -a\n")
    assert run(capsys, "verify", "od", "--types", "1", p)[0] == 3
    assert run(capsys, "verify", "od", "--types", "a=1,2", p)[0] == 3
    assert run(capsys, "verify", "od", "--types", "c=1,a=1", p)[0] == 3
    assert run(capsys, "verify", "aod", p)[0] == 3
    assert run(capsys, "verify", "od", tmp_path / "missing.od")[0] == 3
    bad = tmp_path / "bad.od"
    bad.write_text("od 2 vars a\na\n")
    assert run(capsys, "verify", "od", bad)[0] == 3
    assert run(capsys, "verify", "nonsense", p)[0] == 3
    assert run(capsys, "verify", "od", "--types", "1,1", p)[0] == 0


def test_verify_not_od_without_types(tmp_path, capsys):
    p = tmp_path / "x.od"
    p.write_text("od 2 vars a b\na b\nb a\n")
    code, out, _ = run(capsys, "verify", "od", p)
    assert code == 1 and out.startswith("FAIL")


# ----------------------------------------------------------------- decide

def test_decide_pd133(capsys):
    code, out, _ = run(capsys, "decide", "pd133", "20", "--explain")
    assert code == 1
    assert out.rstrip().endswith("S_17(1,1,1,3,3,3,17,17,34) = -1")
    code, out, _ = run(capsys, "decide", "pd133", "8")
    assert code == 0 and "Exists" in out
    assert run(capsys, "decide", "pd133", "20", "-q") == (1, "", "")
    assert run(capsys, "decide", "pd133", "0")[0] == 3


def test_decide_rational_family(capsys):
    code, _, _ = run(capsys, "decide", "rational-family", "1,1,1,3,3,3,17,17,34", "--order", "80")
    assert code == 1
    assert run(capsys, "decide", "rational-family", "1,1", "--order", "16")[0] == 2
    assert run(capsys, "decide", "rational-family", "1,x", "--order", "16")[0] == 3
    assert run(capsys, "decide", "rational-family", "1,1")[0] == 3


def test_decide_bounds(capsys):
    assert run(capsys, "decide", "rho", "16") == (0, "9\n", "")
    assert run(capsys, "decide", "wolfe", "64") == (0, "14\n", "")
    assert run(capsys, "decide", "rho-t", "24", "--t", "4") == (0, "4\n", "")
    assert run(capsys, "decide", "rho", "0")[0] == 3
    assert run(capsys, "decide", "rho", "abc")[0] == 3


# ---------------------------------------------------------------- catalog

def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    for e in catalog():
        assert e.name in out


def test_no_command_is_usage_error(capsys):
    assert run(capsys)[0] == 3


def test_console_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "odtool.cli", "decide", "rho", "32"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "10\n"
    r = subprocess.run([sys.executable, "-m", "odtool.cli", "decide", "pd133", "16"],
                       capture_output=True, text=True)
    assert r.returncode == 1
