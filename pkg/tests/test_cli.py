import io
import json

import pytest

from msrd import codefile
from msrd.cli import compare_grid, main, parse_pieces, parse_shapes
from msrd.codes import FqmLinearCode, same_code, to_fq_linear
from msrd.gf import FieldTower
from msrd.msrd_gen import build_lrs
from msrd.sumrank import LengthPartition


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


# --- file format -----------------------------------------------------------------


@pytest.mark.parametrize("idx", range(len(compare_grid())))
def test_roundtrip_grid(idx):
    name, _, thunk = compare_grid()[idx]
    code = thunk()
    cf = codefile.CodeFile.from_code(code, {"construction": name})
    text = codefile.serialize(cf)
    back = codefile.parse(text)
    assert back == cf
    assert codefile.serialize(back) == text
    assert same_code(back.fq_code(), code)


def test_roundtrip_genmat_and_gamma():
    T = FieldTower.from_q(3, 2, gamma=(4, 5))
    g = build_lrs(FieldTower.from_q(3, 2), 2, 2)
    code = FqmLinearCode(T, g.partition, g.genmat)
    cf = codefile.CodeFile.from_code(code)
    text = codefile.serialize(cf)
    assert "gamma 4,5" in text and "genmat 2 4" in text
    back = codefile.parse(text)
    assert back == cf
    assert back.tower.gamma == (4, 5)
    assert same_code(back.fq_code(), to_fq_linear(code))


def test_roundtrip_nonprime_subfield():
    code = build_lrs(FieldTower.from_q(4, 2), 2, 2)
    cf = codefile.CodeFile.from_code(code)
    assert codefile.parse(codefile.serialize(cf)) == cf


@pytest.mark.parametrize(
    "mutate",
    [
        lambda s: s.replace("msrd-code 1", "msrd-code 2"),
        lambda s: s.replace("genmat 2 4", "genmat 3 4"),
        lambda s: s.replace("1 6 4 7", "1 6 4 9"),
        lambda s: s.replace("partition 2,2", "partition 2,1"),
        lambda s: s.replace("profile (2,2) (2,2)", "profile (2,2) junk"),
        lambda s: s + "extra\n",
        lambda s: s.replace("field p=3", "field q=3"),
    ],
)
def test_corrupt_files_rejected(mutate):
    text = codefile.serialize(codefile.CodeFile.from_code(build_lrs(FieldTower.from_q(3, 2), 2, 2)))
    with pytest.raises(codefile.ParseError):
        codefile.parse(mutate(text))


def test_basis_body_entry_range():
    name, _, thunk = compare_grid()[5]
    text = codefile.serialize(codefile.CodeFile.from_code(thunk()))
    bad = text.replace("\n1 0\n", "\n3 0\n", 1)
    assert bad != text
    with pytest.raises(codefile.ParseError):
        codefile.parse(bad)


# --- argument parsing ---------------------------------------------------------------


def test_parse_helpers():
    assert parse_shapes("2x2,2x1") == [(2, 2), (2, 1)]
    assert parse_shapes("2x1;2x1") == [(2, 1), (2, 1)]
    assert parse_pieces("1-2x1;1x2;2x2") == [((1, 2), (1,)), ((1,), (2,)), ((2,), (2,))]
    assert parse_pieces("1,3x2-3") == [((1, 3), (2, 3))]


# --- commands -----------------------------------------------------------------------


def test_bound():
    assert run("bound", "--profile", "2x2,2x2", "--d", 3) == (0, "bound=4 j=2 delta=0\n")
    assert run("bound", "--profile", "2x2,2x2", "--d", 1)[1].startswith("bound=8 ")
    assert run("bound", "--profile", "2x2,2x2", "--d", 0)[0] == 2


def test_build_and_check(tmp_path):
    a = tmp_path / "a.src"
    code, out = run("build", "lrs", "--q", 3, "--m", 2, "--r", 2, "--k", 2, "-o", a)
    assert code == 0 and out == "dim=4 blocks=(2,2) (2,2)\n"
    assert run("check", "msrd", a) == (0, "d=3 dim=4 bound=4 msrd=true\n")
    assert run("check", "weights", a) == (0, "0:1 3:64 4:16\n")
    assert run("check", "dual-msrd", a) == (0, "d=3 dim=4 bound=4 msrd=true\n")
    assert run("check", "msrd", a, "--guard", 10)[0] == 3
    j = tmp_path / "a.json"
    assert run("export", a, "-o", j)[0] == 0
    data = json.loads(j.read_text())
    assert data["genmat"] == [[1, 3, 1, 3], [1, 6, 4, 7]]


def test_build_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"c{i}.src"
        run("build", "cons3-t3", "--q", 2, "--m", 3, "--r", 3, "--ext", "3x1,2x1,1x1,1x1", "--breakpoints", "1,3,4", "-o", p)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert run("compare")[1] == run("compare")[1]


def test_one_weight_check(tmp_path):
    p = tmp_path / "ow.src"
    assert run("build", "cons3-t2", "--q", 2, "--m", 2, "--r", 2, "--k", 0, "--ext", "2x1,2x1", "--breakpoints", "1,2", "-o", p)[0] == 0
    assert run("check", "weights", p) == (0, "0:1 3:15\n")
    assert run("check", "one-weight", p) == (0, "one_weight=true criterion=true agree=true\n")


def test_check_failures(tmp_path):
    p = tmp_path / "s.src"
    run("build", "cons3-t2", "--q", 3, "--m", 2, "--r", 2, "--k", 1, "--ext", "2x1,2x1", "--breakpoints", "1,2", "-o", p)
    assert run("check", "one-weight", p)[0] == 1
    assert run("check", "dual-msrd", p)[0] == 2
    bad = tmp_path / "bad.src"
    bad.write_text("not a code\n")
    assert run("check", "msrd", bad)[0] == 2
    assert run("check", "msrd", tmp_path / "missing.src")[0] == 2


def test_build_errors(tmp_path, capsys):
    assert run("build", "cons3-t3", "--q", 3, "--m", 3, "--r", 3, "--ext", "3x1", "--breakpoints", "1")[0] == 2
    assert "q must be even" in capsys.readouterr().err
    assert run("build", "cons4", "--q", 3, "--m", 2, "--r", 2, "--k", 2, "--pieces", "1-2x1-2;1x1")[0] == 2
    assert "necessary condition violated" in capsys.readouterr().err
    assert run("build", "cons3-t2", "--q", 3, "--m", 2, "--r", 2, "--k", 1, "--ext", "2x2,1x1", "--breakpoints", "1,2")[0] == 2
    assert "group size" in capsys.readouterr().err


def test_build_stack_glue(tmp_path):
    a, s = tmp_path / "a.src", tmp_path / "s.src"
    run("build", "lrs", "--q", 3, "--m", 2, "--r", 2, "--k", 2, "-o", a)
    assert run("build", "stack", "--inputs", a, a, "-o", s)[1] == "dim=8 blocks=(4,2) (4,2)\n"
    assert run("check", "msrd", s) == (0, "d=3 dim=8 bound=8 msrd=true\n")
    g, gg = tmp_path / "g.src", tmp_path / "gg.src"
    cf = codefile.CodeFile.from_code(FqmLinearCode(FieldTower.from_q(3, 2), LengthPartition((2,), 2), [[1, 3]]))
    codefile.write(g, cf)
    assert run("build", "glue", "--c1", g, "--c2", g, "-o", gg)[0] == 0
    assert run("check", "msrd", gg) == (0, "d=4 dim=2 bound=2 msrd=true\n")


def test_build_to_stdout(capsys):
    code, out = run("build", "cons4", "--q", 3, "--m", 2, "--r", 2, "--k", 2, "--pieces", "1-2x1;1x2;2x2")
    assert code == 0
    assert out.startswith("msrd-code 1\n")
    assert codefile.parse(out).fq_code().dim == 4
    assert "dim=4 blocks=(2,2) (2,1) (1,1) (1,1)" in capsys.readouterr().err


def test_compare(tmp_path):
    csv_path = tmp_path / "t.csv"
    code, out = run("compare", "--csv", csv_path)
    assert code == 0
    lines = out.strip().splitlines()
    rows = [l.split() for l in lines[1:]]
    assert len(rows) >= 8
    assert all("true" in r and "ok" in r for r in rows)
    assert csv_path.read_text().count("\n") == len(lines)
    names = {r[0] for r in rows}
    assert {"lrs", "stack", "glue", "cons3-t2", "cons3-t3", "cons4"} <= names


def test_compare_filters_and_budget():
    code, out = run("compare", "--q", 2)
    assert code == 0
    assert all(line.split()[1] == "2" for line in out.strip().splitlines()[1:])
    code, out = run("compare", "--budget", 0)
    assert code == 0
    assert all(line.rstrip().endswith("skipped") for line in out.strip().splitlines()[1:])
    assert "seconds" in run("compare", "--timing")[1]
