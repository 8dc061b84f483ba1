import json

import pytest

from torilink.cli import main, run


def output(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr().out


def test_cyclic_phi(capsys):
    code, out = output(capsys, ["cyclic", "--phi", "3,3,1,1,1"])
    assert code == 0 and "b1=10" in out


def test_alexander_polynomial(capsys):
    code, out = output(capsys, ["alexander", "--presentation", "ivansic", "--polynomial"])
    assert code == 0 and out.strip() == "1"


def test_usage_errors_exit_2(capsys):
    assert run(["nonsense"]) == 2
    assert run(["cyclic", "--phi", "1,2"]) == 2
    assert run(["cover", "--unknown-flag"]) == 2
    assert run(["cover", "--polytope", "nosuch"]) == 2


def test_verify_paper_reports_the_saddle_failure(capsys):
    code, out = output(capsys, ["verify-paper"])
    assert code == 1
    assert "FAIL  sym.critical" in out
    assert out.count("PASS") == out.count("\n") - 3


@pytest.mark.parametrize("argv", [
    ["cover", "--report", "homology", "--format", "json"],
    ["cyclic", "--table", "0..1"],
    ["symmetry", "--report", "transitivity", "--format", "csv"],
])
def test_machine_output_is_stable(capsys, argv):
    first = output(capsys, argv)
    second = output(capsys, argv)
    assert first == second


def test_cover_json(capsys):
    code, out = output(capsys, ["cover", "--report", "homology", "--format", "json"])
    rows = json.loads(out)
    assert [r["betti"] for r in rows] == [1, 5, 10, 4, 0]


def test_fill_reports(capsys):
    _, out = output(capsys, ["fill", "--report", "polytope"])
    assert "pentagon_product" in out and "simplex(4)" in out
    _, out = output(capsys, ["fill", "--report", "red-cells", "--format", "csv"])
    assert len(out.strip().splitlines()) == 6


def test_betti_methods_agree(capsys):
    _, a = output(capsys, ["betti", "--polytope", "pentagon_product", "--method", "choi-park"])
    _, b = output(capsys, ["betti", "--polytope", "pentagon_product", "--method", "cubical"])
    assert a == b


def test_file_inputs(tmp_path, capsys):
    from torilink import data
    from torilink.polytope import build_builtin
    P = build_builtin("P4")
    (tmp_path / "p.json").write_text(P.to_json())
    (tmp_path / "c.json").write_text(data.p4_five_colouring(P).to_json())
    code, out = output(capsys, ["cover", "--polytope", str(tmp_path / "p.json"),
                                "--colouring", str(tmp_path / "c.json"), "--report", "cells",
                                "--format", "csv"])
    assert code == 0 and out.splitlines()[-1] == "4,32"
    pres = tmp_path / "g.txt"
    pres.write_text("x y\n[x,y]\n")
    code, out = output(capsys, ["alexander", "--presentation", str(pres), "--polynomial"])
    assert out.strip() == "1"


def test_rewrite_subcommand(capsys):
    code, out = output(capsys, ["alexander", "--rewrite", "1b1a3b3a1a1b3a3b", "1b3b1b3b"])
    assert code == 0 and "swap" in out


def test_main_returns_code(capsys):
    assert main(["symmetry", "--report", "orders"]) == 0
