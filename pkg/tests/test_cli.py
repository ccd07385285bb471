import io
import subprocess
import sys

import pytest

from semigrid.cli import main
from semigrid.digits import parse_digits


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue().strip()


def test_sign():
    assert run("sign", "--grid", "sqrt2half", "{0:5}") == (0, "Positive")


def test_cmp():
    assert run("cmp", "--grid", "sqrt2half", "{-1:2,-2:-1}", "{0:2,-1:-2}") == (0, "Less")


def test_rotate():
    code, text = run("geo", "rotate", "--grid", "sqrt3half", "--angle", "30", "(1,0)")
    assert (code, text) == (0, "({0:1,-1:-1}, {-1:4,-2:-2})")


def test_outputs_reparse():
    for argv in (("normalize", "--grid", "d10", "{0:123}"),
                 ("add", "--grid", "cbrt7", "{0:12}", "{0:12,-2:5}"),
                 ("mul", "--grid", "sqrt3half", "--by", "half", "{0:1}")):
        code, text = run(*argv)
        assert code == 0
        parse_digits(text)


def test_pretty_output():
    assert run("normalize", "--grid", "d10", "--pretty", "{0:15,-1:3}") == (0, "[1][5].[3]")


def test_automaton_run_and_dot(tmp_path):
    assert run("automaton", "--grid", "d10", "--relation", "add", "{0:9}", "{0:3}", "{1:1,0:2}") == (0, "Accept")
    path = tmp_path / "lt.dot"
    code, text = run("automaton", "--grid", "d2", "--relation", "lt", "--dot", str(path))
    assert code == 0 and path.read_text().startswith("// lt[d2]:")


def test_geo_contains_and_svg(tmp_path):
    svg = tmp_path / "t.svg"
    argv = ("geo", "contains", "--grid", "d2", "(0,0)", "(1,0)", "(0,1)", "({-1:1},{-1:1})")
    assert run(*argv) == (0, "inside")
    assert run(*argv, "--automaton", "--svg", str(svg)) == (0, "inside")
    assert svg.read_text().startswith("<svg")


def test_equilateral_and_rect_area():
    assert run("geo", "equilateral", "--grid", "sqrt3half", "(0,0)", "(1,0)") == (0, "({-1:4,-2:-2}, {0:1,-1:-1})")
    assert run("geo", "rect-area", "--sides", "3/2", "2", "--area", "3", "0") == (0, "yes")


def test_omega_and_oracle():
    assert run("omega", "sign", "--b", "2", "{0:102}") == (0, "Decided(Positive)")
    assert run("omega", "cmp", "{0:1}", "{-1:17}") == (0, "Decided(Positive)")
    code, text = run("oracle", "value", "--grid", "sqrt2half", "--prec", "1e-9", "{0:2,-1:-2}")
    assert code == 0 and text.startswith("1.41421356")


def test_grids_list():
    code, text = run("grids", "list")
    assert code == 0 and text.splitlines()[0].startswith("d2\t")


@pytest.mark.parametrize("argv, code", [
    (("sign", "--grid", "nope", "{0:1}"), 1),
    (("sign", "--grid", "d2", "{0:"), 1),
    (("geo", "rotate", "--grid", "d2", "--angle", "30", "(1,0)"), 1),
    (("sign", "{0:1}"), 2),
    (("frobnicate",), 2),
    (("omega", "sign", "{0:1}", "{0:2}"), 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code
    assert capsys.readouterr().err.strip()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "semigrid", "sign", "--grid", "d10", "{0:-3}"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Negative"
