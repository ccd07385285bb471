import json

import pytest

from semigrid.digits import LaurentDigits
from semigrid.errors import InvalidGrid, UnsupportedConstant
from semigrid.grids import (
    SHIPPED_GRIDS,
    const_digits,
    grid_by_name,
    grid_from_dict,
    grid_to_dict,
    load_grid,
    make_grid,
    validate_grid,
)
from semigrid.oracle import sign_at


def test_shipped_grids_validate(grid):
    rep = validate_grid(grid, fuzz=300)
    assert rep.ok, rep.failures()


def test_window_length_matches_zero_polynomial(grid):
    assert len(grid.window_bounds) == grid.h
    assert grid.p3[0] == 1


def test_p3_and_p4_vanish(grid):
    assert sign_at(grid, grid.p3_digits()) == 0
    assert sign_at(grid, grid.p4) == 0


def test_p4_is_dominated_by_its_lead(grid):
    others = sum(abs(e) for k, e in grid.p4.items() if k != grid.ell)
    assert abs(grid.e_ell) > others
    assert grid.digit_bound >= abs(grid.e_ell) // 2


def test_sqrt3_grid_parameters():
    g = grid_by_name("sqrt3half")
    assert g.p2 == LaurentDigits({0: 2, -1: -2})
    assert g.p4[0] == 8
    assert g.c_hat == 1000 * 2**5


def test_named_lookup_is_cached_and_case_insensitive():
    assert grid_by_name("SQRT2HALF") is grid_by_name("sqrt2half")
    assert grid_by_name("sqrtb2m1half:2").p4 == grid_by_name("sqrt3half").p4


def test_unknown_grid():
    with pytest.raises(InvalidGrid):
        grid_by_name("nope")
    with pytest.raises(InvalidGrid):
        make_grid("db", 1)


@pytest.mark.parametrize("name, which, value", [
    ("d10", "inv_b", (1, 10)),
    ("d2", "half", (1, 2)),
    ("sqrt2half", "half", (1, 2)),
    ("cbrt65half", "half", (1, 2)),
])
def test_rational_constants(name, which, value):
    g = grid_by_name(name)
    num, den = value
    p = const_digits(g, which)
    assert p.max_abs() <= g.digit_bound
    assert sign_at(g, p.scale(den) - LaurentDigits({0: num})) == 0


def test_missing_constant():
    with pytest.raises(UnsupportedConstant):
        const_digits(grid_by_name("cbrt7"), "half")
    with pytest.raises(UnsupportedConstant):
        const_digits(grid_by_name("d10"), "c")


def test_json_round_trip(tmp_path, grid):
    d = grid_to_dict(grid)
    assert grid_from_dict(json.loads(json.dumps(d))) == grid
    path = tmp_path / "g.json"
    path.write_text(json.dumps(d))
    assert load_grid(path) == grid


def test_broken_grid_fails_validation():
    g = grid_by_name("sqrt2half")
    d = grid_to_dict(g)
    d["window_bounds"] = [2, 2, 2]
    d["name"] = "tight"
    rep = validate_grid(grid_from_dict(d), fuzz=300)
    assert not rep.ok


def test_report_lines_are_labelled():
    rep = validate_grid(grid_by_name("d2"), fuzz=50)
    assert all(line.split()[0] in ("PASS", "FAIL") for line in rep.lines())


def test_dominance_violation_is_reported():
    d = grid_to_dict(grid_by_name("sqrt2half"))
    d["p4"] = {"1": -1, "0": 3, "-1": -2}
    d["name"] = "tampered"
    rep = validate_grid(grid_from_dict(d), fuzz=50)
    assert any(f.startswith("p4-dominance") for f in rep.failures())
