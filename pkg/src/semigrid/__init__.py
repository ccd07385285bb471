"""Exact arithmetic, sign determination and automata over algebraic digit grids."""

from .digits import LaurentDigits, format_digits, parse_digits
from .errors import GridError
from .grids import GridSpec, SHIPPED_GRIDS, const_digits, grid_by_name, make_grid, validate_grid
from .normalize import is_normal, normalize
from .sign import Ordering, Sign, compare, compile_sign_dfa, equal, sign_of
from .oracle import approx_value, sign_at
from .mulconst import mul_by_grid_constant, mul_by_int, mul_by_poly
from .omega import OmegaSpec, OmegaStream, omega_sign, omega_spec, pell_pair

__all__ = [
    "LaurentDigits",
    "format_digits",
    "parse_digits",
    "GridError",
    "GridSpec",
    "SHIPPED_GRIDS",
    "const_digits",
    "grid_by_name",
    "make_grid",
    "validate_grid",
    "is_normal",
    "normalize",
    "Ordering",
    "Sign",
    "compare",
    "compile_sign_dfa",
    "equal",
    "sign_of",
    "approx_value",
    "sign_at",
    "mul_by_grid_constant",
    "mul_by_int",
    "mul_by_poly",
    "OmegaSpec",
    "OmegaStream",
    "omega_sign",
    "omega_spec",
    "pell_pair",
]
