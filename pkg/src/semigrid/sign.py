"""Finite-window sign determination and the comparisons built on it.

The sign of ``sum a_k u**k`` is found by sweeping a window of ``h`` digits
from the top down, eliminating the leading digit with the monic zero
polynomial ``p3`` and shifting in the next input digit. If a window entry
leaves its cap, the unread tail can no longer change the sign and the
window value decides; otherwise the final window decides.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache

from .automata import DOT, PAD, SyncDFA, DEFAULT_STATE_CAP
from .digits import LaurentDigits
from .errors import InputBoundExceeded
from .oracle import sign_at, u_bracket

__all__ = [
    "Sign",
    "Ordering",
    "SignEngine",
    "sign_engine",
    "window_sign",
    "sign_of",
    "compare",
    "equal",
    "compile_sign_dfa",
]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __str__(self) -> str:
        return self.name.capitalize()


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self) -> str:
        return self.name.capitalize()


@lru_cache(maxsize=1 << 18)
def window_sign(g, window: tuple[int, ...]) -> Sign:
    """Exact sign of ``sum_j window[j] * u**-j``."""
    return Sign(sign_at(g, LaurentDigits({-j: a for j, a in enumerate(window)})))


class SignEngine:
    """The window machine for one grid and one operand bound.

    Operands wider than the grid's ``input_bound`` are handled by scaling the
    window caps by the same integer factor; every inequality behind the cap
    choice is homogeneous in (caps, operand bound).
    """

    def __init__(self, g, operand_bound: int | None = None):
        self.grid = g
        self.scale = 1 if operand_bound is None else max(1, math.ceil(operand_bound / g.input_bound))
        self.operand_bound = g.input_bound * self.scale
        self.caps = tuple(c * self.scale for c in g.window_bounds)
        self.h = g.h
        self.d = g.p3
        self.zero_window = (0,) * self.h
        self.entry_cap = (1 + max(abs(x) for x in g.p3)) * max(self.caps)
        lo, hi = u_bracket(tuple(g.minpoly), *g.u_interval, 1)
        self._u = (lo, hi)
        # largest possible |unread tail| relative to the window's top position
        self._tail = self.operand_bound * (1 / lo) ** self.h / (1 - 1 / lo)

    def step(self, state, digit: int):
        """Eliminate the leading entry, shift ``digit`` in, detect overshoot."""
        if isinstance(state, Sign):
            return state
        lead = state[0]
        d = self.d
        if lead:
            new = tuple(state[j + 1] - lead * d[j + 1] for j in range(self.h - 1)) + (digit,)
        else:
            new = state[1:] + (digit,)
        for x, c in zip(new, self.caps):
            if x > c or -x > c:
                return window_sign(self.grid, new)
        return new

    def settled(self, state) -> Sign | None:
        """Sign that no continuation can change, if the window already
        dominates the largest possible tail; otherwise None."""
        if isinstance(state, Sign):
            return state
        lo, hi = self._u
        vlo = vhi = 0
        for j, a in enumerate(state):
            if a:
                t1, t2 = a / hi**j, a / lo**j
                vlo += min(t1, t2)
                vhi += max(t1, t2)
        if vlo > self._tail:
            return Sign.POSITIVE
        if vhi < -self._tail:
            return Sign.NEGATIVE
        return None

    def classify(self, state) -> Sign:
        if isinstance(state, Sign):
            return state
        if not any(state):
            return Sign.ZERO
        return window_sign(self.grid, state)


@lru_cache(maxsize=256)
def sign_engine(g, operand_bound: int | None = None) -> SignEngine:
    return SignEngine(g, operand_bound)


def sign_of(g, p: LaurentDigits, *, engine: SignEngine | None = None, trace: list | None = None) -> Sign:
    """Exact sign of ``p(u)`` for ``|p_k| <= input_bound``.

    ``trace`` (if given) receives ``(leading_before, window_after)`` for each
    step, ending with the decided Sign on overshoot.
    """
    eng = engine or sign_engine(g)
    if p.max_abs() > eng.operand_bound:
        raise InputBoundExceeded(
            f"digit {p.max_abs()} exceeds operand bound {eng.operand_bound} of grid {g.name}; normalize first"
        )
    if not p:
        return Sign.ZERO
    h = eng.h
    n, m = p.hi, -p.lo
    state = eng.zero_window
    # the window holds exponents k .. k-h+1; start at k = n + h (all zero)
    k = n + h
    while k > -m:
        k -= 1
        lead = state[0]
        state = eng.step(state, p[k - h + 1])
        if trace is not None:
            trace.append((lead, state))
        if isinstance(state, Sign):
            return state
    return eng.classify(state)


def compare(g, p: LaurentDigits, q: LaurentDigits) -> Ordering:
    return Ordering(int(sign_of(g, p - q)))


def equal(g, p: LaurentDigits, q: LaurentDigits) -> bool:
    return sign_of(g, p - q) == Sign.ZERO


def compile_sign_dfa(g, *, operand_bound: int | None = None, state_cap: int = DEFAULT_STATE_CAP) -> SyncDFA:
    """Single-track automaton reading digits most significant first.

    The label of the state reached after a word is the sign of the word's
    value; overshoot states are absorbing. The DOT letter is ignored, and
    PAD reads as 0.
    """
    eng = sign_engine(g, operand_bound)
    bound = eng.operand_bound
    alphabet = (DOT, (PAD,)) + tuple((a,) for a in range(-bound, bound + 1))

    def step(state, letter):
        if letter == DOT:
            return state
        x = letter[0]
        return eng.step(state, 0 if x == PAD else x)

    return SyncDFA(alphabet, eng.zero_window, step, eng.classify, tracks=1,
                   name=f"sign[{g.name}]", accept_label=Sign.ZERO, state_cap=state_cap)
