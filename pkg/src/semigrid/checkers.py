"""Relation checkers compiled to synchronous automata.

Every grid checker here is a *linear* checker: track ``t`` is multiplied by a
fixed Laurent polynomial ``gamma_t`` in ``u``, the products are summed
position by position, and the resulting digit stream is fed to the sign
window machine. Products need digits from later (lower) positions, so the
checker keeps a short buffer of recent letters and emits each combined digit
once it is complete; the remaining digits are flushed when classifying.
"""

from __future__ import annotations

from typing import Sequence

from .automata import ACCEPT, DOT, PAD, REJECT, DEFAULT_STATE_CAP, SyncDFA, track_alphabet
from .digits import LaurentDigits
from .errors import ZeroDenominator
from .oracle import sign_at
from .sign import Sign, sign_engine

__all__ = [
    "RELATIONS",
    "linear_checker",
    "compile_addition_checker",
    "compile_comparison_checker",
    "compile_mulconst_checker",
    "constant_track_checker",
    "compile_school_adder",
    "tableau_letters",
    "school_trace",
]

# which signs of the combined value make the checker accept
RELATIONS = {
    "eq": {Sign.ZERO},
    "lt": {Sign.NEGATIVE},
    "le": {Sign.NEGATIVE, Sign.ZERO},
    "gt": {Sign.POSITIVE},
    "ge": {Sign.POSITIVE, Sign.ZERO},
}


def linear_checker(
    g,
    coeffs: Sequence[LaurentDigits],
    relation: str = "eq",
    *,
    digit_bound: int | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
    name: str = "",
) -> SyncDFA:
    """Accepts conv(x_1..x_r) iff ``sum_t coeffs[t](u) * x_t(u)`` relates to 0
    as ``relation`` says. Tracks carry digits in ``[-D, D]`` (``D`` defaults
    to the grid's digit bound)."""
    accept = RELATIONS[relation]
    r = len(coeffs)
    D = g.digit_bound if digit_bound is None else digit_bound
    nonzero = [c for c in coeffs if c]
    i_hi = max((c.hi for c in nonzero), default=0)
    i_lo = min((c.lo for c in nonzero), default=0)
    span = i_hi - i_lo + 1
    # terms[s] lists (track, coefficient) contributing buffer slot s (0 = newest)
    terms: list[list[tuple[int, int]]] = [[] for _ in range(span)]
    for t, c in enumerate(coeffs):
        for i, a in c.items():
            terms[i_hi - i].append((t, a))
    bound = sum(c.norm1() for c in coeffs) * D
    eng = sign_engine(g, max(bound, 1))
    zero_buf = ((0,) * r,) * span

    def emit(buf):
        total = 0
        for s, row in enumerate(terms):
            col = buf[s]
            for t, a in row:
                total += a * col[t]
        return total

    def step(state, letter):
        if letter == DOT:
            return state
        buf, sig = state
        col = tuple(0 if x == PAD else x for x in letter)
        buf = (col,) + buf[:-1]
        return buf, eng.step(sig, emit(buf))

    def dead(state):
        settled = eng.settled(state[1])
        return settled is not None and settled not in accept

    def classify(state):
        buf, sig = state
        zero = (0,) * r
        for _ in range(span - 1):
            if isinstance(sig, Sign):
                break
            buf = (zero,) + buf[:-1]
            sig = eng.step(sig, emit(buf))
        return ACCEPT if eng.classify(sig) in accept else REJECT

    return SyncDFA(
        track_alphabet(range(-D, D + 1), r),
        (zero_buf, eng.zero_window),
        step,
        classify,
        tracks=r,
        name=name or f"linear[{g.name}]",
        state_cap=state_cap,
        dead=dead,
    )


_ONE = LaurentDigits({0: 1})


def compile_addition_checker(g, **kw) -> SyncDFA:
    """3 tracks; accepts conv(x, y, z) iff x + y = z."""
    return linear_checker(g, [_ONE, _ONE, -_ONE], "eq", name=f"add[{g.name}]", **kw)


def compile_comparison_checker(g, relation: str = "lt", **kw) -> SyncDFA:
    """2 tracks; accepts conv(x, y) iff ``x <relation> y``."""
    return linear_checker(g, [_ONE, -_ONE], relation, name=f"{relation}[{g.name}]", **kw)


def compile_mulconst_checker(g, num: LaurentDigits, den: LaurentDigits = _ONE, **kw) -> SyncDFA:
    """2 tracks; accepts conv(x, y) iff ``x * num(u) = y * den(u)``."""
    if sign_at(g, den) == 0:
        raise ZeroDenominator(f"denominator {den} vanishes at u")
    return linear_checker(g, [num, -den], "eq", name=f"mul[{g.name}]", **kw)


def constant_track_checker(K: LaurentDigits, track: int, tracks: int, symbols: Sequence[int]) -> SyncDFA:
    """Accepts exactly the letter streams whose track ``track`` spells ``K``
    (PAD outside K's span) with the DOT placed right after exponent 0.

    Before the DOT or the first digit of ``K`` the absolute position is
    unknown; the first digit must then be K's top digit.
    """
    hi, lo = (K.hi, K.lo) if K else (None, None)
    floor = min(lo if K else 0, 0) - 2

    def expected(e):
        return K[e] if K and lo <= e <= hi else PAD

    def step(state, letter):
        if state == "dead":
            return state
        if state == "start":
            if letter == DOT:
                return ("at", -1, True) if (not K or hi < 0) else "dead"
            s = letter[track]
            if s == PAD:
                return "start"
            if K and hi >= 0 and s == K[hi]:
                return ("at", hi - 1, False)
            return "dead"
        _, e, dot = state
        if letter == DOT:
            return ("at", e, True) if (e == -1 and not dot) else "dead"
        if not dot and e < 0:
            return "dead"
        if letter[track] != expected(e):
            return "dead"
        return ("at", max(e - 1, floor), dot)

    def classify(state):
        if state == "start" or state == "dead":
            return REJECT
        _, e, dot = state
        return ACCEPT if dot and (not K or e < lo) else REJECT

    return SyncDFA(track_alphabet(symbols, tracks), "start", step, classify, tracks=tracks,
                   name=f"const{track}[{K}]", dead=lambda s: s == "dead")


# --- base-b school addition -------------------------------------------------

def compile_school_adder(b: int) -> SyncDFA:
    """3-track checker for x + y = z over unsigned base-``b`` digits, read
    least significant position first. States: ``n`` (correct so far, no
    carry), ``c`` (correct so far, carry pending), ``i`` (incorrect). PAD
    reads as 0."""
    if b < 2:
        raise ValueError("base must be at least 2")

    def step(state, letter):
        if letter == DOT or state == "i":
            return state
        x, y, z = (0 if s == PAD else s for s in letter)
        total = x + y + (1 if state == "c" else 0)
        if total == z:
            return "n"
        if total == z + b:
            return "c"
        return "i"

    return SyncDFA(
        track_alphabet(range(b), 3),
        "n",
        step,
        lambda s: ACCEPT if s == "n" else REJECT,
        tracks=3,
        name=f"school[{b}]",
        state_names=lambda s: s,
    )


def tableau_letters(rows: Sequence[str]) -> list:
    """Letters of a written addition tableau, least significant column first.

    Rows are strings of digits and ``#`` with an optional ``.``; spaces are
    ignored and rows are aligned at the dot.
    """
    split = []
    for row in rows:
        s = row.replace(" ", "")
        left, _, right = s.partition(".")
        split.append((left, right))
    wl = max(len(l) for l, _ in split)
    wr = max(len(r) for _, r in split)
    cols = []
    padded = [(l.rjust(wl, PAD) + r.ljust(wr, PAD)) for l, r in split]
    for i in range(wl + wr):
        cols.append(tuple(PAD if row[i] == PAD else int(row[i]) for row in padded))
    return list(reversed(cols))


def school_trace(rows: Sequence[str], b: int = 10) -> tuple[list[str], bool]:
    """State sequence as written under a tableau (final state leftmost,
    initial state rightmost) and the verdict."""
    A = compile_school_adder(b)
    states = A.trace(tableau_letters(rows))
    return list(reversed(states)), A.label(states[-1]) == ACCEPT
