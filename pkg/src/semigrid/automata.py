"""Synchronous multi-track automata.

Automata are built lazily: a :class:`SyncDFA` is a transition *function*
plus a memo table, so only states reachable from the words actually read
are ever materialized. Explicit tables are produced on demand by
:meth:`SyncDFA.table`, which enforces a state cap.

Words are letter sequences read most significant position first. A letter
is a tuple with one symbol per track (a digit or :data:`PAD`), or the radix
marker :data:`DOT`, which sits between exponents 0 and -1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Sequence

from .digits import LaurentDigits
from .errors import AlphabetMismatch, StateExplosion

__all__ = [
    "PAD",
    "DOT",
    "ACCEPT",
    "REJECT",
    "DEFAULT_STATE_CAP",
    "ConvWord",
    "convolve",
    "track_alphabet",
    "SyncDFA",
    "NFA",
    "dfa_run",
    "dfa_product",
    "project_track",
    "determinize",
    "dfa_minimize",
    "find_counterexample",
    "dfa_equivalent",
    "export_dot",
]

PAD = "#"
DOT = "."
ACCEPT = "Accept"
REJECT = "Reject"
DEFAULT_STATE_CAP = 10**6

# absorbing rejecting state shared by all conjunctive products
_DEAD = ("dead",)


def _sym_key(s):
    return (0, 0) if s == PAD else (1, s)


def _letter_key(letter):
    if letter == DOT:
        return (0,)
    return (1, tuple(_sym_key(s) for s in letter))


def track_alphabet(symbols: Iterable, tracks: int) -> tuple:
    """All letters over ``symbols`` (plus PAD) for ``tracks`` tracks, plus DOT."""
    from itertools import product

    syms = sorted(set(symbols) | {PAD}, key=_sym_key)
    letters = [tuple(t) for t in product(syms, repeat=tracks)]
    return (DOT,) + tuple(letters)


# --- convolution ----------------------------------------------------------

@dataclass(frozen=True)
class ConvWord:
    """Convolution of digit vectors: symbols for exponents ``top`` down to
    ``top - len(symbols) + 1``. The domain always contains exponent 0."""

    top: int
    symbols: tuple[tuple, ...]

    @property
    def bottom(self) -> int:
        return self.top - len(self.symbols) + 1

    def at(self, k: int) -> tuple:
        return self.symbols[self.top - k]

    def letters(self) -> list:
        """Letter stream with DOT right after exponent 0."""
        out = []
        for i, sym in enumerate(self.symbols):
            out.append(sym)
            if self.top - i == 0:
                out.append(DOT)
        return out

    def __str__(self) -> str:
        parts = []
        for i, sym in enumerate(self.symbols):
            parts.append("(" + ",".join(str(s) for s in sym) + ")")
            if self.top - i == 0 and i != len(self.symbols) - 1:
                parts.append(".")
        return " ".join(parts).replace(" . ", " . ")


def convolve(words: Sequence[LaurentDigits]) -> ConvWord:
    """Align digit vectors by exponent, padding each track outside its own
    support span with PAD."""
    his = [w.hi for w in words if w]
    los = [w.lo for w in words if w]
    top = max(his + [0])
    bottom = min(los + [0])
    symbols = []
    for k in range(top, bottom - 1, -1):
        symbols.append(tuple(w[k] if w and w.lo <= k <= w.hi else PAD for w in words))
    return ConvWord(top, tuple(symbols))


def unconvolve(word: ConvWord, tracks: int) -> list[LaurentDigits]:
    out = []
    for t in range(tracks):
        out.append(LaurentDigits(
            (word.top - i, sym[t]) for i, sym in enumerate(word.symbols) if sym[t] != PAD
        ))
    return out


def is_convolution(letters: Sequence, tracks: int) -> bool:
    """PAD only on the flanks of each track and exactly one DOT."""
    if sum(1 for x in letters if x == DOT) != 1:
        return False
    for t in range(tracks):
        col = [x[t] for x in letters if x != DOT]
        inside = [i for i, s in enumerate(col) if s != PAD]
        if inside and any(col[i] == PAD for i in range(inside[0], inside[-1] + 1)):
            return False
    return True


# --- deterministic automata -----------------------------------------------

class SyncDFA:
    """Lazy deterministic automaton.

    ``step(state, letter)`` gives the successor, ``classify(state)`` the label
    of a state when the input ends there. Both are memoized.
    """

    def __init__(
        self,
        alphabet: Sequence,
        initial: Hashable,
        step: Callable[[Any, Any], Any],
        classify: Callable[[Any], Any],
        *,
        tracks: int = 1,
        name: str = "",
        accept_label: Any = ACCEPT,
        state_cap: int = DEFAULT_STATE_CAP,
        state_names: Callable[[Any], str] | None = None,
        dead: Callable[[Any], bool] | None = None,
    ):
        self.alphabet = tuple(alphabet)
        self._alphabet_set = frozenset(self.alphabet)
        self.initial = initial
        self._step = step
        self._classify = classify
        self.tracks = tracks
        self.name = name
        self.accept_label = accept_label
        self.state_cap = state_cap
        self.state_names = state_names
        self._dead = dead
        self._delta: dict = {}
        self._labels: dict = {}

    @classmethod
    def from_table(cls, alphabet, initial, transitions: dict, labels: dict, **kw) -> "SyncDFA":
        dfa = cls(alphabet, initial, lambda s, a: transitions[s][a], lambda s: labels[s], **kw)
        return dfa

    def delta(self, state, letter):
        row = self._delta.get(state)
        if row is None:
            if len(self._delta) >= self.state_cap:
                raise StateExplosion(len(self._delta), self.state_cap)
            row = self._delta[state] = {}
        nxt = row.get(letter)
        if nxt is None:
            if letter not in self._alphabet_set:
                raise AlphabetMismatch(f"letter {letter!r} not in alphabet of {self.name or 'automaton'}")
            nxt = row[letter] = self._step(state, letter)
        return nxt

    def is_dead(self, state) -> bool:
        """True only if no continuation can reach the accept label."""
        return self._dead is not None and self._dead(state)

    def label(self, state):
        lab = self._labels.get(state)
        if lab is None:
            lab = self._labels[state] = self._classify(state)
        return lab

    def final_state(self, word: Iterable, start=None):
        state = self.initial if start is None else start
        for letter in word:
            state = self.delta(state, letter)
        return state

    def run(self, word: Iterable):
        return self.label(self.final_state(word))

    def accepts(self, word: Iterable) -> bool:
        return self.run(word) == self.accept_label

    def trace(self, word: Iterable) -> list:
        state = self.initial
        out = [state]
        for letter in word:
            state = self.delta(state, letter)
            out.append(state)
        return out

    def reachable(self, cap: int | None = None) -> list:
        """States reachable from the initial state in BFS order."""
        cap = self.state_cap if cap is None else cap
        order = [self.initial]
        seen = {self.initial}
        queue = deque(order)
        letters = sorted(self.alphabet, key=_letter_key)
        while queue:
            s = queue.popleft()
            for a in letters:
                t = self.delta(s, a)
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    if len(order) > cap:
                        raise StateExplosion(len(order), cap)
                    queue.append(t)
        return order

    def table(self, cap: int | None = None):
        """(states, transitions, labels) over all reachable states."""
        states = self.reachable(cap)
        trans = {s: {a: self.delta(s, a) for a in self.alphabet} for s in states}
        labels = {s: self.label(s) for s in states}
        return states, trans, labels

    def explored(self) -> int:
        return len(self._delta)


def dfa_run(A: SyncDFA, word: Iterable):
    return A.run(word)


def _check_alphabets(A: SyncDFA, B: SyncDFA) -> None:
    if A._alphabet_set != B._alphabet_set:
        raise AlphabetMismatch("automata read different alphabets")


def dfa_product(A: SyncDFA, B: SyncDFA, combiner: Callable[[Any, Any], Any] | str = "and") -> SyncDFA:
    """Synchronous product; ``combiner`` maps the two labels to one
    (``"and"``/``"or"`` for accept-style automata)."""
    _check_alphabets(A, B)
    dead = None
    if combiner == "and":
        comb = lambda x, y: ACCEPT if x == A.accept_label and y == B.accept_label else REJECT
        dead = lambda s: s is _DEAD

        def step(s, a):
            if s is _DEAD:
                return s
            s0 = A.delta(s[0], a)
            if A.is_dead(s0):
                return _DEAD
            s1 = B.delta(s[1], a)
            return _DEAD if B.is_dead(s1) else (s0, s1)

        def classify(s):
            return REJECT if s is _DEAD else comb(A.label(s[0]), B.label(s[1]))
    else:
        if combiner == "or":
            comb = lambda x, y: ACCEPT if x == A.accept_label or y == B.accept_label else REJECT
            dead = lambda s: A.is_dead(s[0]) and B.is_dead(s[1])
        else:
            comb = combiner
        step = lambda s, a: (A.delta(s[0], a), B.delta(s[1], a))
        classify = lambda s: comb(A.label(s[0]), B.label(s[1]))
    return SyncDFA(
        A.alphabet,
        (A.initial, B.initial),
        step,
        classify,
        tracks=A.tracks,
        name=f"({A.name} x {B.name})",
        state_cap=max(A.state_cap, B.state_cap),
        dead=dead,
    )


# --- nondeterministic automata --------------------------------------------

class NFA:
    """Lazy NFA: ``step(state, letter)`` returns an iterable of successors."""

    def __init__(self, alphabet, initial: Iterable, step, classify, *, tracks=1, accept_label=ACCEPT, name=""):
        self.alphabet = tuple(alphabet)
        self.initial = frozenset(initial)
        self._step = step
        self._classify = classify
        self.tracks = tracks
        self.accept_label = accept_label
        self.name = name
        self._delta: dict = {}

    def successors(self, state, letter) -> frozenset:
        key = (state, letter)
        out = self._delta.get(key)
        if out is None:
            out = self._delta[key] = frozenset(self._step(state, letter))
        return out

    def step_set(self, states: frozenset, letter) -> frozenset:
        out = set()
        for s in states:
            out |= self.successors(s, letter)
        return frozenset(out)

    def accepting(self, state) -> bool:
        return self._classify(state) == self.accept_label

    def accepts(self, word) -> bool:
        cur = self.initial
        for a in word:
            cur = self.step_set(cur, a)
        return any(self.accepting(s) for s in cur)


def project_track(A: SyncDFA, i: int) -> NFA:
    """Existentially quantify track ``i`` away."""
    if not 0 <= i < A.tracks:
        raise AlphabetMismatch(f"track {i} out of range for {A.tracks}-track automaton")
    hidden = sorted({a[i] for a in A.alphabet if a != DOT}, key=_sym_key)
    alphabet = []
    seen = set()
    for a in sorted(A.alphabet, key=_letter_key):
        b = a if a == DOT else a[:i] + a[i + 1:]
        if b not in seen:
            seen.add(b)
            alphabet.append(b)

    def step(state, letter):
        if letter == DOT:
            t = A.delta(state, DOT)
            return () if A.is_dead(t) else (t,)
        out = []
        for x in hidden:
            full = letter[:i] + (x,) + letter[i:]
            if full in A._alphabet_set:
                t = A.delta(state, full)
                if not A.is_dead(t):
                    out.append(t)
        return out

    return NFA(alphabet, (A.initial,), step, A.label, tracks=A.tracks - 1,
               accept_label=A.accept_label, name=f"proj{i}({A.name})")


def _pad_closure(N: NFA, states: frozenset, pad) -> frozenset:
    seen = set(states)
    queue = deque(states)
    while queue:
        s = queue.popleft()
        for t in N.successors(s, pad):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)


def determinize(N: NFA, *, pad_prefix: bool = False, pad_suffix: bool = False,
                state_cap: int = DEFAULT_STATE_CAP) -> SyncDFA:
    """Subset construction.

    ``pad_prefix`` lets the automaton behave as if any number of all-PAD
    letters preceded the input; ``pad_suffix`` likewise for letters after
    it. Both are needed when a projected track may extend beyond the
    remaining tracks' span.
    """
    pad = tuple([PAD] * N.tracks)
    init = _pad_closure(N, N.initial, pad) if pad_prefix else N.initial

    def classify(S):
        if pad_suffix:
            S = _pad_closure(N, S, pad)
        return ACCEPT if any(N.accepting(s) for s in S) else REJECT

    return SyncDFA(N.alphabet, init, N.step_set, classify, tracks=N.tracks,
                   name=f"det({N.name})", state_cap=state_cap, dead=lambda S: not S)


# --- minimization and equivalence -----------------------------------------

def dfa_minimize(A: SyncDFA, cap: int | None = None) -> SyncDFA:
    """Moore partition refinement over the reachable part of ``A``."""
    states, trans, labels = A.table(cap)
    letters = sorted(A.alphabet, key=_letter_key)
    label_ids: dict = {}
    block = {s: label_ids.setdefault(labels[s], len(label_ids)) for s in states}
    while True:
        sig_ids: dict = {}
        new_block = {}
        for s in states:
            sig = (block[s],) + tuple(block[trans[s][a]] for a in letters)
            new_block[s] = sig_ids.setdefault(sig, len(sig_ids))
        stable = len(sig_ids) == len(set(block.values()))
        block = new_block
        if stable:
            break
    mtrans: dict = {}
    mlabels: dict = {}
    for s in states:
        b = block[s]
        if b not in mtrans:
            mtrans[b] = {a: block[trans[s][a]] for a in A.alphabet}
            mlabels[b] = labels[s]
    names = None
    if A.state_names is not None:
        rep = {}
        for s in states:
            rep.setdefault(block[s], s)
        names = lambda b: A.state_names(rep[b])
    return SyncDFA.from_table(A.alphabet, block[A.initial], mtrans, mlabels, tracks=A.tracks,
                              name=f"min({A.name})", accept_label=A.accept_label, state_names=names)


def find_counterexample(A: SyncDFA, B: SyncDFA, cap: int | None = None, *, letters: Sequence | None = None):
    """Shortest word on which the two automata classify differently, or None.

    ``letters`` restricts the search to a sub-alphabet.
    """
    _check_alphabets(A, B)
    cap = max(A.state_cap, B.state_cap) if cap is None else cap
    letters = sorted(A.alphabet if letters is None else letters, key=_letter_key)
    start = (A.initial, B.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        if A.label(pair[0]) != B.label(pair[1]):
            word = []
            while parent[pair] is not None:
                pair, a = parent[pair]
                word.append(a)
            return tuple(reversed(word))
        for a in letters:
            nxt = (A.delta(pair[0], a), B.delta(pair[1], a))
            if nxt not in parent:
                parent[nxt] = (pair, a)
                if len(parent) > cap:
                    raise StateExplosion(len(parent), cap)
                queue.append(nxt)
    return None


def dfa_equivalent(A: SyncDFA, B: SyncDFA, cap: int | None = None, **kw) -> bool:
    return find_counterexample(A, B, cap, **kw) is None


# --- DOT export -----------------------------------------------------------

def _fmt_letter(a) -> str:
    if a == DOT:
        return "."
    return "(" + ",".join(str(s) for s in a) + ")"


def export_dot(A: SyncDFA, cap: int | None = None) -> str:
    """Graphviz source; node numbering follows BFS order so output is stable."""
    states, trans, labels = A.table(cap)
    index = {s: i for i, s in enumerate(states)}
    lines = [f"// {A.name or 'automaton'}: {len(states)} states"]
    lines.append("digraph {")
    for s in states:
        name = A.state_names(s) if A.state_names else str(index[s])
        shape = "doublecircle" if labels[s] == A.accept_label else "circle"
        lines.append(f'  {index[s]} [label="{name}\\n{labels[s]}", shape={shape}];')
    lines.append(f"  start [shape=point]; start -> {index[A.initial]};")
    letters = sorted(A.alphabet, key=_letter_key)
    for s in states:
        grouped: dict = {}
        for a in letters:
            grouped.setdefault(index[trans[s][a]], []).append(_fmt_letter(a))
        for t in sorted(grouped):
            lines.append(f'  {index[s]} -> {t} [label="{" ".join(grouped[t])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
