"""Reduction of arbitrary digit vectors to normal form (all ``|a_k| <= D``)."""

from __future__ import annotations

from .digits import LaurentDigits

__all__ = ["normalize", "is_normal"]


def is_normal(g, p: LaurentDigits) -> bool:
    return p.max_abs() <= g.digit_bound


def normalize(g, p: LaurentDigits, *, check_norm: bool = False) -> LaurentDigits:
    """Add or subtract shifted copies of ``p4`` until every digit is within
    the grid's digit bound.

    Always reduces the highest offending exponent first, one copy of ``p4``
    per step, so the output is a deterministic function of the input.
    ``check_norm`` asserts the strict 1-norm decrease on every step.
    """
    bound = g.digit_bound
    if p.max_abs() <= bound:
        return p
    ell = g.ell
    p4 = [(k - ell, e) for k, e in g.p4.items()]
    a = dict(p.items())
    offending = {k for k, v in a.items() if abs(v) > bound}
    norm = sum(abs(v) for v in a.values()) if check_norm else 0
    while offending:
        k = max(offending)
        s = 1 if a[k] > 0 else -1
        for off, e in p4:
            j = k + off
            v = a.get(j, 0) - s * e
            if v:
                a[j] = v
                if abs(v) > bound:
                    offending.add(j)
                else:
                    offending.discard(j)
            else:
                a.pop(j, None)
                offending.discard(j)
        if check_norm:
            new = sum(abs(v) for v in a.values())
            assert new < norm, "1-norm failed to decrease"
            norm = new
    return LaurentDigits(a)
