"""Reachable and minimal state counts for small compiled automata."""

from semigrid.automata import dfa_minimize
from semigrid.checkers import compile_addition_checker, compile_comparison_checker, compile_school_adder
from semigrid.errors import StateExplosion
from semigrid.grids import grid_by_name
from semigrid.sign import compile_sign_dfa

CAP = 200_000


def report(label, A):
    try:
        n = len(A.reachable(CAP))
        m = len(dfa_minimize(A, CAP).reachable())
        print(f"{label:28s} reachable={n:7d} minimal={m:7d}")
    except StateExplosion as exc:
        print(f"{label:28s} more than {exc.cap} states")


def main():
    report("school adder (base 10)", compile_school_adder(10))
    d2 = grid_by_name("d2")
    report("sign [d2]", compile_sign_dfa(d2))
    report("x < y [d2]", compile_comparison_checker(d2, "lt"))
    report("x + y = z [d2]", compile_addition_checker(d2))
    # about ten seconds; comparison and addition over d10 exceed the cap
    report("sign [d10]", compile_sign_dfa(grid_by_name("d10")))


if __name__ == "__main__":
    main()
