"""Validate every shipped grid and print the check table."""

import argparse

from semigrid.grids import SHIPPED_GRIDS, grid_by_name, validate_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fuzz", type=int, default=3000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    bad = 0
    for name in SHIPPED_GRIDS:
        rep = validate_grid(grid_by_name(name), fuzz=args.fuzz, seed=args.seed)
        print(f"== {name}: {'ok' if rep.ok else 'FAILED'}")
        for line in rep.lines():
            print("  " + line)
        bad += not rep.ok
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
