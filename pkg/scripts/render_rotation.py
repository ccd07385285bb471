"""Draw the orbit of a point under 30-degree rotations as SVG, and check
that twelve steps return to the start."""

import argparse

from semigrid.geometry import format_point, parse_point, points_equal, render_svg, rotate
from semigrid.grids import grid_by_name


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("point", nargs="?", default="(1,{-1:1})")
    ap.add_argument("--grid", default="sqrt3half")
    ap.add_argument("--angle", type=int, default=30)
    ap.add_argument("--out", default="rotation.svg")
    args = ap.parse_args()
    g = grid_by_name(args.grid)
    p = parse_point(g, args.point)
    orbit = [p]
    while len(orbit) < 360 // args.angle:
        orbit.append(rotate(g, orbit[-1], args.angle))
    for q in orbit:
        print(format_point(q))
    closed = points_equal(g, rotate(g, orbit[-1], args.angle), p)
    print(f"closes after {len(orbit)} steps: {closed}")
    with open(args.out, "w") as fh:
        fh.write(render_svg(g, [orbit], orbit))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
