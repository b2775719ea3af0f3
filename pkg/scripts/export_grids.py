#!/usr/bin/env python3
"""Export the full set of sphere-grid data files.

Writes one CSV per ordinary determinant for n = 3..7 plus the three
generalized n = 3 grids whose determinants factor through elementary
symmetric polynomials.
"""

import argparse
from pathlib import Path

from vandersphere.grids import grid_eval

GENERALIZED_CASES = [(0, 1, 3), (0, 2, 3), (1, 2, 3)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("grid_data"))
    ap.add_argument("--res", default="720x360")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    args = ap.parse_args()

    tc, pc = (int(v) for v in args.res.lower().split("x"))
    args.outdir.mkdir(parents=True, exist_ok=True)
    suffix = "json" if args.json else "csv"

    for n in range(3, 8):
        grid = grid_eval(n, (tc, pc))
        path = args.outdir / f"v{n}_{tc}x{pc}.{suffix}"
        grid.write(path)
        print(f"{path}  max={grid.values.max():.6g}  min={grid.values.min():.6g}")

    for a in GENERALIZED_CASES:
        grid = grid_eval(3, (tc, pc), exponents=a)
        tag = "".join(str(v) for v in a)
        path = args.outdir / f"g3_a{tag}_{tc}x{pc}.{suffix}"
        grid.write(path)
        print(f"{path}  max={grid.values.max():.6g}  min={grid.values.min():.6g}")


if __name__ == "__main__":
    main()
