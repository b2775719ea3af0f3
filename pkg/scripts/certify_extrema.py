#!/usr/bin/env python3
"""Sweep the certified extreme-point construction across dimensions.

Prints one row per dimension with the extreme value and every certification
residual, and optionally dumps the JSON records.
"""

import argparse
from pathlib import Path

from vandersphere.extrema import MAX_DIMENSION, solve_extrema


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=MAX_DIMENSION)
    ap.add_argument("--json-dir", type=Path, default=None)
    args = ap.parse_args()

    if args.json_dir is not None:
        args.json_dir.mkdir(parents=True, exist_ok=True)

    header = ["n", "extreme_value", "sum_roots", "sum_squares", "symmetry",
              "stationarity", "inverse_square_sum"]
    print(",".join(header))
    for n in range(2, args.max_n + 1):
        s = solve_extrema(n)
        row = [str(n), f"{s.extreme_value:.6e}"]
        row += [f"{s.residuals[k]:.3e}" for k in header[2:]]
        print(",".join(row))
        if args.json_dir is not None:
            (args.json_dir / f"extrema_n{n}.json").write_text(s.to_json())


if __name__ == "__main__":
    main()
