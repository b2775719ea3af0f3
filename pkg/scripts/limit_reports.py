#!/usr/bin/env python3
"""Generate the convergence reports for all three limit relations.

Runs the entrywise factorization, the minor series, and the determinant
ratio on their standard demonstration inputs and writes one CSV apiece.
"""

import argparse
from pathlib import Path

from vandersphere.cli import main as cli_main

CASES = [
    ("factorize", ["--nodes", "2,3", "--exponents", "0.5,1.5", "--k", "40"]),
    ("minors", ["--nodes", "1,2,3", "--exponents", "0,1,2", "--K", "30"]),
    ("ratio", ["--nodes", "1,e", "--exponents", "0,1"]),
    ("ratio", ["--nodes", "1,4", "--exponents", "0,1"]),
    ("ratio", ["--nodes", "1,2,4", "--exponents", "0,1,2"]),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("limit_reports"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    for i, (case, flags) in enumerate(CASES):
        out = args.outdir / f"{i:02d}_{case}.csv"
        code = cli_main(["limits", case, *flags, "--out", str(out)])
        status = "ok" if code == 0 else f"exit {code}"
        print(f"{out}: {status}")


if __name__ == "__main__":
    main()
