#!/usr/bin/env python3
"""Numerical defect-rank scan: point-mass Dirichlet spaces of growing support
and weighted spaces with a controlled number of weight jumps.

Usage: python scripts/rank_scan.py [OUTDIR]
"""

import sys

import numpy as np

from hbspace.model import SpaceHandle
from hbspace.reporting import write_csv
from hbspace.symbols import (
    DirichletSpace,
    MeasureSpec,
    estimate_rank,
    weighted_space_symbol,
)

OUT = sys.argv[1] if len(sys.argv) > 1 else "out"


def main():
    rows = []
    rng = np.random.default_rng(7)
    for n_atoms in range(1, 5):
        locs = 0.6 * np.exp(2j * np.pi * np.arange(n_atoms) / max(n_atoms, 1))
        space = DirichletSpace(MeasureSpec(atoms=[(z, 1.0) for z in locs]))
        rank = estimate_rank(space.monomial_gram(48))
        rows.append(("dirichlet", n_atoms, rank))
        print(f"dirichlet atoms={n_atoms}: rank={rank}")
    for jumps in range(0, 4):
        w = np.ones(12)
        for j in range(jumps):
            w[j + 1:] *= 1.0 + 0.5 / (j + 1.0)
        symbol = weighted_space_symbol(w, n_boundary=1024)
        space = SpaceHandle(symbol, n_grid=1024)
        rank = estimate_rank(space.monomial_gram(48))
        rows.append(("weighted", jumps, rank))
        print(f"weighted jumps={jumps}: rank={rank}")
    write_csv(f"{OUT}/rank_scan.csv", ["family", "parameter", "rank"], rows)


if __name__ == "__main__":
    main()
