"""Diagonal action of the operator with kernel I_0(2 sqrt(zbar u))^2.

Prints lambda_k, the prediction C(2k, k)/pi^2 and the ratio to the identity
eigenvalue, recovered as an exact fraction.  Data only.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ponderation import operators as ops
from ponderation.quadrature import build_grid


@dataclass
class Config:
    k_max: int = 8
    radial: int = 64
    angular: int = 64


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=Config.k_max)
    ap.add_argument("--radial", type=int, default=Config.radial)
    ap.add_argument("--angular", type=int, default=Config.angular)
    cfg = Config(**vars(ap.parse_args()))
    grid = build_grid(1, cfg.radial, cfg.angular)
    print(f"{'k':>3s} {'lambda_k':>22s} {'C(2k,k)/pi^2':>22s} {'ratio':>8s} {'off-diag':>10s}")
    for row in ops.theta_eigenvalues(grid, cfg.k_max):
        ratio = ops.exact_fraction(row["ratio_to_identity"].real)
        print(f"{row['k']:3d} {row['lambda_theta'].real:22.15e} {row['central_binomial_over_pi2']:22.15e} "
              f"{str(ratio):>8s} {row['off_diagonal_residual']:10.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
