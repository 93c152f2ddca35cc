"""Series kernel of the weight c^|gamma| next to the J_n kernel proposed for it.

The series sums to an I-type Bessel kernel, so the two columns are expected
to disagree; the table records by how much.  The J_n kernel is integrable
against mu_0 only for |u| < 2/c, so u stays inside that disc.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from ponderation import operators as ops
from ponderation.quadrature import build_grid


@dataclass
class Config:
    c: float = 2.0
    f: str = "1 + z + z^2"
    u_max: float = 0.9
    points: int = 7
    radial: int = 64
    angular: int = 64


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    grid = build_grid(1, cfg.radial, cfg.angular)
    f = ops.TestFunction.parse(cfg.f)
    u = np.linspace(0.0, cfg.u_max, cfg.points)
    print(f"# f = {cfg.f}, c = {cfg.c}, stated constants")
    print(f"{'u':>6s} {'series (I-type)':>22s} {'J_n candidate':>22s} {'|diff|':>10s}")
    for row in ops.hankel_comparison(f, u, grid, c=cfg.c):
        s, j = row["series_bessel_I_type"], row["hankel_J_candidate"]
        print(f"{row['u'][0].real:6.3f} {s.real:22.15e} {j.real:22.15e} {row['abs_difference']:10.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
