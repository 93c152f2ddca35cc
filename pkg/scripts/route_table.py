"""Named closed-form kernels against the series route for every transform tag.

Reports the measured ratio named/series next to the documented one; a
mismatch means the two prefactor conventions disagree for that tag.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ponderation import operators as ops
from ponderation.quadrature import build_grid

N1_TAGS = ("identity", "laplace", "fourier", "hankel", "simple")
N2_TAGS = ("identity", "laplace", "fourier", "hyper_cc", "hyper_ss", "hyper_cs", "hyper_sc", "simple")


@dataclass
class Config:
    radial: int = 64
    angular: int = 64
    n2_radial: int = 32
    n2_angular: int = 16
    n2_t: int = 12


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    cases = [
        (build_grid(1, cfg.radial, cfg.angular), N1_TAGS, ops.TestFunction.parse("1 + 2z - z^2 + z^3"),
         [0.3, -0.4 + 0.5j], (1,)),
        (build_grid(2, cfg.n2_radial, cfg.n2_angular, t_order=cfg.n2_t), N2_TAGS,
         ops.TestFunction.parse("1 + z1^1 z2^1 - 2 z2^1 + z1^3", n=2), [[0.3, 0.2j], [-0.4, 0.5]], (1, 1)),
    ]
    print(f"{'n':>2s} {'tag':10s} {'measured ratio':>26s} {'documented':>12s} {'max |diff|':>11s}")
    for grid, tags, f, u, alpha in cases:
        for tag in tags:
            cmp = ops.compare_routes(tag, f, u, grid, alpha=alpha if tag == "simple" else None)
            r = cmp.measured_ratio
            print(f"{grid.n:2d} {tag:10s} {r.real:13.6e}{r.imag:+13.6e}i {cmp.documented_ratio:12.6g} "
                  f"{cmp.max_abs_difference:11.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
