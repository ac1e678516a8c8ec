"""Grid-refinement order of the conformal/harmonic residuals.

Samples Re(a - iD) on nested grids (n - 1 doubling) and prints the observed
order log2(r_h / r_{h/2}) of each residual.
"""

import numpy as np

from minterp import SolverConfig, SurfaceGrid, construct, interpolate, surface_checks
from minterp.corpus import corpus, random_direction

GRIDS = [(17, 9), (33, 17), (65, 33), (129, 65), (257, 129)]


def main():
    for case in corpus()[:3]:
        nf = construct(case.curve, case.perm)
        l = case.curve + random_direction(case.curve.domain, np.random.default_rng(2)) * 3e-5
        surface = interpolate(case.curve, l, SolverConfig(strict_realign=False), nf.perm).surface
        prev = None
        print(case.name)
        for nu, nv in GRIDS:
            r = surface_checks(SurfaceGrid.sample(surface, nu, nv)).as_dict()
            orders = "" if prev is None else "  orders " + " ".join(
                f"{k}={np.log2(prev[k] / r[k]):.2f}" for k in r)
            print(f"  {nu:4d}x{nv:<4d} " + " ".join(f"{k}={v:.2e}" for k, v in r.items()) + orders)
            prev = r


if __name__ == "__main__":
    main()
