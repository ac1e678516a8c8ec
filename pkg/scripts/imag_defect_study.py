"""How the imaginary part of d_k' on I scales with the perturbation size.

For each corpus curve and a fixed random direction p, solve with l = a + s p
for decreasing s and fit the log-log slope of sup |Im d_k'| and of
sup |X(u,0) - a(u)| against s.  A slope near 1 means the defect is first
order in the perturbation, so it cannot be pushed below a fixed tolerance
by shrinking the closeness radius alone unless s itself is that small.
"""

import numpy as np

from minterp import SolverConfig, construct, interpolate
from minterp.corpus import corpus, random_direction


def main():
    sizes = np.logspace(-3, -6, 7)
    cfg = SolverConfig(strict_realign=False)
    print(f"{'curve':8s} {'s':>10s} {'Im dk_prime':>12s} {'X(u,0)-a':>12s} {'X(gamma)-l-v0':>14s}")
    for case in corpus():
        nf = construct(case.curve, case.perm)
        p = random_direction(case.curve.domain, np.random.default_rng(1))
        imag, res_I = [], []
        for s in sizes:
            res = interpolate(case.curve, case.curve + p * s, cfg, nf.perm)
            imag.append(res.extras["imag_dk_prime"])
            res_I.append(res.residual_on_I)
            print(f"{case.name:8s} {s:10.1e} {imag[-1]:12.3e} {res_I[-1]:12.3e} {res.interp_residual:14.3e}")
        slope_imag = np.polyfit(np.log(sizes), np.log(imag), 1)[0]
        slope_I = np.polyfit(np.log(sizes), np.log(res_I), 1)[0]
        print(f"{case.name:8s} slopes: Im d_k' {slope_imag:.3f}, X(u,0)-a {slope_I:.3f}\n")


if __name__ == "__main__":
    main()
