"""Bounds, probe and interpolation runs over the reference corpus.

Prints one CSV row per (curve, perturbation) with solver iterations and the
two interpolation residuals.
"""

import argparse
import csv
import sys

import numpy as np

from minterp import SolverConfig, build_base, compute_eta, construct, interpolate, probe_epsilon0
from minterp.corpus import corpus, random_direction
from minterp.errors import DegenerateConstants, MinterpError
from minterp.verification import interpolation_residuals, isotropy_residual


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["curve", "perm", "epsilon0", "eta", "size", "iterations", "res_on_I", "res_on_l",
                  "imag_dk_prime", "isotropy"])
    for case in corpus():
        nf = construct(case.curve, case.perm)
        base = build_base(case.curve, nf)
        eps0 = probe_epsilon0(base)
        try:
            eta = compute_eta(nf, case.curve, eps0).eta
        except DegenerateConstants:
            eta = float("nan")
        scale = eta if np.isfinite(eta) else 1e-4
        for _ in range(args.trials):
            size = rng.uniform(0.2, 0.9) * scale
            l = case.curve + random_direction(case.curve.domain, rng) * size
            try:
                res = interpolate(case.curve, l, SolverConfig(strict_realign=False), nf.perm)
            except MinterpError as exc:
                out.writerow([case.name, nf.perm, eps0, eta, size, f"failed: {type(exc).__name__}"])
                continue
            r_I, r_l = interpolation_residuals(res, case.curve, l)
            out.writerow([case.name, nf.perm, f"{eps0:.4g}", f"{eta:.4g}", f"{size:.3e}", res.iterations,
                          f"{r_I:.3e}", f"{r_l:.3e}", f"{res.extras['imag_dk_prime']:.3e}",
                          f"{isotropy_residual(res.surface):.2e}"])


if __name__ == "__main__":
    main()
