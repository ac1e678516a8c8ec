"""Command line entry point.

Exit codes: 0 success, 2 the chord iteration failed, 3 a validation check
failed, 4 an input file could not be parsed, 1 an output could not be written.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .analytic import AnalyticCurve3, DomainSpec
from .bjorling import IsotropicCurve, build_base, schwartz_solve
from .bounds import REPORT_FIELDS, ProbeConfig, compute_eta, probe_epsilon0
from .errors import ConvergenceError, IoError, MinterpError, ParseError
from .fileio import (
    RunConfig,
    check_same_domain,
    curve_to_doc,
    load_config,
    load_result,
    parse_curve,
    scalar_from_doc,
    scalar_to_doc,
    write_mesh,
    write_report,
    write_result,
)
from .normal_field import IndexPermutation, construct
from .solver import interpolate
from .verification import SurfaceGrid, isotropy_residual, surface_checks

EXIT_OK, EXIT_IO, EXIT_CONVERGENCE, EXIT_VALIDATION, EXIT_PARSE = 0, 1, 2, 3, 4

log = logging.getLogger("minterp")


class ValidationFailed(MinterpError):
    pass


def _staged(stage, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except MinterpError as exc:
        if exc.stage is None:
            exc.stage = stage
        raise


def _perm(cfg: RunConfig):
    return None if cfg.perm is None else IndexPermutation.from_one_based(cfg.perm)


def _paths(args, cfg: RunConfig):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report = Path(args.report) if args.report else out / cfg.report_name
    return out / cfg.mesh_name, report, out / cfg.result_name


def _curve_from_doc(doc: dict, domain: DomainSpec) -> AnalyticCurve3:
    return AnalyticCurve3([scalar_from_doc(c, domain) for c in doc["components"]])


def _surface_rows(surface: IsotropicCurve, cfg: RunConfig, verbose: bool):
    grid = SurfaceGrid.sample(surface, cfg.nu, cfg.nv)
    checks = surface_checks(grid, mean_curvature=verbose)
    rows = [("isotropy_residual", isotropy_residual(surface), "sup |<f', f'>|")]
    rows += [(k, v, "finite differences on the mesh grid") for k, v in checks.as_dict().items()]
    return grid, rows


def _result_doc(kind, a, surface, perm, cfg, **extra) -> dict:
    dom = a.domain
    doc = {
        "kind": kind,
        "interval": [dom.interval_lo, dom.interval_hi],
        "rho": dom.rho,
        "fit_tol": dom.fit_tol,
        "perm": list(perm),
        "anchor_u0": surface.anchor_u0,
        "a": curve_to_doc(a),
        "surface": curve_to_doc(surface.f),
    }
    doc.update(extra)
    doc["config"] = cfg.to_doc()
    return doc


def cmd_bjorling(args, cfg: RunConfig) -> int:
    a = parse_curve(args.curve, cfg.fit_tol).curve
    nf = _staged("normal_field", construct, a, _perm(cfg), cfg.u0)
    surface = _staged("bjorling", schwartz_solve, a, nf.n0, nf.anchor_u0)
    nodes = a.domain.nodes()
    res_I = float(np.max(np.abs(np.real(surface.f._eval(nodes)) - np.real(a._eval(nodes)))))
    grid, srows = _surface_rows(surface, cfg, args.verbose)
    mesh, report, result = _paths(args, cfg)
    rows = [
        ("perm", nf.perm.one_based(), "coordinate roles (i,j,k)"),
        ("anchor_u0", nf.anchor_u0, "integration base point"),
        ("tau", nf.tau, "inf |q0|"),
        ("M1", nf.M1, "sup |q0|"),
        ("residual_on_I", res_I, "sup |Re f - a| on I"),
    ] + srows
    write_mesh(grid, mesh)
    write_result(result, _result_doc("bjorling", a, surface, nf.perm.one_based(), cfg,
                                     normal=curve_to_doc(nf.n0)))
    write_report(report, rows, cfg)
    return EXIT_OK


def _nearby(args, cfg, cf):
    if args.nearby:
        other = parse_curve(args.nearby, cfg.fit_tol)
        check_same_domain(cf.domain, other.domain)
        return other.nearby()
    return cf.nearby()


def cmd_interpolate(args, cfg: RunConfig) -> int:
    cf = parse_curve(args.curve, cfg.fit_tol)
    a = cf.curve
    l = _staged("input", _nearby, args, cfg, cf)
    res = interpolate(a, l, cfg.solver_config(), _perm(cfg), cfg.u0)
    grid, srows = _surface_rows(res.surface, cfg, args.verbose)
    mesh, report, result = _paths(args, cfg)
    rows = [
        ("perm", res.extras["perm"], "coordinate roles (i,j,k)"),
        ("iterations", res.iterations, "chord iterations"),
        ("residual_norm", res.residual_norm, "sup |(a - i d) o gamma - C_V|"),
        ("v0", res.v0, "translation of l"),
        ("residual_on_I", res.residual_on_I, "sup |X(u,0) - a(u)| on I"),
        ("interp_residual", res.interp_residual, "sup |X(gamma(u)) - l(u) - v0| on I"),
        ("imag_dk_prime", res.extras["imag_dk_prime"], "sup |Im d_k'| on I"),
    ] + srows
    if not cfg.strict_realign and res.extras["imag_dk_prime"] > cfg.realign_tol:
        log.warning("Im d_k' = %.3e exceeds %.1e; X(u,0) deviates from a(u) by %.3e",
                    res.extras["imag_dk_prime"], cfg.realign_tol, res.residual_on_I)
    write_mesh(grid, mesh)
    write_result(result, _result_doc(
        "interpolate", a, res.surface, res.extras["perm"], cfg,
        l=curve_to_doc(l), gamma=scalar_to_doc(res.gamma), v0=[float(x) for x in res.v0],
    ))
    write_report(report, rows, cfg)
    return EXIT_OK


def cmd_bounds(args, cfg: RunConfig) -> int:
    a = parse_curve(args.curve, cfg.fit_tol).curve
    nf = _staged("normal_field", construct, a, _perm(cfg), cfg.u0)
    eps0 = args.epsilon0 if args.epsilon0 is not None else cfg.epsilon0
    source = "input"
    if eps0 is None:
        base = _staged("build_base", build_base, a, nf)
        eps0 = probe_epsilon0(base, ProbeConfig())
        source = "probe"
        if eps0 <= 0:
            raise ValidationFailed("probe found no converging perturbation size").with_stage("probe_epsilon0")
    rep = _staged("bounds", compute_eta, nf, a, eps0, cfg.safety)
    _, report, _ = _paths(args, cfg)
    desc = dict(REPORT_FIELDS)
    rows = [("perm", nf.perm.one_based(), "coordinate roles (i,j,k)")]
    rows += [(name, getattr(rep, name), desc[name]) for name, _ in REPORT_FIELDS]
    rows.append(("epsilon0_source", source, "input or probe"))
    checks = rep.inequalities()
    rows += [(f"holds: {k}", v, "inequality") for k, v in checks.items()]
    write_report(report, rows, cfg)
    if not all(checks.values()):
        failed = [k for k, v in checks.items() if not v]
        raise ValidationFailed(f"inequalities violated: {failed}").with_stage("bounds")
    return EXIT_OK


def _load_result_objects(path, cfg: RunConfig):
    doc = load_result(path)
    dom = DomainSpec(doc["interval"][0], doc["interval"][1], doc["rho"], fit_tol=doc["fit_tol"])
    a = _curve_from_doc(doc["a"], dom)
    surface = IsotropicCurve(_curve_from_doc(doc["surface"], dom), float(doc["anchor_u0"]))
    return doc, dom, a, surface


def cmd_verify(args, cfg: RunConfig) -> int:
    path = args.result or Path(args.out) / cfg.result_name
    doc, dom, a, surface = _load_result_objects(path, cfg)
    nodes = dom.nodes()
    X_I = np.real(surface.f._eval(nodes))
    checks = [
        ("isotropy_residual", isotropy_residual(surface), "sup |<f', f'>|"),
        ("residual_on_I", float(np.max(np.abs(X_I - np.real(a._eval(nodes))))), "sup |X(u,0) - a(u)| on I"),
    ]
    if doc["kind"] == "interpolate":
        l = _curve_from_doc(doc["l"], dom)
        gamma = scalar_from_doc(doc["gamma"], dom)
        v0 = np.asarray(doc["v0"], dtype=float)
        X_l = np.real(surface.f._eval(gamma._eval(nodes)))
        err = float(np.max(np.abs(X_l - np.real(l._eval(nodes)) - v0[:, None])))
        checks.append(("interp_residual", err, "sup |X(gamma(u)) - l(u) - v0| on I"))
    _, srows = _surface_rows(surface, cfg, args.verbose)
    rows = list(checks) + [(f"pass: {n}", v < cfg.check_tol, f"< {cfg.check_tol:g}") for n, v, _ in checks]
    rows += srows
    _, report, _ = _paths(args, cfg)
    write_report(report, rows, cfg)
    failed = [n for n, v, _ in checks if not v < cfg.check_tol]
    if failed:
        raise ValidationFailed(f"checks above {cfg.check_tol:g}: {failed}").with_stage("verify")
    return EXIT_OK


def cmd_mesh(args, cfg: RunConfig) -> int:
    path = args.result or Path(args.out) / cfg.result_name
    _, _, _, surface = _load_result_objects(path, cfg)
    mesh, _, _ = _paths(args, cfg)
    write_mesh(SurfaceGrid.sample(surface, cfg.nu, cfg.nv), mesh)
    return EXIT_OK


COMMANDS = {
    "bjorling": cmd_bjorling,
    "interpolate": cmd_interpolate,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "mesh": cmd_mesh,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minterp", description="Minimal surfaces through analytic curves.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--curve", help="JSON curve file for a")
    parser.add_argument("--nearby", help="JSON curve file for l (default: a plus the file's perturbation)")
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--report", help="CSV report path (default: <out>/report.csv)")
    parser.add_argument("--result", help="result JSON for verify/mesh (default: <out>/result.json)")
    parser.add_argument("--epsilon0", type=float, help="ball radius for bounds (default: probe)")
    parser.add_argument("--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        if args.command in ("bjorling", "interpolate", "bounds") and not args.curve:
            raise ParseError(f"{args.command} needs --curve").with_stage("input")
        return COMMANDS[args.command](args, cfg)
    except ParseError as exc:
        err, code = exc, EXIT_PARSE
    except IoError as exc:
        err, code = exc, EXIT_IO
    except ConvergenceError as exc:
        err, code = exc, EXIT_CONVERGENCE
    except MinterpError as exc:
        err, code = exc, EXIT_VALIDATION
    stage = err.stage or "input"
    print(f"minterp {args.command}: [{stage}] {type(err).__name__}: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
