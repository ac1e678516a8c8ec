"""JSON curve/config/result files, OBJ meshes and CSV reports.

Curve file layout (strict, unknown keys rejected)::

    {
      "interval": [lo, hi],
      "rho": 1.2,
      "components": [                       # exactly three
        {"cheb_coeffs_re": [...], "cheb_coeffs_im": [...]},
        {"builtin": "circle", "params": {"radius": 1.0}},
        ...
      ],
      "perturbation": {"direction": [[...], [...], [...]], "magnitude": 1e-3}
    }

Chebyshev coefficients are in the unit variable ``x = (w - c)/h`` of the
interval.  A builtin component takes coordinate ``axis`` (default: its own
position) of the named curve.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

import jsonschema
import numpy as np

from .analytic import AnalyticCurve3, AnalyticScalar, DomainSpec
from .errors import DomainMismatch, IoError, ParseError, SchemaError
from .solver import SolverConfig

_NUM_LIST = {"type": "array", "items": {"type": "number"}, "minItems": 1}

CURVE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["interval", "rho", "components"],
    "properties": {
        "interval": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "rho": {"type": "number", "exclusiveMinimum": 1},
        "components": {
            "type": "array",
            "minItems": 3,
            "maxItems": 3,
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["cheb_coeffs_re"],
                        "properties": {"cheb_coeffs_re": _NUM_LIST, "cheb_coeffs_im": _NUM_LIST},
                    },
                    {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["builtin"],
                        "properties": {
                            "builtin": {"enum": ["line", "circle", "helix_like"]},
                            "params": {"type": "object"},
                        },
                    },
                ]
            },
        },
        "perturbation": {
            "type": "object",
            "additionalProperties": False,
            "required": ["direction", "magnitude"],
            "properties": {
                "direction": {"type": "array", "items": _NUM_LIST, "minItems": 3, "maxItems": 3},
                "magnitude": {"type": "number", "minimum": 0},
            },
        },
    },
}

# builtin name -> (allowed params with defaults, curve as a function of w)
BUILTINS: dict[str, tuple[dict[str, Any], Any]] = {
    "line": (
        {"point": [0.0, 0.0, 0.0], "direction": [1.0, 0.0, 0.0]},
        lambda p, w: [p["point"][m] + p["direction"][m] * w for m in range(3)],
    ),
    "circle": (
        {"radius": 1.0},
        lambda p, w: [p["radius"] * np.cos(w), p["radius"] * np.sin(w), 0.0 * w],
    ),
    "helix_like": (
        {"radius": 1.0, "pitch": 0.5},
        lambda p, w: [p["radius"] * np.cos(w), p["radius"] * np.sin(w), p["pitch"] * w],
    ),
}


@dataclass(frozen=True)
class CurveFile:
    curve: AnalyticCurve3
    domain: DomainSpec
    direction: AnalyticCurve3 | None = None
    magnitude: float = 0.0

    def nearby(self) -> AnalyticCurve3:
        """``a + magnitude * direction``, or ``a`` itself when unperturbed."""
        if self.direction is None or self.magnitude == 0.0:
            return self.curve
        return self.curve + self.direction * self.magnitude


def _read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _field(err: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def _validate(doc, schema, path):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        # first failing field; best_match descends into oneOf alternatives
        err = jsonschema.exceptions.best_match(errors[:1])
        raise SchemaError(f"{path}: field '{_field(err)}': {err.message}")


def _builtin_component(spec: dict, position: int, domain: DomainSpec, path) -> AnalyticScalar:
    name = spec["builtin"]
    defaults, fn = BUILTINS[name]
    params = dict(spec.get("params", {}))
    axis = params.pop("axis", position)
    unknown = sorted(set(params) - set(defaults))
    if unknown:
        raise SchemaError(f"{path}: field 'components/{position}/params': unknown keys {unknown} for {name}")
    if axis not in (0, 1, 2):
        raise SchemaError(f"{path}: field 'components/{position}/params/axis': must be 0, 1 or 2")
    merged = {**defaults, **params}
    return AnalyticScalar.from_function(lambda w: fn(merged, w)[axis] + 0j * w, domain)


def _scalar_from_lists(re, im, domain) -> AnalyticScalar:
    re = np.asarray(re, dtype=float)
    im = np.zeros(1) if im is None else np.asarray(im, dtype=float)
    n = max(re.size, im.size)
    c = np.zeros(n, dtype=complex)
    c[: re.size] += re
    c[: im.size] += 1j * im
    return AnalyticScalar(domain, c)


def domain_from(doc: dict, fit_tol: float | None = None) -> DomainSpec:
    lo, hi = doc["interval"]
    kw = {} if fit_tol is None else {"fit_tol": fit_tol}
    try:
        return DomainSpec(float(lo), float(hi), float(doc["rho"]), **kw)
    except ValueError as exc:
        raise SchemaError(f"field 'interval'/'rho': {exc}") from exc


def parse_curve_doc(doc: Any, path="<memory>", fit_tol: float | None = None) -> CurveFile:
    _validate(doc, CURVE_SCHEMA, path)
    domain = domain_from(doc, fit_tol)
    comps = []
    for m, spec in enumerate(doc["components"]):
        if "builtin" in spec:
            comps.append(_builtin_component(spec, m, domain, path))
        else:
            comps.append(_scalar_from_lists(spec["cheb_coeffs_re"], spec.get("cheb_coeffs_im"), domain))
    direction, magnitude = None, 0.0
    if "perturbation" in doc:
        pert = doc["perturbation"]
        direction = AnalyticCurve3([_scalar_from_lists(c, None, domain) for c in pert["direction"]])
        magnitude = float(pert["magnitude"])
    return CurveFile(AnalyticCurve3(comps), domain, direction, magnitude)


def parse_curve(path, fit_tol: float | None = None) -> CurveFile:
    return parse_curve_doc(_read_json(path), path, fit_tol)


def scalar_to_doc(f: AnalyticScalar) -> dict[str, list[float]]:
    return {
        "cheb_coeffs_re": [float(x) for x in f.coeffs.real],
        "cheb_coeffs_im": [float(x) for x in f.coeffs.imag],
    }


def scalar_from_doc(doc: dict, domain: DomainSpec) -> AnalyticScalar:
    return _scalar_from_lists(doc["cheb_coeffs_re"], doc.get("cheb_coeffs_im"), domain)


def curve_to_doc(curve: AnalyticCurve3, direction: AnalyticCurve3 | None = None,
                 magnitude: float = 0.0) -> dict:
    dom = curve.domain
    doc = {
        "interval": [dom.interval_lo, dom.interval_hi],
        "rho": dom.rho,
        "components": [scalar_to_doc(c) for c in curve],
    }
    if direction is not None:
        doc["perturbation"] = {
            "direction": [[float(x) for x in c.coeffs.real] for c in direction],
            "magnitude": float(magnitude),
        }
    return doc


def _dump(doc, path):
    try:
        Path(path).write_text(json.dumps(doc, indent=1) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_curve(path, curve: AnalyticCurve3, direction=None, magnitude: float = 0.0) -> None:
    _dump(curve_to_doc(curve, direction, magnitude), path)


def check_same_domain(a: DomainSpec, b: DomainSpec) -> None:
    if a != b:
        raise DomainMismatch(
            f"curves live on different domains: I=[{a.interval_lo}, {a.interval_hi}] rho={a.rho} "
            f"vs I=[{b.interval_lo}, {b.interval_hi}] rho={b.rho}"
        )


# ----------------------------------------------------------------------
# run configuration
@dataclass(frozen=True)
class RunConfig:
    fit_tol: float = 1e-13
    newton_tol: float = 1e-11
    max_iter: int = 50
    realign_tol: float = 1e-7
    strict_realign: bool = True
    printed_v3_sign: bool = False
    u0: float | None = None
    perm: tuple[int, int, int] | None = None  # one-based
    epsilon0: float | None = None
    safety: float = 0.9
    nu: int = 64
    nv: int = 32
    check_tol: float = 1e-8
    mesh_name: str = "mesh.obj"
    report_name: str = "report.csv"
    result_name: str = "result.json"

    def __post_init__(self):
        for name in ("fit_tol", "newton_tol", "realign_tol", "check_tol", "safety"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise SchemaError(f"config field '{name}': {v} not in (0, 1)")
        if self.max_iter < 1:
            raise SchemaError("config field 'max_iter': must be >= 1")
        if self.nu < 8 or self.nv < 8:
            raise SchemaError("config fields 'nu'/'nv': must be >= 8")
        if self.perm is not None and sorted(self.perm) != [1, 2, 3]:
            raise SchemaError(f"config field 'perm': {self.perm} is not a permutation of 1,2,3")
        if self.epsilon0 is not None and not self.epsilon0 > 0:
            raise SchemaError("config field 'epsilon0': must be positive")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(max_iter=self.max_iter, tol=self.newton_tol, realign_tol=self.realign_tol,
                            strict_realign=self.strict_realign, printed_v3_sign=self.printed_v3_sign)

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_doc(self) -> dict:
        doc = dataclasses.asdict(self)
        if self.perm is not None:
            doc["perm"] = list(self.perm)
        return doc

    @classmethod
    def from_doc(cls, doc: Any, path="<memory>") -> "RunConfig":
        if not isinstance(doc, dict):
            raise SchemaError(f"{path}: config must be a JSON object")
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(doc) - names)
        if unknown:
            raise SchemaError(f"{path}: unknown config fields {unknown}")
        doc = dict(doc)
        if doc.get("perm") is not None:
            doc["perm"] = tuple(int(p) for p in doc["perm"])
        try:
            return cls(**doc)
        except TypeError as exc:
            raise SchemaError(f"{path}: {exc}") from exc


def load_config(path) -> RunConfig:
    return RunConfig.from_doc(_read_json(path), path)


# ----------------------------------------------------------------------
# results
def write_result(path, doc: dict) -> None:
    _dump(doc, path)


def load_result(path) -> dict:
    doc = _read_json(path)
    for key in ("kind", "interval", "rho", "fit_tol", "surface", "a"):
        if key not in doc:
            raise SchemaError(f"{path}: result file lacks field '{key}'")
    return doc


# ----------------------------------------------------------------------
# mesh and reports
def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_mesh(grid, path) -> None:
    """OBJ with row-major vertices and two triangles per grid quad.

    ``grid`` is a SurfaceGrid or any ``(nu, nv, 3)`` array.
    """
    P = np.asarray(getattr(grid, "points", grid), dtype=float)
    if P.ndim != 3 or P.shape[2] != 3 or P.shape[0] < 2 or P.shape[1] < 2:
        raise ValueError(f"expected (nu, nv, 3) points with nu, nv >= 2, got {P.shape}")
    nu, nv, _ = P.shape
    lines = [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in P.reshape(-1, 3)]
    for a in range(nu - 1):
        for b in range(nv - 1):
            p00 = a * nv + b + 1
            p10, p01, p11 = p00 + nv, p00 + 1, p00 + nv + 1
            lines.append(f"f {p00} {p10} {p11}")
            lines.append(f"f {p00} {p11} {p01}")
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return " ".join(_cell(v) for v in value)
    return str(value)


REPORT_COLUMNS = ("name", "value", "source")


def write_report(path, rows: Iterable[tuple[str, Any, str]], cfg: RunConfig) -> None:
    """CSV with columns name, value, source; the run config is echoed last."""
    all_rows = [(n, _cell(v), s) for n, v, s in rows]
    all_rows += [(f"config.{k}", _cell(v), "run config") for k, v in cfg.to_doc().items()]
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(REPORT_COLUMNS)
            w.writerows(all_rows)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_report(path) -> dict[str, str]:
    with open(path, newline="") as fh:
        return {row["name"]: row["value"] for row in csv.DictReader(fh)}
