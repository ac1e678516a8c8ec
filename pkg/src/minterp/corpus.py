"""Reference curves and random analytic perturbations used by the test
suite and the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticCurve3, AnalyticScalar, DomainSpec
from .normal_field import IndexPermutation


@dataclass(frozen=True)
class CorpusCase:
    name: str
    curve: AnalyticCurve3
    perm: IndexPermutation | None = None
    # the line has M2 = 0, which the bounds recipe rejects
    bounds_ok: bool = True


def _zero(w):
    return 0 * w


def corpus() -> list[CorpusCase]:
    short = DomainSpec(-0.8, 0.8, 1.2)
    unit = DomainSpec(-1.0, 1.0, 1.2)
    return [
        CorpusCase(
            "circle",
            AnalyticCurve3.from_functions([np.cos, np.sin, _zero], short),
            IndexPermutation.from_one_based((2, 3, 1)),
        ),
        CorpusCase(
            "helix",
            AnalyticCurve3.from_functions([np.cos, np.sin, lambda w: 0.5 * w], short),
        ),
        CorpusCase(
            "cubic",
            AnalyticCurve3.from_functions([lambda w: w, lambda w: 0.5 * w ** 2, lambda w: w ** 3 / 6], short),
        ),
        CorpusCase(
            "line",
            AnalyticCurve3.from_functions([lambda w: w, _zero, _zero], unit),
            bounds_ok=False,
        ),
    ]


def random_direction(domain: DomainSpec, rng: np.random.Generator, size: int = 6,
                     decay: float = 0.4) -> AnalyticCurve3:
    """Real-on-I curve with geometrically decaying Chebyshev coefficients,
    scaled so that ``max(||p||, ||p'||) = 1`` over the closed domain."""
    comps = [AnalyticScalar(domain, rng.standard_normal(size) * decay ** np.arange(size)) for _ in range(3)]
    p = AnalyticCurve3(comps)
    return p * (1.0 / max(p.sup_norm(), p.derivative().sup_norm()))
