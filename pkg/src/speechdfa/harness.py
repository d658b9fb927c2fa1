"""Synthetic-signal validation suite for the DFA engine."""

from dataclasses import dataclass

import numpy as np

from .dfa import default_grid, fit_scaling_exponent, fluctuation_function, integrate_profile
from .synth import GeneratorSpec, generate

__all__ = ["Target", "TargetResult", "TARGETS", "tolerance_for", "run_suite"]


@dataclass(frozen=True)
class Target:
    kind: str
    alpha: float
    tolerance: float
    quick_tolerance: float
    hurst: float = None

    @property
    def name(self):
        return f"fgn(H={self.hurst})" if self.kind == "fgn" else self.kind


# quick tolerances cover the single-realization spread at N = 2**16
TARGETS = (
    Target("white", 0.5, 0.05, 0.10),
    Target("random_walk", 1.5, 0.10, 0.20),
    Target("one_over_f", 1.0, 0.10, 0.10),
    Target("fgn", 0.3, 0.05, 0.10, hurst=0.3),
    Target("fgn", 0.8, 0.05, 0.10, hurst=0.8),
)

QUICK_TRIALS = 10


@dataclass(frozen=True)
class TargetResult:
    target: Target
    median_alpha: float
    tolerance: float
    trials: int

    @property
    def passed(self):
        return abs(self.median_alpha - self.target.alpha) <= self.tolerance


def tolerance_for(target, trials):
    return target.tolerance if trials >= QUICK_TRIALS else target.quick_tolerance


def _alpha(series, detrend_order):
    profile = integrate_profile(series)
    curve = fluctuation_function(profile, default_grid(profile.size), _detrend_order=detrend_order)
    return fit_scaling_exponent(curve).alpha


def run_suite(trials=50, seed=0, length=2**16, targets=TARGETS, detrend_order=1):
    """Median DFA exponent over `trials` seeded realizations per target.

    Realization ``i`` uses seed ``seed + i``.
    """
    results = []
    for target in targets:
        alphas = [
            _alpha(generate(GeneratorSpec(target.kind, length, seed + i, target.hurst)), detrend_order)
            for i in range(trials)
        ]
        results.append(TargetResult(target, float(np.median(alphas)), tolerance_for(target, trials), trials))
    return results
