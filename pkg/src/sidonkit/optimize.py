"""Parameter search for the combined bound, with exact certification.

The search runs in floating point over (tau, alpha, beta, tau2), with delta
derived from ``delta_formula`` so that both cases balance.  The best point
is then rationalized coordinate-wise (continued fractions, bounded
denominator) and the bound is recomputed in exact arithmetic; only that
exact value is ever reported as a certificate.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import (
    REFERENCE_PARAMS,
    BfrParams,
    InvalidParams,
    SingularDenominator,
    VertexOutsideRegion,
    combined_bound,
)
from .core import SidonError

__all__ = ["NoValidPoint", "OptimizerConfig", "AnnealResult", "objective", "anneal", "anneal_chains", "certify", "TARGET", "REFERENCE_POINT"]

TARGET = Fraction(199405, 100000)
REFERENCE_POINT = (REFERENCE_PARAMS.tau, REFERENCE_PARAMS.alpha, REFERENCE_PARAMS.beta, REFERENCE_PARAMS.tau2)


class NoValidPoint(SidonError):
    pass


def _delta(t, a, b, t2):
    den = 2 * t**2 * (a**2 * b**2 * t2**2 + a**2 * b**2 - a**2 - 2 * a * b + 2 * a + t2**2)
    if den == 0:
        return math.nan
    num = -t2 * (
        -2 * a**2 * b**2 * t**2 + 4 * a * b * t**2 * t2 + 4 * a * b * t**2
        + t**2 * t2**2 + t**2 * t2 - 2 * t**2 - t2 + 1
    )
    return num / den


def _smalls(t, a, b, d, t2, x, y):
    mu = 2 * (1 + a * b) * t
    w = t2 * (1 - a * b) ** 2 - y * (1 - a) * (1 + a - 2 * a * b) - x * a * (1 - b) * (2 - a - a * b)
    return t * t2 - 2 * t * (1 - x - y) + 2 * mu + 1 / (t * t2) - 2 * t * w / t2**2


def objective(point) -> float:
    """Float approximation of the combined bound; +inf outside the valid region."""
    t, a, b, t2 = (float(v) for v in point)
    if not (t > 0 and 0 < a < 1 and 0 < b < 1 and t2 > 0):
        return math.inf
    d = _delta(t, a, b, t2)
    if not (0 < d < 0.5) or not t2 > d:
        return math.inf
    var = t + 1 / t - 2 * a * a * b * b * d * t
    smalls = max(_smalls(t, a, b, d, t2, x, y) for x, y in ((0, 0), (d, 0), (0, b * b * d)))
    return max(var, smalls)


@dataclass(frozen=True)
class OptimizerConfig:
    steps: int = 20000
    initial_temperature: float = 1e-4
    cooling: float = 0.999
    step_size: float = 2e-3
    seed: int = 0
    denominator_cap: int = 10**10
    start: tuple = REFERENCE_POINT

    def __post_init__(self):
        if self.steps < 0:
            raise SidonError("steps must be >= 0")
        if not (self.initial_temperature > 0 and 0 < self.cooling <= 1 and self.step_size > 0):
            raise SidonError("temperature, cooling and step size must be positive (cooling <= 1)")
        if self.denominator_cap < 1:
            raise SidonError("denominator_cap must be positive")


@dataclass(frozen=True)
class AnnealResult:
    float_point: tuple[float, ...]
    float_value: float
    params: BfrParams  # exact, with derived delta
    bound: Fraction  # exact combined bound at ``params``
    certified: bool  # bound <= TARGET
    accepted: int
    seed: int

    def row(self) -> dict:
        p = self.params
        return {
            "tau": p.tau, "alpha": p.alpha, "beta": p.beta, "tau2": p.tau2, "delta": p.delta,
            "bound_num": self.bound.numerator, "bound_den": self.bound.denominator,
        }


def certify(point, cap: int | None = None) -> tuple[BfrParams, Fraction] | None:
    """Exact combined bound at a point; floats are rationalized first.  None if invalid."""
    coords = []
    for v in point:
        if isinstance(v, (Fraction, int)):
            coords.append(Fraction(v))
        else:
            f = Fraction(float(v))
            coords.append(f.limit_denominator(cap) if cap else f)
    try:
        params = BfrParams.with_derived_delta(*coords)
        report = combined_bound(params)
    except (InvalidParams, SingularDenominator, VertexOutsideRegion):
        return None
    return params, report.combined


def anneal(config: OptimizerConfig = OptimizerConfig()) -> AnnealResult:
    """Simulated annealing from ``config.start``, then exact certification.

    Proposals are Gaussian steps scaled per coordinate; moves are accepted
    by the Metropolis rule at a geometrically cooling temperature.  The
    exact bound of the rationalized best point is compared with the exact
    bound of the start, and the better of the two is returned.
    """
    rng = np.random.default_rng(config.seed)
    start = tuple(config.start)
    cur = np.array([float(v) for v in start])
    cur_val = objective(cur)
    best, best_val = cur.copy(), cur_val
    temp = config.initial_temperature
    scale = np.maximum(np.abs(cur), 1e-3)
    accepted = 0
    for _ in range(config.steps):
        cand = cur + rng.normal(0.0, config.step_size, size=4) * scale
        val = objective(cand)
        if math.isfinite(val):
            if not math.isfinite(cur_val) or val <= cur_val or rng.random() < math.exp((cur_val - val) / temp):
                cur, cur_val = cand, val
                accepted += 1
                if val < best_val:
                    best, best_val = cand.copy(), val
        temp *= config.cooling

    candidates = []
    exact_start = certify(start)
    if exact_start is not None:
        candidates.append(exact_start)
    if math.isfinite(best_val) and accepted:
        c = certify(tuple(best.tolist()), config.denominator_cap)
        if c is not None:
            candidates.append(c)
    if not candidates:
        raise NoValidPoint("no valid parameter point was reached")
    params, bound = min(candidates, key=lambda pb: pb[1])
    return AnnealResult(
        float_point=tuple(best.tolist()),
        float_value=best_val,
        params=params,
        bound=bound,
        certified=bound <= TARGET,
        accepted=accepted,
        seed=config.seed,
    )


def anneal_chains(config: OptimizerConfig, chains: int = 4, workers: int = 1) -> AnnealResult:
    """Independent chains with seeds seed, seed+1, ...; the lowest exact bound wins (ties: lowest seed)."""
    if chains < 1:
        raise SidonError("chains must be >= 1")
    configs = [replace(config, seed=config.seed + i) for i in range(chains)]
    if workers > 1 and chains > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(anneal, configs))
    else:
        results = [anneal(c) for c in configs]
    return min(results, key=lambda r: (r.bound, r.seed))
