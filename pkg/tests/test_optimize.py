import math
from fractions import Fraction

import pytest

from sidonkit.bounds import REFERENCE_BOUND, REFERENCE_PARAMS, BfrParams, combined_bound, variance_bound
from sidonkit.core import SidonError
from sidonkit.optimize import (
    REFERENCE_POINT,
    TARGET,
    NoValidPoint,
    OptimizerConfig,
    anneal,
    anneal_chains,
    certify,
    objective,
)


def test_objective_at_reference_point():
    assert objective(REFERENCE_POINT) == pytest.approx(float(REFERENCE_BOUND), abs=1e-12)
    assert objective(REFERENCE_POINT) < 1.99405


def test_objective_invalid_points():
    assert objective((1, 0.25, 1.0, 0.2)) == math.inf
    assert objective((-1, 0.25, 0.5, 0.2)) == math.inf
    assert objective((1, 0.25, 0.5, 0.0)) == math.inf


def test_variance_branch_tends_to_two():
    # with tau = 1 and alpha -> 0 the delta correction vanishes
    for al in (Fraction(1, 10**3), Fraction(1, 10**6)):
        p = BfrParams(1, al, Fraction(1, 2), Fraction(1, 4), 1)
        assert abs(variance_bound(p) - 2) <= 2 * al * al


def test_zero_steps_reproduces_reference():
    r = anneal(OptimizerConfig(steps=0))
    assert r.params == REFERENCE_PARAMS and r.bound == REFERENCE_BOUND
    assert r.certified


def test_seeded_run_certifies():
    r = anneal(OptimizerConfig(steps=5000, seed=1))
    assert r.bound <= TARGET and r.certified
    # the certificate is the exact bound at the emitted rational point
    assert combined_bound(r.params).combined == r.bound
    assert r.bound <= REFERENCE_BOUND


def test_reproducible():
    cfg = OptimizerConfig(steps=2000, seed=5)
    assert anneal(cfg) == anneal(cfg)


def test_seeds_agree():
    vals = [float(anneal(OptimizerConfig(steps=20000, seed=s)).bound) for s in range(4)]
    assert max(vals) - min(vals) < 1e-4


def test_chains_best_of():
    cfg = OptimizerConfig(steps=1500, seed=10)
    best = anneal_chains(cfg, chains=3)
    singles = [anneal(OptimizerConfig(steps=1500, seed=s)) for s in (10, 11, 12)]
    assert best.bound == min(r.bound for r in singles)


def test_certify():
    params, bound = certify(REFERENCE_POINT)
    assert bound == REFERENCE_BOUND
    assert certify((1, 0.25, 1.0, 0.2)) is None
    # rationalization under a small cap
    params, _ = certify((1.0172, 0.2508, 0.5478, 0.2287), cap=1000)
    assert all(v.denominator <= 1000 for v in (params.tau, params.alpha, params.beta, params.tau2))


def test_no_valid_point():
    with pytest.raises(NoValidPoint):
        anneal(OptimizerConfig(steps=50, start=(1, 0.25, 1.5, 0.2)))


def test_config_validation():
    with pytest.raises(SidonError):
        OptimizerConfig(steps=-1)
    with pytest.raises(SidonError):
        OptimizerConfig(cooling=0)


def test_parallel_chains_equal_serial():
    cfg = OptimizerConfig(steps=500, seed=3)
    assert anneal_chains(cfg, chains=2, workers=2) == anneal_chains(cfg, chains=2)
