"""DE/rand/1/bin."""

from __future__ import annotations

import time
from typing import Optional

import numpy as np

from ..encoding import EncodingMode, init_genotype
from ..problems import Problem
from .base import AlgoConfig, ConfigError, Tracker

__all__ = ["run_de", "mutant", "binomial_crossover"]


def mutant(base, diff_a, diff_b, F: float) -> np.ndarray:
    return np.asarray(base) + F * (np.asarray(diff_a) - np.asarray(diff_b))


def binomial_crossover(target, donor, CR: float, j_rand: int, u) -> np.ndarray:
    """Take ``donor[j]`` where ``u[j] < CR`` or ``j == j_rand``, else ``target[j]``."""
    take = np.asarray(u) < CR
    take[j_rand] = True
    return np.where(take, donor, target)


def _partners(rng, n: int) -> np.ndarray:
    """Row ``i`` holds three distinct indices from ``{0..n-1}`` without ``i``."""
    r = rng.random((n, n - 1)).argsort(axis=1)[:, :3]
    return r + (r >= np.arange(n)[:, None])


def run_de(
    problem: Problem,
    cfg: AlgoConfig,
    rng,
    *,
    seed: Optional[int] = None,
    noise_rng=None,
):
    """Differential evolution with random base vector and binomial crossover.

    Selection is generational: all trials of a generation are built from the
    parent population, then each replaces its target if it is no worse.
    Trials are clamped to the box.
    """
    if cfg.encoding_mode is not EncodingMode.REAL:
        raise ConfigError("de runs on the real encoding only")
    if cfg.population_size < 4:
        raise ConfigError("de needs population_size >= 4 (target plus three distinct partners)")
    start = time.perf_counter()
    bounds = problem.bounds
    n, dim = cfg.population_size, problem.dim
    tracker = Tracker(problem, cfg, rng if noise_rng is None else noise_rng)

    pop = np.stack([init_genotype(rng, bounds, EncodingMode.REAL) for _ in range(n)])
    fit = tracker.evaluate_many(pop)

    while not tracker.exhausted:
        r1, r2, r3 = _partners(rng, n).T
        j_rand = rng.integers(dim, size=n)
        u = rng.random((n, dim))
        donor = mutant(pop[r1], pop[r2], pop[r3], cfg.F)
        take = u < cfg.CR
        take[np.arange(n), j_rand] = True
        trials = bounds.clip(np.where(take, donor, pop))
        trial_fit = tracker.evaluate_many(trials)
        keep = trial_fit <= fit
        pop[keep] = trials[keep]
        fit[keep] = trial_fit[keep]

    return tracker.finish("de", seed, cfg.encoding_mode, time.perf_counter() - start)
