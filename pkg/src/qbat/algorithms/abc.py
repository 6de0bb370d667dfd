"""Artificial bee colony.

``population_size // 2`` food sources. Each cycle runs an employed phase (one
neighbour move per source), an onlooker phase (as many moves again, sources
picked by roulette on fitness quality) and a scout phase that restarts every
source whose trial counter exceeds ``limit``. The budget is checked before
each evaluation, so a run stops exactly at ``max_evaluations``.
"""

from __future__ import annotations

import time
from typing import Optional

import numpy as np

from ..encoding import EncodingMode, init_genotype
from ..problems import Problem
from .base import AlgoConfig, ConfigError, Tracker

__all__ = ["run_abc", "food_quality", "onlooker_probabilities", "neighbour"]


class _BudgetSpent(Exception):
    pass


def food_quality(f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    return np.where(f >= 0.0, 1.0 / (1.0 + np.abs(f)), 1.0 + np.abs(f))


def onlooker_probabilities(f) -> np.ndarray:
    q = food_quality(f)
    return q / q.sum()


def neighbour(x_i, x_k, j: int, phi: float) -> np.ndarray:
    """Copy of ``x_i`` with coordinate ``j`` moved by ``phi * (x_ij - x_kj)``."""
    v = np.array(x_i, dtype=float)
    v[j] = x_i[j] + phi * (x_i[j] - x_k[j])
    return v


def run_abc(
    problem: Problem,
    cfg: AlgoConfig,
    rng,
    *,
    seed: Optional[int] = None,
    noise_rng=None,
):
    if cfg.encoding_mode is not EncodingMode.REAL:
        raise ConfigError("abc runs on the real encoding only")
    if cfg.population_size < 4:
        raise ConfigError("abc needs population_size >= 4 (at least two food sources)")
    start = time.perf_counter()
    bounds = problem.bounds
    sn, dim = cfg.population_size // 2, problem.dim
    limit = cfg.abc_limit(dim)
    tracker = Tracker(problem, cfg, rng if noise_rng is None else noise_rng)

    def evaluate(x):
        if tracker.exhausted:
            raise _BudgetSpent
        return tracker.evaluate(x)

    foods = np.empty((sn, dim))
    fit = np.empty(sn)
    trials = np.zeros(sn, dtype=int)

    def try_move(i):
        k = int(rng.integers(sn - 1))
        k += k >= i
        j = int(rng.integers(dim))
        phi = -1.0 + 2.0 * rng.random()
        cand = bounds.clip(neighbour(foods[i], foods[k], j, phi))
        fc = evaluate(cand)
        # equal fitness may replace the source but does not reset its counter
        if fc < fit[i]:
            trials[i] = 0
        else:
            trials[i] += 1
        if fc <= fit[i]:
            foods[i], fit[i] = cand, fc

    try:
        for i in range(sn):
            foods[i] = init_genotype(rng, bounds, EncodingMode.REAL)
            fit[i] = evaluate(foods[i])
        while not tracker.exhausted:
            for i in range(sn):
                try_move(i)
            cum = np.cumsum(onlooker_probabilities(fit))
            for _ in range(sn):
                i = min(int(np.searchsorted(cum, rng.random() * cum[-1], side="right")), sn - 1)
                try_move(i)
            for i in np.flatnonzero(trials > limit):
                foods[i] = init_genotype(rng, bounds, EncodingMode.REAL)
                fit[i] = evaluate(foods[i])
                trials[i] = 0
    except _BudgetSpent:
        pass

    return tracker.finish("abc", seed, cfg.encoding_mode, time.perf_counter() - start)
