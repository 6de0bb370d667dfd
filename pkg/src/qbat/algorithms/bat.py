"""Bat algorithm over real vectors (BA) and over quaternion vectors (QBA).

Both variants share one loop. Per generation ``t`` and bat ``i`` the random
draws happen in this fixed order:

1. ``beta``: frequency ``f_i = f_min + (f_max - f_min) * beta``
2. pulse draw ``u``: the local walk replaces the move when ``u > r_i``
3. walk draws, only if the walk fires: ``D`` uniforms (BA) or ``4 * D`` (QBA)
4. acceptance draw ``a``: the move is kept when ``a < A_i`` and it is no worse

Velocity and position updates:

    v_i <- v_i + (x_i - x_best) * f_i
    x'  <- x_i + v_i                      or  x_best + eps * mean(A)

For QBA every term is a length-``D`` vector of quaternions and the updates use
``qadd``, ``qsub`` and ``qscale``; ``eps`` is ``qrand(rng, 1)`` per coordinate.
On acceptance ``A_i <- alpha * A_i`` and ``r_i <- r_0 * (1 - exp(-gamma * t))``.
Pulse rates start at 0, the value of that formula at ``t = 0``.
"""

from __future__ import annotations

import math
import time
from typing import Optional

import numpy as np

from ..encoding import EncodingMode, decode, init_genotype
from ..problems import Problem
from ..quaternion import qadd, qrand, qscale, qsub
from ..stats import diversity
from .base import AlgoConfig, ConfigError, Tracker

__all__ = ["run_ba", "run_qba", "frequency"]


def frequency(beta: float, f_min: float, f_max: float) -> float:
    return f_min + (f_max - f_min) * beta


def _uniform_walk(rng, dim: int) -> np.ndarray:
    return -1.0 + 2.0 * np.asarray(rng.random(dim), dtype=float)


def _scalar_walk(rng, dim: int) -> np.ndarray:
    eps = np.zeros((dim, 4))
    eps[:, 0] = _uniform_walk(rng, dim)
    return eps


def _bat_search(
    problem: Problem,
    cfg: AlgoConfig,
    rng,
    *,
    quaternion: bool,
    init_population: Optional[np.ndarray],
    scalar_subalgebra: bool,
    noise_rng,
    state_log: Optional[list],
):
    mode = cfg.encoding_mode
    bounds = problem.bounds
    n, dim = cfg.population_size, problem.dim
    tracker = Tracker(problem, cfg, noise_rng)

    if quaternion:
        add, sub, scale = qadd, qsub, qscale
        walk = (lambda: _scalar_walk(rng, dim)) if scalar_subalgebra else (lambda: qrand(rng, 1.0, size=dim))
    else:
        add, sub, scale = np.add, np.subtract, np.multiply
        walk = lambda: _uniform_walk(rng, dim)  # noqa: E731

    if init_population is None:
        x = np.stack([init_genotype(rng, bounds, mode) for _ in range(n)])
    else:
        x = np.array(init_population, dtype=float)
        expected = (n, dim, 4) if quaternion else (n, dim)
        if x.shape != expected:
            raise ValueError(f"initial population has shape {x.shape}, expected {expected}")
        if scalar_subalgebra:
            x[..., 1:] = 0.0
    v = np.zeros_like(x)
    loud = np.full(n, cfg.A_0)
    pulse = np.zeros(n)

    fit = np.array([tracker.evaluate(decode(x[i], bounds, mode)) for i in range(n)])
    b = int(np.argmin(fit))
    best, best_fit = x[b].copy(), fit[b]

    t = 0
    while not tracker.exhausted:
        t += 1
        for i in range(n):
            f_i = frequency(rng.random(), cfg.f_min, cfg.f_max)
            v[i] = add(v[i], scale(f_i, sub(x[i], best)))
            cand = add(x[i], v[i])
            if rng.random() > pulse[i]:
                cand = add(best, scale(float(loud.mean()), walk()))
            cand = np.asarray(cand)
            fc = tracker.evaluate(decode(cand, bounds, mode))
            if rng.random() < loud[i] and fc <= fit[i]:
                x[i] = cand
                fit[i] = fc
                loud[i] *= cfg.alpha
                pulse[i] = cfg.r_0 * (1.0 - math.exp(-cfg.gamma * t))
            if fc <= best_fit:
                best, best_fit = cand.copy(), fc
        if state_log is not None:
            state_log.append({
                "t": t,
                "loudness": loud.copy(),
                "pulse_rate": pulse.copy(),
                "diversity": diversity(decode(x, bounds, mode)),
            })
    return tracker, best


def run_ba(
    problem: Problem,
    cfg: AlgoConfig,
    rng,
    *,
    seed: Optional[int] = None,
    init_population=None,
    noise_rng=None,
    state_log: Optional[list] = None,
):
    """Canonical bat algorithm on real vectors.

    ``init_population`` (shape ``(NP, D)``) replaces random initialisation.
    ``state_log``, if given, receives each generation's loudness, pulse
    rates and phenotype diversity.
    """
    if cfg.encoding_mode is not EncodingMode.REAL:
        raise ConfigError("ba runs on the real encoding only")
    start = time.perf_counter()
    tracker, _ = _bat_search(
        problem, cfg, rng,
        quaternion=False,
        init_population=init_population,
        scalar_subalgebra=False,
        noise_rng=rng if noise_rng is None else noise_rng,
        state_log=state_log,
    )
    return tracker.finish("ba", seed, cfg.encoding_mode, time.perf_counter() - start)


def run_qba(
    problem: Problem,
    cfg: AlgoConfig,
    rng,
    *,
    seed: Optional[int] = None,
    init_population=None,
    scalar_subalgebra: bool = False,
    noise_rng=None,
    state_log: Optional[list] = None,
):
    """Bat algorithm with every coordinate held as a quaternion.

    The global best is kept as a quaternion genotype, so the pull term
    ``x_i - x_best`` lives in quaternion space. Fitness is always taken on the
    decoded point.

    With ``scalar_subalgebra=True`` the ``i, j, k`` parts of the initial
    population are zeroed and the walk draws only scalar parts, which keeps
    every quantity on the real axis. Together with ``QUAT_NORM`` and a shared
    initial population this replays BA draw for draw on symmetric problems.
    """
    if not cfg.encoding_mode.is_quaternion:
        raise ConfigError("qba needs a quaternion encoding (quat-norm or quat-shifted-norm)")
    if scalar_subalgebra and init_population is None:
        raise ValueError("scalar_subalgebra needs an explicit init_population")
    start = time.perf_counter()
    tracker, _ = _bat_search(
        problem, cfg, rng,
        quaternion=True,
        init_population=init_population,
        scalar_subalgebra=scalar_subalgebra,
        noise_rng=rng if noise_rng is None else noise_rng,
        state_log=state_log,
    )
    return tracker.finish("qba", seed, cfg.encoding_mode, time.perf_counter() - start)
