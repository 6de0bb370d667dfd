"""Optimizers behind one calling convention.

``run(algorithm_id, problem, cfg, rng_or_seed)`` dispatches on the ids
``"ba"``, ``"qba"``, ``"de"`` and ``"abc"``. Passing an integer seed builds a
search stream and a separate noise stream from it; passing a stream uses it
for everything.
"""

from __future__ import annotations

import numbers

from ..encoding import EncodingMode
from ..problems import Problem
from ..streams import make_streams
from .abc import food_quality, neighbour, onlooker_probabilities, run_abc
from .base import AlgoConfig, ConfigError, RunRecord
from .bat import frequency, run_ba, run_qba
from .de import binomial_crossover, mutant, run_de

__all__ = [
    "ALGORITHMS",
    "AlgoConfig",
    "ConfigError",
    "RunRecord",
    "run",
    "run_ba",
    "run_qba",
    "run_de",
    "run_abc",
    "default_quaternion_mode",
    "frequency",
    "mutant",
    "binomial_crossover",
    "food_quality",
    "onlooker_probabilities",
    "neighbour",
]

ALGORITHMS = {"ba": run_ba, "qba": run_qba, "de": run_de, "abc": run_abc}


def default_quaternion_mode(problem: Problem) -> EncodingMode:
    """Quaternion decode chosen from the problem definition alone.

    Plain norm decoding on boxes symmetric about the origin whose known
    optimum is the origin; shifted norm decoding everywhere else.
    """
    if problem.symmetric_domain and problem.optimum_at_origin:
        return EncodingMode.QUAT_NORM
    return EncodingMode.QUAT_SHIFTED_NORM


def run(algorithm_id: str, problem: Problem, cfg: AlgoConfig, rng) -> RunRecord:
    try:
        fn = ALGORITHMS[algorithm_id]
    except KeyError:
        raise ConfigError(f"unknown algorithm {algorithm_id!r}") from None
    if isinstance(rng, numbers.Integral):
        seed = int(rng)
        search, noise = make_streams(seed)
        return fn(problem, cfg, search, seed=seed, noise_rng=noise)
    return fn(problem, cfg, rng)
