from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..encoding import EncodingMode
from ..problems import Problem

__all__ = ["AlgoConfig", "RunRecord", "ConfigError"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AlgoConfig:
    """Control parameters shared by all optimizers.

    Only the block relevant to the algorithm being run is read. ``limit=None``
    means the usual ABC default of ``(population_size // 2) * D``.
    ``max_evaluations=None`` means ``1000 * D``.
    """

    population_size: int = 30
    max_evaluations: Optional[int] = None
    # bat algorithm
    f_min: float = 0.0
    f_max: float = 2.0
    alpha: float = 0.9
    gamma: float = 0.9
    A_0: float = 1.0
    r_0: float = 0.5
    # differential evolution
    F: float = 0.5
    CR: float = 0.9
    # artificial bee colony
    limit: Optional[int] = None
    encoding_mode: EncodingMode = EncodingMode.REAL
    checkpoint_every: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "encoding_mode", EncodingMode.parse(self.encoding_mode))
        problems = []
        if not isinstance(self.population_size, int) or self.population_size < 2:
            problems.append("population_size must be an integer >= 2")
        if self.max_evaluations is not None and self.max_evaluations < 1:
            problems.append("max_evaluations must be positive")
        if not self.f_min < self.f_max:
            problems.append("f_min must be below f_max")
        if not 0.0 < self.alpha < 1.0:
            problems.append("alpha must lie in (0, 1)")
        if not self.gamma > 0.0:
            problems.append("gamma must be positive")
        if not self.A_0 > 0.0:
            problems.append("A_0 must be positive")
        if not 0.0 <= self.r_0 <= 1.0:
            problems.append("r_0 must lie in [0, 1]")
        if not self.F >= 0.0:
            problems.append("F must be nonnegative")
        if not 0.0 <= self.CR <= 1.0:
            problems.append("CR must lie in [0, 1]")
        if self.limit is not None and self.limit < 0:
            problems.append("limit must be nonnegative")
        if self.checkpoint_every is not None and self.checkpoint_every < 1:
            problems.append("checkpoint_every must be positive")
        if problems:
            raise ConfigError("; ".join(problems))

    def replace(self, **changes) -> "AlgoConfig":
        return dataclasses.replace(self, **changes)

    def budget(self, dim: int) -> int:
        return 1000 * dim if self.max_evaluations is None else self.max_evaluations

    def abc_limit(self, dim: int) -> int:
        return (self.population_size // 2) * dim if self.limit is None else self.limit

    def cadence(self) -> int:
        return self.population_size if self.checkpoint_every is None else self.checkpoint_every

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["encoding_mode"] = self.encoding_mode.value
        return d


@dataclass
class RunRecord:
    algorithm: str
    problem: str
    seed: Optional[int]
    encoding_mode: str
    trace: list = field(default_factory=list)
    final_best_fitness: float = math.inf
    final_best_phenotype: list = field(default_factory=list)
    evaluations_used: int = 0
    checkpoint_every: int = 0
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["trace"] = [[int(e), float(f)] for e, f in self.trace]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        d = dict(d)
        d["trace"] = [(int(e), float(f)) for e, f in d["trace"]]
        return cls(**d)

    def deterministic_dict(self) -> dict:
        d = self.to_dict()
        d.pop("wall_time")
        return d


class Tracker:
    """Counts evaluations, keeps the best point seen and logs checkpoints."""

    def __init__(self, problem: Problem, cfg: AlgoConfig, noise_rng=None):
        self.problem = problem
        self.noise_rng = noise_rng
        self.max_evaluations = cfg.budget(problem.dim)
        self.every = cfg.cadence()
        self.evaluations = 0
        self.best_fitness = math.inf
        self.best_phenotype: Optional[np.ndarray] = None
        self.trace: list[tuple[int, float]] = []

    @property
    def exhausted(self) -> bool:
        return self.evaluations >= self.max_evaluations

    def _record(self, x: np.ndarray, f: float) -> None:
        self.evaluations += 1
        if f <= self.best_fitness:
            self.best_fitness = f
            self.best_phenotype = np.array(x, dtype=float)
        if self.evaluations % self.every == 0:
            self.trace.append((self.evaluations, self.best_fitness))

    def evaluate(self, x: np.ndarray) -> float:
        f = self.problem.evaluate(x, self.noise_rng)
        self._record(x, f)
        return f

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        fs = np.asarray(self.problem.evaluate_many(X, self.noise_rng), dtype=float)
        if fs.size == 0:
            return fs
        # same outcome as calling _record per row: ties go to the later row
        running = np.minimum(np.minimum.accumulate(fs), self.best_fitness)
        counts = self.evaluations + np.arange(1, fs.size + 1)
        for k in np.flatnonzero(counts % self.every == 0):
            self.trace.append((int(counts[k]), float(running[k])))
        m = fs.min()
        if m <= self.best_fitness:
            last = fs.size - 1 - int(np.argmin(fs[::-1]))
            self.best_fitness = float(m)
            self.best_phenotype = np.array(X[last], dtype=float)
        self.evaluations += fs.size
        return fs

    def finish(self, algorithm: str, seed, mode: EncodingMode, wall_time: float) -> RunRecord:
        if not self.trace or self.trace[-1][0] != self.evaluations:
            self.trace.append((self.evaluations, self.best_fitness))
        return RunRecord(
            algorithm=algorithm,
            problem=self.problem.name,
            seed=seed,
            encoding_mode=mode.value,
            trace=list(self.trace),
            final_best_fitness=float(self.best_fitness),
            final_best_phenotype=[float(v) for v in self.best_phenotype],
            evaluations_used=self.evaluations,
            checkpoint_every=self.every,
            wall_time=wall_time,
        )
