"""Benchmark test functions (minimisation).

All functions are defined for any dimension ``D``. ``suite(dim)`` returns the
ten-function test bed used by the experiment harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .encoding import BoundsBox

__all__ = ["Problem", "suite", "get_problem", "PROBLEM_NAMES", "evaluate"]

# Minimum of -x*sin(sqrt|x|) on [-500, 500], attained at x ~ 420.968746.
SCHWEFEL_226_XSTAR = 420.9687
SCHWEFEL_226_FSTAR_PER_DIM = -418.982887272433799807913601398


def sphere(x, rng=None):
    return np.sum(x * x, axis=-1)


def rosenbrock(x, rng=None):
    a, b = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (b - a * a) ** 2 + (a - 1.0) ** 2, axis=-1)


def rastrigin(x, rng=None):
    return np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def griewank(x, rng=None):
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / np.sqrt(i)), axis=-1) + 1.0


def ackley(x, rng=None):
    d = x.shape[-1]
    a = -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x * x, axis=-1) / d))
    b = -np.exp(np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d)
    return a + b + 20.0 + np.e


def schwefel_226(x, rng=None):
    return -np.sum(x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def schwefel_12(x, rng=None):
    return np.sum(np.cumsum(x, axis=-1) ** 2, axis=-1)


def schwefel_222(x, rng=None):
    ax = np.abs(x)
    return np.sum(ax, axis=-1) + np.prod(ax, axis=-1)


def zakharov(x, rng=None):
    s = np.sum(0.5 * np.arange(1, x.shape[-1] + 1) * x, axis=-1)
    return np.sum(x * x, axis=-1) + s**2 + s**4


def quartic_noise(x, rng=None):
    """``sum(i * x_i^4) + U[0, 1)``; the noise term is 0 when ``rng`` is None.

    A stack of ``n`` points draws ``n`` noise values, one per point in order.
    """
    i = np.arange(1, x.shape[-1] + 1)
    base = np.sum(i * x**4, axis=-1)
    if rng is None:
        return base
    return base + (rng.random() if x.ndim == 1 else rng.random(x.shape[0]))


@dataclass(frozen=True, eq=False)
class Problem:
    name: str
    dim: int
    bounds: BoundsBox
    func: Callable = field(repr=False)
    f_star: float
    x_star: np.ndarray = field(repr=False)
    noisy: bool = False
    separable: bool = False

    def evaluate(self, x, rng=None) -> float:
        """Objective value at the in-box point ``x``.

        ``rng`` feeds the noise term of noisy problems and is ignored
        otherwise.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"{self.name}: expected a point of length {self.dim}, got shape {x.shape}")
        if not self.bounds.contains(x):
            raise ValueError(f"{self.name}: point lies outside the search box")
        return float(self.func(x, rng if self.noisy else None))

    def evaluate_many(self, X, rng=None) -> np.ndarray:
        """Row-wise :meth:`evaluate` over an ``(n, D)`` stack of points."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise ValueError(f"{self.name}: expected shape (n, {self.dim}), got {X.shape}")
        if np.any(X < self.bounds.lower) or np.any(X > self.bounds.upper):
            raise ValueError(f"{self.name}: point lies outside the search box")
        return np.asarray(self.func(X, rng if self.noisy else None), dtype=float)

    def __call__(self, x, rng=None) -> float:
        return self.evaluate(x, rng)

    @property
    def optimum_at_origin(self) -> bool:
        return bool(np.all(self.x_star == 0.0))

    @property
    def symmetric_domain(self) -> bool:
        return bool(np.all(self.bounds.lower == -self.bounds.upper))


def evaluate(p: Problem, x, rng=None) -> float:
    return p.evaluate(x, rng)


_TABLE = {
    # name: (func, low, high, x_star coordinate, f_star per dimension, noisy, separable)
    "sphere": (sphere, -100.0, 100.0, 0.0, 0.0, False, True),
    "rosenbrock": (rosenbrock, -30.0, 30.0, 1.0, 0.0, False, False),
    "rastrigin": (rastrigin, -5.12, 5.12, 0.0, 0.0, False, True),
    "griewank": (griewank, -600.0, 600.0, 0.0, 0.0, False, False),
    "ackley": (ackley, -32.0, 32.0, 0.0, 0.0, False, False),
    "schwefel_2_26": (schwefel_226, -500.0, 500.0, SCHWEFEL_226_XSTAR, SCHWEFEL_226_FSTAR_PER_DIM, False, True),
    "schwefel_1_2": (schwefel_12, -100.0, 100.0, 0.0, 0.0, False, False),
    "schwefel_2_22": (schwefel_222, -10.0, 10.0, 0.0, 0.0, False, False),
    "zakharov": (zakharov, -5.0, 10.0, 0.0, 0.0, False, False),
    "quartic_noise": (quartic_noise, -1.28, 1.28, 0.0, 0.0, True, False),
}

PROBLEM_NAMES = tuple(_TABLE)


def get_problem(name: str, dim: int = 10) -> Problem:
    try:
        func, low, high, xs, fs, noisy, separable = _TABLE[name]
    except KeyError:
        raise KeyError(f"unknown problem {name!r}") from None
    if dim < 1 or (name == "rosenbrock" and dim < 2):
        raise ValueError(f"{name} needs a larger dimension than {dim}")
    return Problem(
        name=name,
        dim=dim,
        bounds=BoundsBox.uniform(low, high, dim),
        func=func,
        f_star=fs * dim,
        x_star=np.full(dim, xs),
        noisy=noisy,
        separable=separable,
    )


def suite(dim: int = 10) -> list[Problem]:
    return [get_problem(name, dim) for name in PROBLEM_NAMES]


def format_problem_table(problems: Optional[list[Problem]] = None) -> str:
    """One line per problem: name, D, bounds, f_star."""
    problems = suite() if problems is None else problems
    lines = [f"{'name':<16}{'D':>4}  {'lower':>10}  {'upper':>10}  {'f_star':>18}"]
    for p in problems:
        lo, hi = p.bounds.lower[0], p.bounds.upper[0]
        lines.append(f"{p.name:<16}{p.dim:>4}  {lo:>10g}  {hi:>10g}  {p.f_star:>18.10g}")
    return "\n".join(lines)
