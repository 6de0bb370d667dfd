"""Sample summaries, the Wilcoxon rank-sum test and population diversity."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy.spatial.distance import pdist
from scipy.stats import rankdata

__all__ = [
    "SampleSummary",
    "TestResult",
    "summarize",
    "ranksum",
    "diversity",
    "success_rate",
    "EXACT_LIMIT",
]

# Exact null enumeration is used up to this combined sample size (C(12, 6) = 924 subsets).
EXACT_LIMIT = 12


@dataclass(frozen=True)
class SampleSummary:
    n: int
    mean: float
    std: float
    median: float
    best: float
    worst: float


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    method: str


def summarize(values: Iterable[float]) -> SampleSummary:
    a = np.asarray(list(values), dtype=float)
    if a.size == 0:
        raise ValueError("cannot summarise an empty sample")
    return SampleSummary(
        n=int(a.size),
        mean=float(a.mean()),
        std=float(a.std(ddof=1)) if a.size > 1 else 0.0,
        median=float(np.median(a)),
        best=float(a.min()),
        worst=float(a.max()),
    )


def _exact_p(ranks: np.ndarray, n_a: int, w_obs: float) -> float:
    # rank sums of every n_a-subset of the pooled ranks
    n = ranks.size
    sums = [ranks[list(c)].sum() for c in itertools.combinations(range(n), n_a)]
    sums = np.asarray(sums)
    total = sums.size
    lower = np.count_nonzero(sums <= w_obs + 1e-9) / total
    upper = np.count_nonzero(sums >= w_obs - 1e-9) / total
    return min(1.0, 2.0 * min(lower, upper))


def ranksum(a, b, *, method: Optional[str] = None) -> TestResult:
    """Two-sided Wilcoxon rank-sum (Mann-Whitney) test.

    The statistic is the Mann-Whitney ``U`` of ``a``. Without ties and with
    ``len(a) + len(b) <= 12`` the p-value comes from enumerating the null
    distribution; otherwise from the normal approximation with tie and
    continuity corrections. ``method`` forces ``"exact"`` or ``"normal"``.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size == 0 or b.size == 0:
        raise ValueError("ranksum needs two nonempty samples")
    n_a, n_b = a.size, b.size
    n = n_a + n_b
    pooled = np.concatenate([a, b])
    ranks = rankdata(pooled)
    w = float(ranks[:n_a].sum())
    u = w - n_a * (n_a + 1) / 2.0
    has_ties = np.unique(pooled).size < n

    if method is None:
        method = "exact" if (n <= EXACT_LIMIT and not has_ties) else "normal"
    if method == "exact":
        if has_ties:
            raise ValueError("exact enumeration is only defined here for tie-free samples")
        return TestResult(u, _exact_p(ranks, n_a, w), "ranksum-exact")
    if method != "normal":
        raise ValueError(f"unknown method {method!r}")

    mu = n_a * n_b / 2.0
    _, counts = np.unique(pooled, return_counts=True)
    tie_term = float(np.sum(counts**3 - counts)) / (n * (n - 1)) if n > 1 else 0.0
    var = n_a * n_b / 12.0 * ((n + 1) - tie_term)
    if var <= 0.0:
        return TestResult(u, 1.0, "ranksum-normal")
    z = max(abs(u - mu) - 0.5, 0.0) / math.sqrt(var)
    p = math.erfc(z / math.sqrt(2.0))
    return TestResult(u, min(1.0, p), "ranksum-normal")


def diversity(phenotypes) -> float:
    """Mean pairwise Euclidean distance between the rows of an ``(NP, D)`` array."""
    X = np.asarray(phenotypes, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("diversity needs at least two phenotypes in an (NP, D) array")
    return float(pdist(X).mean())


def success_rate(runs, epsilon: float, f_star: Optional[float] = None) -> float:
    """Fraction of runs ending within ``epsilon`` of the known optimum.

    ``f_star`` defaults to the registered problem's optimum at the runs'
    dimension.
    """
    runs = list(runs)
    if not runs:
        raise ValueError("no runs given")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    names = {r.problem for r in runs}
    if len(names) != 1:
        raise ValueError(f"runs mix several problems: {sorted(names)}")
    if f_star is None:
        from .problems import get_problem

        f_star = get_problem(runs[0].problem, len(runs[0].final_best_phenotype)).f_star
    hits = sum(1 for r in runs if r.final_best_fitness - f_star <= epsilon)
    return hits / len(runs)
