"""
One problem, two bat algorithms
===============================

The quaternion bat algorithm keeps the same update rules as the classic one
but moves in quaternion space. Here both run on the same seeds on a
shifted-optimum problem and a centred one, and the final fitness values are
compared with a rank-sum test.
"""

import numpy as np

from qbat.algorithms import AlgoConfig, default_quaternion_mode, run
from qbat.problems import get_problem
from qbat.stats import ranksum, summarize

for name in ["sphere", "rosenbrock"]:
    problem = get_problem(name, 10)
    mode = default_quaternion_mode(problem)
    ba = [run("ba", problem, AlgoConfig(), seed).final_best_fitness for seed in range(1, 11)]
    qba = [run("qba", problem, AlgoConfig(encoding_mode=mode), seed).final_best_fitness for seed in range(1, 11)]
    test = ranksum(qba, ba)
    print(f"{name} (qba uses {mode.value})")
    print(f"  ba  mean {summarize(ba).mean:12.4g}   median {np.median(ba):12.4g}")
    print(f"  qba mean {summarize(qba).mean:12.4g}   median {np.median(qba):12.4g}")
    print(f"  rank-sum p = {test.p_value:.3g}")
