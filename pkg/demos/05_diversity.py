"""
Watching a swarm contract
=========================

Stagnation shows up as a collapse of population diversity, measured here as
the mean pairwise distance between bats. The bat loop can log its state
every generation, so the diversity, loudness and pulse rate can be followed
over a run.
"""

import numpy as np

from qbat.algorithms import AlgoConfig, run_ba, run_qba
from qbat.problems import get_problem

problem = get_problem("rastrigin", 10)
cfg = AlgoConfig(max_evaluations=6_000)

for label, runner, mode in [("ba", run_ba, "real"), ("qba", run_qba, "quat-norm")]:
    log = []
    rec = runner(problem, cfg.replace(encoding_mode=mode), np.random.default_rng(7), state_log=log)
    print(f"{label}: final best {rec.final_best_fitness:.4g}")
    for entry in log[:: len(log) // 6]:
        print(f"  gen {entry['t']:4d}  diversity {entry['diversity']:9.4f}"
              f"  mean loudness {np.mean(entry['loudness']):.3f}  mean pulse {np.mean(entry['pulse_rate']):.3f}")
