"""
A small benchmark matrix
========================

The harness runs every (algorithm, problem, seed) combination, stores one
JSON line per run and builds a summary with win/tie/loss marks for QBA
against every other algorithm. This is the same path as ``qbat run`` and
``qbat report``, shrunk to three runs on five-dimensional problems.

With three runs a side the smallest two-sided rank-sum p-value is 0.1, so
every mark comes out as a tie. Significance needs more runs; the default is
25.
"""

import tempfile
from pathlib import Path

from qbat import harness

out = Path(tempfile.mkdtemp()) / "results"
cfg = harness.parse_config({
    "algorithms": ["ba", "qba", "de", "abc"],
    "problems": ["sphere", "rastrigin", "griewank", "zakharov"],
    "dimension": 5,
    "runs_per_cell": 3,
    "output_dir": str(out),
})
result = harness.execute(cfg)
print(f"{len(result.records)} runs written to {out}")

report = harness.report_dir(out)
print(report.to_text())

paths = harness.emit_convergence(result.records, out.parent / "curves")
print("convergence curves:", *[p.name for p in paths], sep="\n  ")
