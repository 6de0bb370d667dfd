"""Experiment matrix runner, result persistence and reporting.

Results directory layout (one *group* per algorithm/problem pair)::

    <output_dir>/<algorithm>__<problem>.jsonl      one RunRecord per line, in run order
    <output_dir>/<algorithm>__<problem>.trace.csv  seed, evaluations, best_fitness
    <output_dir>/summary.json, report.txt          written by ``report``

Run ``k`` of every group uses seed ``base_seed + k``, so all algorithms see the
same seeds and can be compared pairwise.
"""

from __future__ import annotations

import csv
import json
import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .algorithms import ALGORITHMS, AlgoConfig, ConfigError, RunRecord, default_quaternion_mode, run
from .encoding import EncodingMode
from .problems import PROBLEM_NAMES, get_problem
from .stats import SampleSummary, ranksum, summarize

log = logging.getLogger(__name__)

__all__ = [
    "ExperimentConfig",
    "ConfigParseError",
    "ConfigValidationError",
    "load_config",
    "parse_config",
    "execute",
    "load_records",
    "report",
    "Report",
    "emit_convergence",
]

_TOP_KEYS = {
    "algorithms",
    "problems",
    "dimension",
    "runs_per_cell",
    "base_seed",
    "output_dir",
    "checkpoint_every",
    "workers",
    "algorithm_config",
}
_ALGO_KEYS = set(AlgoConfig.__dataclass_fields__) - {"checkpoint_every"}


class ConfigParseError(ValueError):
    pass


class ConfigValidationError(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("invalid experiment config: " + "; ".join(errors))


@dataclass
class ExperimentConfig:
    algorithms: list[str]
    problems: list[str]
    dimension: int = 10
    runs_per_cell: int = 25
    base_seed: int = 1
    output_dir: Path = Path("results")
    checkpoint_every: Optional[int] = None
    workers: int = 1
    algorithm_config: dict = field(default_factory=dict)

    def algo_config(self, algorithm: str, problem) -> AlgoConfig:
        """Resolved control parameters for one group.

        ``encoding_mode`` may be ``"auto"`` (the default for ``qba``), which
        picks the quaternion decode from the problem definition.
        """
        block = dict(self.algorithm_config.get(algorithm, {}))
        mode = block.pop("encoding_mode", "auto" if algorithm == "qba" else "real")
        if mode == "auto":
            mode = default_quaternion_mode(problem) if algorithm == "qba" else EncodingMode.REAL
        return AlgoConfig(encoding_mode=mode, checkpoint_every=self.checkpoint_every, **block)

    def to_dict(self) -> dict:
        return {
            "algorithms": list(self.algorithms),
            "problems": list(self.problems),
            "dimension": self.dimension,
            "runs_per_cell": self.runs_per_cell,
            "base_seed": self.base_seed,
            "output_dir": str(self.output_dir),
            "checkpoint_every": self.checkpoint_every,
            "workers": self.workers,
            "algorithm_config": self.algorithm_config,
        }


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def parse_config(raw: dict) -> ExperimentConfig:
    """Validate a decoded JSON config and fill in defaults.

    Every problem found is reported at once in a :class:`ConfigValidationError`.
    """
    if not isinstance(raw, dict):
        raise ConfigValidationError(["config must be a JSON object"])
    errors = []
    for key in sorted(set(raw) - _TOP_KEYS):
        errors.append(f"unknown key {key!r}")

    algorithms = raw.get("algorithms")
    if not isinstance(algorithms, list) or not algorithms:
        errors.append("algorithms: must be a nonempty list")
        algorithms = []
    for a in algorithms:
        if a not in ALGORITHMS:
            errors.append(f"algorithms: unknown algorithm {a!r}")
    if len(set(algorithms)) != len(algorithms):
        errors.append("algorithms: duplicates")

    problems = raw.get("problems", "all")
    if problems == "all":
        problems = list(PROBLEM_NAMES)
    elif isinstance(problems, list) and problems:
        for p in problems:
            if p not in PROBLEM_NAMES:
                errors.append(f"problems: unknown problem {p!r}")
    else:
        errors.append('problems: must be "all" or a nonempty list of names')
        problems = []

    dimension = raw.get("dimension", 10)
    if not _is_int(dimension) or dimension < 2:
        errors.append("dimension: must be an integer >= 2")
    runs = raw.get("runs_per_cell", 25)
    if not _is_int(runs) or runs < 1:
        errors.append("runs_per_cell: must be an integer >= 1")
    base_seed = raw.get("base_seed", 1)
    if not _is_int(base_seed) or base_seed < 0:
        errors.append("base_seed: must be a nonnegative integer")
    every = raw.get("checkpoint_every")
    if every is not None and (not _is_int(every) or every < 1):
        errors.append("checkpoint_every: must be a positive integer or null")
    workers = raw.get("workers", 1)
    if not _is_int(workers) or workers < 1:
        errors.append("workers: must be a positive integer")
    output_dir = raw.get("output_dir", "results")
    if not isinstance(output_dir, str) or not output_dir:
        errors.append("output_dir: must be a nonempty string")

    blocks = raw.get("algorithm_config", {})
    if not isinstance(blocks, dict):
        errors.append("algorithm_config: must be an object keyed by algorithm id")
        blocks = {}
    for alg, block in blocks.items():
        if alg not in ALGORITHMS:
            errors.append(f"algorithm_config: unknown algorithm {alg!r}")
            continue
        if not isinstance(block, dict):
            errors.append(f"algorithm_config.{alg}: must be an object")
            continue
        for key in sorted(set(block) - _ALGO_KEYS):
            errors.append(f"algorithm_config.{alg}: unknown key {key!r}")
        mode = block.get("encoding_mode")
        if mode is not None and mode != "auto":
            try:
                EncodingMode.parse(mode)
            except ValueError as exc:
                errors.append(f"algorithm_config.{alg}.encoding_mode: {exc}")
        try:
            AlgoConfig(**{k: v for k, v in block.items() if k in _ALGO_KEYS and k != "encoding_mode"})
        except (ConfigError, TypeError) as exc:
            errors.append(f"algorithm_config.{alg}: {exc}")

    if errors:
        raise ConfigValidationError(errors)

    cfg = ExperimentConfig(
        algorithms=list(algorithms),
        problems=list(problems),
        dimension=dimension,
        runs_per_cell=runs,
        base_seed=base_seed,
        output_dir=Path(output_dir),
        checkpoint_every=every,
        workers=workers,
        algorithm_config={k: dict(v) for k, v in blocks.items()},
    )
    # encoding/algorithm compatibility is only knowable per problem
    for alg in cfg.algorithms:
        for name in cfg.problems:
            acfg = cfg.algo_config(alg, get_problem(name, cfg.dimension))
            if (alg == "qba") != acfg.encoding_mode.is_quaternion:
                errors.append(f"algorithm_config.{alg}.encoding_mode: {acfg.encoding_mode.value!r} not usable by {alg}")
                break
    if errors:
        raise ConfigValidationError(errors)
    return cfg


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    return parse_config(raw)


# -- execution ---------------------------------------------------------------


def _group_stem(algorithm: str, problem: str) -> str:
    return f"{algorithm}__{problem}"


def _dumps(record: RunRecord) -> str:
    return json.dumps(record.to_dict(), sort_keys=True)


def _read_completed(path: Path, expected_seeds: list[int]) -> list[RunRecord]:
    """Records already on disk that form a prefix of the expected run order."""
    if not path.exists():
        return []
    done = []
    for line in path.read_text().splitlines():
        if len(done) == len(expected_seeds):
            break
        try:
            rec = RunRecord.from_dict(json.loads(line))
        except (json.JSONDecodeError, TypeError, KeyError):
            break
        if rec.seed != expected_seeds[len(done)]:
            break
        done.append(rec)
    return done


def _write_trace_csv(path: Path, records: list[RunRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seed", "evaluations", "best_fitness"])
        for rec in records:
            for evals, best in rec.trace:
                w.writerow([rec.seed, evals, repr(float(best))])


def _run_group(cfg: ExperimentConfig, algorithm: str, problem_name: str) -> list[RunRecord]:
    problem = get_problem(problem_name, cfg.dimension)
    acfg = cfg.algo_config(algorithm, problem)
    out = Path(cfg.output_dir)
    stem = _group_stem(algorithm, problem_name)
    jsonl = out / f"{stem}.jsonl"
    seeds = [cfg.base_seed + k for k in range(cfg.runs_per_cell)]

    records = _read_completed(jsonl, seeds)
    # drop anything after the valid prefix, e.g. a half-written line
    with open(jsonl, "w") as fh:
        fh.writelines(_dumps(r) + "\n" for r in records)
    if records:
        log.info("%s: resuming after %d completed runs", stem, len(records))

    with open(jsonl, "a") as fh:
        for seed in seeds[len(records):]:
            rec = run(algorithm, problem, acfg, seed)
            fh.write(_dumps(rec) + "\n")
            fh.flush()
            records.append(rec)
    _write_trace_csv(out / f"{stem}.trace.csv", records)
    return records


@dataclass
class ExecutionResult:
    records: list[RunRecord]
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def execute(cfg: ExperimentConfig, workers: Optional[int] = None) -> ExecutionResult:
    """Run every (algorithm, problem, run) combination, resuming finished work.

    Groups run in parallel when ``workers > 1``; output files do not depend
    on the degree of parallelism. A group that fails is reported in
    ``failures`` and the others still complete.
    """
    workers = cfg.workers if workers is None else workers
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "experiment.json").write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")

    groups = [(a, p) for a in cfg.algorithms for p in cfg.problems]
    results: dict = {}
    failures: dict = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {g: pool.submit(_run_group, cfg, *g) for g in groups}
            for g, fut in futures.items():
                try:
                    results[g] = fut.result()
                except Exception as exc:  # noqa: BLE001 - reported per group
                    failures[g] = repr(exc)
    else:
        for g in groups:
            try:
                results[g] = _run_group(cfg, *g)
            except Exception as exc:  # noqa: BLE001
                failures[g] = repr(exc)
    for g, msg in failures.items():
        log.error("group %s failed: %s", _group_stem(*g), msg)
    records = [r for g in groups if g in results for r in results[g]]
    return ExecutionResult(records, failures)


def load_records(results_dir: Union[str, Path]) -> list[RunRecord]:
    records = []
    for path in sorted(Path(results_dir).glob("*.jsonl")):
        for line in path.read_text().splitlines():
            if line.strip():
                records.append(RunRecord.from_dict(json.loads(line)))
    return records


# -- reporting ---------------------------------------------------------------


@dataclass
class Comparison:
    problem: str
    reference: str
    other: str
    p_value: float
    mark: str  # "win" / "tie" / "loss" from the reference algorithm's side
    reference_mean: float
    other_mean: float


@dataclass
class Report:
    summaries: dict  # (algorithm, problem) -> SampleSummary
    comparisons: list
    reference: str
    alpha: float

    def tally(self) -> dict:
        """``{other: {"win": n, "tie": n, "loss": n}}`` for the reference algorithm."""
        out: dict = defaultdict(lambda: {"win": 0, "tie": 0, "loss": 0})
        for c in self.comparisons:
            out[c.other][c.mark] += 1
        return dict(out)

    def to_dict(self) -> dict:
        return {
            "reference": self.reference,
            "alpha": self.alpha,
            "summaries": [
                {"algorithm": a, "problem": p, **vars(s)} for (a, p), s in sorted(self.summaries.items())
            ],
            "comparisons": [vars(c) for c in self.comparisons],
            "tally": self.tally(),
        }

    def to_text(self) -> str:
        lines = ["Final best fitness per algorithm and problem", ""]
        head = f"{'problem':<16}{'algorithm':<10}{'n':>4}{'mean':>13}{'std':>12}{'median':>13}{'best':>13}{'worst':>13}"
        lines += [head, "-" * len(head)]
        for (alg, prob), s in sorted(self.summaries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            lines.append(
                f"{prob:<16}{alg:<10}{s.n:>4}{s.mean:>13.5g}{s.std:>12.4g}{s.median:>13.5g}{s.best:>13.5g}{s.worst:>13.5g}"
            )
        lines += ["", f"Rank-sum comparisons, {self.reference} vs others (alpha = {self.alpha})", ""]
        if not self.comparisons:
            lines.append("(no comparisons)")
        else:
            head = f"{'problem':<16}{'other':<8}{self.reference + ' mean':>14}{'other mean':>14}{'p':>12}  mark"
            lines += [head, "-" * len(head)]
            for c in self.comparisons:
                lines.append(
                    f"{c.problem:<16}{c.other:<8}{c.reference_mean:>14.5g}{c.other_mean:>14.5g}{c.p_value:>12.3g}  {c.mark}"
                )
            lines.append("")
            for other, t in sorted(self.tally().items()):
                lines.append(f"{self.reference} vs {other}: {t['win']} win / {t['tie']} tie / {t['loss']} loss")
        return "\n".join(lines) + "\n"


def report(records: Iterable[RunRecord], reference: str = "qba", alpha: float = 0.05) -> Report:
    """Summaries per (algorithm, problem) and rank-sum tests of ``reference``
    against every other algorithm on each problem."""
    records = list(records)
    if not records:
        raise ValueError("no run records to report on")
    finals: dict = defaultdict(list)
    for r in records:
        finals[(r.algorithm, r.problem)].append(r.final_best_fitness)
    summaries = {key: summarize(v) for key, v in finals.items()}

    comparisons = []
    algorithms = sorted({a for a, _ in finals})
    problems = sorted({p for _, p in finals})
    for prob in problems:
        ref = finals.get((reference, prob))
        if ref is None:
            continue
        for other in algorithms:
            if other == reference or (other, prob) not in finals:
                continue
            oth = finals[(other, prob)]
            res = ranksum(ref, oth)
            if res.p_value >= alpha:
                mark = "tie"
            else:
                # U counts pairs where the reference value is larger
                mark = "win" if res.statistic < len(ref) * len(oth) / 2.0 else "loss"
            comparisons.append(
                Comparison(prob, reference, other, res.p_value, mark, float(np.mean(ref)), float(np.mean(oth)))
            )
    return Report(summaries, comparisons, reference, alpha)


def report_dir(results_dir: Union[str, Path], reference: str = "qba", alpha: float = 0.05) -> Report:
    """Report on every record in a results directory and write
    ``summary.json`` and ``report.txt`` next to them."""
    results_dir = Path(results_dir)
    rep = report(load_records(results_dir), reference, alpha)
    (results_dir / "summary.json").write_text(json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n")
    (results_dir / "report.txt").write_text(rep.to_text())
    return rep


# -- convergence data --------------------------------------------------------


class CadenceMismatch(ValueError):
    pass


def convergence_table(records: list[RunRecord]) -> tuple[np.ndarray, np.ndarray]:
    """``(evaluations, mean_best)`` across runs sharing one checkpoint grid."""
    if not records:
        raise ValueError("no run records")
    grid = [e for e, _ in records[0].trace]
    for r in records:
        if r.checkpoint_every != records[0].checkpoint_every or [e for e, _ in r.trace] != grid:
            raise CadenceMismatch(f"{r.algorithm}/{r.problem} seed {r.seed}: checkpoint grid differs")
    best = np.array([[f for _, f in r.trace] for r in records])
    return np.array(grid), best.mean(axis=0)


def emit_convergence(records: Iterable[RunRecord], out_dir: Union[str, Path]) -> list[Path]:
    """Write ``<algorithm>__<problem>.convergence.csv`` files with the mean
    best-so-far fitness at every checkpoint."""
    records = list(records)
    if not records:
        raise ValueError("no run records")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    groups: dict = defaultdict(list)
    for r in records:
        groups[(r.algorithm, r.problem)].append(r)
    paths = []
    for (alg, prob), recs in sorted(groups.items()):
        evals, mean_best = convergence_table(recs)
        path = out / f"{_group_stem(alg, prob)}.convergence.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["checkpoint", "evaluations", "mean_best_fitness"])
            for k, (e, m) in enumerate(zip(evals, mean_best)):
                w.writerow([k, int(e), repr(float(m))])
        paths.append(path)
    return paths


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)
