import math

import numpy as np
import pytest

import oracles
from qbat.algorithms import (
    AlgoConfig,
    ConfigError,
    RunRecord,
    binomial_crossover,
    default_quaternion_mode,
    frequency,
    mutant,
    neighbour,
    onlooker_probabilities,
    run,
    run_abc,
    run_ba,
    run_de,
    run_qba,
)
from qbat.encoding import BoundsBox, EncodingMode, decode, encode
from qbat.problems import get_problem
from qbat.streams import RecordingStream, ReplayStream, StreamExhausted

QN = EncodingMode.QUAT_NORM
SMALL = dict(population_size=10, max_evaluations=600)


def cfg_for(alg, problem, **kw):
    mode = default_quaternion_mode(problem) if alg == "qba" else EncodingMode.REAL
    return AlgoConfig(encoding_mode=mode, **{**SMALL, **kw})


# -- config ------------------------------------------------------------------


@pytest.mark.parametrize("bad", [
    dict(f_min=2.0, f_max=1.0),
    dict(alpha=1.0),
    dict(alpha=0.0),
    dict(CR=1.5),
    dict(F=-0.1),
    dict(population_size=1),
    dict(gamma=0.0),
    dict(max_evaluations=0),
])
def test_config_invariants(bad):
    with pytest.raises(ConfigError):
        AlgoConfig(**bad)


def test_encoding_checks():
    p = get_problem("sphere", 2)
    with pytest.raises(ConfigError):
        run_ba(p, AlgoConfig(encoding_mode=QN), np.random.default_rng(0))
    with pytest.raises(ConfigError):
        run_qba(p, AlgoConfig(), np.random.default_rng(0))
    with pytest.raises(ConfigError):
        run_de(p, AlgoConfig(population_size=3), np.random.default_rng(0))
    with pytest.raises(ConfigError):
        run("pso", p, AlgoConfig(), 1)


def test_default_quaternion_mode():
    modes = {name: default_quaternion_mode(get_problem(name)) for name in
             ["sphere", "rosenbrock", "schwefel_2_26", "zakharov", "rastrigin"]}
    assert modes == {
        "sphere": QN,
        "rosenbrock": EncodingMode.QUAT_SHIFTED_NORM,
        "schwefel_2_26": EncodingMode.QUAT_SHIFTED_NORM,
        "zakharov": EncodingMode.QUAT_SHIFTED_NORM,
        "rastrigin": QN,
    }


# -- operator pieces ---------------------------------------------------------


def test_frequency_endpoints():
    assert frequency(0.0, 0.0, 2.0) == 0.0
    assert frequency(1.0, 0.0, 2.0) == 2.0
    assert frequency(0.5, 1.0, 3.0) == 2.0


def test_de_pieces():
    assert mutant([1, 1], [3, 3], [1, 1], 0.5).tolist() == [2, 2]
    assert mutant([1, 1], [3, 3], [1, 1], 0.0).tolist() == [1, 1]
    target, donor = np.zeros(5), np.ones(5)
    assert binomial_crossover(target, donor, 1.0, 0, np.full(5, 0.99)).tolist() == [1] * 5
    trial = binomial_crossover(target, donor, 0.0, 3, np.zeros(5))
    assert trial.tolist() == [0, 0, 0, 1, 0]


def test_abc_pieces():
    x = np.array([1.0, 2.0, 3.0])
    assert np.array_equal(neighbour(x, np.zeros(3), 1, 0.0), x)
    assert neighbour(x, np.zeros(3), 1, 0.5).tolist() == [1, 3, 3]
    assert np.allclose(onlooker_probabilities(np.full(15, 3.7)), 2 / 30)
    assert np.allclose(onlooker_probabilities([0.0, 1.0, -1.0]), np.array([1, 0.5, 2]) / 3.5)


# -- hand-simulated generations ----------------------------------------------


def one_gen_problem():
    return get_problem("sphere", 1)


def test_ba_matches_hand_simulation():
    expected = oracles.ba_generation_by_hand()
    stream = ReplayStream(oracles.BA_DRAWS)
    log = []
    rec = run_ba(one_gen_problem(), AlgoConfig(population_size=2, max_evaluations=4), stream, state_log=log)
    assert len(stream) == 0
    assert rec.evaluations_used == 4
    assert [e for e, _ in rec.trace] == [e for e, _ in expected["trace"]]
    for (_, got), (_, want) in zip(rec.trace, expected["trace"]):
        assert abs(got - want) <= 1e-12
    assert abs(rec.final_best_phenotype[0] - expected["best_x"]) <= 1e-12
    assert np.allclose(log[0]["loudness"], expected["loudness"], rtol=0, atol=1e-12)
    assert np.allclose(log[0]["pulse_rate"], expected["pulse"], rtol=0, atol=1e-12)


def test_qba_matches_hand_simulation():
    expected = oracles.qba_generation_by_hand()
    stream = ReplayStream(oracles.QBA_DRAWS)
    log = []
    cfg = AlgoConfig(population_size=2, max_evaluations=4, encoding_mode=QN)
    rec = run_qba(one_gen_problem(), cfg, stream, state_log=log)
    assert len(stream) == 0
    for (_, got), (_, want) in zip(rec.trace, expected["trace"]):
        assert abs(got - want) <= 1e-12
    assert abs(rec.final_best_phenotype[0] - expected["best_x"]) <= 1e-12
    assert np.allclose(log[0]["loudness"], expected["loudness"], rtol=0, atol=1e-12)


def test_replay_runs_dry():
    with pytest.raises(StreamExhausted):
        run_ba(one_gen_problem(), AlgoConfig(population_size=2, max_evaluations=4), ReplayStream([0.5] * 3))


def test_pull_term_vanishes_for_the_best():
    # both bats sit on the best point, so the pull term is zero and nothing moves
    p = get_problem("sphere", 3)
    x = np.array([1.0, -2.0, 3.0])
    stream = ReplayStream([0.7, 0.0, 0.5] * 10)  # beta, no walk, accept draw
    rec = run_ba(p, AlgoConfig(population_size=2, max_evaluations=12), stream, init_population=[x, x])
    assert len(stream) == 0
    assert rec.final_best_phenotype == x.tolist()
    assert [f for _, f in rec.trace] == [14.0] * 6


def test_qba_composition_example():
    # one coordinate (3, 4, 0, 0) on Sphere under quat-norm contributes 25
    p = get_problem("sphere", 1)
    g = np.array([[[3.0, 4.0, 0.0, 0.0]], [[3.0, 4.0, 0.0, 0.0]]])
    rec = run_qba(p, AlgoConfig(population_size=2, max_evaluations=2, encoding_mode=QN),
                  np.random.default_rng(0), init_population=g)
    assert rec.final_best_fitness == 25.0


# -- structural reduction ----------------------------------------------------


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_scalar_qba_reproduces_ba(seed):
    p = get_problem("sphere", 10)
    cfg = AlgoConfig()
    x0 = np.random.default_rng(100 + seed).uniform(p.bounds.lower, p.bounds.upper, size=(30, 10))
    q0 = np.zeros((30, 10, 4))
    q0[..., 0] = x0
    ba = run_ba(p, cfg, np.random.default_rng(seed), init_population=x0)
    qba = run_qba(p, cfg.replace(encoding_mode=QN), np.random.default_rng(seed),
                  init_population=q0, scalar_subalgebra=True)
    assert [e for e, _ in ba.trace] == [e for e, _ in qba.trace]
    assert max(abs(a - b) for (_, a), (_, b) in zip(ba.trace, qba.trace)) <= 1e-12


def test_scalar_qba_draw_sequence_equals_ba():
    p = get_problem("sphere", 4)
    cfg = AlgoConfig(population_size=6, max_evaluations=120)
    x0 = np.random.default_rng(5).uniform(-100, 100, size=(6, 4))
    q0 = np.zeros((6, 4, 4))
    q0[..., 0] = x0
    a, b = RecordingStream(np.random.default_rng(9)), RecordingStream(np.random.default_rng(9))
    run_ba(p, cfg, a, init_population=x0)
    run_qba(p, cfg.replace(encoding_mode=QN), b, init_population=q0, scalar_subalgebra=True)
    assert a.values == b.values


# -- whole-run properties ----------------------------------------------------

ALGS = ["ba", "qba", "de", "abc"]
PROBS = ["sphere", "rastrigin", "schwefel_2_26", "quartic_noise", "zakharov"]


@pytest.mark.parametrize("alg", ALGS)
@pytest.mark.parametrize("name", PROBS)
def test_run_properties(alg, name):
    p = get_problem(name, 5)
    cfg = cfg_for(alg, p)
    rec = run(alg, p, cfg, 3)
    assert rec.algorithm == alg and rec.problem == name and rec.seed == 3
    best = [f for _, f in rec.trace]
    assert all(b2 <= b1 for b1, b2 in zip(best, best[1:]))
    assert rec.evaluations_used <= cfg.budget(p.dim) + cfg.population_size
    assert rec.trace[-1] == (rec.evaluations_used, rec.final_best_fitness)
    assert p.bounds.contains(np.array(rec.final_best_phenotype))
    if not p.noisy:
        assert p.evaluate(np.array(rec.final_best_phenotype)) == rec.final_best_fitness
    assert rec.encoding_mode == cfg.encoding_mode.value


@pytest.mark.parametrize("alg", ALGS)
def test_determinism(alg):
    p = get_problem("quartic_noise", 4)
    cfg = cfg_for(alg, p)
    a, b = run(alg, p, cfg, 11), run(alg, p, cfg, 11)
    assert a.deterministic_dict() == b.deterministic_dict()
    c = run(alg, p, cfg, 12)
    assert c.trace != a.trace


@pytest.mark.parametrize("alg", ["ba", "qba", "de"])
def test_budget_of_one_generation(alg):
    p = get_problem("sphere", 3)
    cfg = cfg_for(alg, p, max_evaluations=10)
    rec = run(alg, p, cfg, 1)
    assert rec.evaluations_used == 10
    assert [e for e, _ in rec.trace] == [10]


def test_abc_stops_exactly_at_budget():
    p = get_problem("rastrigin", 3)
    rec = run("abc", p, cfg_for("abc", p, max_evaluations=137), 1)
    assert rec.evaluations_used == 137
    assert [e for e, _ in rec.trace] == list(range(10, 137, 10)) + [137]


def test_checkpoint_count_default_budget():
    p = get_problem("sphere", 10)
    for alg in ALGS:
        rec = run(alg, p, cfg_for(alg, p, population_size=30, max_evaluations=None), 2)
        assert len(rec.trace) == math.ceil(10_000 / 30), alg


def test_feasibility_of_every_evaluation():
    seen = []

    class Spy:
        def __init__(self, p):
            self.p = p

        def __getattr__(self, k):
            return getattr(self.p, k)

        def evaluate(self, x, rng=None):
            seen.append(np.array(x))
            return self.p.evaluate(x, rng)

        def evaluate_many(self, X, rng=None):
            seen.extend(np.array(X))
            return self.p.evaluate_many(X, rng)

    p = get_problem("schwefel_2_22", 4)
    for alg in ALGS:
        run(alg, Spy(p), cfg_for(alg, p), 5)
    assert seen and all(p.bounds.contains(x) for x in seen)


def test_ba_state_laws():
    p = get_problem("rastrigin", 5)
    cfg = AlgoConfig(max_evaluations=3000)
    log = []
    run_ba(p, cfg, np.random.default_rng(4), state_log=log)
    loud = np.array([g["loudness"] for g in log])
    pulse = np.array([g["pulse_rate"] for g in log])
    assert np.all(loud > 0) and np.all(loud <= cfg.A_0)
    assert np.all(np.diff(loud, axis=0) <= 0)
    assert np.all(np.diff(pulse, axis=0) >= 0)
    assert np.all(pulse <= cfg.r_0)
    assert all(g["diversity"] >= 0 for g in log)


class _PhiZero:
    """Real draws for vectors (initial sources), 0.5 for scalars (phi = 0)."""

    def __init__(self, seed):
        self.rng = np.random.default_rng(seed)

    def random(self, size=None):
        return 0.5 if size is None else self.rng.random(size)

    def integers(self, *a, **k):
        return self.rng.integers(*a, **k)


class _Spy:
    def __init__(self, p):
        self.p, self.seen = p, []

    def __getattr__(self, k):
        return getattr(self.p, k)

    def evaluate(self, x, rng=None):
        self.seen.append(np.array(x))
        return self.p.evaluate(x, rng)


@pytest.mark.parametrize("limit, restarted", [(0, 2), (1, 1)])
def test_abc_scouts(limit, restarted):
    spy = _Spy(get_problem("sphere", 2))
    run_abc(spy, AlgoConfig(population_size=4, max_evaluations=6 + restarted, limit=limit), _PhiZero(0))
    first = spy.seen[:2]
    # employed and onlooker moves with phi = 0 re-evaluate the parents
    assert all(any(np.array_equal(x, f) for f in first) for x in spy.seen[2:6])
    scouts = spy.seen[6:]
    assert len(scouts) == restarted
    assert not any(np.array_equal(x, f) for x in scouts for f in first)


def test_de_converges_on_sphere():
    p = get_problem("sphere", 5)
    rec = run("de", p, AlgoConfig(population_size=30, max_evaluations=20_000), 1)
    assert rec.final_best_fitness < 1e-8


def test_record_round_trip():
    p = get_problem("sphere", 3)
    rec = run("qba", p, cfg_for("qba", p), 4)
    back = RunRecord.from_dict(rec.to_dict())
    assert back == rec


def test_batched_tracking_matches_one_by_one():
    from qbat.algorithms.base import Tracker

    p = get_problem("sphere", 2)
    cfg = AlgoConfig(population_size=4, max_evaluations=100, checkpoint_every=3)
    rng = np.random.default_rng(4)
    one, many = Tracker(p, cfg), Tracker(p, cfg)
    for size in [4, 5, 1, 7, 2]:
        X = rng.integers(-3, 4, size=(size, 2)).astype(float)  # plenty of ties
        for x in X:
            one.evaluate(x)
        many.evaluate_many(X)
        assert one.trace == many.trace
        assert one.best_fitness == many.best_fitness
        assert np.array_equal(one.best_phenotype, many.best_phenotype)
        assert one.evaluations == many.evaluations
