"""Bat algorithm with quaternion-encoded individuals, plus BA, DE and ABC
baselines and a benchmark harness for comparing them."""

from .algorithms import AlgoConfig, RunRecord, default_quaternion_mode, run, run_abc, run_ba, run_de, run_qba
from .encoding import BoundsBox, EncodingMode, decode, encode, init_genotype
from .problems import Problem, get_problem, suite
from .quaternion import Quaternion, qadd, qconj, qidentity, qmul, qnorm, qrand, qscale, qsub, qzero
from .stats import diversity, ranksum, success_rate, summarize

__version__ = "0.1.0"
