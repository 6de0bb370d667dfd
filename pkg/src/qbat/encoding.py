"""Genotype/phenotype encodings.

Three modes are available:

``REAL``
    The genotype is the point itself; decoding only clamps to the box.
``QUAT_NORM``
    Each coordinate is a quaternion; the coordinate value is its norm.
    Only nonnegative values are reachable, which suits boxes whose optimum
    sits at the origin.
``QUAT_SHIFTED_NORM``
    As ``QUAT_NORM`` but measured from the lower bound, so the whole box is
    reachable.

Out-of-box decoded values are clamped; the genotype itself is never touched.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .quaternion import qnorm, qrand

__all__ = ["EncodingMode", "BoundsBox", "decode", "encode", "init_genotype", "random_draws"]


class EncodingMode(str, enum.Enum):
    REAL = "real"
    QUAT_NORM = "quat-norm"
    QUAT_SHIFTED_NORM = "quat-shifted-norm"

    @property
    def is_quaternion(self) -> bool:
        return self is not EncodingMode.REAL

    @classmethod
    def parse(cls, value) -> "EncodingMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown encoding mode {value!r} (expected one of {names})") from None


@dataclass(frozen=True, eq=False)
class BoundsBox:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).reshape(-1)
        upper = np.array(self.upper, dtype=float).reshape(-1)
        if lower.shape != upper.shape:
            raise ValueError("lower and upper bounds differ in length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, low: float, high: float, dim: int) -> "BoundsBox":
        return cls(np.full(dim, low), np.full(dim, high))

    @property
    def dim(self) -> int:
        return self.lower.size

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return x.shape == self.lower.shape and bool(np.all((x >= self.lower) & (x <= self.upper)))

    def clip(self, x) -> np.ndarray:
        return np.minimum(np.maximum(x, self.lower), self.upper)

    def __eq__(self, other):
        if not isinstance(other, BoundsBox):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)

    __hash__ = None


def _check_shape(g: np.ndarray, b: BoundsBox, mode: EncodingMode) -> None:
    expected = (b.dim, 4) if mode.is_quaternion else (b.dim,)
    if g.shape[-len(expected):] != expected:
        raise ValueError(f"genotype shape {g.shape} does not match {mode.value} over {b.dim} dims")


def decode(g, b: BoundsBox, mode) -> np.ndarray:
    """Map a genotype (or a stack of them) to in-box phenotype(s).

    Real genotypes have shape ``(..., D)``, quaternion ones ``(..., D, 4)``.
    """
    mode = EncodingMode.parse(mode)
    g = np.asarray(g, dtype=float)
    _check_shape(g, b, mode)
    if mode is EncodingMode.REAL:
        x = g
    elif mode is EncodingMode.QUAT_NORM:
        x = qnorm(g)
    else:
        x = b.lower + qnorm(g)
    return b.clip(x)


def encode(x, b: BoundsBox, mode) -> np.ndarray:
    """Embed an in-box point as a genotype.

    Quaternion modes place the value in the scalar slot. Under ``QUAT_NORM``
    the sign is lost on the way back: ``decode(encode(x))`` equals ``|x|``.
    """
    mode = EncodingMode.parse(mode)
    x = np.asarray(x, dtype=float)
    if x.shape != (b.dim,):
        raise ValueError(f"point has shape {x.shape}, expected ({b.dim},)")
    if not b.contains(x):
        raise ValueError("point lies outside the bounds box")
    if mode is EncodingMode.REAL:
        return x.copy()
    g = np.zeros((b.dim, 4))
    g[:, 0] = x if mode is EncodingMode.QUAT_NORM else x - b.lower
    return g


def quaternion_init_scale(b: BoundsBox, mode) -> np.ndarray:
    """Per-coordinate half-width used by :func:`qrand` at initialisation."""
    mode = EncodingMode.parse(mode)
    if mode is EncodingMode.QUAT_NORM:
        return np.maximum(np.abs(b.lower), np.abs(b.upper)) / 2.0
    if mode is EncodingMode.QUAT_SHIFTED_NORM:
        return (b.upper - b.lower) / 2.0
    raise ValueError("real encoding has no quaternion scale")


def init_genotype(rng, b: BoundsBox, mode) -> np.ndarray:
    """Random genotype. Draws ``D`` uniforms for REAL, ``4 * D`` otherwise."""
    mode = EncodingMode.parse(mode)
    if mode is EncodingMode.REAL:
        u = np.asarray(rng.random(b.dim), dtype=float)
        return b.lower + (b.upper - b.lower) * u
    return np.asarray(qrand(rng, quaternion_init_scale(b, mode), size=b.dim))


def random_draws(dim: int, mode) -> int:
    """Number of uniforms one :func:`init_genotype` call consumes."""
    return dim * (4 if EncodingMode.parse(mode).is_quaternion else 1)
