"""Quaternion algebra.

Quaternions are stored as ``(w, x, y, z)`` with ``w`` the scalar part and
``x, y, z`` the coefficients of ``i, j, k``. Every operation accepts either a
single :class:`Quaternion` or a float array whose last axis has length 4, so
the same functions serve scalar code and the vectorised optimizer loops. A
1-D input yields a :class:`Quaternion`; higher-rank inputs yield arrays.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Union

import numpy as np

__all__ = [
    "Quaternion",
    "NumericRangeError",
    "qzero",
    "qidentity",
    "qadd",
    "qsub",
    "qscale",
    "qmul",
    "qconj",
    "qnorm",
    "qrand",
]


class NumericRangeError(ArithmeticError):
    """A quaternion operation produced a non-finite component."""


class Quaternion(NamedTuple):
    w: float
    x: float
    y: float
    z: float

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        if a.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {a.shape}")
        _check_finite(a)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))


QuatLike = Union[Quaternion, np.ndarray]


def _as_array(q) -> np.ndarray:
    a = np.asarray(q, dtype=float)
    if a.ndim == 0 or a.shape[-1] != 4:
        raise ValueError(f"quaternion arrays need a trailing axis of 4, got shape {a.shape}")
    return a


def _check_finite(a: np.ndarray) -> None:
    if not np.isfinite(a).all():
        raise NumericRangeError("quaternion component overflowed or became NaN")


# overflow is detected after the fact and raised as NumericRangeError;
# products and norms of huge genotypes are expected, so they stay quiet
_quiet = np.errstate(over="ignore", invalid="ignore")


def _wrap(a: np.ndarray) -> QuatLike:
    _check_finite(a)
    if a.ndim == 1:
        return Quaternion(float(a[0]), float(a[1]), float(a[2]), float(a[3]))
    return a


def qzero() -> Quaternion:
    return Quaternion(0.0, 0.0, 0.0, 0.0)


def qidentity() -> Quaternion:
    return Quaternion(1.0, 0.0, 0.0, 0.0)


def qadd(a: QuatLike, b: QuatLike) -> QuatLike:
    """Componentwise sum. Raises :class:`NumericRangeError` on overflow."""
    return _wrap(_as_array(a) + _as_array(b))


def qsub(a: QuatLike, b: QuatLike) -> QuatLike:
    return _wrap(_as_array(a) - _as_array(b))


def qscale(s, q: QuatLike) -> QuatLike:
    """Multiply every component of ``q`` by the real scalar ``s``.

    ``s`` may also be an array broadcasting against the leading axes of ``q``.
    """
    s = np.asarray(s, dtype=float)
    if not np.isfinite(s).all():
        raise NumericRangeError("non-finite scale factor")
    a = _as_array(q)
    if s.ndim:
        s = s[..., None]
    return _wrap(s * a)


@_quiet
def qmul(a: QuatLike, b: QuatLike) -> QuatLike:
    """Hamilton product ``a * b`` (non-commutative)."""
    a = _as_array(a)
    b = _as_array(b)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    out = np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )
    return _wrap(out)


def qconj(q: QuatLike) -> QuatLike:
    a = _as_array(q).copy()
    a[..., 1:] *= -1.0
    return _wrap(a)


@_quiet
def qnorm(q: QuatLike):
    """Euclidean length ``sqrt(w^2 + x^2 + y^2 + z^2)``.

    This is the scalarisation used to map a quaternion gene back to a real
    coordinate. Returns a float for a single quaternion, an array otherwise.
    """
    a = _as_array(q)
    if a.ndim == 1:
        return math.hypot(a[0], a[1], a[2], a[3])
    return np.sqrt(np.einsum("...i,...i->...", a, a))


def qrand(rng, c: float, size=None) -> QuatLike:
    """Draw quaternions with components independent and uniform on ``[-c, c]``.

    A single quaternion consumes exactly four draws from ``rng``; with
    ``size=n`` the draws are taken quaternion by quaternion, ``4 * n`` in all.
    ``rng`` only needs a ``random(n)`` method returning floats in ``[0, 1)``.
    """
    c = np.asarray(c, dtype=float)
    if np.any(c <= 0) or not np.isfinite(c).all():
        raise ValueError(f"scale must be positive and finite, got {c}")
    if size is None:
        u = np.asarray(rng.random(4), dtype=float)
        return _wrap(-c + 2.0 * c * u)
    u = np.asarray(rng.random(4 * size), dtype=float).reshape(size, 4)
    if c.ndim:
        c = c[:, None]
    return _wrap(-c + 2.0 * c * u)
