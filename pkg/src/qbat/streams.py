"""Random streams for reproducible runs and scripted replays.

The bat algorithms draw every random number through ``rng.random(n)``, so a
run can be recorded once and replayed value for value. That is what the
hand-computed single-generation checks rely on.
"""

from __future__ import annotations

from collections import deque

import numpy as np

__all__ = ["make_streams", "RecordingStream", "ReplayStream", "StreamExhausted"]


def make_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Return ``(search_rng, noise_rng)``, two independent streams for one seed.

    Objective noise gets its own stream so a noisy problem does not shift the
    optimizer's draw sequence.
    """
    search, noise = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(search), np.random.default_rng(noise)


class StreamExhausted(RuntimeError):
    pass


class RecordingStream:
    """Wraps a generator and keeps every uniform draw it hands out."""

    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self.values: list[float] = []

    def random(self, size=None):
        out = self._rng.random(size)
        if size is None:
            self.values.append(float(out))
        else:
            self.values.extend(float(v) for v in np.ravel(out))
        return out

    def integers(self, *args, **kwargs):
        return self._rng.integers(*args, **kwargs)


class ReplayStream:
    """Serves a fixed list of uniform draws in order."""

    def __init__(self, values):
        self._values = deque(float(v) for v in values)
        self.consumed = 0

    def __len__(self) -> int:
        return len(self._values)

    def _pop(self) -> float:
        if not self._values:
            raise StreamExhausted(f"replay stream ran dry after {self.consumed} draws")
        self.consumed += 1
        return self._values.popleft()

    def random(self, size=None):
        if size is None:
            return self._pop()
        n = int(np.prod(size))
        return np.array([self._pop() for _ in range(n)]).reshape(size)
