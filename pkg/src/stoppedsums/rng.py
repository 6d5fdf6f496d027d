"""Counter-based random streams.

Every stream is a pure function of (seed, stream_id): the underlying bit
generator is Philox, so identical identifiers always reproduce the identical
sample sequence and distinct stream_ids give statistically independent
streams.  A stream object is stateful (it advances as it is consumed) and is
meant to be confined to one thread at a time; anything that needs parallel
or order-independent draws derives fixed substreams up front.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_MIX_MULT = 0x9E3779B97F4A7C15  # golden-ratio multiplier, splitmix-style


def _mix(a: int, b: int) -> int:
    """Combine two 64-bit words into one, avalanche-style."""
    z = (a * _MIX_MULT + b + 0x632BE59BD9B4E019) & _MASK64
    z ^= z >> 31
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    return z


class RngStream:
    """A reproducible stream keyed by (seed, stream_id)."""

    def __init__(self, seed: int, stream_id: int = 0):
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")
        self.seed = int(seed)
        self.stream_id = int(stream_id) & _MASK64
        self._gen = np.random.Generator(
            np.random.Philox(key=np.array([self.seed, self.stream_id], dtype=np.uint64))
        )

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def substream(self, k: int) -> "RngStream":
        """Derive the k-th child stream; deterministic in (seed, stream_id, k)."""
        return RngStream(self.seed, _mix(self.stream_id, int(k)))

    def __repr__(self) -> str:  # pragma: no cover
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"
