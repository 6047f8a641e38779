"""Counter-based random streams.

Every source of randomness in this package is a numpy Generator backed by a
Philox counter-based bit generator keyed on (master_seed, stream_index).
Stream i is therefore identical no matter in which order, or on how many
workers, the streams are consumed.
"""

from __future__ import annotations

import numpy as np

_U64 = np.uint64


def substream(master_seed: int, index: int) -> np.random.Generator:
    """Independent generator for stream `index` under `master_seed`."""
    key = np.array([master_seed & 0xFFFFFFFFFFFFFFFF, index & 0xFFFFFFFFFFFFFFFF], dtype=_U64)
    return np.random.Generator(np.random.Philox(key=key))


class IntStream:
    """Buffered unbiased integer draws from a Generator.

    Bulk upstream draws of uint32 words, consumed via rejection sampling so
    that int_below(k) is exactly uniform on [0, k).  Much cheaper than one
    Generator.integers call per draw inside tight loops (random walks).
    """

    __slots__ = ("_gen", "_buf", "_pos", "_batch")

    def __init__(self, gen: np.random.Generator, batch: int = 128):
        self._gen = gen
        self._batch = batch
        self._buf: list[int] = gen.integers(0, 1 << 32, size=batch, dtype=np.uint64).tolist()
        self._pos = 0

    def _next_word(self) -> int:
        if self._pos >= len(self._buf):
            # successive refills grow toward 1024 words
            self._batch = min(self._batch * 2, 1024)
            self._buf = self._gen.integers(0, 1 << 32, size=self._batch, dtype=np.uint64).tolist()
            self._pos = 0
        w = self._buf[self._pos]
        self._pos += 1
        return w

    def int_below(self, k: int) -> int:
        # classic rejection: accept w < floor(2^32 / k) * k
        limit = (1 << 32) - ((1 << 32) % k)
        w = self._next_word()
        while w >= limit:
            w = self._next_word()
        return w % k
