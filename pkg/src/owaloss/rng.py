"""Portable counter-based pseudo-random stream (SplitMix64).

Every random draw in the package (weight initialization, blob centers and
noise, shuffling, splits) comes from this generator, so results can be
reproduced bit-for-bit by any implementation that follows the recipe below.

State is a single unsigned 64-bit counter ``x``, initialised to ``seed``.
Each draw advances ``x += 0x9E3779B97F4A7C15`` (mod 2**64) and outputs::

    z = x
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)

all arithmetic modulo 2**64.  Derived quantities:

* uniform in [0, 1): ``(z >> 11) * 2**-53``
* integer in [0, k): ``floor(uniform * k)``
* standard normal: Box-Muller on consecutive uniform pairs ``(u1, u2)``,
  ``sqrt(-2 ln(1 - u1)) * cos(2 pi u2)``; one normal per pair.
* permutation of ``n``: draw ``n - 1`` uniforms ``u_0..u_{n-2}``, then for
  ``i = n-1 .. 1`` swap ``perm[i]`` with ``perm[floor(u_{n-1-i} * (i + 1))]``
  (Fisher-Yates starting from the identity).
"""

from __future__ import annotations

import numpy as np

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def splitmix64(state: int, n: int) -> np.ndarray:
    """Return the next ``n`` outputs after counter value ``state``."""
    steps = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(state & _MASK64) + steps * GOLDEN_GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    return z


class Stream:
    """Sequential SplitMix64 stream.

    >>> Stream(0).raw(1)[0] == 0xE220A8397B1DCDAF
    True
    """

    def __init__(self, seed: int = 0):
        if seed < 0:
            raise ValueError("seed must be a non-negative integer")
        self._state = int(seed) & _MASK64

    @property
    def state(self) -> int:
        return self._state

    def raw(self, n: int) -> np.ndarray:
        out = splitmix64(self._state, n)
        self._state = (self._state + n * int(GOLDEN_GAMMA)) & _MASK64
        return out

    def uniform(self, size: int | tuple[int, ...] = 1) -> np.ndarray:
        shape = (size,) if isinstance(size, int) else tuple(size)
        n = int(np.prod(shape)) if shape else 1
        u = (self.raw(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        return u.reshape(shape)

    def normal(self, size: int | tuple[int, ...] = 1) -> np.ndarray:
        shape = (size,) if isinstance(size, int) else tuple(size)
        n = int(np.prod(shape)) if shape else 1
        u = self.uniform(2 * n).reshape(n, 2)
        z = np.sqrt(-2.0 * np.log1p(-u[:, 0])) * np.cos(2.0 * np.pi * u[:, 1])
        return z.reshape(shape)

    def integers(self, high: int, size: int = 1) -> np.ndarray:
        return np.floor(self.uniform(size) * high).astype(np.int64)

    def permutation(self, n: int) -> np.ndarray:
        perm = np.arange(n)
        if n < 2:
            return perm
        u = self.uniform(n - 1)
        for k, i in enumerate(range(n - 1, 0, -1)):
            j = int(u[k] * (i + 1))
            perm[i], perm[j] = perm[j], perm[i]
        return perm

    def spawn(self) -> "Stream":
        """Independent child stream seeded from the next raw output."""
        return Stream(int(self.raw(1)[0]))
