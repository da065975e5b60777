"""Portable deterministic 64-bit PRNG.

Language-stdlib generators differ between implementations and versions,
which would break golden shuffle values.  SplitMix64 is tiny, fast, and
fully specified by its constants, so any runtime reproduces the same
stream for the same seed.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood's mixing constants)."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN_GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound).

        Plain modulo; the bias is immeasurable at the bounds used here
        (puzzle sizes and topic-list lengths, far below 2**32).
        """
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_uint64() % bound
