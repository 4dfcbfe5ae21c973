"""Deterministic 64-bit linear congruential generator.

Every randomized study in this package draws from this generator so that
reruns (and ports to other languages) produce bit-identical sequences.
Constants are Knuth's MMIX multiplier/increment.
"""

from __future__ import annotations

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1

DEFAULT_SEED = 0x5EED_CAFE


class Lcg64:
    """64-bit LCG; uniform doubles come from the top 53 bits of the state."""

    def __init__(self, seed: int = DEFAULT_SEED):
        if seed < 0 or seed > _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & _MASK64
        return self.state

    def uniform(self) -> float:
        """Next double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()
