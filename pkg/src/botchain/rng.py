"""Deterministic 64-bit pseudo-random generator.

SplitMix64: the state advances by a fixed odd constant and each output is a
finalizer-mixed copy of the state.  All arithmetic is unsigned 64-bit, done
here with plain Python ints and explicit masking, so identical (master,
stream) seeds give identical output on every platform.

A (master, stream) pair selects an origin in the sequence space by mixing the
two words together; callers fan out independent streams by bumping ``stream``
while keeping ``master`` fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

MASK64 = 0xFFFF_FFFF_FFFF_FFFF
GOLDEN = 0x9E37_79B9_7F4A_7C15


@dataclass(frozen=True)
class Seed:
    master: int
    stream: int = 0


def _mix64(z: int) -> int:
    # SplitMix64 finalizer (Stafford variant 13)
    z = (z ^ (z >> 30)) * 0xBF58_476D_1CE4_E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D0_49BB_1331_11EB & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: Seed):
        m = seed.master & MASK64
        s = seed.stream & MASK64
        self.state = _mix64(m ^ _mix64((s + GOLDEN) & MASK64))

    def u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by masked rejection; exact, no modulo bias."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        if n == 1:
            return 0
        mask = (1 << (n - 1).bit_length()) - 1
        while True:
            r = self.u64() & mask
            if r < n:
                return r

    def shuffle(self, items: list) -> None:
        """Fisher-Yates, in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


DEFAULT_MASTER = 0xB07B07
