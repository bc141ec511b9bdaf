"""Bitstring genomes, domination relations, and population containers.

Objective vectors are plain tuples of ints throughout the package; all
benchmarks in scope are maximization problems over fixed-length bitstrings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

ObjectiveVector = tuple[int, ...]


@dataclass(frozen=True)
class BitString:
    """Immutable bitstring of length ``n``.

    Bit positions are 1-based in the public API (position ``j`` of a genome
    ``x`` is ``x_j``); internally position ``j`` is stored at bit ``j - 1``
    of ``mask``. ``from_string("1100")`` puts the leftmost character at
    position 1.
    """

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError(f"bitstring length must be positive, got {self.n}")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError("mask has bits outside the declared length")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        mask = 0
        n = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit values must be 0 or 1, got {b!r}")
            mask |= b << n
            n += 1
        return cls(n, mask)

    @classmethod
    def from_string(cls, text: str) -> "BitString":
        return cls.from_bits(int(c) for c in text)

    def bit(self, j: int) -> int:
        """Value at 1-based position ``j``."""
        if not 1 <= j <= self.n:
            raise ValueError(f"position {j} out of range 1..{self.n}")
        return (self.mask >> (j - 1)) & 1

    def count_ones(self) -> int:
        return self.mask.bit_count()

    def to_string(self) -> str:
        return "".join(str((self.mask >> i) & 1) for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return self.to_string()


def random_bitstring(rng: np.random.Generator, n: int) -> BitString:
    """Uniform random bitstring of length ``n``."""
    nbytes = (n + 7) // 8
    mask = int.from_bytes(rng.bytes(nbytes), "little") & ((1 << n) - 1)
    return BitString(n, mask)


def dominates(u: ObjectiveVector, v: ObjectiveVector) -> bool:
    """Weak domination: ``u_i >= v_i`` in every objective."""
    if len(u) != len(v):
        raise ValueError(f"objective length mismatch: {len(u)} vs {len(v)}")
    return all(a >= b for a, b in zip(u, v))


def strictly_dominates(u: ObjectiveVector, v: ObjectiveVector) -> bool:
    """Strict domination: weak domination plus at least one strict inequality."""
    if len(u) != len(v):
        raise ValueError(f"objective length mismatch: {len(u)} vs {len(v)}")
    return u != v and all(a >= b for a, b in zip(u, v))


class ParetoArchive:
    """Unbounded archive holding one individual per non-dominated objective value.

    Insertion follows steady-state archive semantics: entries weakly dominated
    by the incoming value are removed first, then the newcomer is added unless
    a remaining entry strictly dominates it. An individual whose value equals
    an existing entry therefore *replaces* that entry.
    """

    def __init__(self) -> None:
        self._index: dict[ObjectiveVector, int] = {}
        self._values: list[ObjectiveVector] = []
        self._bits: list[BitString] = []

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, value: ObjectiveVector) -> bool:
        return value in self._index

    def values(self) -> list[ObjectiveVector]:
        return list(self._values)

    def entries(self) -> Iterator[tuple[ObjectiveVector, BitString]]:
        return zip(self._values, self._bits)

    def get(self, value: ObjectiveVector) -> BitString:
        return self._bits[self._index[value]]

    def sample(self, rng: np.random.Generator) -> tuple[BitString, ObjectiveVector]:
        """Uniformly random archive entry."""
        if not self._values:
            raise ValueError("cannot sample from an empty archive")
        pos = int(rng.integers(len(self._values)))
        return self._bits[pos], self._values[pos]

    def _remove_at(self, pos: int) -> None:
        last = len(self._values) - 1
        del self._index[self._values[pos]]
        if pos != last:
            self._values[pos] = self._values[last]
            self._bits[pos] = self._bits[last]
            self._index[self._values[pos]] = pos
        self._values.pop()
        self._bits.pop()

    def insert(self, x: BitString, fx: ObjectiveVector) -> bool:
        """Insert ``x`` with value ``fx``; returns whether ``x`` was kept.

        Equal-value insertions replace the stored individual, which the
        fast path below handles without scanning: on a valid archive an
        entry value can be neither strictly dominated nor strictly
        dominating relative to an equal incoming value.
        """
        pos = self._index.get(fx)
        if pos is not None:
            self._bits[pos] = x
            return True
        # Remove entries weakly dominated by fx (fx != entry value here,
        # so weak domination is strict), then check the survivors.
        for p in range(len(self._values) - 1, -1, -1):
            if dominates(fx, self._values[p]):
                self._remove_at(p)
        for v in self._values:
            if strictly_dominates(v, fx):
                return False
        self._index[fx] = len(self._values)
        self._values.append(fx)
        self._bits.append(x)
        return True


class FixedPopulation:
    """Multiset of exactly ``mu`` individuals with cached objective values."""

    def __init__(self, members: list[BitString], values: list[ObjectiveVector]) -> None:
        if not members:
            raise ValueError("population must be non-empty")
        if len(members) != len(values):
            raise ValueError("members and values must have equal length")
        self.members = members
        self.values = values

    @property
    def mu(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)


def block_ones(x: BitString, i: int, m_prime: int) -> int:
    """Number of 1-bits in block ``i`` of ``x`` partitioned into ``m_prime`` blocks.

    Block ``i`` (1-based) covers positions ``b*(i-1)+1 .. b*i`` for block
    width ``b = n / m_prime``; requires ``n`` divisible by ``m_prime``.
    """
    if x.n % m_prime != 0:
        raise ValueError(f"length {x.n} not divisible by {m_prime} blocks")
    if not 1 <= i <= m_prime:
        raise ValueError(f"block index {i} out of range 1..{m_prime}")
    b = x.n // m_prime
    block = (x.mask >> (b * (i - 1))) & ((1 << b) - 1)
    return block.bit_count()
