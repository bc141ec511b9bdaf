"""The four block-structured pseudo-Boolean benchmarks and their Pareto fronts.

Every benchmark splits a length-``n`` bitstring into ``m_prime`` blocks and
applies one bi-objective pair per block, giving ``m = 2 * m_prime`` objectives
in total. Objective ``2i - 1`` is the "zeros" objective of block ``i`` and
objective ``2i`` the "ones" objective (1-based positions within the vector).

Kinds
-----
``omm``   OneMinMax: ones and zeros counted per block. Every reachable
          objective value is Pareto-optimal.
``cocz``  CountingOnesCountingZeros: both objectives additionally share a
          cooperative term, the number of ones in the first half of the
          string; the per-block pair is evaluated on blocks of the second
          half only.
``lotz``  LeadingOnesTrailingZeros: per block, leading ones up to the first
          zero and trailing zeros behind the last one.
``ojzj``  OneJumpZeroJump with jump size ``k``: per-block ones/zeros counts
          shifted by ``k``, except inside a fitness valley (fewer than ``k``
          missing bits but not zero) where the objective drops below ``k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import BitString, ObjectiveVector, strictly_dominates

KINDS = ("omm", "cocz", "lotz", "ojzj")

BRUTE_FORCE_MAX_N = 24
ANTICHAIN_MAX_VALUES = 1500
DEFAULT_FRONT_CAP = 10_000_000


class CapacityError(RuntimeError):
    """Requested enumeration exceeds the configured capacity."""


@dataclass(frozen=True)
class BenchmarkSpec:
    """Benchmark instance: kind, bitstring length, block count, jump size.

    ``m_prime`` is the number of block pairs, i.e. half the objective count.
    """

    kind: str
    n: int
    m_prime: int
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown benchmark kind {self.kind!r}; expected one of {KINDS}")
        if self.n <= 0 or self.m_prime <= 0:
            raise ValueError("n and m_prime must be positive")
        if self.kind == "cocz":
            if self.n % (2 * self.m_prime) != 0:
                raise ValueError(f"cocz requires n divisible by 2*m_prime, got n={self.n}, m_prime={self.m_prime}")
            if (self.n // (2 * self.m_prime)) % 4 != 0:
                raise ValueError(f"cocz requires block width n/(2*m_prime) to be a multiple of 4, got {self.n // (2 * self.m_prime)}")
        elif self.n % self.m_prime != 0:
            raise ValueError(f"{self.kind} requires n divisible by m_prime, got n={self.n}, m_prime={self.m_prime}")
        if self.kind == "ojzj":
            if self.k is None:
                raise ValueError("ojzj requires a jump size k")
            if not 2 <= self.k <= self.n // (2 * self.m_prime):
                raise ValueError(f"ojzj jump size must satisfy 2 <= k <= n/(2*m_prime) = {self.n // (2 * self.m_prime)}, got {self.k}")
        elif self.k is not None:
            raise ValueError(f"jump size is only meaningful for ojzj, not {self.kind}")

    @property
    def m(self) -> int:
        """Number of objectives."""
        return 2 * self.m_prime

    @property
    def block_width(self) -> int:
        """Bits per evaluated block (for cocz: per second-half block)."""
        if self.kind == "cocz":
            return self.n // (2 * self.m_prime)
        return self.n // self.m_prime

    @property
    def f_max(self) -> int:
        """Largest fitness value over all solutions and objectives."""
        b = self.block_width
        if self.kind == "cocz":
            return self.n // 2 + b
        if self.kind == "ojzj":
            return b + self.k
        return b


@dataclass(frozen=True)
class FrontDescriptor:
    """Pareto front as a value set plus size and antichain information.

    ``max_incomparable`` bounds the size of any set of mutually
    non-strictly-dominating objective values; ``None`` when unknown
    (brute force on instances too large for the exact computation).
    """

    front_values: frozenset[ObjectiveVector]
    size: int
    max_incomparable: int | None


@dataclass(frozen=True)
class MilestoneSets:
    """Objective-value sets used to timestamp run phases.

    ``corners``: values of bitstrings whose blocks are individually uniform
    (all ones or all zeros) for omm/cocz, or at a valley edge or uniform for
    ojzj. ``cliffs`` (ojzj only): values of bitstrings with exactly ``k``
    ones or ``k`` zeros in every block.
    """

    corners: frozenset[ObjectiveVector]
    cliffs: frozenset[ObjectiveVector] | None = None


@lru_cache(maxsize=None)
def _block_shifts(spec: BenchmarkSpec) -> tuple[tuple[int, int], ...]:
    # (shift, mask) per evaluated block; cocz blocks live in the second half.
    b = spec.block_width
    base = spec.n // 2 if spec.kind == "cocz" else 0
    mask = (1 << b) - 1
    return tuple((base + i * b, mask) for i in range(spec.m_prime))


def evaluate(spec: BenchmarkSpec, x: BitString) -> ObjectiveVector:
    """Objective vector of ``x`` under ``spec``; one evaluation by convention."""
    if x.n != spec.n:
        raise ValueError(f"bitstring length {x.n} does not match spec length {spec.n}")
    b = spec.block_width
    mask = x.mask
    out: list[int] = []
    if spec.kind == "omm":
        for shift, bmask in _block_shifts(spec):
            ones = ((mask >> shift) & bmask).bit_count()
            out.append(b - ones)
            out.append(ones)
    elif spec.kind == "cocz":
        coop = (mask & ((1 << (spec.n // 2)) - 1)).bit_count()
        for shift, bmask in _block_shifts(spec):
            ones = ((mask >> shift) & bmask).bit_count()
            out.append(coop + b - ones)
            out.append(coop + ones)
    elif spec.kind == "lotz":
        for shift, bmask in _block_shifts(spec):
            block = (mask >> shift) & bmask
            # leading ones: low-order end of the block is position b(i-1)+1
            inv = ~block & bmask
            leading = b if inv == 0 else (inv & -inv).bit_length() - 1
            trailing = b - block.bit_length()
            out.append(trailing)
            out.append(leading)
    else:  # ojzj
        k = spec.k
        for shift, bmask in _block_shifts(spec):
            ones = ((mask >> shift) & bmask).bit_count()
            zeros = b - ones
            jump = ones + k if (ones <= b - k or ones == b) else b - ones
            zjump = zeros + k if (zeros <= b - k or zeros == b) else b - zeros
            out.append(zjump)
            out.append(jump)
    return tuple(out)


def _front_block_pairs(spec: BenchmarkSpec) -> list[tuple[int, int]]:
    """Per-block (zeros-objective, ones-objective) pairs on the Pareto front."""
    b = spec.block_width
    if spec.kind == "omm":
        return [(b - a, a) for a in range(b + 1)]
    if spec.kind == "cocz":
        coop = spec.n // 2
        return [(coop + b - a, coop + a) for a in range(b + 1)]
    if spec.kind == "lotz":
        return [(b - a, a) for a in range(b + 1)]
    k = spec.k
    ones_counts = [0, *range(k, b - k + 1), b]
    return [(b - a + k, a + k) for a in sorted(set(ones_counts))]


def front_size(spec: BenchmarkSpec) -> int:
    """Closed-form Pareto front size."""
    b = spec.block_width
    if spec.kind == "ojzj":
        return (b - 2 * spec.k + 3) ** spec.m_prime
    return (b + 1) ** spec.m_prime


def max_incomparable(spec: BenchmarkSpec) -> int:
    """Closed-form bound on the size of any set of incomparable objective values.

    Coincides with the front size except for lotz, where only the upper bound
    ``(n/m_prime + 1) ** (2*m_prime - 1)`` is available.
    """
    if spec.kind == "lotz":
        return (spec.block_width + 1) ** (2 * spec.m_prime - 1)
    return front_size(spec)


def iter_front_values(spec: BenchmarkSpec):
    """Yield every Pareto-front objective value (closed-form enumeration)."""
    pairs = _front_block_pairs(spec)
    for combo in itertools.product(pairs, repeat=spec.m_prime):
        yield tuple(itertools.chain.from_iterable(combo))


def pareto_front(spec: BenchmarkSpec, cap: int = DEFAULT_FRONT_CAP) -> FrontDescriptor:
    """Closed-form Pareto front; raises :class:`CapacityError` above ``cap`` values."""
    size = front_size(spec)
    if size > cap:
        raise CapacityError(f"front of size {size} exceeds cap {cap}; pass cap >= {size} to enumerate")
    return FrontDescriptor(frozenset(iter_front_values(spec)), size, max_incomparable(spec))


def is_front_value(spec: BenchmarkSpec, value: ObjectiveVector) -> bool:
    """Front membership for values produced by :func:`evaluate`, in O(m)."""
    b = spec.block_width
    if spec.kind == "omm":
        return True
    if spec.kind == "cocz":
        target = spec.n + b  # both objectives carry the cooperative term
        return all(value[2 * i] + value[2 * i + 1] == target for i in range(spec.m_prime))
    if spec.kind == "lotz":
        return all(value[2 * i] + value[2 * i + 1] == b for i in range(spec.m_prime))
    k = spec.k
    return all(value[2 * i] >= k and value[2 * i + 1] >= k for i in range(spec.m_prime))


def is_covered(spec: BenchmarkSpec, seen: set[ObjectiveVector]) -> bool:
    """Whether ``seen`` contains every Pareto-front value."""
    return all(v in seen for v in iter_front_values(spec))


def _exact_max_antichain(values: list[ObjectiveVector]) -> int:
    # Dilworth: maximum antichain size equals values minus a maximum matching
    # in the bipartite graph of strict-domination pairs (the order is
    # transitively closed, so chains are paths in that graph).
    import networkx as nx

    g = nx.Graph()
    left = [("l", i) for i in range(len(values))]
    right = [("r", i) for i in range(len(values))]
    g.add_nodes_from(left, bipartite=0)
    g.add_nodes_from(right, bipartite=1)
    for i, u in enumerate(values):
        for j, v in enumerate(values):
            if i != j and strictly_dominates(u, v):
                g.add_edge(("l", i), ("r", j))
    matching = nx.bipartite.maximum_matching(g, top_nodes=left)
    return len(values) - len(matching) // 2


def brute_force_front(spec: BenchmarkSpec, antichain_limit: int = ANTICHAIN_MAX_VALUES) -> FrontDescriptor:
    """Oracle front via exhaustive enumeration of all ``2^n`` bitstrings.

    Also computes the exact maximum-antichain size over all distinct
    objective values when there are at most ``antichain_limit`` of them;
    otherwise ``max_incomparable`` is left as ``None``.
    """
    if spec.n > BRUTE_FORCE_MAX_N:
        raise CapacityError(f"brute force over 2^{spec.n} bitstrings refused (limit n <= {BRUTE_FORCE_MAX_N})")
    distinct = {evaluate(spec, BitString(spec.n, mask)) for mask in range(1 << spec.n)}
    values = list(distinct)
    front = frozenset(
        v for v in values if not any(strictly_dominates(u, v) for u in values)
    )
    antichain = _exact_max_antichain(values) if len(values) <= antichain_limit else None
    return FrontDescriptor(front, len(front), antichain)


def milestone_sets(spec: BenchmarkSpec) -> MilestoneSets:
    """Phase-milestone value sets; undefined (raises) for lotz."""
    b = spec.block_width
    if spec.kind in ("omm", "cocz"):
        coop = spec.n // 2 if spec.kind == "cocz" else 0
        pairs = [(coop + b, coop + 0), (coop + 0, coop + b)]
        corners = frozenset(
            tuple(itertools.chain.from_iterable(combo))
            for combo in itertools.product(pairs, repeat=spec.m_prime)
        )
        return MilestoneSets(corners=corners)
    if spec.kind == "ojzj":
        k = spec.k

        def values_for(ones_choices: set[int]) -> frozenset[ObjectiveVector]:
            pairs = [(b - a + k, a + k) for a in sorted(ones_choices)]
            return frozenset(
                tuple(itertools.chain.from_iterable(combo))
                for combo in itertools.product(pairs, repeat=spec.m_prime)
            )

        cliffs = values_for({k, b - k})
        corners = values_for({0, k, b - k, b})
        return MilestoneSets(corners=corners, cliffs=cliffs)
    raise ValueError("no phase milestone sets are defined for lotz")
