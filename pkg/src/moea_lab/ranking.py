"""Selection machinery: non-dominated sorting, exact hypervolume, niching.

Hypervolume is computed by a dimension-sweep recursion (slice on the last
objective, recurse one dimension down) in exact integer arithmetic, so for
integer objective values and an integer reference point all volumes and
contributions are exact ints. Within a front of mutually non-strictly-
dominating integer values, a member's contribution is zero exactly when its
value is duplicated; callers exploit that to skip the recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .core import ObjectiveVector


@dataclass
class FrontPartition:
    """Indices partitioned into fronts, best first, ascending within a front."""

    fronts: list[list[int]]

    def rank_of(self) -> list[int]:
        ranks = [0] * sum(len(f) for f in self.fronts)
        for r, front in enumerate(self.fronts):
            for i in front:
                ranks[i] = r
        return ranks


def fast_non_dominated_sort(values: Sequence[ObjectiveVector]) -> FrontPartition:
    """Partition indices into non-domination fronts (deterministic in input order)."""
    if len(values) == 0:
        raise ValueError("cannot sort an empty list of objective vectors")
    arr = np.asarray(values, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("objective vectors must all have the same length")
    ge = (arr[:, None, :] >= arr[None, :, :]).all(-1)
    strict = ge & ~ge.T  # strict[i, j]: i strictly dominates j
    dominators = strict.sum(axis=0)
    remaining = np.ones(len(values), dtype=bool)
    fronts: list[list[int]] = []
    while remaining.any():
        current = remaining & (dominators == 0)
        idx = np.flatnonzero(current)
        fronts.append([int(i) for i in idx])
        remaining[idx] = False
        dominators = dominators - strict[idx].sum(axis=0)
    return FrontPartition(fronts)


def _maxima(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    # Keep only points not weakly dominated by another (dedupes as well);
    # dominated boxes do not change the union.
    out: list[tuple[int, ...]] = []
    for p in set(points):
        if not any(q != p and all(a >= b for a, b in zip(q, p)) for q in points):
            out.append(p)
    return out


def _union_volume(points: list[tuple[int, ...]], m: int) -> int:
    # Volume of the union of boxes [0, p] over points with positive coords.
    if not points:
        return 0
    if m == 1:
        return max(p[0] for p in points)
    if len(points) == 1:
        return math.prod(points[0])
    levels = sorted({p[-1] for p in points}, reverse=True)
    vol = 0
    for j, lev in enumerate(levels):
        below = levels[j + 1] if j + 1 < len(levels) else 0
        active = _maxima([p[:-1] for p in points if p[-1] >= lev])
        vol += (lev - below) * _union_volume(active, m - 1)
    return vol


def hypervolume(values, r: ObjectiveVector) -> int:
    """Exact hypervolume of the union of boxes ``[r, v]`` over ``values``.

    Every value must exceed ``r`` strictly in each coordinate.
    """
    m = len(r)
    shifted: list[tuple[int, ...]] = []
    for v in values:
        if len(v) != m:
            raise ValueError(f"value {v} has length {len(v)}, reference point has {m}")
        if any(a <= b for a, b in zip(v, r)):
            raise ValueError(f"value {v} does not strictly dominate the reference point {r}")
        shifted.append(tuple(a - b for a, b in zip(v, r)))
    if not shifted:
        return 0
    return _union_volume(_maxima(shifted), m)


def hv_contribution(index: int, front: Sequence[ObjectiveVector], r: ObjectiveVector) -> int:
    """Hypervolume lost when the member at ``index`` is removed from ``front``."""
    if not 0 <= index < len(front):
        raise IndexError(f"index {index} not in front of size {len(front)}")
    value = front[index]
    rest = [v for j, v in enumerate(front) if j != index]
    if value in rest:
        return 0
    return hypervolume(front, r) - hypervolume(rest, r)


def hv_contributions(front: Sequence[ObjectiveVector], r: ObjectiveVector) -> list[int]:
    """All per-member contributions, short-circuiting duplicated values to 0."""
    total: int | None = None
    out = []
    for i, v in enumerate(front):
        if any(j != i and front[j] == v for j in range(len(front))):
            out.append(0)
            continue
        if total is None:
            total = hypervolume(front, r)
        out.append(total - hypervolume([u for j, u in enumerate(front) if j != i], r))
    return out


@dataclass(frozen=True)
class ReferencePointSet:
    """Simplex-lattice reference directions with granularity ``p``.

    ``lattice`` holds all non-negative integer ``m``-vectors summing to
    ``p``; scaled by ``1/p`` they cover the unit simplex uniformly. Only the
    direction of each point matters for association.
    """

    m: int
    p: int
    lattice: np.ndarray

    def __len__(self) -> int:
        return len(self.lattice)

    @cached_property
    def _lattice_t_float(self) -> np.ndarray:
        return self.lattice.T.astype(np.float64)

    @cached_property
    def _sq_norms(self) -> np.ndarray:
        return (self.lattice.astype(np.int64) ** 2).sum(axis=1)

    @property
    def points(self) -> frozenset[tuple[Fraction, ...]]:
        return frozenset(
            tuple(Fraction(int(c), self.p) for c in row) for row in self.lattice
        )


def reference_points(m: int, p: int) -> ReferencePointSet:
    """All compositions of ``p`` into ``m`` non-negative parts, scaled by ``1/p``."""
    if m < 2 or p < 1:
        raise ValueError(f"need m >= 2 and p >= 1, got m={m}, p={p}")
    rows = []
    for cuts in _compositions(p, m):
        rows.append(cuts)
    lattice = np.array(rows, dtype=np.int64)
    return ReferencePointSet(m=m, p=p, lattice=lattice)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def min_reference_granularity(m: int, f_max: int) -> int:
    """Smallest granularity meeting the sufficient condition ``p >= 2 m^(3/2) f_max``."""
    return math.ceil(2 * m ** 1.5 * f_max)


def _nearest_direction_sets(distinct: list[ObjectiveVector],
                            refs: ReferencePointSet) -> list[list[int]]:
    """Exact argmin-distance reference set per distinct value.

    The perpendicular distance of ``v`` to direction ``w`` is minimized
    exactly when ``(v . w)^2 / |w|^2`` is maximized; normalizing ``v`` by a
    positive constant rescales all distances uniformly, so association is
    computed on the raw integer vectors. Near-ties from the float pass are
    re-checked with exact integer cross-multiplication.
    """
    W = refs.lattice
    wn2 = refs._sq_norms
    V = np.asarray(distinct, dtype=np.int64)
    score = V.astype(np.float64) @ refs._lattice_t_float
    np.square(score, out=score)
    score /= wn2
    mx = score.max(axis=1)
    near = score >= (mx[:, None] * (1.0 - 1e-9) - 1e-300)
    argmax = score.argmax(axis=1)
    sets: list[list[int]] = []
    for i in range(len(distinct)):
        if near[i].sum() == 1:
            sets.append([int(argmax[i])])
            continue
        vi = V[i].tolist()
        best: list[int] = []
        best_num = best_den = None
        for j in np.flatnonzero(near[i]).tolist():
            num = sum(a * b for a, b in zip(vi, W[j].tolist())) ** 2
            den = int(wn2[j])
            if best_num is None or num * best_den > best_num * den:
                best, best_num, best_den = [j], num, den
            elif num * best_den == best_num * den:
                best.append(j)
        sets.append(best)
    return sets


def _associate(values: Sequence[ObjectiveVector], refs: ReferencePointSet,
               rng: np.random.Generator) -> list[int]:
    """Nearest reference direction per value, exact ties broken uniformly.

    Duplicated values share one distance computation but draw their
    tie-breaks independently.
    """
    if not values:
        return []
    order: dict[ObjectiveVector, int] = {}
    for v in values:
        order.setdefault(v, len(order))
    distinct = list(order)
    sets = _nearest_direction_sets(distinct, refs)
    assigned: list[int] = []
    for v in values:
        best = sets[order[v]]
        assigned.append(best[int(rng.integers(len(best)))] if len(best) > 1 else best[0])
    return assigned


def niche_select(candidates: Sequence[ObjectiveVector], survivors_needed: int,
                 refs: ReferencePointSet, f_max: int, rng: np.random.Generator,
                 already_selected: Sequence[ObjectiveVector] = ()) -> list[int]:
    """Pick ``survivors_needed`` candidate indices by reference-point niching.

    Candidates are associated to their nearest reference direction (objective
    values normalized by the fixed divisor ``f_max``, which leaves the
    association unchanged), then niches are filled round-robin starting from
    the least occupied, counting occupants contributed by
    ``already_selected``. All ties break uniformly at random via ``rng``.
    """
    if survivors_needed > len(candidates):
        raise ValueError(f"cannot select {survivors_needed} from {len(candidates)} candidates")
    if survivors_needed == len(candidates):
        return list(range(len(candidates)))
    if survivors_needed <= 0:
        return []

    assigned = _associate(list(already_selected) + list(candidates), refs, rng)
    counts: dict[int, int] = {}
    for ref in assigned[: len(already_selected)]:
        counts[ref] = counts.get(ref, 0) + 1
    pools: dict[int, list[int]] = {}
    for idx, ref in enumerate(assigned[len(already_selected):]):
        pools.setdefault(ref, []).append(idx)

    chosen: list[int] = []
    while len(chosen) < survivors_needed:
        live = [ref for ref, pool in pools.items() if pool]
        lowest = min(counts.get(ref, 0) for ref in live)
        tied = [ref for ref in live if counts.get(ref, 0) == lowest]
        ref = tied[int(rng.integers(len(tied)))]
        pool = pools[ref]
        idx = pool.pop(int(rng.integers(len(pool))))
        counts[ref] = counts.get(ref, 0) + 1
        chosen.append(idx)
    return chosen
