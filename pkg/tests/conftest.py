"""Shared test oracles and helpers, independent of the library's code paths."""

from __future__ import annotations

import itertools
import math

import numpy as np


def hv_inclusion_exclusion(values, r) -> int:
    """Hypervolume of the union of boxes [r, v] by inclusion-exclusion.

    Exponential in the number of points; oracle for small fronts only.
    """
    points = list(set(values))
    total = 0
    for size in range(1, len(points) + 1):
        for subset in itertools.combinations(points, size):
            corner = [min(v[i] for v in subset) - r[i] for i in range(len(r))]
            total += (-1) ** (size + 1) * math.prod(corner)
    return total


def hv_monte_carlo(values, r, samples: int, rng) -> tuple[float, float]:
    """Monte Carlo estimate of the union volume and its standard error."""
    arr = np.asarray(values, dtype=np.float64)
    low = np.asarray(r, dtype=np.float64)
    high = arr.max(axis=0)
    box = np.prod(high - low)
    pts = rng.uniform(low, high, size=(samples, len(r)))
    inside = (pts[:, None, :] <= arr[None, :, :]).all(-1).any(-1)
    p = inside.mean()
    return box * p, box * math.sqrt(p * (1 - p) / samples)


def sort_fronts_reference(values) -> list[list[int]]:
    """Quadratic peeling: repeatedly extract the non-strictly-dominated rest."""

    def strictly_dominates(u, v):
        return u != v and all(a >= b for a, b in zip(u, v))

    remaining = list(range(len(values)))
    fronts = []
    while remaining:
        front = [
            i for i in remaining
            if not any(strictly_dominates(values[j], values[i]) for j in remaining if j != i)
        ]
        fronts.append(front)
        remaining = [i for i in remaining if i not in front]
    return fronts


class FakeRng:
    """Scripted generator: feeds queued results to integers()/random() calls."""

    def __init__(self, integers=(), randoms=()):
        self._integers = list(integers)
        self._randoms = list(randoms)

    def integers(self, *args, **kwargs):
        return self._integers.pop(0)

    def random(self, size=None):
        value = self._randoms.pop(0)
        return np.asarray(value) if size is not None else value
