"""Fairness-unaware k-center 2-approximations and the thresholding lower
bound ``R_f`` on the optimal unfair radius."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import Solution
from .metricspace import pairwise_distance_candidates


@dataclass(frozen=True)
class FilterResult:
    r_f: float
    centers_at_rf: tuple[int, ...]

    @property
    def radius_bound(self) -> float:
        return 2.0 * self.r_f


def nearest_center_assignment(d: np.ndarray, centers) -> np.ndarray:
    """Each point goes to its closest center, lowest index on ties."""
    centers = np.array(sorted(int(c) for c in centers), dtype=np.intp)
    return centers[np.argmin(d[:, centers], axis=1)]


def gonzalez(d, k: int) -> Solution:
    """Farthest-first traversal starting from point 0."""
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and at least one point")
    centers = [0]
    gap = d[0].copy()
    while len(centers) < min(k, n):
        gap[centers] = -1.0  # never re-pick a center, even among duplicates
        nxt = int(np.argmax(gap))
        centers.append(nxt)
        gap = np.minimum(gap, d[nxt])
    return Solution.from_assignment(d, nearest_center_assignment(d, centers), centers)


def greedy_cover(d: np.ndarray, r: float) -> list[int]:
    """Repeatedly open the lowest-index uncovered point and cover everything
    within ``2r`` of it."""
    uncovered = np.ones(d.shape[0], dtype=bool)
    centers = []
    while uncovered.any():
        c = int(np.argmax(uncovered))
        centers.append(c)
        uncovered &= d[c] > 2.0 * r
    return centers


def hochbaum_shmoys(d, k: int) -> tuple[Solution, FilterResult]:
    """Binary search over pairwise distances for a radius ``r`` whose greedy
    ``2r``-cover needs at most ``k`` centers while the next smaller
    candidate needs more.

    The greedy count is not monotone in ``r``, so this boundary need not be
    the globally smallest such candidate.  It is still a lower bound
    ``R_f <= R*_unf``: every candidate at or above the optimal unfair radius
    fits in ``k`` centers, and the search only discards candidates known to
    need more.
    """
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and at least one point")
    cand = pairwise_distance_candidates(d, 0.0)
    # the top candidate covers everything with one center
    lo, hi = 0, len(cand) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if len(greedy_cover(d, cand[mid])) <= k:
            hi = mid
        else:
            lo = mid + 1
    best = greedy_cover(d, cand[lo])
    r_f = float(cand[lo])
    sol = Solution.from_assignment(d, nearest_center_assignment(d, best), best)
    return sol, FilterResult(r_f, tuple(best))
