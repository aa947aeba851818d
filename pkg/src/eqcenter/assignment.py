"""Optimal fair assignment onto a fixed set of centers.

Start every point at the farthest center within the guess, then
repeatedly pull one unhappy point to a strictly closer center that its
similar points' current service can justify.  Distances only ever shrink,
and each point moves at most ``|centers|`` times, so the loop either
reaches a fair assignment or runs out of justified moves, in which case
no fair assignment within the guess exists.
"""
from __future__ import annotations

import numpy as np

from .instance import Instance, Solution, Variant, ag_bound, satisfied_mask
from .metricspace import pairwise_distance_candidates


def _violation(inst: Instance, dist: np.ndarray) -> tuple[int, float] | None:
    """First violated constraint as ``(point, threshold)``, where the
    threshold bounds the distance a replacement center may have."""
    ok = satisfied_mask(inst, dist)
    if ok.all():
        return None
    j = int(np.argmin(ok))
    members = inst.sim.sets[j]
    if inst.variant is Variant.PP:
        for m in members:
            if dist[j] > inst.alpha * dist[m]:
                return j, inst.alpha * dist[m]
        raise AssertionError("unreachable: PP violation without a violating member")
    return j, float(ag_bound(dist[list(members)].mean(), inst.alpha))


def optimal_assignment(inst: Instance, centers, guess: float, trace: list | None = None) -> Solution | None:
    """Fair assignment onto ``centers`` with every distance at most
    ``guess``, or None when none exists.

    If ``trace`` is a list, the per-point distance vector is appended to it
    before the first check and after every corrective step.
    """
    centers = np.array(sorted({int(c) for c in centers}), dtype=np.intp)
    if centers.size == 0:
        raise ValueError("need at least one center")
    d = inst.d
    n = inst.n
    dc = d[:, centers]
    reach = dc <= guess
    if not reach.any(axis=1).all():
        return None
    phi = centers[np.argmax(np.where(reach, dc, -np.inf), axis=1)]
    dist = d[np.arange(n), phi]
    if trace is not None:
        trace.append(dist.copy())
    cap = n * centers.size
    steps = 0
    while (v := _violation(inst, dist)) is not None:
        steps += 1
        if steps > cap:
            return None
        j, threshold = v
        row = dc[j]
        allowed = (row < dist[j]) & (row <= threshold)
        if not allowed.any():
            return None
        pick = int(np.argmax(np.where(allowed, row, -np.inf)))
        phi[j] = centers[pick]
        dist[j] = row[pick]
        if trace is not None:
            trace.append(dist.copy())
    return Solution.from_assignment(d, phi, centers)


def value_candidates(d) -> np.ndarray:
    """0 followed by the ascending unique pairwise distances."""
    return pairwise_distance_candidates(d, 0.0)


def optimal_value_for_centers(inst: Instance, centers) -> tuple[float, Solution] | None:
    """Smallest candidate guess at which :func:`optimal_assignment`
    succeeds, with its solution; None if no guess works."""
    for g in value_candidates(inst.d):
        sol = optimal_assignment(inst, centers, float(g))
        if sol is not None:
            return float(g), sol
    return None
