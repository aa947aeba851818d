"""Exact answers for small instances by exhaustive enumeration.

These are the ground truth the approximation algorithms are checked
against, so they share as little code with them as possible: only the
per-point fairness predicate and, for instances too large to enumerate
assignments, the fixed-center assignment routine.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .assignment import optimal_assignment, value_candidates
from .instance import Instance


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_points: int = 10
    max_k: int = 3
    max_assignment_points: int = 8

    def check(self, n: int, k: int) -> None:
        if n > self.max_points:
            raise BudgetExceeded(f"{n} points exceeds the oracle budget of {self.max_points}")
        if k > self.max_k:
            raise BudgetExceeded(f"k={k} exceeds the oracle budget of {self.max_k}")


DEFAULT_BUDGET = OracleBudget()


def center_sets(n: int, k: int):
    """All nonempty center subsets of size at most ``k``."""
    for size in range(1, min(k, n) + 1):
        yield from itertools.combinations(range(n), size)


def brute_unfair_optimum(d, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> float:
    """Optimal vanilla k-center radius."""
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    budget.check(n, k)
    if k >= n:
        return 0.0
    # k centers are never worse than fewer
    return min(float(d[:, list(c)].min(axis=1).max()) for c in itertools.combinations(range(n), k))


def _assignment_distances(inst: Instance, centers) -> np.ndarray:
    """``(|centers|**n, n)`` array: row ``a`` holds every point's distance
    under the ``a``-th assignment in lexicographic order."""
    centers = np.asarray(sorted(centers), dtype=np.intp)
    choice = np.array(list(itertools.product(range(centers.size), repeat=inst.n)), dtype=np.intp)
    choice = choice.reshape(-1, inst.n)
    return inst.d[np.arange(inst.n)[None, :], centers[choice]]


def _fair_rows(inst: Instance, dist: np.ndarray) -> np.ndarray:
    table = inst.sim.table
    return table.satisfied(dist, inst.alpha, inst.variant).all(axis=-1)


def exhaustive_optimal_value(inst: Instance, centers, budget: OracleBudget = DEFAULT_BUDGET) -> float | None:
    """Best fair value over every assignment onto ``centers``; None if no
    assignment is fair."""
    if inst.n > budget.max_assignment_points:
        raise BudgetExceeded(f"{inst.n} points exceeds the assignment budget of {budget.max_assignment_points}")
    dist = _assignment_distances(inst, centers)
    fair = _fair_rows(inst, dist)
    if not fair.any():
        return None
    return float(dist[fair].max(axis=1).min())


def exhaustive_assignment_check(inst: Instance, centers, guess: float, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Is there any fair assignment onto ``centers`` of value at most ``guess``?"""
    if inst.n > budget.max_assignment_points:
        raise BudgetExceeded(f"{inst.n} points exceeds the assignment budget of {budget.max_assignment_points}")
    dist = _assignment_distances(inst, centers)
    ok = _fair_rows(inst, dist) & (dist.max(axis=1) <= guess)
    return bool(ok.any())


def _iterative_value(inst: Instance, centers, upper: float) -> float | None:
    if optimal_assignment(inst, centers, upper) is None:
        return None
    for g in value_candidates(inst.d):
        if g > upper:
            break
        if optimal_assignment(inst, centers, float(g)) is not None:
            return float(g)
    return upper


def brute_fair_optimum(inst: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> float | None:
    """Optimal fair value over all center sets of size at most ``k``, or
    None when the instance has no fair solution at all."""
    budget.check(inst.n, inst.k)
    exhaustive = inst.n <= budget.max_assignment_points
    top = float(inst.d.max()) if inst.n else 0.0
    best = None
    for cs in center_sets(inst.n, inst.k):
        if exhaustive:
            val = exhaustive_optimal_value(inst, cs, budget)
        else:
            val = _iterative_value(inst, cs, top if best is None else best)
        if val is not None and (best is None or val < best):
            best = val
    return best
