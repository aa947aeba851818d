"""Independent reference routines and instance builders shared by tests.

The reference routines use plain Python loops so they share no code with
the vectorized implementations they check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from eqcenter import (
    Instance,
    OracleBudget,
    SimilarityFamily,
    Variant,
    brute_fair_optimum,
    brute_unfair_optimum,
    generate_random_instance,
)


def naive_distances(points) -> np.ndarray:
    pts = [list(map(float, p)) for p in np.atleast_2d(points)]
    n = len(pts)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = math.sqrt(sum((a - b) ** 2 for a, b in zip(pts[i], pts[j])))
    return out


def naive_metric_ok(d, eps=1e-9) -> bool:
    n = len(d)
    for a in range(n):
        if d[a][a] != 0:
            return False
        for b in range(n):
            if d[a][b] < 0 or d[a][b] != d[b][a]:
                return False
            for c in range(n):
                if d[a][b] > d[a][c] + d[c][b] + eps:
                    return False
    return True


def naive_fair(d, sets, phi, alpha, variant, rtol=0.0) -> list[bool]:
    """Per-point PP/AG satisfaction by direct loops."""
    dist = [float(d[j][phi[j]]) for j in range(len(phi))]
    out = []
    for j, s in enumerate(sets):
        if not s:
            out.append(True)
        elif Variant.parse(variant) is Variant.PP:
            out.append(all(dist[j] <= alpha * dist[m] for m in s))
        else:
            out.append(dist[j] <= alpha * (sum(dist[m] for m in s) / len(s)) * (1 + rtol))
    return out


def line_instance(xs, sets=None, k=2, alpha=2.0, variant="pp") -> Instance:
    d = naive_distances(np.asarray(xs, dtype=float)[:, None])
    sets = sets if sets is not None else [[] for _ in xs]
    return Instance(d, SimilarityFamily.from_sets(sets, d), k, alpha, variant)


def instance_from_points(points, sets, k=2, alpha=2.0, variant="pp") -> Instance:
    d = naive_distances(points)
    return Instance(d, SimilarityFamily.from_sets(sets, d), k, alpha, variant)


# --------------------------------------------------------------------------
# the oracle-checked random suite shared by several acceptance criteria

SUITE_SIZE = 240
SUITE_ALPHAS = (2.0, 2.5, 3.0)
SUITE_BUDGET = OracleBudget(max_points=10, max_k=3, max_assignment_points=8)


@dataclass(frozen=True)
class SuiteCase:
    seed: int
    inst: Instance  # PP variant; AG obtained by replace
    r_unf: float
    r_star: dict  # variant value -> fair optimum


def suite_params(i: int) -> tuple[int, int, float]:
    n = 4 + i % 7
    k = 2 + (i // 7) % 2
    alpha = SUITE_ALPHAS[(i // 14) % 3]
    return n, k, alpha


@lru_cache(maxsize=1)
def random_suite() -> tuple[SuiteCase, ...]:
    cases = []
    for i in range(SUITE_SIZE):
        n, k, alpha = suite_params(i)
        inst = generate_random_instance(n, k, alpha, Variant.PP, seed=1000 + i)
        r_unf = brute_unfair_optimum(inst.d, k, SUITE_BUDGET)
        r_star = {v.value: brute_fair_optimum(inst.replace(variant=v), SUITE_BUDGET) for v in Variant}
        cases.append(SuiteCase(1000 + i, inst, r_unf, r_star))
    return tuple(cases)


def selection_violations(d, sel, R) -> list[str]:
    """Check the center-selection structure by direct loops; returns a
    description of every broken property (empty when all hold)."""
    d = np.asarray(d)
    n = len(d)
    bad = []
    cs = list(sel.centers)
    for a in cs:
        for b in cs:
            if a != b and not d[a, b] > 2 * R:
                bad.append(f"centers {a},{b} within 2R")
    for part in sel.partition:
        if len(part) > 1:
            for c in part:
                if not any(o != c and d[c, o] <= 3 * R for o in sel.non_isolated):
                    bad.append(f"non-isolated center {c} has no partner within 3R")
    seen = sorted(int(j) for c in cs for j in sel.groups[c])
    if seen != list(range(n)):
        bad.append("groups do not partition the points")
    for c in cs:
        for j in sel.groups[c]:
            if sel.rho[j] != c or d[j, c] > 2 * R:
                bad.append(f"point {j} badly covered by {c}")
    for c in sel.isolated:
        inside = set(int(j) for j in sel.groups[c])
        for j in inside:
            for o in range(n):
                if o not in inside and not d[j, o] > R:
                    bad.append(f"isolated group of {c} within R of outside point {o}")
    return bad
