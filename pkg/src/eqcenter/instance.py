"""Problem inputs for alpha-equitable k-center: similarity sets, instances,
solutions, the fairness check, and structured instance generators."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .metricspace import as_distance_matrix, euclidean_distances

#: Relative slack applied to the right-hand side of the aggregate (AG)
#: constraint, absorbing rounding in the average.  PP comparisons are exact.
AG_RTOL = 1e-12


class Variant(str, enum.Enum):
    """Which fairness constraint an instance is subject to."""

    PP = "pp"  # per point: own distance <= alpha * min over the similar set
    AG = "ag"  # aggregate: own distance <= alpha * mean over the similar set

    @classmethod
    def parse(cls, value) -> "Variant":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class InvalidSolutionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SimilarityFamily:
    """Per-point similarity sets ``S_j`` with radii ``R_j`` and ``R_m``.

    Build with :meth:`from_sets`, which strips self references and computes
    the radii from the distance matrix.
    """

    sets: tuple[tuple[int, ...], ...]
    radii: np.ndarray
    r_max: float

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], d) -> "SimilarityFamily":
        d = np.asarray(d, dtype=np.float64)
        n = d.shape[0]
        clean = []
        for j, s in enumerate(sets):
            members = sorted({int(x) for x in s} - {j})
            if members and (members[0] < 0 or members[-1] >= n):
                raise ValueError(f"similarity set of point {j} references a point outside 0..{n - 1}")
            clean.append(tuple(members))
        if len(clean) != n:
            raise ValueError(f"expected {n} similarity sets, got {len(clean)}")
        radii = np.array([d[j, list(s)].max() if s else 0.0 for j, s in enumerate(clean)])
        radii.setflags(write=False)
        return cls(tuple(clean), radii, float(radii.max()) if n else 0.0)

    @classmethod
    def empty(cls, n: int) -> "SimilarityFamily":
        return cls.from_sets([()] * n, np.zeros((n, n)))

    def __len__(self) -> int:
        return len(self.sets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimilarityFamily):
            return NotImplemented
        return self.sets == other.sets

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([len(s) for s in self.sets], dtype=np.intp)

    @cached_property
    def table(self) -> "_PairTable":
        return _PairTable.build(self, range(len(self.sets)))


@dataclass(frozen=True)
class _PairTable:
    """Flattened similarity sets for a subset of rows, laid out for
    ``ufunc.reduceat``.  Rows with empty sets are dropped."""

    rows: np.ndarray  # points whose constraint is checked
    starts: np.ndarray  # offsets into members, one per row
    members: np.ndarray  # concatenated similar points
    counts: np.ndarray  # |S_row|

    @classmethod
    def build(cls, sim: SimilarityFamily, rows) -> "_PairTable":
        rows = [int(r) for r in rows if sim.sets[int(r)]]
        counts = np.array([len(sim.sets[r]) for r in rows], dtype=np.intp)
        starts = np.zeros(len(rows), dtype=np.intp)
        if len(rows) > 1:
            starts[1:] = np.cumsum(counts)[:-1]
        members = np.fromiter((m for r in rows for m in sim.sets[r]), dtype=np.intp, count=int(counts.sum()))
        return cls(np.array(rows, dtype=np.intp), starts, members, counts)

    def satisfied(self, dist: np.ndarray, alpha: float, variant: Variant) -> np.ndarray:
        """Boolean per row of the table: does ``dist`` meet the constraint?

        ``dist`` may carry leading batch axes; points run along the last.
        """
        if self.rows.size == 0:
            return np.ones(dist.shape[:-1] + (0,), dtype=bool)
        vals = dist[..., self.members]
        if variant is Variant.PP:
            best = np.minimum.reduceat(vals, self.starts, axis=-1)
            return dist[..., self.rows] <= alpha * best
        mean = np.add.reduceat(vals, self.starts, axis=-1) / self.counts
        return dist[..., self.rows] <= ag_bound(mean, alpha)


def ag_bound(mean, alpha: float):
    """Right-hand side of the AG constraint including the rounding slack."""
    return alpha * mean * (1.0 + AG_RTOL)


@dataclass(frozen=True, eq=False)
class Instance:
    d: np.ndarray
    sim: SimilarityFamily
    k: int
    alpha: float = 2.0
    variant: Variant = Variant.PP

    def __post_init__(self):
        d = as_distance_matrix(self.d)
        d.setflags(write=False)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        object.__setattr__(self, "alpha", float(self.alpha))
        if len(self.sim) != d.shape[0]:
            raise ValueError("similarity family size does not match the distance matrix")
        if int(self.k) < 1:
            raise ValueError("k must be a positive integer")
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")
        object.__setattr__(self, "k", int(self.k))

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def replace(self, **changes) -> "Instance":
        fields = dict(d=self.d, sim=self.sim, k=self.k, alpha=self.alpha, variant=self.variant)
        fields.update(changes)
        return Instance(**fields)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "distances": self.d.tolist(),
            "sets": [list(s) for s in self.sim.sets],
            "k": self.k,
            "alpha": self.alpha,
            "variant": self.variant.value,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Instance":
        d = as_distance_matrix(obj["distances"])
        if "n" in obj and int(obj["n"]) != d.shape[0]:
            raise ValueError(f"n={obj['n']} does not match a {d.shape[0]}x{d.shape[0]} matrix")
        sets = obj.get("sets") or [[] for _ in range(d.shape[0])]
        return cls(
            d,
            SimilarityFamily.from_sets(sets, d),
            int(obj["k"]),
            float(obj.get("alpha", 2.0)),
            Variant.parse(obj.get("variant", "pp")),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class Solution:
    """Open centers, the point-to-center map and its k-center value."""

    centers: tuple[int, ...]
    assignment: np.ndarray
    value: float

    @classmethod
    def from_assignment(cls, d, assignment, centers: Iterable[int] | None = None) -> "Solution":
        d = np.asarray(d)
        phi = np.array(assignment, dtype=np.intp)
        phi.setflags(write=False)
        if centers is None:
            centers = phi
        centers = tuple(sorted({int(c) for c in centers}))
        value = float(d[np.arange(phi.size), phi].max()) if phi.size else 0.0
        return cls(centers, phi, value)

    def distances(self, d) -> np.ndarray:
        return np.asarray(d)[np.arange(self.assignment.size), self.assignment]

    def to_dict(self) -> dict:
        return {"centers": list(self.centers), "assignment": self.assignment.tolist(), "value": self.value}

    @classmethod
    def from_dict(cls, obj: dict, d=None) -> "Solution":
        if d is not None:
            return cls.from_assignment(d, obj["assignment"], obj["centers"])
        phi = np.array(obj["assignment"], dtype=np.intp)
        phi.setflags(write=False)
        return cls(tuple(sorted(int(c) for c in obj["centers"])), phi, float(obj["value"]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Solution):
            return NotImplemented
        return (
            self.centers == other.centers
            and np.array_equal(self.assignment, other.assignment)
            and self.value == other.value
        )

    def __repr__(self) -> str:
        return f"Solution(centers={list(self.centers)}, value={self.value!r})"


@dataclass(frozen=True)
class FairnessReport:
    satisfied: np.ndarray  # per point; vacuously True when S_j is empty
    violators: tuple[int, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violators

    def __bool__(self) -> bool:
        return self.ok


def satisfied_mask(inst: Instance, dist: np.ndarray, variant: Variant | None = None) -> np.ndarray:
    """Per-point constraint satisfaction for assignment distances ``dist``."""
    variant = inst.variant if variant is None else Variant.parse(variant)
    table = inst.sim.table
    out = np.ones(inst.n, dtype=bool)
    out[table.rows] = table.satisfied(np.asarray(dist, dtype=np.float64), inst.alpha, variant)
    return out


def check_fairness(inst: Instance, sol: Solution, variant: Variant | str | None = None) -> FairnessReport:
    """Evaluate every point's PP or AG constraint under ``sol``.

    ``variant`` defaults to the instance's own.
    """
    phi = np.asarray(sol.assignment)
    if phi.shape != (inst.n,):
        raise InvalidSolutionError(f"assignment must cover all {inst.n} points")
    centers = set(sol.centers)
    stray = [int(j) for j in np.flatnonzero(~np.isin(phi, list(centers)))]
    if stray:
        raise InvalidSolutionError(f"point {stray[0]} is assigned to non-center {int(phi[stray[0]])}")
    mask = satisfied_mask(inst, inst.d[np.arange(inst.n), phi], variant)
    return FairnessReport(mask, tuple(int(j) for j in np.flatnonzero(~mask)))


# --------------------------------------------------------------------------
# similarity set construction


def construct_similarity_sets(d, r_f: float, seed=None) -> SimilarityFamily:
    """Draw ``R_j ~ U[0, 2 r_f)`` independently for each point (in index
    order) and set ``S_j = {j' != j : d(j, j') <= R_j}``."""
    d = np.asarray(d, dtype=np.float64)
    if r_f < 0:
        raise ValueError("r_f must be nonnegative")
    rng = np.random.default_rng(seed)
    draw = rng.uniform(0.0, 2.0 * r_f, size=d.shape[0])
    sets = [np.flatnonzero(d[j] <= draw[j]) for j in range(d.shape[0])]
    return SimilarityFamily.from_sets(sets, d)


def uniform_ball_sets(d, radius: float) -> SimilarityFamily:
    """Every point's similarity set is its closed ball of a common radius."""
    d = np.asarray(d, dtype=np.float64)
    return SimilarityFamily.from_sets([np.flatnonzero(row <= radius) for row in d], d)


@dataclass(frozen=True)
class Rejection:
    point: int
    member: int
    distance: float
    reason: str  # "self" or "too far"


def enforce_assumption(sets, psi: float, r_f: float, d) -> tuple[SimilarityFamily, list[Rejection]]:
    """Drop every requested similar point farther than ``psi * r_f`` (and any
    self reference), returning the cleaned family plus an explanation of
    each removal."""
    if psi <= 0 or r_f < 0:
        raise ValueError("need psi > 0 and r_f >= 0")
    d = np.asarray(d, dtype=np.float64)
    if isinstance(sets, SimilarityFamily):
        sets = sets.sets
    limit = psi * r_f
    kept, report = [], []
    for j, s in enumerate(sets):
        keep = []
        for m in sorted({int(x) for x in s}):
            if m == j:
                report.append(Rejection(j, m, 0.0, "self"))
            elif d[j, m] > limit:
                report.append(Rejection(j, m, float(d[j, m]), "too far"))
            else:
                keep.append(m)
        kept.append(keep)
    return SimilarityFamily.from_sets(kept, d), report


# --------------------------------------------------------------------------
# generators


def cycle_distances(n_points: int) -> np.ndarray:
    idx = np.arange(n_points)
    gap = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(gap, n_points - gap).astype(np.float64)


def generate_cycle_instance(m: int, alpha: float = 2.0, variant: Variant | str = Variant.PP) -> Instance:
    """``2m`` points on a unit cycle with paired similarity sets.

    Points with odd label ``i`` (1-based) are paired at distance ``m``; even
    labels at distance ``m/2``.  ``k = 2``.  Requires ``m >= 4`` with both
    ``m`` and ``m/2`` even.
    """
    if m < 4 or m % 2 or (m // 2) % 2:
        raise ValueError("m must be >= 4 with m and m/2 both even")
    n = 2 * m
    partner = [-1] * (n + 1)  # 1-based labels
    for i in range(1, m + 1, 2):
        partner[i], partner[i + m] = i + m, i
    half = m // 2
    for i in range(2, n + 1, 2):
        if partner[i] == -1:
            partner[i], partner[i + half] = i + half, i
    d = cycle_distances(n)
    sets = [[partner[i + 1] - 1] for i in range(n)]
    return Instance(d, SimilarityFamily.from_sets(sets, d), 2, alpha, variant)


def generate_pof_instance(
    r: float, big_d: float, alpha: float = 2.0, variant: Variant | str = Variant.PP
) -> Instance:
    """Two far-apart pairs: within-pair distance ``r``, cross distance
    ``big_d``, each point similar only to its partner, ``k = 2``."""
    if not (r > 0 and big_d > 0 and r <= 2 * big_d):
        raise ValueError("need 0 < r <= 2 * big_d for a metric")
    d = np.full((4, 4), float(big_d))
    np.fill_diagonal(d, 0.0)
    d[0, 1] = d[1, 0] = d[2, 3] = d[3, 2] = float(r)
    sets = [[1], [0], [3], [2]]
    return Instance(d, SimilarityFamily.from_sets(sets, d), 2, alpha, variant)


def generate_random_instance(
    n: int,
    k: int,
    alpha: float = 2.0,
    variant: Variant | str = Variant.PP,
    seed=None,
    dim: int = 2,
) -> Instance:
    """Uniform points in the unit cube with similarity sets drawn around the
    thresholding lower bound, as in the benchmark pipeline."""
    from .baseline import hochbaum_shmoys

    rng = np.random.default_rng(seed)
    d = euclidean_distances(rng.random((n, dim)))
    _, filt = hochbaum_shmoys(d, k)
    sim = construct_similarity_sets(d, filt.r_f, rng)
    return Instance(d, sim, k, alpha, variant)
