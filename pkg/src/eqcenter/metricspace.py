"""Metric spaces over indexed points: validation, Euclidean construction
from tabular data, and the candidate radii used by guess-based solvers.

A distance matrix is a plain ``float64`` :class:`numpy.ndarray` of shape
``(n, n)``.  Point ``i`` is row/column ``i``; every tie anywhere in this
package resolves to the lowest index.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

#: Absolute tolerance for the triangle inequality in :func:`validate_metric`.
METRIC_EPS = 1e-9


class MetricStructureError(ValueError):
    """Input cannot be a distance matrix at all (shape or non-finite values)."""


class DatasetError(ValueError):
    """Raised for unusable datasets or impossible sampling requests."""


@dataclass(frozen=True)
class MetricReport:
    ok: bool
    # (a, b, via) with d[a, b] > d[a, via] + d[via, b] + eps, or (i, j, j) /
    # (i, i, i) for asymmetry / nonzero diagonal; None when ok.
    violation: tuple[int, int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def as_distance_matrix(d) -> np.ndarray:
    """Coerce ``d`` to a square finite float64 array, raising
    :class:`MetricStructureError` otherwise.  Metric axioms are not checked."""
    arr = np.array(d, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MetricStructureError(f"distance matrix must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MetricStructureError("distance matrix has non-finite entries")
    return arr


def validate_metric(d, eps: float = METRIC_EPS) -> MetricReport:
    """Check zero diagonal, symmetry, nonnegativity and the triangle inequality.

    Violations are reported for the lexicographically first triple
    ``(a, b, via)`` with ``d[a, b] > d[a, via] + d[via, b] + eps``.  Structural
    problems raise :class:`MetricStructureError` instead.
    """
    d = as_distance_matrix(d)
    n = d.shape[0]
    bad_diag = np.flatnonzero(np.diag(d) != 0)
    if bad_diag.size:
        i = int(bad_diag[0])
        return MetricReport(False, (i, i, i), "nonzero diagonal")
    neg = np.argwhere(d < 0)
    if neg.size:
        i, j = map(int, neg[0])
        return MetricReport(False, (i, j, j), "negative distance")
    asym = np.argwhere(d != d.T)
    if asym.size:
        i, j = map(int, asym[0])
        return MetricReport(False, (i, j, j), "asymmetric")
    for a in range(n):
        # bad[b, via]: d[a, b] > d[a, via] + d[via, b]
        bad = np.argwhere(d[a][:, None] > d[a][None, :] + d + eps)
        if bad.size:
            b, via = map(int, bad[0])
            return MetricReport(False, (a, b, via), "triangle inequality")
    return MetricReport(True)


@dataclass(frozen=True)
class RawDataset:
    """Tabular records with the subset of columns that are purely numeric."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    numeric_columns: tuple[str, ...]
    provenance: str = ""
    _values: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.rows)

    def numeric_values(self) -> np.ndarray:
        """``(rows, numeric_columns)`` float array."""
        if self._values is not None:
            return self._values
        idx = [self.columns.index(c) for c in self.numeric_columns]
        vals = np.array([[float(r[i]) for i in idx] for r in self.rows], dtype=np.float64)
        return vals.reshape(len(self.rows), len(idx))

    @classmethod
    def from_array(cls, values, columns: Sequence[str] | None = None, provenance: str = "") -> "RawDataset":
        values = np.atleast_2d(np.asarray(values, dtype=np.float64))
        if columns is None:
            columns = [f"x{i}" for i in range(values.shape[1])]
        rows = tuple(tuple(repr(float(v)) for v in row) for row in values)
        return cls(tuple(columns), rows, tuple(columns), provenance, values)


def _is_finite_number(cell: str) -> bool:
    try:
        return math.isfinite(float(cell))
    except ValueError:
        return False


def read_csv(path) -> RawDataset:
    """Read a CSV with a header row.

    A column is numeric iff every cell parses as a finite number; a single
    empty cell makes the column non-numeric.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty file") from None
        rows = [tuple(r) for r in reader if r]
    header = [h.strip() for h in header]
    for lineno, r in enumerate(rows, start=2):
        if len(r) != len(header):
            raise DatasetError(f"{path}:{lineno}: expected {len(header)} fields, got {len(r)}")
    numeric = tuple(
        name
        for i, name in enumerate(header)
        if rows and all(r[i].strip() != "" and _is_finite_number(r[i]) for r in rows)
    )
    return RawDataset(tuple(header), tuple(rows), numeric, str(path))


def euclidean_distances(points) -> np.ndarray:
    """Exactly symmetric pairwise Euclidean distances with a zero diagonal."""
    points = np.asarray(points, dtype=np.float64)
    if points.shape[0] < 2:
        return np.zeros((points.shape[0], points.shape[0]))
    return squareform(pdist(points, metric="euclidean"))


def build_euclidean(
    dataset: RawDataset,
    standardize: bool = True,
    normalize: bool = True,
    sample_size: int | None = None,
    seed=None,
) -> np.ndarray:
    """Distance matrix from the numeric columns of ``dataset``.

    Steps run in a fixed order: keep numeric columns, subsample rows
    uniformly without replacement (when ``sample_size`` is given), z-score
    each column on the sample (zero-variance columns become 0), take
    pairwise Euclidean distances, and finally divide by the largest one.
    """
    if len(dataset) == 0:
        raise DatasetError("dataset has no rows")
    if not dataset.numeric_columns:
        raise DatasetError("dataset has no numeric columns")
    x = dataset.numeric_values()
    if sample_size is not None:
        if sample_size > x.shape[0]:
            raise DatasetError(f"sample_size {sample_size} exceeds {x.shape[0]} rows")
        rng = np.random.default_rng(seed)
        keep = np.sort(rng.choice(x.shape[0], size=sample_size, replace=False))
        x = x[keep]
    if standardize:
        mean = x.mean(axis=0)
        std = x.std(axis=0)
        safe = np.where(std > 0, std, 1.0)
        x = np.where(std > 0, (x - mean) / safe, 0.0)
    d = euclidean_distances(x)
    if normalize:
        top = d.max() if d.size else 0.0
        if top > 0:
            d = d / top
    return d


def pairwise_distance_candidates(d, floor: float = 0.0) -> np.ndarray:
    """Sorted unique off-diagonal distances ``>= floor``, with ``floor`` itself
    prepended when it is not already one of them."""
    d = np.asarray(d, dtype=np.float64)
    iu = np.triu_indices(d.shape[0], k=1)
    vals = np.unique(d[iu])
    vals = vals[vals >= floor]
    if vals.size == 0 or vals[0] != floor:
        vals = np.concatenate(([float(floor)], vals))
    return vals
