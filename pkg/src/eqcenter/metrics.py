"""Evaluation of a clustering against the fairness constraints.

Per point ``j`` with a nonempty similar set:

* ``f_pp[j] = max over j' of d(j, phi(j)) / d(j', phi(j'))``
* ``f_ag[j] = |S_j| d(j, phi(j)) / sum over j' of d(j', phi(j'))``

A zero numerator gives 0 (even over 0); a positive numerator over 0 gives
``inf``.  Points with empty sets get NaN, meaning "no constraint".
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import Instance, Solution


def _ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros(np.broadcast(num, den).shape)
    pos = num > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out[pos] = np.where(den[pos] > 0, num[pos] / np.where(den[pos] > 0, den[pos], 1.0), np.inf)
    return out


@dataclass(frozen=True, eq=False)
class MetricsReport:
    alpha: float
    k: int
    n_centers: int
    max_distance: float
    f_pp: np.ndarray
    f_ag: np.ndarray

    @property
    def has_constraints(self) -> bool:
        return bool(np.any(~np.isnan(self.f_pp)))

    @staticmethod
    def _max(f: np.ndarray, strict: bool) -> float | None:
        vals = f[~np.isnan(f)]
        if not strict:
            vals = vals[np.isfinite(vals)]
        return float(vals.max()) if vals.size else None

    @property
    def max_f_pp_strict(self) -> float | None:
        return self._max(self.f_pp, True)

    @property
    def max_f_pp_lenient(self) -> float | None:
        return self._max(self.f_pp, False)

    @property
    def max_f_ag_strict(self) -> float | None:
        return self._max(self.f_ag, True)

    @property
    def max_f_ag_lenient(self) -> float | None:
        return self._max(self.f_ag, False)

    @property
    def violation_fraction_pp(self) -> float:
        return float(np.count_nonzero(self.f_pp > self.alpha)) / self.f_pp.size if self.f_pp.size else 0.0

    @property
    def violation_fraction_ag(self) -> float:
        return float(np.count_nonzero(self.f_ag > self.alpha)) / self.f_ag.size if self.f_ag.size else 0.0

    @property
    def center_ratio(self) -> float:
        return self.n_centers / self.k

    def summary(self) -> dict:
        """Scalar fields only; absent maxima are None."""
        return {
            "max_distance": self.max_distance,
            "max_f_pp_strict": self.max_f_pp_strict,
            "max_f_pp_lenient": self.max_f_pp_lenient,
            "max_f_ag_strict": self.max_f_ag_strict,
            "max_f_ag_lenient": self.max_f_ag_lenient,
            "violation_fraction_pp": self.violation_fraction_pp,
            "violation_fraction_ag": self.violation_fraction_ag,
            "center_ratio": self.center_ratio,
        }

    def to_dict(self) -> dict:
        """Flat JSON-ready mapping; infinities become ``"inf"`` and absent
        per-point values ``None``."""
        out = {k: encode_float(v) for k, v in self.summary().items()}
        out["f_pp"] = [encode_float(None if math.isnan(v) else v) for v in self.f_pp.tolist()]
        out["f_ag"] = [encode_float(None if math.isnan(v) else v) for v in self.f_ag.tolist()]
        return out


def encode_float(v):
    if v is None:
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def evaluate(inst: Instance, sol: Solution) -> MetricsReport:
    dist = sol.distances(inst.d)
    f_pp = np.full(inst.n, np.nan)
    f_ag = np.full(inst.n, np.nan)
    table = inst.sim.table
    if table.rows.size:
        vals = dist[table.members]
        own = dist[table.rows]
        f_pp[table.rows] = _ratio(own, np.minimum.reduceat(vals, table.starts))
        f_ag[table.rows] = _ratio(own * table.counts, np.add.reduceat(vals, table.starts))
    return MetricsReport(inst.alpha, inst.k, len(sol.centers), float(dist.max()) if dist.size else 0.0, f_pp, f_ag)
