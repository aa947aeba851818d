"""Experiment runner: dataset -> similarity sets -> algorithms x k -> metrics.

Within one ``k`` every algorithm is scored against the same similarity
sets.  Output rows are sorted by ``(k, algorithm)`` so tables do not depend
on execution order, and nothing time-dependent is written unless
``timing`` is switched on.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .baseline import gonzalez, hochbaum_shmoys
from .eqsolver import Mode, solve
from .instance import (
    Instance,
    SimilarityFamily,
    Variant,
    construct_similarity_sets,
    enforce_assumption,
    generate_cycle_instance,
    generate_pof_instance,
)
from .metricspace import build_euclidean, euclidean_distances, read_csv
from .metrics import evaluate

log = logging.getLogger(__name__)

PAPER_K_VALUES = (2, 4, 8, 16, 32, 64, 128)
DESK_K_VALUES = (2, 4, 8, 16, 32)
ALGORITHMS = ("alg-pp", "alg-ag", "pseudo-pof", "gonzalez", "hs")
FAIR_ALGORITHMS = ("alg-pp", "alg-ag", "pseudo-pof")

COLUMNS = (
    "k",
    "algorithm",
    "max_distance",
    "max_f_pp_strict",
    "max_f_pp_lenient",
    "max_f_ag_strict",
    "max_f_ag_lenient",
    "violation_fraction_pp",
    "violation_fraction_ag",
    "center_ratio",
    "status",
)
TIMING_COLUMNS = ("build_time_ms", "wall_time_ms")


class ExperimentError(RuntimeError):
    pass


@dataclass
class ExperimentConfig:
    dataset: str | None = None
    # "pof", "pof:<r>,<D>", "cycle:<m>" keep their own similarity sets;
    # "random:<n>" draws points and gets sets like a dataset would
    generator: str | None = None
    k_values: tuple[int, ...] = PAPER_K_VALUES
    alpha: float = 2.0
    sample_size: int | None = None
    seed: int = 0
    algorithms: tuple[str, ...] = ALGORITHMS
    psi: float = 2.0
    search: str = "linear"
    standardize: bool = True
    normalize: bool = True
    timing: bool = False
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        self.k_values = tuple(int(k) for k in self.k_values)
        self.algorithms = tuple(self.algorithms)
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")
        if (self.dataset is None) == (self.generator is None):
            raise ValueError("give exactly one of dataset or generator")
        if self.alpha < 2 and set(self.algorithms) & set(FAIR_ALGORITHMS):
            raise ValueError("the fair algorithms need alpha >= 2")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        names = {f.name for f in fields(cls)}
        extra = set(obj) - names
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**obj)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["k_values"] = list(self.k_values)
        out["algorithms"] = list(self.algorithms)
        return out


def _load(cfg: ExperimentConfig) -> tuple[np.ndarray, SimilarityFamily | None]:
    """Distance matrix plus fixed similarity sets (structured generators
    only; otherwise sets are drawn per k)."""
    if cfg.dataset is not None:
        path = Path(cfg.dataset)
        if not path.is_file():
            raise FileNotFoundError(f"dataset not found: {path}")
        ds = read_csv(path)
        d = build_euclidean(ds, cfg.standardize, cfg.normalize, cfg.sample_size, cfg.seed)
        return d, None
    name, _, arg = cfg.generator.partition(":")
    if name == "pof":
        r, big_d = (float(x) for x in arg.split(",")) if arg else (1.0, 10.0)
        inst = generate_pof_instance(r, big_d)
        return inst.d, inst.sim
    if name == "cycle":
        inst = generate_cycle_instance(int(arg or 8))
        return inst.d, inst.sim
    if name == "random":
        rng = np.random.default_rng(cfg.seed)
        d = euclidean_distances(rng.random((int(arg or 100), 2)))
        if cfg.normalize and d.max() > 0:
            d = d / d.max()
        return d, None
    raise ValueError(f"unknown generator {cfg.generator!r}")


def _run_algorithm(name: str, base: Instance, search: str):
    if name == "gonzalez":
        return gonzalez(base.d, base.k)
    if name == "hs":
        return hochbaum_shmoys(base.d, base.k)[0]
    if name == "alg-pp":
        return solve(base.replace(variant=Variant.PP), Mode.STANDARD, search)
    if name == "alg-ag":
        return solve(base.replace(variant=Variant.AG), Mode.STANDARD, search)
    return solve(base.replace(variant=Variant.PP), Mode.PSEUDO_POF, search)


def run_experiment(cfg: ExperimentConfig) -> list[dict]:
    """One row per ``(k, algorithm)``, sorted."""
    t0 = time.perf_counter()
    d, fixed_sets = _load(cfg)
    build_ms = (time.perf_counter() - t0) * 1e3
    n = d.shape[0]
    rows = []
    for k in sorted(set(cfg.k_values)):
        if k >= n or k < 1:
            log.warning("skipping k=%d for n=%d points", k, n)
            rows.extend({"k": k, "algorithm": a, "status": f"skipped: k >= n ({n})"} for a in cfg.algorithms)
            continue
        if fixed_sets is None:
            _, filt = hochbaum_shmoys(d, k)
            drawn = construct_similarity_sets(d, filt.r_f, np.random.default_rng([cfg.seed, k]))
            sim, _ = enforce_assumption(drawn, cfg.psi, filt.r_f, d)
        else:
            sim = fixed_sets
        base = Instance(d, sim, k, cfg.alpha, Variant.PP)
        for algo in cfg.algorithms:
            if algo in FAIR_ALGORITHMS and k < 2:
                rows.append({"k": k, "algorithm": algo, "status": "skipped: k < 2"})
                continue
            t1 = time.perf_counter()
            try:
                sol = _run_algorithm(algo, base, cfg.search)
            except RuntimeError as exc:
                raise ExperimentError(f"{algo} failed at k={k}: {exc}") from exc
            wall_ms = (time.perf_counter() - t1) * 1e3
            row = {"k": k, "algorithm": algo, **evaluate(base, sol).summary(), "status": "ok"}
            if cfg.timing:
                row["build_time_ms"] = build_ms
                row["wall_time_ms"] = wall_ms
            rows.append(row)
    rows.sort(key=lambda r: (r["k"], r["algorithm"]))
    return rows


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool) or isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def table_columns(cfg: ExperimentConfig) -> tuple[str, ...]:
    return COLUMNS + (TIMING_COLUMNS if cfg.timing else ())


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_value(r.get(c)) for c in columns])
    return buf.getvalue()


def to_json(rows: list[dict], columns) -> str:
    def enc(v):
        if isinstance(v, float) and math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v

    return json.dumps([{c: enc(r.get(c)) for c in columns} for r in rows], indent=1) + "\n"


def render(rows: list[dict], cfg: ExperimentConfig) -> str:
    cols = table_columns(cfg)
    return to_csv(rows, cols) if cfg.format == "csv" else to_json(rows, cols)
