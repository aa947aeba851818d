"""Guess-and-verify approximation for alpha-equitable k-center.

For a radius guess ``R`` at least the largest similarity radius ``R_m``:

1. :func:`select_centers` picks centers more than ``2R`` apart, grouping
   them into chains whose consecutive members are within ``3R``.
2. Centers alone in their chain are *isolated*; their covered groups are
   metrically separated from everything else, so :func:`assign_isolated`
   solves each group on its own, opening one or two centers.
3. :func:`assign_nonisolated` routes the remaining points to the chained
   centers, never to the center closest to them, which keeps everyone's
   distance within a factor two of their similar points.

:func:`solve_for_guess` either returns a solution of value at most ``5R``
or reports that ``R`` is below the fair optimum.  :func:`solve` scans the
guesses.  Every arbitrary choice resolves to the lowest point index.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .instance import Instance, Solution, _PairTable
from .metricspace import pairwise_distance_candidates


class Mode(str, enum.Enum):
    STANDARD = "standard"
    # skip the single-center test in isolated groups; up to 2k centers
    PSEUDO_POF = "pseudo_pof"

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower().replace("-", "_"))


class InfeasibleError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CenterSelection:
    guess: float
    centers: tuple[int, ...]  # in insertion order
    partition: tuple[tuple[int, ...], ...]
    group_of: dict[int, int]  # center -> index into partition
    groups: dict[int, np.ndarray]  # center -> points it covered
    rho: np.ndarray  # point -> covering center

    @cached_property
    def isolated(self) -> tuple[int, ...]:
        return tuple(sorted(c for c in self.centers if len(self.partition[self.group_of[c]]) == 1))

    @cached_property
    def non_isolated(self) -> tuple[int, ...]:
        return tuple(sorted(c for c in self.centers if len(self.partition[self.group_of[c]]) > 1))

    @cached_property
    def covered_isolated(self) -> np.ndarray:
        """Boolean mask of points whose covering center is isolated."""
        return np.isin(self.rho, self.isolated)

    @property
    def covered_non_isolated(self) -> np.ndarray:
        return ~self.covered_isolated


def select_centers(d, R: float) -> CenterSelection:
    """Grow chains of centers: the next center is the lowest-index uncovered
    point within ``3R`` of the current chain, or, if none exists, the
    lowest-index uncovered point starts a new chain.  Each center covers the
    still-uncovered points within ``2R``."""
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    uncovered = np.ones(n, dtype=bool)
    near_chain = np.zeros(n, dtype=bool)
    centers: list[int] = []
    partition: list[list[int]] = []
    group_of: dict[int, int] = {}
    groups: dict[int, np.ndarray] = {}
    rho = np.full(n, -1, dtype=np.intp)
    while uncovered.any():
        q = uncovered & near_chain
        if q.any():
            c = int(np.argmax(q))
            partition[-1].append(c)
        else:
            c = int(np.argmax(uncovered))
            partition.append([c])
            near_chain[:] = False
        centers.append(c)
        group_of[c] = len(partition) - 1
        near_chain |= d[c] <= 3.0 * R
        cov = uncovered & (d[c] <= 2.0 * R)
        groups[c] = np.flatnonzero(cov)
        rho[cov] = c
        uncovered &= ~cov
    rho.setflags(write=False)
    return CenterSelection(float(R), tuple(centers), tuple(map(tuple, partition)), group_of, groups, rho)


def farthest_pair_assignment(d, group) -> tuple[int, int, dict[int, int]]:
    """Open the two farthest points of ``group`` and send every member to
    the farther of the two; all resulting distances lie in ``[D/2, D]``
    where ``D`` is the pair's distance."""
    g = np.asarray(sorted(int(x) for x in group), dtype=np.intp)
    if g.size < 2:
        raise ValueError("farthest pair needs at least two points")
    d = np.asarray(d, dtype=np.float64)
    sub = d[np.ix_(g, g)].copy()
    np.fill_diagonal(sub, -1.0)
    a, b = np.unravel_index(int(np.argmax(sub)), sub.shape)
    c1, c2 = int(g[min(a, b)]), int(g[max(a, b)])
    phi = {int(j): (c2 if d[j, c2] > d[j, c1] else c1) for j in g}
    return c1, c2, phi


@dataclass(frozen=True, eq=False)
class IsolatedAssignment:
    opened: dict[int, tuple[int, ...]]  # isolated center -> centers opened in its group
    phi: np.ndarray  # -1 outside the isolated region

    @property
    def centers(self) -> tuple[int, ...]:
        return tuple(sorted(c for cs in self.opened.values() for c in cs))


def single_center_for_group(inst: Instance, group: np.ndarray) -> int | None:
    """Lowest-index member that can serve the whole group alone without
    breaking any member's fairness constraint, or None."""
    table = _PairTable.build(inst.sim, group)
    if table.rows.size == 0:
        return int(group[0])
    for j in group:
        if table.satisfied(inst.d[:, j], inst.alpha, inst.variant).all():
            return int(j)
    return None


def assign_isolated(inst: Instance, sel: CenterSelection, mode: Mode | str = Mode.STANDARD) -> IsolatedAssignment:
    mode = Mode.parse(mode)
    phi = np.full(inst.n, -1, dtype=np.intp)
    opened: dict[int, tuple[int, ...]] = {}
    for c in sel.isolated:
        group = sel.groups[c]
        if group.size == 1:
            opened[c] = (c,)
            phi[c] = c
            continue
        if mode is Mode.STANDARD:
            j = single_center_for_group(inst, group)
            if j is not None:
                opened[c] = (j,)
                phi[group] = j
                continue
        c1, c2, sub = farthest_pair_assignment(inst.d, group)
        opened[c] = (c1, c2)
        for p, q in sub.items():
            phi[p] = q
    return IsolatedAssignment(opened, phi)


@dataclass(frozen=True, eq=False)
class TypeClassification:
    type1: np.ndarray  # mask over all points; True only inside the non-isolated region
    type2: np.ndarray
    pi: np.ndarray  # -1 outside the non-isolated region


def classify_types(d, sel: CenterSelection, R: float) -> TypeClassification:
    """Type-1 points have a non-isolated center within ``R`` (unique, as
    centers are more than ``2R`` apart) and ``pi`` is that center; type-2
    points keep their covering center as ``pi``."""
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    region = sel.covered_non_isolated
    s_n = np.array(sel.non_isolated, dtype=np.intp)
    type1 = np.zeros(n, dtype=bool)
    pi = np.full(n, -1, dtype=np.intp)
    pts = np.flatnonzero(region)
    if pts.size:
        close = d[np.ix_(pts, s_n)] <= R
        has = close.any(axis=1)
        type1[pts[has]] = True
        pi[pts] = np.where(has, s_n[np.argmax(close, axis=1)], sel.rho[pts])
    return TypeClassification(type1, region & ~type1, pi)


def assign_nonisolated(d, sel: CenterSelection, cls: TypeClassification, R: float) -> tuple[np.ndarray, np.ndarray]:
    """Assignment of the non-isolated region onto the chained centers.

    Returns ``(phi, case)`` where ``case`` holds ``"A"``, ``"B"`` or ``"C"``
    per assigned point:

    A. type-1: nearest center other than ``pi``;
    B. type-2 with another center within ``2R``: the farthest center within
       ``2R`` (``pi`` included);
    C. other type-2: nearest center other than ``pi``.
    """
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    phi = np.full(n, -1, dtype=np.intp)
    case = np.full(n, "", dtype="<U1")
    pts = np.flatnonzero(cls.type1 | cls.type2)
    if pts.size == 0:
        return phi, case
    s_n = np.array(sel.non_isolated, dtype=np.intp)
    dist = d[np.ix_(pts, s_n)]
    other = s_n[None, :] != cls.pi[pts][:, None]
    within2 = dist <= 2.0 * R
    nearest_other = s_n[np.argmin(np.where(other, dist, np.inf), axis=1)]
    farthest_within = s_n[np.argmax(np.where(within2, dist, -np.inf), axis=1)]
    is_t1 = cls.type1[pts]
    case_b = ~is_t1 & (other & within2).any(axis=1)
    phi[pts] = np.where(case_b, farthest_within, nearest_other)
    case[pts] = np.where(is_t1, "A", np.where(case_b, "B", "C"))
    return phi, case


@dataclass(frozen=True, eq=False)
class GuessOutcome:
    guess: float
    mode: Mode
    selection: CenterSelection
    isolated: IsolatedAssignment | None
    solution: Solution | None
    cases: np.ndarray | None = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.solution is not None

    def __bool__(self) -> bool:
        return self.feasible


def _check_inputs(inst: Instance) -> None:
    if inst.alpha < 2:
        raise ValueError(f"alpha must be at least 2 (got {inst.alpha}); smaller values can be infeasible")
    if inst.k < 2:
        raise ValueError("k must be at least 2")


def solve_for_guess(inst: Instance, R: float, mode: Mode | str = Mode.STANDARD) -> GuessOutcome:
    """One guess: a solution of value at most ``5R``, or an infeasible
    outcome (``solution is None``) certifying ``R`` is below the optimum
    (standard mode) or that the selection exceeds ``k`` (pseudo mode)."""
    mode = Mode.parse(mode)
    _check_inputs(inst)
    if R < inst.sim.r_max:
        raise ValueError(f"guess {R} is below the largest similarity radius {inst.sim.r_max}")
    sel = select_centers(inst.d, R)
    if mode is Mode.PSEUDO_POF and len(sel.centers) > inst.k:
        return GuessOutcome(R, mode, sel, None, None)
    iso = assign_isolated(inst, sel, mode)
    if mode is Mode.STANDARD and len(iso.centers) + len(sel.non_isolated) > inst.k:
        return GuessOutcome(R, mode, sel, iso, None)
    cls = classify_types(inst.d, sel, R)
    phi_n, cases = assign_nonisolated(inst.d, sel, cls, R)
    phi = np.where(sel.covered_isolated, iso.phi, phi_n)
    sol = Solution.from_assignment(inst.d, phi, iso.centers + sel.non_isolated)
    return GuessOutcome(R, mode, sel, iso, sol, cases)


def guess_candidates(inst: Instance) -> np.ndarray:
    return pairwise_distance_candidates(inst.d, inst.sim.r_max)


def best_guess(inst: Instance, mode: Mode | str = Mode.STANDARD, search: str = "linear") -> GuessOutcome:
    """Outcome at the smallest feasible guess (``search="linear"``), or at
    the guess found by bisection assuming feasibility is monotone
    (``search="binary"``)."""
    mode = Mode.parse(mode)
    _check_inputs(inst)
    cand = guess_candidates(inst)
    if search == "linear":
        for R in cand:
            out = solve_for_guess(inst, float(R), mode)
            if out.feasible:
                return out
        raise InfeasibleError("no guess was feasible; alpha >= 2 and k >= 2 should rule this out")
    if search != "binary":
        raise ValueError(f"unknown search {search!r}")
    lo, hi = 0, len(cand) - 1
    top = solve_for_guess(inst, float(cand[hi]), mode)
    if not top.feasible:
        raise InfeasibleError("largest guess infeasible; alpha >= 2 and k >= 2 should rule this out")
    found = top
    while lo < hi:
        mid = (lo + hi) // 2
        out = solve_for_guess(inst, float(cand[mid]), mode)
        if out.feasible:
            hi, found = mid, out
        else:
            lo = mid + 1
    return found


def solve(inst: Instance, mode: Mode | str = Mode.STANDARD, search: str = "linear") -> Solution:
    return best_guess(inst, mode, search).solution
