import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcenter.assignment import optimal_assignment, optimal_value_for_centers, value_candidates
from eqcenter.instance import SimilarityFamily, check_fairness, generate_random_instance
from eqcenter.oracle import exhaustive_assignment_check, exhaustive_optimal_value


def test_t4_far_center_initialization(t4):
    trace = []
    sol = optimal_assignment(t4, [0, 2], 10.0, trace)
    assert sol.assignment.tolist() == [2, 2, 0, 0]
    assert sol.value == 10.0
    assert len(trace) == 1  # no corrective steps


def test_t4_small_guess_infeasible(t4):
    trace = []
    assert optimal_assignment(t4, [0, 2], 1.0, trace) is None
    # each point starts at its own pair's center
    assert trace[0].tolist() == [0.0, 1.0, 0.0, 1.0]


def test_unreachable_guess(t4):
    assert optimal_assignment(t4, [0], 1.0) is None


def test_empty_sets_keep_initialization(t4):
    inst = t4.replace(sim=SimilarityFamily.empty(4))
    trace = []
    sol = optimal_assignment(inst, [0, 2], 10.0, trace)
    assert len(trace) == 1
    assert sol.assignment.tolist() == [2, 2, 0, 0]


def test_requires_centers(t4):
    with pytest.raises(ValueError):
        optimal_assignment(t4, [], 10.0)


def test_optimal_values_t4(t4):
    value, sol = optimal_value_for_centers(t4, [0, 2])
    assert value == 10.0 and check_fairness(t4, sol).ok
    value, _ = optimal_value_for_centers(t4, [0, 1])
    assert value == 10.0 == exhaustive_optimal_value(t4, [0, 1])


def test_single_center_matches_oracle():
    for seed in range(30):
        inst = generate_random_instance(6, 2, 2.0, "pp", seed=seed)
        for c in range(inst.n):
            got = optimal_value_for_centers(inst, [c])
            want = exhaustive_optimal_value(inst, [c])
            assert (got is None) == (want is None)
            if want is not None:
                assert got[0] == want
                assert want == inst.d[:, c].max()


def test_value_candidates():
    d = np.array([[0, 2, 1], [2, 0, 2], [1, 2, 0]], dtype=float)
    assert value_candidates(d).tolist() == [0.0, 1.0, 2.0]


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(["pp", "ag"]), st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_matches_exhaustive(seed, variant, alpha):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 8))
    inst = generate_random_instance(n, 2, 2.0, variant, seed=seed).replace(alpha=alpha)
    size = int(rng.integers(1, min(3, n) + 1))
    centers = sorted(rng.choice(n, size=size, replace=False).tolist())
    cand = value_candidates(inst.d)
    verdicts = []
    for g in cand:
        trace = []
        sol = optimal_assignment(inst, centers, float(g), trace)
        assert (sol is not None) == exhaustive_assignment_check(inst, centers, float(g))
        assert len(trace) - 1 <= n * len(centers)
        steps = np.array(trace)
        assert np.all(np.diff(steps, axis=0) <= 0)
        if sol is not None:
            assert check_fairness(inst, sol).ok and sol.value <= g
            assert set(sol.centers) <= set(centers)
        verdicts.append(sol is not None)
    # success is upward closed over the candidate guesses
    assert verdicts == sorted(verdicts)
    got = optimal_value_for_centers(inst, centers)
    want = exhaustive_optimal_value(inst, centers)
    assert (got is None) == (want is None)
    if want is not None:
        assert got[0] == want
