import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from eqcenter.instance import generate_cycle_instance, generate_pof_instance
from eqcenter.metricspace import (
    DatasetError,
    MetricStructureError,
    RawDataset,
    build_euclidean,
    euclidean_distances,
    pairwise_distance_candidates,
    read_csv,
    validate_metric,
)
from helpers import naive_distances, naive_metric_ok

coords = st.floats(-100, 100, allow_nan=False, allow_infinity=False)


def test_two_point_metric_passes():
    assert validate_metric([[0, 1], [1, 0]]).ok


def test_triangle_violation_reported():
    rep = validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert not rep.ok
    assert rep.violation == (0, 2, 1)
    assert rep.reason == "triangle inequality"


def test_cycle_metric_passes_and_agrees_with_triple_loop():
    d = generate_cycle_instance(8).d
    assert validate_metric(d).ok
    assert naive_metric_ok(d.tolist())


@pytest.mark.parametrize(
    "bad, reason",
    [
        ([[1, 1], [1, 0]], "nonzero diagonal"),
        ([[0, 1], [2, 0]], "asymmetric"),
        ([[0, -1], [-1, 0]], "negative distance"),
    ],
)
def test_axiom_violations(bad, reason):
    rep = validate_metric(bad)
    assert not rep.ok and rep.reason == reason


@pytest.mark.parametrize("bad", [[[0, 1, 2], [1, 0, 1]], [[0, np.nan], [np.nan, 0]], [0, 1, 2]])
def test_structural_errors_raise(bad):
    with pytest.raises(MetricStructureError):
        validate_metric(bad)


def test_pof_metric_passes():
    d = generate_pof_instance(1, 10).d
    assert validate_metric(d).ok and naive_metric_ok(d.tolist())


@given(st.integers(3, 7).flatmap(lambda n: arrays(np.float64, (n, n), elements=st.floats(0, 10))))
def test_validate_metric_matches_triple_loop(a):
    d = np.minimum(a, a.T)
    np.fill_diagonal(d, 0.0)
    assert validate_metric(d).ok == naive_metric_ok(d.tolist())


# --------------------------------------------------------------------------
# building distances from data


def test_two_points_normalize_to_one():
    ds = RawDataset.from_array([[0.0], [3.0]])
    d = build_euclidean(ds, standardize=False, normalize=True)
    assert np.array_equal(d, [[0, 1], [1, 0]])


def test_single_point():
    d = build_euclidean(RawDataset.from_array([[4.0, 2.0]]))
    assert np.array_equal(d, [[0.0]])


def test_three_points_normalized():
    ds = RawDataset.from_array([[0.0], [1.0], [3.0]])
    d = build_euclidean(ds, standardize=False)
    ref = naive_distances([[0.0], [1.0], [3.0]]) / 3.0
    assert np.allclose(d, ref, rtol=0, atol=1e-15)
    assert sorted({round(v, 12) for v in d[np.triu_indices(3, 1)]}) == [round(1 / 3, 12), round(2 / 3, 12), 1.0]


def test_standardize_zero_variance_column_is_ignored():
    x = np.array([[1.0, 5.0], [2.0, 5.0], [4.0, 5.0]])
    with_const = build_euclidean(RawDataset.from_array(x))
    without = build_euclidean(RawDataset.from_array(x[:, :1]))
    assert np.allclose(with_const, without)


def test_standardize_matches_manual_zscore():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(12, 3)) * [1, 10, 100]
    z = (x - x.mean(axis=0)) / x.std(axis=0)
    ref = naive_distances(z)
    got = build_euclidean(RawDataset.from_array(x), standardize=True, normalize=False)
    assert np.allclose(got, ref)


def test_all_zero_distances_stay_zero():
    d = build_euclidean(RawDataset.from_array(np.ones((4, 2))))
    assert not d.any()


def test_sampling_is_seeded():
    ds = RawDataset.from_array(np.random.default_rng(0).random((40, 3)))
    a = build_euclidean(ds, sample_size=10, seed=5)
    b = build_euclidean(ds, sample_size=10, seed=5)
    c = build_euclidean(ds, sample_size=10, seed=6)
    assert a.shape == (10, 10)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    # without sampling the seed is irrelevant
    assert np.array_equal(build_euclidean(ds, seed=1), build_euclidean(ds, seed=2))


def test_dataset_errors():
    ds = RawDataset.from_array(np.zeros((3, 1)))
    with pytest.raises(DatasetError):
        build_euclidean(ds, sample_size=4)
    with pytest.raises(DatasetError):
        build_euclidean(RawDataset(("a",), (), ()))
    with pytest.raises(DatasetError):
        build_euclidean(RawDataset(("a",), (("x",),), ()))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: arrays(np.float64, (n, 3), elements=coords)))
def test_euclidean_is_metric_and_normalized(x):
    d = build_euclidean(RawDataset.from_array(x))
    assert validate_metric(d).ok
    assert np.array_equal(d, d.T)
    assert d.max() == 1.0 or d.max() == 0.0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: arrays(np.float64, (n, 2), elements=coords)))
def test_euclidean_matches_naive_loop(x):
    assert np.allclose(euclidean_distances(x), naive_distances(x), rtol=1e-12, atol=1e-12)


def test_read_csv_numeric_columns(tmp_path):
    p = tmp_path / "data.csv"
    p.write_text("id,a,b,c,d\nx1,1,2.5,,3\nx2,4,1e3,7,nan\nx3,0,-1,8,2\n")
    ds = read_csv(p)
    assert ds.columns == ("id", "a", "b", "c", "d")
    assert ds.numeric_columns == ("a", "b")
    assert np.array_equal(ds.numeric_values(), [[1, 2.5], [4, 1000], [0, -1]])
    assert len(ds) == 3


def test_read_csv_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(DatasetError):
        read_csv(empty)
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("a,b\n1,2\n3\n")
    with pytest.raises(DatasetError):
        read_csv(ragged)


def test_read_bundled_dataset():
    from pathlib import Path

    ds = read_csv(Path(__file__).parent / "data" / "wdbc.csv")
    assert len(ds) == 569
    assert len(ds.numeric_columns) == 30
    assert "diagnosis" not in ds.numeric_columns


# --------------------------------------------------------------------------
# guess candidates


def test_candidates_examples():
    t4 = generate_pof_instance(1, 10).d
    assert pairwise_distance_candidates(t4, 1.0).tolist() == [1.0, 10.0]
    assert pairwise_distance_candidates(t4, 11.0).tolist() == [11.0]
    assert pairwise_distance_candidates([[0, 1], [1, 0]], 0.0).tolist() == [0.0, 1.0]


@given(
    st.integers(2, 7).flatmap(lambda n: arrays(np.float64, (n, 2), elements=st.integers(0, 5).map(float))),
    st.floats(0, 8),
)
def test_candidates_properties(x, floor):
    d = euclidean_distances(x)
    c = pairwise_distance_candidates(d, floor)
    assert np.all(np.diff(c) > 0)
    assert c[0] == floor
    above = {float(v) for v in d[np.triu_indices(len(d), 1)] if v >= floor}
    assert set(c.tolist()) == above | {floor}
