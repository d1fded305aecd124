import numpy as np
import pytest

from swarmclust.core import (
    Dataset,
    RngSeed,
    data_bounds,
    euclidean_distance,
    pairwise_distances,
    validate_centroids,
)


class TestDataset:
    def test_shape_properties(self):
        data = Dataset(name="d", features=np.zeros((5, 3)), labels=np.array([0, 1, 2, 1, 0]))
        assert data.n_points == 5
        assert data.n_dims == 3
        assert data.n_classes == 3

    def test_rejects_one_point(self):
        with pytest.raises(ValueError, match="at least 2 points"):
            Dataset(name="d", features=np.zeros((1, 3)))

    def test_rejects_non_2d(self):
        with pytest.raises(ValueError, match="2-D"):
            Dataset(name="d", features=np.zeros(5))

    def test_rejects_non_finite(self):
        bad = np.zeros((3, 2))
        bad[1, 1] = np.nan
        with pytest.raises(ValueError, match="non-finite"):
            Dataset(name="d", features=bad)

    def test_rejects_mismatched_labels(self):
        with pytest.raises(ValueError, match="labels"):
            Dataset(name="d", features=np.zeros((4, 2)), labels=np.array([0, 1]))

    def test_n_classes_needs_labels(self):
        data = Dataset(name="d", features=np.zeros((3, 2)))
        with pytest.raises(ValueError, match="no labels"):
            data.n_classes


class TestRngSeed:
    def test_same_seed_same_stream(self):
        a = RngSeed(42, 3).generator().uniform(size=10)
        b = RngSeed(42, 3).generator().uniform(size=10)
        assert np.array_equal(a, b)

    def test_different_streams_differ(self):
        a = RngSeed(42, 0).generator().uniform(size=10)
        b = RngSeed(42, 1).generator().uniform(size=10)
        assert not np.array_equal(a, b)

    def test_different_seeds_differ(self):
        a = RngSeed(1).generator().uniform(size=10)
        b = RngSeed(2).generator().uniform(size=10)
        assert not np.array_equal(a, b)


class TestDistances:
    def test_unit_cube_diagonal(self):
        d = euclidean_distance(np.zeros(3), np.ones(3))
        assert d == pytest.approx(np.sqrt(3.0), abs=1e-15)

    def test_symmetric_and_zero_on_self(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(size=4), rng.normal(size=4)
        assert euclidean_distance(a, b) == euclidean_distance(b, a)
        assert euclidean_distance(a, a) == 0.0

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            euclidean_distance(np.zeros(3), np.zeros(4))

    def test_pairwise_matches_brute_force(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n, c, d = rng.integers(2, 9), rng.integers(1, 5), rng.integers(1, 4)
            points = rng.normal(size=(n, d))
            centres = rng.normal(size=(c, d))
            got = pairwise_distances(points, centres)
            assert got.shape == (c, n)
            for i in range(c):
                for j in range(n):
                    assert got[i, j] == pytest.approx(
                        euclidean_distance(centres[i], points[j]), abs=1e-12
                    )

    def test_pairwise_nonnegative(self):
        rng = np.random.default_rng(9)
        points = rng.normal(size=(10, 3))
        assert np.all(pairwise_distances(points, points[:4]) >= 0.0)


class TestBoundsAndValidation:
    def test_data_bounds(self):
        data = Dataset(name="d", features=np.array([[0.0, 5.0], [2.0, 1.0], [1.0, 3.0]]))
        lo, hi = data_bounds(data)
        assert np.array_equal(lo, [0.0, 1.0])
        assert np.array_equal(hi, [2.0, 5.0])

    def test_data_bounds_constant_feature(self):
        data = Dataset(name="d", features=np.array([[1.0, 7.0], [2.0, 7.0]]))
        lo, hi = data_bounds(data)
        assert lo[1] == hi[1] == 7.0

    def test_validate_centroids_passes_through(self):
        centres = validate_centroids([[0.0, 1.0], [2.0, 3.0]])
        assert centres.shape == (2, 2)
        assert centres.dtype == float

    def test_validate_centroids_rejects_non_finite(self):
        with pytest.raises(ValueError):
            validate_centroids(np.array([[np.inf, 0.0]]))

    def test_validate_centroids_cluster_count_bounds(self):
        with pytest.raises(ValueError):
            validate_centroids(np.ones((1, 2)), n_points=10)
        with pytest.raises(ValueError):
            validate_centroids(np.ones((10, 2)), n_points=10)
        validate_centroids(np.ones((3, 2)), n_points=10)
