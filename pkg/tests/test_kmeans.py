import itertools

import numpy as np
import pytest

from swarmclust.core import Dataset, RngSeed, euclidean_distance
from swarmclust.kmeans import (
    assign_nearest,
    hard_cost,
    recompute_means,
    run_kmeans,
    sum_squared_error,
)

from conftest import make_blobs, random_dataset


class TestAssignNearest:
    def test_nearest_rule(self):
        data = Dataset(name="d", features=np.array([[0.4], [0.9]]))
        out = assign_nearest(data, np.array([[0.0], [1.0]]))
        assert out.tolist() == [0, 1]

    def test_tie_breaks_to_lowest_index(self):
        data = Dataset(name="d", features=np.array([[0.5], [0.5]]))
        out = assign_nearest(data, np.array([[0.0], [1.0]]))
        assert out.tolist() == [0, 0]

    def test_matches_exhaustive_check(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            data = random_dataset(rng, 10, int(rng.integers(1, 4)))
            centres = rng.uniform(-1, 1, size=(3, data.n_dims))
            got = assign_nearest(data, centres)
            for j in range(10):
                dists = [euclidean_distance(centres[i], data.features[j]) for i in range(3)]
                assert got[j] == int(np.argmin(dists))


class TestRecomputeMeans:
    def test_mean_of_members(self):
        data = Dataset(name="d", features=np.array([[0.0], [2.0], [10.0]]))
        centres = recompute_means(data, np.array([0, 0, 1]), 2)
        assert centres[0, 0] == 1.0
        assert centres[1, 0] == 10.0

    def test_singleton_cluster(self):
        data = Dataset(name="d", features=np.array([[3.0, 4.0], [0.0, 0.0]]))
        centres = recompute_means(data, np.array([0, 1]), 2)
        assert np.array_equal(centres[0], [3.0, 4.0])

    def test_empty_cluster_reseeded_at_farthest_point(self):
        # everything near the origin except one outlier; cluster 2 unused
        features = np.array([[0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [9.0, 9.0]])
        data = Dataset(name="d", features=features)
        assignment = np.array([0, 0, 1, 1])
        centres = recompute_means(data, assignment, 3)
        assert np.all(np.isfinite(centres))
        assert np.array_equal(centres[2], [9.0, 9.0])

    def test_two_empty_clusters_get_distinct_seeds(self):
        features = np.array([[0.0, 0.0], [0.2, 0.0], [5.0, 5.0], [-5.0, 5.0]])
        data = Dataset(name="d", features=features)
        centres = recompute_means(data, np.array([0, 0, 0, 0]), 3)
        assert not np.array_equal(centres[1], centres[2])


class TestHardCost:
    def test_hand_value(self):
        # cluster 0: points 0 and 2 around centre 1; cluster 1: point 5 on centre 5
        data = Dataset(name="d", features=np.array([[0.0], [2.0], [5.0]]))
        cost = hard_cost(data, np.array([[1.0], [5.0]]))
        assert cost == pytest.approx(0.5, abs=1e-12)

    def test_zero_when_points_on_centres(self):
        data = Dataset(name="d", features=np.array([[0.0, 0.0], [1.0, 1.0]]))
        assert hard_cost(data, np.array([[0.0, 0.0], [1.0, 1.0]])) == 0.0

    def test_translation_invariance(self):
        rng = np.random.default_rng(8)
        data = random_dataset(rng, 12, 3)
        centres = rng.uniform(-1, 1, size=(3, 3))
        shift = rng.normal(size=3)
        shifted = Dataset(name="d", features=data.features + shift)
        assert hard_cost(data, centres) == pytest.approx(
            hard_cost(shifted, centres + shift), abs=1e-12
        )


class TestRunKmeans:
    def test_blob_centres_recovered(self):
        data = make_blobs(np.array([[0.0, 0.0], [5.0, 5.0]]), spread=0.2, seed=3)
        res = run_kmeans(data, 2, rng=RngSeed(1))
        assert res.converged
        blob_means = [data.features[:20].mean(axis=0), data.features[20:].mean(axis=0)]
        for centre in res.centroids:
            assert min(euclidean_distance(centre, bm) for bm in blob_means) < 0.06

    def test_sse_trace_non_increasing(self):
        rng = np.random.default_rng(31)
        for trial in range(20):
            data = random_dataset(rng, int(rng.integers(6, 30)), int(rng.integers(1, 4)))
            res = run_kmeans(data, 3, rng=RngSeed(trial))
            assert np.all(np.diff(res.cost_trace) <= 1e-10)

    def test_converged_is_fixed_point(self, blobs3):
        res = run_kmeans(blobs3, 3, rng=RngSeed(4))
        assert res.converged
        again = assign_nearest(blobs3, recompute_means(blobs3, res.assignment, 3))
        assert np.array_equal(again, res.assignment)

    def test_max_iter_zero_returns_initial_state(self, blobs3):
        res = run_kmeans(blobs3, 3, max_iter=0, rng=RngSeed(0))
        assert not res.converged
        assert res.iterations == 0
        assert res.centroids.shape == (3, blobs3.n_dims)

    def test_determinism(self, blobs3):
        a = run_kmeans(blobs3, 3, rng=RngSeed(7))
        b = run_kmeans(blobs3, 3, rng=RngSeed(7))
        assert np.array_equal(a.centroids, b.centroids)
        assert np.array_equal(a.assignment, b.assignment)
        assert a.cost == b.cost

    def test_cost_is_quantization_error_of_result(self, blobs3):
        res = run_kmeans(blobs3, 3, rng=RngSeed(2))
        assert res.converged
        assert res.cost == pytest.approx(hard_cost(blobs3, res.centroids), abs=1e-12)

    def test_final_cost_bounded_by_exhaustive_partitions(self):
        rng = np.random.default_rng(17)
        for trial in range(5):
            data = random_dataset(rng, 7, 2)
            res = run_kmeans(data, 2, rng=RngSeed(trial))
            best = np.inf
            for mask in itertools.product([0, 1], repeat=7):
                assignment = np.array(mask)
                if assignment.min() == assignment.max():
                    continue  # one cluster empty
                centres = np.vstack(
                    [data.features[assignment == i].mean(axis=0) for i in (0, 1)]
                )
                best = min(best, hard_cost(data, centres))
            assert res.cost >= best - 1e-12

    def test_cluster_count_bounds(self, blobs3):
        with pytest.raises(ValueError, match="1 < C < N"):
            run_kmeans(blobs3, 1)
        with pytest.raises(ValueError, match="1 < C < N"):
            run_kmeans(blobs3, blobs3.n_points)


class TestSumSquaredError:
    def test_matches_naive(self):
        rng = np.random.default_rng(14)
        data = random_dataset(rng, 9, 2)
        centres = rng.uniform(-1, 1, size=(3, 2))
        assignment = assign_nearest(data, centres)
        naive = sum(
            euclidean_distance(data.features[j], centres[assignment[j]]) ** 2
            for j in range(9)
        )
        assert sum_squared_error(data, assignment, centres) == pytest.approx(naive, abs=1e-12)
