import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefnet.errors import NoCommonUsersError, UndefinedMeasureError, ZeroRowError
from prefnet.measures import (
    functional_similarity,
    mean_functional_similarity,
    measure_pair,
    modified_weighted_jaccard,
    preprocess_pair,
    state_vector,
)
from prefnet.network import WeightedNetwork, new_network

from conftest import brute_jaccard, brute_mean_similarity, random_symmetric_net


def overlap_example_pair():
    """Two 5-node imprints whose shared-link sums are 8, 7 and 11 and whose
    single-network links sum to 2, 2 and 1."""
    a = new_network(5)
    b = new_network(5)
    a.add_weight(0, 1, 3.0)
    b.add_weight(0, 1, 5.0)   # shared, 8
    a.add_weight(1, 2, 3.0)
    b.add_weight(1, 2, 4.0)   # shared, 7
    a.add_weight(2, 3, 6.0)
    b.add_weight(2, 3, 5.0)   # shared, 11
    a.add_weight(0, 4, 2.0)   # only in a, 2
    a.add_weight(1, 4, 2.0)   # only in a, 2
    b.add_weight(3, 4, 1.0)   # only in b, 1
    return a, b


def similarity_example_pair():
    """7-node pair whose node-2 rows are (0,4,0,2,2,0,0) and (0,7,0,0,0,0,0)."""
    a = new_network(7)
    a.add_weight(2, 1, 4.0).add_weight(2, 3, 2.0).add_weight(2, 4, 2.0)
    b = new_network(7)
    b.add_weight(2, 1, 7.0)
    return a, b


class TestModifiedWeightedJaccard:
    def test_worked_overlap_example(self):
        a, b = overlap_example_pair()
        assert abs(modified_weighted_jaccard(a, b) - 26 / 31) < 1e-12

    def test_identical_networks(self, rng):
        net = random_symmetric_net(rng, 6)
        assert modified_weighted_jaccard(net, net) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_supports(self):
        a = new_network(4).add_weight(0, 1, 3.0)
        b = new_network(4).add_weight(2, 3, 5.0)
        assert modified_weighted_jaccard(a, b) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            modified_weighted_jaccard(new_network(3), new_network(4))

    def test_both_empty_undefined(self):
        with pytest.raises(UndefinedMeasureError):
            modified_weighted_jaccard(new_network(3), new_network(3))

    def test_matches_brute_force(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            a = random_symmetric_net(rng, 8, density=0.4)
            b = random_symmetric_net(rng, 8, density=0.4)
            if a.total_weight == 0 and b.total_weight == 0:
                continue
            assert abs(
                modified_weighted_jaccard(a, b) - brute_jaccard(a.weights, b.weights)
            ) < 1e-12


class TestStateVector:
    def test_worked_example_row(self):
        a, _ = similarity_example_pair()
        vec = state_vector(a, 2)
        expected = np.array([0, 4, 0, 2, 2, 0, 0]) / math.sqrt(24)
        assert np.allclose(vec, expected, atol=1e-15)
        assert abs(np.linalg.norm(vec) - 1.0) < 1e-12

    def test_one_hot(self):
        net = new_network(3).add_weight(0, 2, 9.0)
        assert np.array_equal(state_vector(net, 0), np.array([0.0, 0.0, 1.0]))

    def test_zero_row_rejected(self):
        with pytest.raises(ZeroRowError):
            state_vector(new_network(3).add_weight(1, 2, 1.0), 0)


class TestFunctionalSimilarity:
    def test_worked_example(self):
        a, b = similarity_example_pair()
        expected = 28 / (math.sqrt(24) * 7)
        assert abs(functional_similarity(a, b, 2) - expected) < 1e-9

    def test_identical_rows(self, rng):
        net = random_symmetric_net(rng, 6, density=0.9)
        for i in range(6):
            assert functional_similarity(net, net, i) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_rows_orthogonal(self):
        a = new_network(4).add_weight(0, 1, 3.0)
        b = new_network(4).add_weight(0, 2, 5.0)
        assert functional_similarity(a, b, 0) == 0.0

    def test_ineligible_node(self):
        a = new_network(3).add_weight(0, 1, 1.0)
        b = new_network(3).add_weight(1, 2, 1.0)
        with pytest.raises(ZeroRowError):
            functional_similarity(a, b, 0)


class TestMeanFunctionalSimilarity:
    def test_identity(self, rng):
        net = random_symmetric_net(rng, 7, density=0.6)
        mean, count = mean_functional_similarity(net, net)
        assert mean == pytest.approx(1.0, abs=1e-12)
        assert count == int(np.sum(net.degrees > 0))

    def test_forced_two_node_geometry(self):
        a = new_network(2).add_weight(0, 1, 4.0)
        b = new_network(2).add_weight(0, 1, 9.0)
        mean, count = mean_functional_similarity(a, b)
        assert mean == pytest.approx(1.0, abs=1e-12)
        assert count == 2

    def test_matches_brute_force(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            a = random_symmetric_net(rng, 8, density=0.4)
            b = random_symmetric_net(rng, 8, density=0.4)
            expected, n = brute_mean_similarity(a.weights, b.weights)
            if n == 0:
                with pytest.raises(UndefinedMeasureError):
                    mean_functional_similarity(a, b)
                continue
            mean, count = mean_functional_similarity(a, b)
            assert count == n
            assert abs(mean - expected) < 1e-12

    def test_no_eligible_nodes(self):
        a = new_network(4).add_weight(0, 1, 1.0)
        b = new_network(4).add_weight(2, 3, 1.0)
        with pytest.raises(UndefinedMeasureError):
            mean_functional_similarity(a, b)


class TestPreprocessPair:
    def _labeled(self, rng, labels):
        return random_symmetric_net(rng, len(labels), density=0.8, labels=labels)

    def test_outputs_normalized(self, rng):
        a = self._labeled(rng, [f"u{i}" for i in range(6)])
        b = self._labeled(rng, [f"u{i}" for i in range(2, 8)])
        a2, b2 = preprocess_pair(a, b)
        assert abs(a2.total_weight - 1.0) < 1e-12
        assert abs(b2.total_weight - 1.0) < 1e-12
        assert a2.labels == b2.labels

    def test_disjoint_users_rejected(self, rng):
        a = self._labeled(rng, ["a", "b", "c"])
        b = self._labeled(rng, ["x", "y", "z"])
        with pytest.raises(NoCommonUsersError):
            preprocess_pair(a, b)

    def test_scaling_invariance(self, rng):
        labels = [f"u{i}" for i in range(7)]
        a = self._labeled(rng, labels)
        b = self._labeled(rng, labels)
        base = measure_pair(a, b, "a", "b")
        for c in (1e-3, 1e3):
            scaled = WeightedNetwork.from_matrix(b.weights * c, labels=labels)
            res = measure_pair(a, scaled, "a", "b")
            assert abs(res.jaccard - base.jaccard) < 1e-12
            assert abs(res.mean_similarity - base.mean_similarity) < 1e-12
            assert res.nodes_compared == base.nodes_compared


class TestSymmetryAndBounds:
    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_symmetric_and_bounded(self, seed):
        rng = np.random.default_rng(seed)
        a = random_symmetric_net(rng, 6, density=0.5)
        b = random_symmetric_net(rng, 6, density=0.5)
        if a.total_weight == 0 and b.total_weight == 0:
            return
        j_ab = modified_weighted_jaccard(a, b)
        j_ba = modified_weighted_jaccard(b, a)
        assert abs(j_ab - j_ba) < 1e-12
        assert 0.0 <= j_ab <= 1.0
        try:
            s_ab, n_ab = mean_functional_similarity(a, b)
            s_ba, n_ba = mean_functional_similarity(b, a)
        except UndefinedMeasureError:
            return
        assert n_ab == n_ba
        assert abs(s_ab - s_ba) < 1e-12
        assert 0.0 <= s_ab <= 1.0
