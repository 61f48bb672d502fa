import math

import numpy as np
import pytest
from scipy import stats as sps

from prefnet import kernels
from prefnet.errors import DegenerateRowError
from prefnet.evolution import (
    EvolutionConfig,
    Model,
    event_prob_global_meanfield,
    evolve,
    init_underlying,
    meanfield_degree_global,
    step_global,
    step_local,
)
from prefnet.network import WeightedNetwork, new_network

from conftest import euler_meanfield_degree


def _cfg(**kw):
    base = dict(model=Model.GLOBAL, n_nodes=400, timesteps=300, m_events=3,
                increment=10.0, m0_links=5, seed=11)
    base.update(kw)
    return EvolutionConfig(**base)


class TestConfig:
    def test_local_requires_small_floor(self):
        with pytest.raises(ValueError):
            _cfg(model=Model.LOCAL, l0=10.0, m0_links=0)

    def test_m0_bounded_by_pairs(self):
        with pytest.raises(ValueError):
            _cfg(n_nodes=4, m0_links=7)

    def test_rejects_negative_l0(self):
        with pytest.raises(ValueError):
            _cfg(l0=-0.1)


class TestInit:
    def test_global_places_m0_unit_links(self, rng):
        net = init_underlying(_cfg(), rng)
        assert net.total_weight == 5.0
        assert np.count_nonzero(np.triu(net.weights)) == 5
        assert set(np.unique(net.weights)) == {0.0, 1.0}

    def test_local_fully_connected_with_floor(self, rng):
        net = init_underlying(_cfg(model=Model.LOCAL, m0_links=0, l0=0.01), rng)
        expected = math.comb(400, 2) * 1.01
        assert net.total_weight == pytest.approx(expected, rel=1e-9)
        assert np.all(net.weights[~np.eye(400, dtype=bool)] == 1.01)

    def test_null_complete_homogeneous(self, rng):
        net = init_underlying(
            EvolutionConfig(model=Model.NULL, n_nodes=4, null_weight=1.0, seed=0), rng
        )
        assert np.count_nonzero(np.triu(net.weights)) == 6
        assert net.total_weight == 6.0


class TestStepGlobal:
    def test_two_nodes_forced_choice(self, rng):
        net = new_network(2)
        step_global(net, 10, 2.0, rng)
        assert net.weights[0, 1] == 20.0

    def test_recipient_proportional_to_degree(self):
        # one unit link 0-1; a sender with zero stake picks among equal degrees
        degrees = np.array([1.0, 1.0, 0.0])
        rng = np.random.default_rng(3)
        draws = rng.random(100_000)
        picks = np.array([kernels.sample_recipient_global(degrees, 2, u) for u in draws])
        freq0 = float(np.mean(picks == 0))
        assert abs(freq0 - 0.5) < 0.01
        assert not np.any(picks == 2)

    def test_zero_degree_fallback_uniform(self):
        degrees = np.zeros(3)
        rng = np.random.default_rng(4)
        picks = np.array(
            [kernels.sample_recipient_global(degrees, 1, u) for u in rng.random(60_000)]
        )
        assert set(np.unique(picks)) == {0, 2}
        assert abs(float(np.mean(picks == 0)) - 0.5) < 0.01

    def test_sampling_law_chi_square(self):
        # fixed 4-node configuration, sender excluded and renormalized
        degrees = np.array([3.0, 1.0, 2.0, 4.0])
        rng = np.random.default_rng(5)
        n = 100_000
        picks = np.array(
            [kernels.sample_recipient_global(degrees, 0, u) for u in rng.random(n)]
        )
        observed = [int(np.sum(picks == j)) for j in (1, 2, 3)]
        expected = [n * p for p in (1 / 7, 2 / 7, 4 / 7)]
        result = sps.chisquare(observed, expected)
        assert result.pvalue > 0.001


class TestStepLocal:
    def test_two_nodes_forced_choice(self, rng):
        net = new_network(2).add_weight(0, 1, 0.5)
        step_local(net, 8, 1.0, rng)
        assert net.weights[0, 1] == 8.5

    def test_recipient_weights_10_4_13(self):
        # sender row (10, 4, 13): first neighbor picked with prob 10/27 ~ 0.37
        net = new_network(4)
        net.add_weight(0, 1, 10.0).add_weight(0, 2, 4.0).add_weight(0, 3, 13.0)
        rng = np.random.default_rng(6)
        picks = np.array([
            kernels.sample_recipient_local(net.weights, net.degrees, 0, u)
            for u in rng.random(100_000)
        ])
        assert abs(float(np.mean(picks == 1)) - 10 / 27) < 0.01

    def test_recipient_share_019(self):
        # sender row with first-link share 10/53 ~ 0.19
        net = new_network(3)
        net.add_weight(1, 0, 10.0).add_weight(1, 2, 43.0)
        rng = np.random.default_rng(7)
        picks = np.array([
            kernels.sample_recipient_local(net.weights, net.degrees, 1, u)
            for u in rng.random(100_000)
        ])
        assert abs(float(np.mean(picks == 0)) - 10 / 53) < 0.01

    def test_sampling_law_chi_square(self):
        net = new_network(4)
        net.add_weight(0, 1, 5.0).add_weight(0, 2, 1.0).add_weight(0, 3, 2.0)
        rng = np.random.default_rng(8)
        n = 100_000
        picks = np.array([
            kernels.sample_recipient_local(net.weights, net.degrees, 0, u)
            for u in rng.random(n)
        ])
        observed = [int(np.sum(picks == j)) for j in (1, 2, 3)]
        expected = [n * p for p in (5 / 8, 1 / 8, 2 / 8)]
        assert sps.chisquare(observed, expected).pvalue > 0.001

    def test_degenerate_sender_rejected(self, rng):
        net = new_network(3).add_weight(0, 1, 1.0)
        with pytest.raises(DegenerateRowError):
            for _ in range(50):  # node 2 has zero degree and will be drawn
                step_local(net, 1, 1.0, rng)

    def test_zero_links_stay_zero_without_floor(self, rng):
        # ring 0-1-2-3-0; chords must stay zero under local dynamics
        net = new_network(4)
        for i, j in ((0, 1), (1, 2), (2, 3), (3, 0)):
            net.add_weight(i, j, 1.0)
        for _ in range(200):
            step_local(net, 1, 1.0, rng)
        assert net.weights[0, 2] == 0.0
        assert net.weights[1, 3] == 0.0
        assert net.total_weight == 4.0 + 200.0


class TestEvolve:
    def test_conservation_small(self):
        cfg = _cfg(n_nodes=40, m0_links=3, timesteps=50)
        net = evolve(cfg)
        assert net.total_weight == pytest.approx(3 + 3 * 10 * 50, rel=1e-9)

    def test_null_is_inert(self):
        cfg = EvolutionConfig(model=Model.NULL, n_nodes=10, null_weight=2.0,
                              timesteps=100, seed=1)
        net = evolve(cfg)
        assert np.all(net.weights[~np.eye(10, dtype=bool)] == 2.0)

    def test_zero_timesteps_keeps_initial_network(self):
        cfg = _cfg(timesteps=0, n_nodes=30, m0_links=4)
        assert evolve(cfg).total_weight == 4.0

    def test_bit_reproducible(self):
        cfg = _cfg(n_nodes=60, timesteps=40)
        assert np.array_equal(evolve(cfg).weights, evolve(cfg).weights)

    def test_matches_explicit_stepping(self):
        for model in (Model.GLOBAL, Model.LOCAL):
            cfg = _cfg(model=model, n_nodes=25, timesteps=12, m_events=3,
                       m0_links=4 if model is Model.GLOBAL else 0,
                       l0=0.01 if model is Model.LOCAL else 0.0, seed=9)
            via_evolve = evolve(cfg)
            rng = np.random.default_rng(cfg.seed)
            net = init_underlying(cfg, rng)
            step = step_global if model is Model.GLOBAL else step_local
            for _ in range(cfg.timesteps):
                step(net, cfg.m_events, cfg.increment, rng)
            assert np.array_equal(via_evolve.weights, net.weights)
            assert via_evolve.total_weight == net.total_weight

    def test_kernel_paths_bit_identical(self):
        compiled = kernels.numba_kernels()
        if compiled is None:
            pytest.skip("numba unavailable")
        rng = np.random.default_rng(10)
        for compiled_fn, numpy_fn, needs_positive in (
            (compiled["global_events"], kernels.run_global_events_numpy, False),
            (compiled["local_events"], kernels.run_local_events_numpy, True),
        ):
            n = 30
            base = rng.random((n, n))
            base = np.triu(base, 1)
            if not needs_positive:
                base[base < 0.4] = 0.0
            mat = base + base.T
            w1 = mat.copy()
            d1 = w1.sum(axis=1)
            w2 = mat.copy()
            d2 = w2.sum(axis=1)
            uniforms = rng.random(2 * 500)
            s1 = compiled_fn(w1, d1, 2.5, uniforms)
            s2 = numpy_fn(w2, d2, 2.5, uniforms)
            assert s1 == s2 == kernels.STATUS_OK
            assert np.array_equal(w1, w2)
            assert np.array_equal(d1, d2)


class TestMeanfield:
    def test_event_prob_direct(self):
        net = new_network(3).add_weight(0, 1, 1.0).add_weight(0, 2, 1.0)
        # k_0 = 2, k_1 = 1, N = 3, norm = 4 -> 3/24
        assert event_prob_global_meanfield(net, 0, 1, 4.0) == pytest.approx(0.125, abs=1e-15)

    def test_event_prob_zero_degrees(self):
        net = new_network(3)
        assert event_prob_global_meanfield(net, 0, 1, 4.0) == 0.0

    def test_event_prob_diagonal_rejected(self):
        net = new_network(3)
        with pytest.raises(ValueError):
            event_prob_global_meanfield(net, 1, 1, 4.0)

    def test_initial_condition(self):
        assert meanfield_degree_global(1.5, 0.0, _cfg()) == 1.5

    def test_slope_at_origin(self):
        cfg = _cfg()
        k0, h = 1.0, 1e-4
        slope = (meanfield_degree_global(k0, h, cfg) - k0) / h
        expected = cfg.m_events / cfg.n_nodes + cfg.m_events * k0 / cfg.m0_links
        assert slope == pytest.approx(expected, rel=1e-3)

    def test_against_euler_oracle(self):
        # h chosen so the oracle's own truncation sits below the tolerance
        cfg = _cfg()
        value = meanfield_degree_global(1.0, 300.0, cfg)
        euler = euler_meanfield_degree(1.0, 300.0, m=3.0, n=400.0, m0=5.0, h=5e-6)
        assert value == pytest.approx(euler, rel=1e-6)

    def test_against_closed_form(self):
        # linear ODE solution: k(t) = sqrt(T) (k0/sqrt(m0) + (sqrt(T)-sqrt(m0))/N),
        # with T = 2 m t + m0
        cfg = _cfg()
        m, n, m0, k0, t = 3.0, 400.0, 5.0, 1.0, 300.0
        total = 2 * m * t + m0
        closed = math.sqrt(total) * (k0 / math.sqrt(m0) + (math.sqrt(total) - math.sqrt(m0)) / n)
        assert meanfield_degree_global(k0, t, cfg) == pytest.approx(closed, rel=1e-8)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            meanfield_degree_global(1.0, -1.0, _cfg())
