import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefnet.stats import histogram, ks_statistic, sturges_bins

from conftest import brute_ks


class TestSturges:
    def test_single_sample(self):
        assert sturges_bins(1) == 1

    def test_240_samples(self):
        assert sturges_bins(240) == 9

    def test_power_of_two(self):
        assert sturges_bins(128) == 8

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            sturges_bins(0)


class TestHistogram:
    def test_point_mass(self):
        res = histogram([0.4] * 32)
        width = res.bin_edges[1] - res.bin_edges[0]
        occupied = [d for d in res.densities if d > 0]
        assert len(occupied) == 1
        assert occupied[0] == pytest.approx(1.0 / width, rel=1e-12)

    def test_uniform_samples_flat(self):
        rng = np.random.default_rng(7)
        res = histogram(rng.random(100_000))
        assert all(abs(d - 1.0) < 0.05 for d in res.densities)

    def test_density_normalization(self, rng):
        res = histogram(rng.random(997))
        widths = np.diff(res.bin_edges)
        assert abs(float(np.sum(np.array(res.densities) * widths)) - 1.0) < 1e-9

    def test_identical_ensembles_zero_band(self, rng):
        values = list(rng.random(64))
        res = histogram(values, bands_from=[values] * 8)
        assert res.band_low is not None
        assert all(hi - lo == 0.0 for lo, hi in zip(res.band_low, res.band_high))

    def test_band_covers_varying_ensembles(self, rng):
        ensembles = [list(rng.random(50)) for _ in range(6)]
        res = histogram(ensembles[0] + ensembles[1], bands_from=ensembles)
        assert any(hi > lo for lo, hi in zip(res.band_low, res.band_high))
        assert all(lo >= 0.0 for lo in res.band_low)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            histogram([])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            histogram([0.5, 1.5])


class TestKsStatistic:
    def test_identical_samples(self, rng):
        a = list(rng.random(40))
        assert ks_statistic(a, a).statistic == 0.0

    def test_disjoint_supports(self):
        assert ks_statistic([0.0, 0.0], [1.0, 1.0]).statistic == 1.0

    def test_exact_one_third(self):
        res = ks_statistic([1.0, 2.0, 3.0], [2.0, 3.0, 4.0])
        assert res.statistic == 1 / 3
        assert res.n_a == res.n_b == 3

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ks_statistic([], [1.0])

    def test_matches_brute_force(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            a = list(rng.normal(size=rng.integers(1, 51)))
            b = list(rng.normal(size=rng.integers(1, 51)))
            assert abs(ks_statistic(a, b).statistic - brute_ks(a, b)) < 1e-12

    @given(st.integers(0, 100_000))
    @settings(max_examples=40, deadline=None)
    def test_symmetry_and_monotone_invariance(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=int(rng.integers(2, 40)))
        b = rng.normal(size=int(rng.integers(2, 40)))
        forward = ks_statistic(a, b)
        assert forward.statistic == ks_statistic(b, a).statistic
        transformed = ks_statistic(a ** 3, b ** 3)
        assert transformed.statistic == forward.statistic
        assert 0.0 <= forward.statistic <= 1.0
