"""Exact null densities: symmetry, normalization, quantiles vs published rows."""

import pytest

from skewsum.density import (
    NullDensityQuery,
    density_profile,
    null_cdf_upper,
    null_density,
    null_quantile,
)
from skewsum.critical import mc_critical, table_critical
from skewsum.errors import InvalidArgumentError
from skewsum.summaries import Scenario


class TestQueryValidation:
    def test_off_grid_n_rejected(self):
        with pytest.raises(InvalidArgumentError):
            NullDensityQuery("t1", 7, 0.1)

    def test_t_must_be_interior(self):
        for t in (1.0, -1.0, 1.5):
            with pytest.raises(InvalidArgumentError):
                NullDensityQuery("t1", 5, t)

    def test_kind_checked(self):
        with pytest.raises(InvalidArgumentError):
            NullDensityQuery("t9", 5, 0.1)

    def test_quantile_tail_domain(self):
        with pytest.raises(InvalidArgumentError):
            null_quantile("t1", 5, 0.5)
        with pytest.raises(InvalidArgumentError):
            null_quantile("t1", 6, 0.025)


class TestDensityShape:
    @pytest.mark.parametrize("kind", ["t1", "t2"])
    @pytest.mark.parametrize("t", [0.1, 0.3, 0.5])
    def test_symmetric_about_zero(self, kind, t):
        left = null_density(NullDensityQuery(kind, 21, -t))
        right = null_density(NullDensityQuery(kind, 21, t))
        assert left == pytest.approx(right, abs=1e-6)

    @pytest.mark.parametrize("kind", ["t1", "t2"])
    @pytest.mark.parametrize("n", [5, 21])
    def test_normalizes_to_one(self, kind, n):
        assert density_profile(kind, n).total_mass() == pytest.approx(1.0, abs=1e-3)

    @pytest.mark.parametrize("kind", ["t1", "t2"])
    def test_nonnegative_on_profile_grid(self, kind):
        assert all(v >= 0.0 for v in density_profile(kind, 21).values)

    def test_upper_tail_monotone(self):
        tails = [null_cdf_upper("t1", 21, c) for c in (0.1, 0.3, 0.5, 0.8)]
        assert all(b < a for a, b in zip(tails, tails[1:]))
        assert null_cdf_upper("t1", 21, 0.0) == pytest.approx(0.5, abs=1e-3)


class TestQuantiles:
    def test_t1_n5_matches_table(self):
        assert null_quantile("t1", 5, 0.025) == pytest.approx(0.7792, abs=0.005)

    def test_t2_n5_matches_table(self):
        assert null_quantile("t2", 5, 0.025) == pytest.approx(0.9463, abs=0.005)

    def test_t1_decreasing_in_n(self):
        values = [null_quantile("t1", n, 0.025) for n in (5, 21, 41)]
        assert values[0] > values[1] > values[2]
        for n, v in zip((5, 21, 41), values):
            assert v == pytest.approx(table_critical(Scenario.S1, n), abs=0.005)

    @pytest.mark.slow
    @pytest.mark.parametrize("kind,scenario", [("t1", Scenario.S1), ("t2", Scenario.S2)])
    @pytest.mark.parametrize("n", [5, 21])
    def test_agrees_with_million_rep_simulation(self, kind, scenario, n):
        exact = null_quantile(kind, n, 0.025)
        simulated = mc_critical(scenario, n, 0.05, reps=1_000_000, seed=91)
        assert exact == pytest.approx(simulated, abs=0.006)
