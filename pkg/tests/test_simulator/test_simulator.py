"""
Unit tests for the Monte Carlo simulator
Tests random streams, realizations, the association rule, per-trial SINR and the estimators
"""
import math

import numpy as np
import pytest


def _realization(sbs_offsets=(), mbs_xy=(), window_radius=3000.0):
    """Hand-built realization with every SBS on the user's road (the x axis)"""
    from src.simulator.realization import NetworkRealization

    offsets = np.asarray(sbs_offsets, dtype=float)
    return NetworkRealization(
        line_distance=np.array([0.0]),
        line_angle=np.array([math.pi / 2]),
        sbs_line=np.zeros(offsets.size, dtype=int),
        sbs_offset=offsets,
        sbs_xy=np.stack([-offsets, np.zeros_like(offsets)], axis=-1).reshape(-1, 2),
        mbs_xy=np.asarray(mbs_xy, dtype=float).reshape(-1, 2),
        window_radius=window_radius,
    )


# ============================================================================
# RANDOM STREAMS AND STATISTICS
# ============================================================================

@pytest.mark.unit
class TestRngAndStats:
    """Test suite for counter-based streams and running statistics"""

    def test_streams_are_reproducible(self, rng_spec):
        """Test trial i always replays the same stream"""
        first = rng_spec.generator(7).uniform(size=5)
        again = rng_spec.generator(7).uniform(size=5)
        other = rng_spec.generator(8).uniform(size=5)
        np.testing.assert_array_equal(first, again)
        assert not np.array_equal(first, other)

    def test_running_stats_match_numpy(self):
        """Test Welford mean and sample variance"""
        from src.simulator.rng import RunningStats

        data = np.array([1.0, 4.0, 2.0, 8.0, 5.0])
        stats = RunningStats()
        for value in data:
            stats.push(value)
        assert stats.mean == pytest.approx(data.mean())
        assert stats.variance == pytest.approx(data.var(ddof=1))
        assert stats.stderr == pytest.approx(data.std(ddof=1) / math.sqrt(5))

    def test_merge_equals_pooled(self):
        """Test merging two halves gives the pooled statistics"""
        from src.simulator.rng import RunningStats

        left, right, pooled = RunningStats(), RunningStats(), RunningStats()
        for i, value in enumerate([0.5, 1.5, 3.0, 2.0, 7.0, 1.0]):
            (left if i < 2 else right).push(value)
            pooled.push(value)
        merged = left.merge(right)
        assert merged.count == 6
        assert merged.mean == pytest.approx(pooled.mean)
        assert merged.variance == pytest.approx(pooled.variance)
        assert left.count == 2

    def test_array_samples_and_empty_estimate(self):
        """Test vector samples and the empty estimate"""
        from src.simulator.rng import RunningStats

        stats = RunningStats()
        assert math.isnan(stats.estimate().value)
        stats.push([1.0, 0.0])
        stats.push([0.0, 0.0])
        estimate = stats.estimate(empty_windows=3)
        np.testing.assert_allclose(estimate.value, [0.5, 0.0])
        assert estimate.trials == 2
        assert estimate.empty_windows == 3


# ============================================================================
# REALIZATION TESTS
# ============================================================================

@pytest.mark.unit
class TestRealization:
    """Test suite for network sampling"""

    def test_window_radius_default(self, default_params):
        """Test the window covers several macro spacings"""
        from src.simulator.realization import default_window_radius

        assert default_window_radius(default_params) == pytest.approx(3000.0)
        assert default_window_radius(default_params.replace(lambda_m=1e-8)) == pytest.approx(
            5.0 / math.sqrt(math.pi * 1e-8)
        )

    def test_poisson_means(self, sparse_params, rng_spec):
        """Test line, Palm-line SBS and MBS counts against their Poisson means"""
        from src.simulator.realization import sample_realization

        radius, n = 3000.0, 2000
        lines, los, mbs = [], [], []
        for trial in range(n):
            real = sample_realization(sparse_params, radius, rng_spec.generator(trial))
            assert real.line_distance[0] == 0.0
            lines.append(real.n_lines - 1)
            los.append(real.los_offsets.size)
            mbs.append(real.mbs_xy.shape[0])
        for counts, mean in (
            (lines, 2 * math.pi * sparse_params.lambda_r * radius),
            (los, 2 * sparse_params.lambda_s * radius),
            (mbs, sparse_params.lambda_m * math.pi * radius ** 2),
        ):
            counts = np.asarray(counts, dtype=float)
            assert abs(counts.mean() - mean) <= 4.0 * counts.std(ddof=1) / math.sqrt(n)

    def test_points_inside_window(self, sparse_params, rng_spec):
        """Test every sampled point lies in B(0, R)"""
        from src.simulator.realization import sample_realization

        real = sample_realization(sparse_params, 1500.0, rng_spec.generator(0))
        assert np.all(real.sbs_distance <= 1500.0 + 1e-9)
        assert np.all(real.mbs_distance <= 1500.0 + 1e-9)
        np.testing.assert_allclose(np.abs(real.los_offsets), real.sbs_distance[real.on_typical_line])

    def test_invalid_window_rejected(self, sparse_params, rng_spec):
        """Test the window radius must be positive"""
        from src.core.errors import ValidationError
        from src.simulator.realization import sample_realization

        with pytest.raises(ValidationError):
            sample_realization(sparse_params, 0.0, rng_spec.generator(0))


# ============================================================================
# ASSOCIATION AND SINR TESTS
# ============================================================================

@pytest.mark.unit
class TestAssociationRule:
    """Test suite for the per-realization association"""

    def test_single_los_sbs(self, default_params):
        """Test a lone LOS SBS beyond the threshold distance serves on mm-wave"""
        from src.model.link_class import SL_MM
        from src.simulator import associate

        assoc = associate(_realization([30.0], [[2000.0, 0.0]]), default_params)
        assert assoc.serving_class == SL_MM
        assert assoc.distance == pytest.approx(30.0)
        assert assoc.index == 0

    def test_los_macro_beats_nlos_macro(self, default_params):
        """Test the strongest macro is the LOS one"""
        from src.model.link_class import ML
        from src.simulator.association import strongest_macro

        cls, distance, index, _ = strongest_macro(_realization([], [[0.0, 150.0], [250.0, 0.0]]), default_params)
        assert cls == ML
        assert distance == pytest.approx(150.0)
        assert index == 0

    def test_empty_window(self, default_params):
        """Test a realization without base stations cannot be associated"""
        from src.core.errors import EmptyWindowError
        from src.simulator import associate

        with pytest.raises(EmptyWindowError):
            associate(_realization(), default_params)

    def test_rat_rule(self, default_params):
        """Test mm-wave wins beyond the threshold distance only"""
        from src.analytic_coverage import mmwave_threshold_distance
        from src.simulator import prefers_mm_wave

        c = mmwave_threshold_distance(default_params)
        assert not prefers_mm_wave(0.5 * c, default_params)
        assert prefers_mm_wave(2.0 * c, default_params)


@pytest.mark.unit
class TestSinr:
    """Test suite for per-trial SINR"""

    @pytest.mark.parametrize('user, covered', [(0.0, True), (-2.0, True), (10.0, False), (25.0, False)])
    def test_beam_covers_origin(self, default_params, user, covered):
        """Test the beam footprint against the user at the origin"""
        from src.simulator import beam_covers_origin

        assert bool(beam_covers_origin(20.0, user, default_params)) is covered

    def test_interference_models_ordered(self, fig2_params, rng_spec):
        """Test noise-limited >= dominant-only >= full on every mm-wave trial"""
        from src.model.link_class import SL_MM
        from src.simulator import InterferenceModel, associate, compute_sinr
        from src.simulator.realization import sample_realization

        seen = 0
        for trial in range(300):
            rng = rng_spec.generator(trial)
            real = sample_realization(fig2_params, 3000.0, rng)
            assoc = associate(real, fig2_params)
            outcome = compute_sinr(real, assoc, fig2_params, rng)
            if assoc.serving_class != SL_MM:
                assert outcome.sinr_for(InterferenceModel.FULL) == outcome.sinr
                continue
            seen += 1
            assert outcome.sinr_noise_limited >= outcome.sinr_dominant >= outcome.sinr_full > 0
        assert seen > 0

    def test_mu_wave_outcome_ignores_model(self, default_params, rng_spec):
        """Test u-wave links report one SINR under every model"""
        from src.model.link_class import MN
        from src.simulator import InterferenceModel, associate, compute_sinr

        real = _realization([], [[0.0, 400.0], [900.0, 0.0]])
        assoc = associate(real, default_params)
        assert assoc.serving_class == MN
        outcome = compute_sinr(real, assoc, default_params, rng_spec.generator(0))
        assert outcome.sinr > 0
        assert outcome.sinr_for(InterferenceModel.NOISE_LIMITED) == outcome.sinr


# ============================================================================
# ESTIMATOR TESTS
# ============================================================================

@pytest.mark.unit
class TestEstimators:
    """Test suite for the oracle estimators"""

    def test_los_cdf_closed_form(self, sparse_params, rng_spec, small_trials):
        """Test the on-road nearest-distance CDF"""
        from src.simulator import NearestDistanceCDF, estimate

        x = 50.0
        result = estimate(NearestDistanceCDF('SL', x), sparse_params, small_trials, rng_spec)
        expected = 1 - math.exp(-2 * sparse_params.lambda_s * x)
        assert result.trials == small_trials
        assert abs(result.value - expected) <= 4 * result.stderr

    def test_nlos_void_probability(self, sparse_params, rng_spec):
        """Test the empirical NLOS void probability"""
        from src.analytic_geometry import nlos_void_probability
        from src.simulator import VoidProbability, estimate

        x = 500.0
        result = estimate(VoidProbability('SN', x), sparse_params, 2000, rng_spec)
        assert abs(result.value - nlos_void_probability(x, sparse_params)) <= 4 * result.stderr

    def test_cox_pgf_mean(self, sparse_params, rng_spec):
        """Test E[prod nu] over NLOS SBSs against the Cox functional"""
        from src.analytic_geometry import cox_pgf
        from src.simulator import PgfMean, estimate

        nu = lambda r: -np.expm1(-np.asarray(r, dtype=float) / 100.0)
        result = estimate(PgfMean(nu, 'cox'), sparse_params, 2000, rng_spec)
        assert abs(result.value - cox_pgf(nu, sparse_params)) <= 4 * result.stderr + 1e-3

    @pytest.mark.parametrize('convention', ['one_ray', 'full_line'])
    def test_line_pgf_through_origin_mean(self, sparse_params, rng_spec, convention):
        """Test E[prod nu] over a line through the user against both line conventions"""
        from src.analytic_geometry import InterferenceFactor, line_pgf
        from src.simulator import PgfMean, estimate

        nu = InterferenceFactor(50.0 ** 4, 4.0)
        result = estimate(PgfMean(nu, 'line', d=0.0), sparse_params, 2000, rng_spec)
        expected = line_pgf(nu, 0.0, sparse_params, convention=convention)
        assert abs(result.value - expected) <= 4 * result.stderr + 1e-3

    def test_line_pgf_offset_line_mean(self, sparse_params, rng_spec):
        """Test E[prod nu] over a uniformly oriented line at distance d against the whole-line functional"""
        from src.analytic_geometry import InterferenceFactor, line_pgf
        from src.simulator import PgfMean, estimate

        nu = InterferenceFactor(50.0 ** 4, 4.0)
        result = estimate(PgfMean(nu, 'line', d=40.0), sparse_params, 2000, rng_spec)
        expected = line_pgf(nu, 40.0, sparse_params, convention='full_line')
        assert abs(result.value - expected) <= 4 * result.stderr + 1e-3

    def test_macro_pgfl_mean(self, sparse_params, rng_spec):
        """Test E[prod nu] over the MBSs of the window against the planar PPP functional"""
        from src.analytic_geometry import InterferenceFactor, ppp_pgfl_annulus
        from src.simulator import PgfMean, estimate

        radius = 3000.0
        nu = InterferenceFactor(300.0 ** 4, 4.0)
        result = estimate(PgfMean(nu, 'ppp'), sparse_params, 2000, rng_spec, window_radius=radius)
        expected = ppp_pgfl_annulus(nu, sparse_params.lambda_m, 0.0, radius)
        assert abs(result.value - expected) <= 4 * result.stderr + 1e-3

    def test_nlos_nearest_distance_law(self, sparse_params, rng_spec):
        """Test NLOS nearest-distance draws against the analytic CDF restricted to the window"""
        from scipy import stats
        from src.analytic_geometry import nlos_nearest_cdf
        from src.simulator import sample_nearest_distances

        radius = 2000.0
        draws = sample_nearest_distances('SN', sparse_params, 1500, rng_spec, window_radius=radius)
        inside = nlos_nearest_cdf(radius, sparse_params)
        assert draws.size > 500
        result = stats.kstest(draws, lambda x: nlos_nearest_cdf(x, sparse_params) / inside)
        assert result.statistic < 0.07

    def test_serving_distance_law(self, sparse_params, rng_spec):
        """Test SL_MM serving distances against the integrated conditional density"""
        from scipy import stats
        from scipy.integrate import cumulative_trapezoid
        from src.analytic_coverage import serving_distance_pdf, serving_support
        from src.model.link_class import SL_MM
        from src.simulator import sample_serving_distances

        distances = sample_serving_distances(SL_MM, sparse_params, 1000, rng_spec)
        lo, _ = serving_support(SL_MM, sparse_params)
        grid = np.linspace(lo, 1500.0, 30001)
        cdf = cumulative_trapezoid(serving_distance_pdf(SL_MM, grid, sparse_params), grid, initial=0.0)
        assert cdf[-1] == pytest.approx(1.0, abs=1e-3)
        assert distances.size > 500
        result = stats.kstest(distances, lambda x: np.interp(x, grid, cdf / cdf[-1]))
        assert result.statistic < 0.07

    def test_unit_pgf_is_exact(self, sparse_params, rng_spec):
        """Test nu = 1 gives exactly one with no spread"""
        from src.simulator import PgfMean, estimate

        one = lambda r: np.ones_like(np.asarray(r, dtype=float))
        for process in ('cox', 'ppp', 'line'):
            result = estimate(PgfMean(one, process, d=50.0), sparse_params, 50, rng_spec)
            assert result.value == 1.0
            assert result.stderr == 0.0

    def test_rat_selection_frequency(self, sparse_params, rng_spec):
        """Test the empirical mm-wave selection rate against the closed form"""
        from src.analytic_coverage import mmwave_selection_probability
        from src.simulator import RatSelectionFreq, estimate

        params = sparse_params.replace(g0=300.0)
        result = estimate(RatSelectionFreq(), params, 1000, rng_spec)
        assert abs(result.value - mmwave_selection_probability(params)) <= 4 * result.stderr

    def test_association_frequencies_sum_to_one(self, default_params, rng_spec, small_trials):
        """Test the one-hot class and tier frequencies"""
        from src.simulator import ASSOCIATION_LABELS, AssociationFreqs, estimate

        result = estimate(AssociationFreqs(), default_params, small_trials, rng_spec)
        assert len(result.value) == len(ASSOCIATION_LABELS) == 9
        assert result.value[:5].sum() == pytest.approx(1.0)
        assert result.value[5:].sum() == pytest.approx(1.0)
        # SL_MU + SL_MM == SL
        assert result.value[2] + result.value[3] == pytest.approx(result.value[7])

    def test_estimates_are_deterministic(self, sparse_params, rng_spec):
        """Test equal seeds give equal estimates"""
        from src.simulator import NearestDistanceCDF, estimate

        query = NearestDistanceCDF('SN', 300.0)
        first = estimate(query, sparse_params, 100, rng_spec)
        second = estimate(query, sparse_params, 100, rng_spec)
        assert first == second

    def test_nearest_distance_samples(self, sparse_params, rng_spec):
        """Test raw on-road draws follow the exponential law"""
        from scipy import stats
        from src.simulator import sample_nearest_distances

        draws = sample_nearest_distances('SL', sparse_params, 1000, rng_spec)
        rate = 2 * sparse_params.lambda_s
        result = stats.kstest(draws, lambda x: -np.expm1(-rate * x))
        assert result.statistic < 0.07

    def test_serving_distance_samples_filtered(self, default_params, rng_spec):
        """Test serving distances come only from the requested class"""
        from src.model.link_class import SL_MM
        from src.simulator import sample_serving_distances

        distances = sample_serving_distances(SL_MM, default_params, 100, rng_spec)
        assert distances.size > 0
        assert np.all(distances > 0)

    def test_coverage_curves_from_one_pass(self, fig2_params, rng_spec):
        """Test estimate_coverage keys and the model ordering of the overall curves"""
        from src.simulator import InterferenceModel, estimate_coverage

        gamma_db = [-10.0, 0.0, 10.0]
        models = tuple(InterferenceModel)
        curves = estimate_coverage(fig2_params, gamma_db, 200, rng_spec, models=models)
        full = curves[(InterferenceModel.FULL, None)]
        noise = curves[(InterferenceModel.NOISE_LIMITED, None)]
        assert full.trials == 200
        assert np.all(np.diff(full.value) <= 0)
        assert np.all(noise.value >= full.value)

    def test_spillover_trials_use_their_own_streams(self, default_params, rng_spec):
        """Test the spillover estimate is the mean of independently seeded trials"""
        from src.analytic_coverage import spillover_geometry
        from src.simulator import simulate_spillover
        from src.simulator.estimator import _spillover_trial

        params = default_params.replace(lambda_s=0.02, lambda_ou=1.0)
        geometry = spillover_geometry(params)
        hits = [_spillover_trial(params, geometry, rng_spec.generator(k)) for k in range(300)]
        result = simulate_spillover(params, 300, rng_spec)
        assert result.value == pytest.approx(np.mean(hits))
        assert simulate_spillover(params, 200, rng_spec).value == pytest.approx(np.mean(hits[:200]))

    def test_spillover_construction_fires(self, default_params, rng_spec):
        """Test dense users and sparse SBSs make the spillover event observable"""
        from src.simulator import simulate_spillover

        params = default_params.replace(lambda_s=0.02, lambda_ou=1.0)
        result = simulate_spillover(params, 2000, rng_spec)
        assert 0.0 < result.value < 1.0
        assert result.stderr > 0.0

    def test_trials_must_be_positive(self, sparse_params, rng_spec):
        """Test zero trials is refused by every estimator"""
        from src.core.errors import ValidationError
        from src.simulator import AssociationFreqs, estimate, estimate_coverage, simulate_spillover

        with pytest.raises(ValidationError):
            estimate(AssociationFreqs(), sparse_params, 0, rng_spec)
        with pytest.raises(ValidationError):
            simulate_spillover(sparse_params, 0, rng_spec)
        with pytest.raises(ValidationError):
            estimate_coverage(sparse_params, [0.0], 0, rng_spec)


@pytest.mark.integration
@pytest.mark.slow
class TestEngineAgreement:
    """Integration tests comparing the analytic engine with the simulator"""

    def test_association_probabilities(self, fig2_params, rng_spec):
        """Test analytic tier probabilities against simulated association frequencies"""
        from src.analytic_coverage import tier_probabilities
        from src.simulator import ASSOCIATION_LABELS, AssociationFreqs, estimate

        tiers = tier_probabilities(fig2_params).as_dict()
        result = estimate(AssociationFreqs(), fig2_params, 2000, rng_spec)
        for key, analytic in tiers.items():
            i = ASSOCIATION_LABELS.index(key, 5)
            assert abs(result.value[i] - analytic) <= 4 * result.stderr[i] + 0.02

    def test_spillover_probability_against_network_frequency(self, default_params, rng_spec):
        """Test p_G stays within a few standard errors of how often full realizations see a spill"""
        from src.analytic_coverage import spillover_probability
        from src.simulator import SpilloverFreq, estimate

        result = estimate(SpilloverFreq(), default_params, 3000, rng_spec)
        assert result.trials > 1000
        assert abs(result.value - spillover_probability(default_params)) <= 3 * result.stderr + 0.005
