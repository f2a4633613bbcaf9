"""Tests for refusal regions, failure probabilities, and ex-ante payoffs.

Oracles lean on the Beta(2,2) closed forms: density 6c(1-c), CDF
I(x) = 3x^2 - 2x^3, and partial mean integral 2x^3 - 1.5x^4, so every
quadrature result can be checked against explicit polynomials.
"""

import numpy as np
import pytest

from norm_dynamics.collaboration import (
    NORM_C,
    NORM_I,
    PLAYER_JUNIOR,
    PLAYER_SENIOR,
    FailureReport,
    IntervalSet,
    cnorm_refusal_regions,
    ex_ante_player_payoff,
    failure_report,
    inorm_refusal_regions,
    monte_carlo_failure,
    norm_comparison_grid,
    preference_grid,
)
from norm_dynamics.errors import DistributionRequiredError, ParameterError
from norm_dynamics.priors import BetaPrior, derive_contribution_stats, stats_from_explicit

BETA22 = BetaPrior(2.0, 2.0)
BETA22_STATS = stats_from_explicit(0.5, 0.6875, 0.6875)


def beta22_cdf(x):
    return 3 * x**2 - 2 * x**3


def beta22_partial_mean(lo, hi):
    anti = lambda x: 2 * x**3 - 1.5 * x**4
    return anti(hi) - anti(lo)


# ---------------------------------------------------------------------------
# interval machinery

class TestIntervalSet:
    def test_from_pairs_sorts_merges_and_drops_empties(self):
        s = IntervalSet.from_pairs([(0.7, 1.0), (0.0, 0.2), (0.15, 0.3), (0.5, 0.5)])
        assert s.intervals == ((0.0, 0.3), (0.7, 1.0))

    def test_touching_pairs_merge(self):
        s = IntervalSet.from_pairs([(0.0, 0.5), (0.5, 1.0)])
        assert s.intervals == ((0.0, 1.0),)

    def test_complement_of_two_bands(self):
        s = IntervalSet(((0.0, 0.3), (0.7, 1.0)))
        assert s.complement().intervals == ((0.3, 0.7),)

    def test_complement_of_everything_is_empty(self):
        assert IntervalSet(((0.0, 1.0),)).complement().intervals == ()

    def test_complement_of_interior_band(self):
        assert IntervalSet(((0.4, 0.6),)).complement().intervals == ((0.0, 0.4), (0.6, 1.0))

    def test_mass_against_closed_form_cdf(self):
        s = IntervalSet(((0.1, 0.35), (0.6, 0.9)))
        want = (beta22_cdf(0.35) - beta22_cdf(0.1)) + (beta22_cdf(0.9) - beta22_cdf(0.6))
        assert s.mass(BETA22) == pytest.approx(want, abs=1e-12)

    def test_membership_is_closed(self):
        s = IntervalSet(((0.2, 0.4),))
        assert s.contains(0.2) and s.contains(0.4) and s.contains(0.3)
        assert not s.contains(0.41)

    def test_overlapping_construction_rejected(self):
        with pytest.raises(ParameterError):
            IntervalSet(((0.0, 0.5), (0.4, 0.8)))

    def test_out_of_domain_rejected(self):
        with pytest.raises(ParameterError):
            IntervalSet(((-0.1, 0.5),))


# ---------------------------------------------------------------------------
# refusal regions

class TestINormRegions:
    def test_reference_thresholds(self):
        junior, senior = inorm_refusal_regions(0.5, 0.3)
        assert junior.intervals == ((0.65, 1.0),)
        assert senior.intervals == ((0.0, 0.35),)

    def test_zero_bonus_covers_everything(self):
        junior, senior = inorm_refusal_regions(0.5, 0.0)
        assert junior.union(senior).intervals == ((0.0, 1.0),)

    def test_large_bonus_empties_both(self):
        junior, senior = inorm_refusal_regions(0.5, 10.0)
        assert junior.intervals == ()
        assert senior.intervals == ()

    def test_mu_bounds_enforced(self):
        with pytest.raises(ParameterError):
            inorm_refusal_regions(0.0, 0.3)
        with pytest.raises(ParameterError):
            inorm_refusal_regions(1.0, 0.3)

    def test_negative_bonus_rejected(self):
        with pytest.raises(ParameterError):
            inorm_refusal_regions(0.5, -0.1)


class TestCNormRegions:
    def test_reference_bands(self):
        junior, senior = cnorm_refusal_regions(BETA22_STATS, 0.15)
        np.testing.assert_allclose(junior.intervals, ((0.359375, 0.5), (0.790625, 1.0)), atol=1e-15)
        np.testing.assert_allclose(senior.intervals, ((0.0, 0.209375), (0.5, 0.640625)), atol=1e-15)

    def test_zero_bonus_covers_everything(self):
        junior, senior = cnorm_refusal_regions(BETA22_STATS, 0.0)
        assert junior.union(senior).total_length == pytest.approx(1.0, abs=1e-15)

    def test_large_bonus_empties_both(self):
        junior, senior = cnorm_refusal_regions(BETA22_STATS, 10.0)
        assert junior.intervals == ()
        assert senior.intervals == ()

    def test_asymmetric_stats_break_mirror_symmetry(self):
        stats = stats_from_explicit(0.8, 0.9, 0.6)
        junior, senior = cnorm_refusal_regions(stats, 0.1)
        # Case 1 junior threshold uses b_j, case 2 uses b_s.
        assert junior.intervals == ((0.44000000000000006, 0.5), (0.9900000000000001, 1.0))
        assert senior.contains(0.5)


# ---------------------------------------------------------------------------
# failure reports

class TestFailureReport:
    def test_inorm_reference_failure_probability(self):
        report = failure_report(NORM_I, BETA22, 0.3)
        assert report.failure_probability == pytest.approx(0.5635, abs=1e-9)
        assert report.public_good_loss == pytest.approx(0.3 * 0.5635, abs=1e-9)

    def test_cnorm_reference_failure_probability(self):
        report = failure_report(NORM_C, BETA22, 0.15)
        assert report.failure_probability == pytest.approx(0.637064453125, abs=1e-9)

    def test_zero_bonus_fails_surely_but_loses_nothing(self):
        for norm in (NORM_I, NORM_C):
            report = failure_report(norm, BETA22, 0.0)
            assert report.failure_probability == pytest.approx(1.0, abs=1e-12)
            assert report.public_good_loss == 0.0

    def test_huge_bonus_never_fails(self):
        report = failure_report(NORM_I, BETA22, 10.0)
        assert report.failure_probability == 0.0
        assert report.success.intervals == ((0.0, 1.0),)

    def test_success_band_structure(self):
        # I-norm: one interval straddling the prior mean.
        rep = failure_report(NORM_I, BETA22, 0.3)
        assert len(rep.success.intervals) == 1
        assert rep.success.contains(0.5)
        # C-norm at moderate bonus: two islands avoiding the case split.
        rep = failure_report(NORM_C, BETA22, 0.15)
        assert len(rep.success.intervals) == 2
        assert not rep.success.contains(0.5)

    def test_partition_of_unit_interval(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            prior = BetaPrior(rng.uniform(1.5, 6), rng.uniform(1.5, 6))
            c_hat = rng.uniform(0, 0.8)
            for norm in (NORM_I, NORM_C):
                rep = failure_report(norm, prior, c_hat)
                refusal_len = rep.junior_refuses.union(rep.senior_refuses).total_length
                assert refusal_len + rep.success.total_length == pytest.approx(1.0, abs=1e-12)

    def test_failure_probability_nonincreasing_in_bonus(self):
        grid = np.linspace(0.0, 2.0, 21)
        for norm in (NORM_I, NORM_C):
            fails = [failure_report(norm, BETA22, ch).failure_probability for ch in grid]
            assert all(a >= b - 1e-12 for a, b in zip(fails, fails[1:]))

    def test_explicit_stats_without_density_rejected(self):
        with pytest.raises(DistributionRequiredError):
            failure_report(NORM_I, BETA22_STATS, 0.3)

    def test_stats_with_attached_prior_accepted(self):
        stats = derive_contribution_stats(BETA22)
        report = failure_report(NORM_I, stats, 0.3)
        assert report.failure_probability == pytest.approx(0.5635, abs=1e-9)

    def test_unknown_norm_rejected(self):
        with pytest.raises(ParameterError):
            failure_report("alphabetical", BETA22, 0.3)


class TestMonteCarloFailure:
    def test_agrees_with_quadrature_within_four_sigma(self):
        estimate, stderr = monte_carlo_failure(NORM_I, BETA22, 0.3, n=10**6, seed=2024)
        assert abs(estimate - 0.5635) < 4 * stderr

    def test_cnorm_agreement_across_parameter_sample(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            prior = BetaPrior(rng.uniform(1.5, 5), rng.uniform(1.5, 5))
            c_hat = rng.uniform(0.05, 0.6)
            want = failure_report(NORM_C, prior, c_hat).failure_probability
            got, stderr = monte_carlo_failure(NORM_C, prior, c_hat, n=200_000, seed=11)
            assert abs(got - want) < 4 * max(stderr, 1e-9)

    def test_zero_bonus_always_fails(self):
        estimate, _ = monte_carlo_failure(NORM_C, BETA22, 0.0, n=10_000, seed=3)
        assert estimate == 1.0

    def test_seed_determinism(self):
        a = monte_carlo_failure(NORM_I, BETA22, 0.3, n=50_000, seed=42)
        b = monte_carlo_failure(NORM_I, BETA22, 0.3, n=50_000, seed=42)
        assert a == b

    def test_sample_count_validated(self):
        with pytest.raises(ParameterError):
            monte_carlo_failure(NORM_I, BETA22, 0.3, n=0, seed=1)


# ---------------------------------------------------------------------------
# ex-ante payoffs

class TestExAntePayoff:
    def test_inorm_junior_reference_value(self):
        got = ex_ante_player_payoff(NORM_I, PLAYER_JUNIOR, BETA22, 0.3)
        assert got == pytest.approx(0.565475, abs=1e-9)

    def test_cnorm_junior_against_polynomial_oracle(self):
        # Assemble the same expectation from the Beta(2,2) closed forms.
        stats = BETA22_STATS
        c_hat = 0.3
        junior, senior = cnorm_refusal_regions(stats, c_hat)
        refusal = junior.union(senior)
        want = 0.0
        for lo, hi in refusal.intervals:
            want += beta22_partial_mean(lo, hi)
        for lo, hi in refusal.complement().intervals:
            mass = beta22_cdf(hi) - beta22_cdf(lo)
            credit = stats.b_j if lo >= 0.5 else 1 - stats.b_s
            want += credit * (1 + c_hat) * mass
        got = ex_ante_player_payoff(NORM_C, PLAYER_JUNIOR, BETA22, c_hat)
        assert got == pytest.approx(want, abs=1e-9)

    def test_zero_bonus_pays_solo_means(self):
        assert ex_ante_player_payoff(NORM_I, PLAYER_JUNIOR, BETA22, 0.0) == pytest.approx(0.5, abs=1e-9)
        assert ex_ante_player_payoff(NORM_C, PLAYER_SENIOR, BETA22, 0.0) == pytest.approx(0.5, abs=1e-9)

    def test_norms_agree_when_nothing_fails(self):
        # With every collaboration accepted the credit shares average out to
        # the prior expectation for both norms.
        c_hat = 10.0
        for player in (PLAYER_JUNIOR, PLAYER_SENIOR):
            v_i = ex_ante_player_payoff(NORM_I, player, BETA22, c_hat)
            v_c = ex_ante_player_payoff(NORM_C, player, BETA22, c_hat)
            assert v_i == pytest.approx(v_c, abs=1e-10)
            assert v_i == pytest.approx(0.5 * (1 + c_hat), abs=1e-10)

    def test_players_share_the_pie_identity(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            prior = BetaPrior(rng.uniform(1.5, 5), rng.uniform(1.5, 5))
            c_hat = rng.uniform(0, 1)
            for norm in (NORM_I, NORM_C):
                jr = ex_ante_player_payoff(norm, PLAYER_JUNIOR, prior, c_hat)
                sr = ex_ante_player_payoff(norm, PLAYER_SENIOR, prior, c_hat)
                fail = failure_report(norm, prior, c_hat).failure_probability
                assert jr + sr == pytest.approx(1 + c_hat * (1 - fail), abs=1e-9)

    def test_player_name_validated(self):
        with pytest.raises(ParameterError):
            ex_ante_player_payoff(NORM_I, "editor", BETA22, 0.3)


# ---------------------------------------------------------------------------
# grids

class TestNormComparisonGrid:
    def test_symmetric_cell_favours_contribution_order(self):
        cells = norm_comparison_grid([0.5], [0.3])
        cell = cells[0]
        assert cell.fail_diff < 0
        assert cell.loss_diff < 0

    def test_loss_diff_is_bonus_scaled_fail_diff(self):
        cells = norm_comparison_grid([0.3, 0.5, 0.7], [0.1, 0.25, 0.4])
        for cell in cells:
            assert cell.loss_diff == pytest.approx(cell.c_hat * cell.fail_diff, abs=1e-12)

    def test_zero_bonus_column_has_no_differences(self):
        cells = norm_comparison_grid([0.4, 0.6], [0.0])
        for cell in cells:
            assert cell.fail_I == 1.0 and cell.fail_C == 1.0
            assert cell.loss_diff == 0.0

    def test_degenerate_member_recorded_as_nan(self):
        cells = norm_comparison_grid([0.5, 0.99], [0.2], family_sum=200.0)
        good = [c for c in cells if c.mu_j == 0.5][0]
        bad = [c for c in cells if c.mu_j == 0.99][0]
        assert np.isfinite(good.fail_diff)
        assert np.isnan(bad.fail_diff) and np.isnan(bad.fail_I)

    def test_row_order_is_mu_major(self):
        cells = norm_comparison_grid([0.4, 0.6], [0.1, 0.2])
        assert [(c.mu_j, c.c_hat) for c in cells] == [
            (0.4, 0.1),
            (0.4, 0.2),
            (0.6, 0.1),
            (0.6, 0.2),
        ]


class TestPreferenceGrid:
    def test_zero_bonus_row_is_indifferent(self):
        cells = preference_grid([0.3, 0.5], [0.0])
        for cell in cells:
            assert cell.junior_pref == pytest.approx(0.0, abs=1e-9)
            assert cell.senior_pref == pytest.approx(0.0, abs=1e-9)

    def test_symmetric_cell_aligns_players(self):
        cell = preference_grid([0.5], [0.3])[0]
        assert cell.junior_pref == pytest.approx(cell.senior_pref, abs=1e-9)

    def test_some_cell_splits_the_players(self):
        cells = preference_grid(np.linspace(0.15, 0.85, 8), [0.1, 0.3, 0.5])
        split = [c for c in cells if np.sign(c.junior_pref) * np.sign(c.senior_pref) < 0]
        assert split
