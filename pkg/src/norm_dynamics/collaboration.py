"""Collaboration and refusal behaviour under an established listing norm.

Once a norm is in place, a junior/senior pair observes the realised junior
contribution share c_j and each side compares its credit under
collaboration, worth (1 + c_hat) in total, against publishing solo for its
own share.  Refusal regions in c_j, their prior mass, the forfeited surplus,
and ex-ante payoffs all live here.  Community credit is taken at face value
throughout (no attribution noise); ties collaborate, so refusal conditions
are strict inequalities and interval endpoints carry no mass.
"""

from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DegenerateDistributionError,
    DistributionRequiredError,
    ParameterError,
)
from .priors import (
    BetaPrior,
    ContributionStats,
    beta_cdf,
    derive_contribution_stats,
    _partial_mean,
)

NORM_C = "C-norm"
NORM_I = "I-norm"
NORMS = (NORM_C, NORM_I)

PLAYER_JUNIOR = "junior"
PLAYER_SENIOR = "senior"

_StatsLike = Union[BetaPrior, ContributionStats]


# ---------------------------------------------------------------------------
# interval machinery

@dataclass(frozen=True)
class IntervalSet:
    """Disjoint closed sub-intervals of [0,1] on the c_j axis.

    Intervals are sorted and may touch at endpoints but never overlap.
    Degenerate (single-point) intervals are not stored; all reported sets
    are understood up to measure zero.
    """

    intervals: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        prev_hi = 0.0
        for lo, hi in self.intervals:
            if not (0.0 <= lo < hi <= 1.0):
                raise ParameterError(f"bad interval ({lo}, {hi})")
            if lo < prev_hi:
                raise ParameterError("intervals must be sorted and non-overlapping")
            prev_hi = hi

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]]) -> "IntervalSet":
        """Build from raw (lo, hi) pairs: drops empties, merges overlap/touch."""
        cleaned = sorted((lo, hi) for lo, hi in pairs if hi > lo)
        merged: List[Tuple[float, float]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    @property
    def total_length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def contains(self, x: float) -> bool:
        return any(lo <= x <= hi for lo, hi in self.intervals)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_pairs(self.intervals + other.intervals)

    def complement(self) -> "IntervalSet":
        gaps = []
        cursor = 0.0
        for lo, hi in self.intervals:
            if lo > cursor:
                gaps.append((cursor, lo))
            cursor = max(cursor, hi)
        if cursor < 1.0:
            gaps.append((cursor, 1.0))
        return IntervalSet(tuple(gaps))

    def mass(self, prior: BetaPrior) -> float:
        return float(sum(beta_cdf(prior, hi) - beta_cdf(prior, lo) for lo, hi in self.intervals))


@dataclass(frozen=True)
class FailureReport:
    """Refusal structure of one norm under one prior and bonus level.

    The refusal sets and the success set partition [0,1] up to their shared
    endpoints; failure_probability is the prior mass of the refusal union
    and public_good_loss the surplus c_hat forfeited there.
    """

    junior_refuses: IntervalSet
    senior_refuses: IntervalSet
    success: IntervalSet
    failure_probability: float
    public_good_loss: float


class ComparisonCell(NamedTuple):
    mu_j: float
    c_hat: float
    fail_I: float
    fail_C: float
    fail_diff: float
    loss_diff: float


class PreferenceCell(NamedTuple):
    mu_j: float
    c_hat: float
    junior_pref: float
    senior_pref: float


# ---------------------------------------------------------------------------
# refusal regions

def _check_c_hat(c_hat) -> float:
    c_hat = float(c_hat)
    if not np.isfinite(c_hat) or c_hat < 0:
        raise ParameterError(f"c_hat must be finite and nonnegative, got {c_hat!r}")
    return c_hat


def _check_norm(norm: str) -> str:
    if norm not in NORMS:
        raise ParameterError(f"norm must be one of {NORMS}, got {norm!r}")
    return norm


def inorm_refusal_regions(mu_j: float, c_hat: float) -> Tuple[IntervalSet, IntervalSet]:
    """Refusal regions when listing ignores contributions.

    Collaboration credit is the community expectation mu_j regardless of
    the realised split, so the junior walks when c_j beats mu_j (1 + c_hat)
    and the senior when 1 - c_j beats (1 - mu_j)(1 + c_hat).
    """
    if not (0.0 < mu_j < 1.0):
        raise ParameterError(f"mu_j must lie in (0, 1), got {mu_j!r}")
    c_hat = _check_c_hat(c_hat)
    j_lo = min(1.0, mu_j * (1.0 + c_hat))
    s_hi = max(0.0, 1.0 - (1.0 - mu_j) * (1.0 + c_hat))
    junior = IntervalSet.from_pairs([(j_lo, 1.0)])
    senior = IntervalSet.from_pairs([(0.0, s_hi)])
    return junior, senior


def cnorm_refusal_regions(stats: ContributionStats, c_hat: float) -> Tuple[IntervalSet, IntervalSet]:
    """Refusal regions when listing follows the contribution order.

    On c_j > 1/2 the junior is first and is credited b_j: an exceptional
    junior walks above b_j (1 + c_hat) while the second-listed senior walks
    when 1 - c_j beats (1 - b_j)(1 + c_hat).  On c_j < 1/2 the roles mirror
    with b_s.  Each region is clipped to its case half-interval; the split
    point itself belongs to the first case.
    """
    c_hat = _check_c_hat(c_hat)
    scale = 1.0 + c_hat
    pairs_junior = [
        (min(1.0, stats.b_j * scale), 1.0),                       # case 1, first-listed
        ((1.0 - stats.b_s) * scale, 0.5),                         # case 2, second-listed
    ]
    pairs_senior = [
        (0.5, min(1.0, 1.0 - (1.0 - stats.b_j) * scale)),         # case 1, second-listed
        (0.0, max(0.0, 1.0 - stats.b_s * scale)),                 # case 2, first-listed
    ]
    return IntervalSet.from_pairs(pairs_junior), IntervalSet.from_pairs(pairs_senior)


# ---------------------------------------------------------------------------
# failure probability and losses

def _as_stats(source: _StatsLike, wj_mode: str) -> Tuple[ContributionStats, BetaPrior]:
    """Resolve a prior or stats bundle into (stats, prior with density)."""
    if isinstance(source, BetaPrior):
        return derive_contribution_stats(source, wj_mode=wj_mode), source
    if isinstance(source, ContributionStats):
        if source.prior is None:
            raise DistributionRequiredError(
                "explicit contribution stats carry no density; pass a Beta prior"
            )
        return source, source.prior
    raise ParameterError(f"expected BetaPrior or ContributionStats, got {type(source)!r}")


def _refusal_regions(norm, stats, c_hat):
    if norm == NORM_I:
        return inorm_refusal_regions(stats.mu_j, c_hat)
    return cnorm_refusal_regions(stats, c_hat)


def failure_report(
    norm: str,
    source: _StatsLike,
    c_hat: float,
    wj_mode: str = "exact",
) -> FailureReport:
    """Refusal sets, failure probability and surplus loss for one norm.

    Needs a full Beta prior (directly, or attached to derived stats) since
    the failure probability is a prior mass.
    """
    _check_norm(norm)
    c_hat = _check_c_hat(c_hat)
    stats, prior = _as_stats(source, wj_mode)
    junior, senior = _refusal_regions(norm, stats, c_hat)
    refusal = junior.union(senior)
    fail = min(1.0, max(0.0, refusal.mass(prior)))
    return FailureReport(junior, senior, refusal.complement(), fail, c_hat * fail)


def monte_carlo_failure(
    norm: str,
    source: _StatsLike,
    c_hat: float,
    n: int,
    seed: int,
) -> Tuple[float, float]:
    """Sampling cross-check of the failure probability.

    Draws contributions from the prior and applies the strict refusal
    inequalities pointwise; returns the sample mean and its binomial
    standard error.  Fixed seed gives a bit-identical estimate.
    """
    _check_norm(norm)
    c_hat = _check_c_hat(c_hat)
    if n < 1:
        raise ParameterError(f"n must be at least 1, got {n!r}")
    stats, prior = _as_stats(source, "exact")
    rng = np.random.default_rng(seed)
    c = rng.beta(prior.alpha, prior.beta, size=int(n))
    scale = 1.0 + c_hat
    if norm == NORM_I:
        refuse = (c > stats.mu_j * scale) | ((1.0 - c) > (1.0 - stats.mu_j) * scale)
    else:
        case1 = c >= 0.5
        refuse1 = (c > stats.b_j * scale) | ((1.0 - c) > (1.0 - stats.b_j) * scale)
        refuse2 = ((1.0 - c) > stats.b_s * scale) | (c > (1.0 - stats.b_s) * scale)
        refuse = np.where(case1, refuse1, refuse2)
    estimate = float(np.mean(refuse))
    stderr = float(np.sqrt(estimate * (1.0 - estimate) / n))
    return estimate, stderr


# ---------------------------------------------------------------------------
# ex-ante payoffs

def _success_credit_segments(norm, stats, c_hat, success):
    """(lo, hi, junior_credit, senior_credit) per success segment."""
    scale = 1.0 + c_hat
    segments = []
    for lo, hi in success.intervals:
        if norm == NORM_I:
            segments.append((lo, hi, stats.mu_j * scale, stats.mu_s * scale))
            continue
        # Split at the case boundary; credit is constant on each side.
        if lo < 0.5:
            top = min(hi, 0.5)
            segments.append((lo, top, (1.0 - stats.b_s) * scale, stats.b_s * scale))
        if hi > 0.5:
            bottom = max(lo, 0.5)
            segments.append((bottom, hi, stats.b_j * scale, (1.0 - stats.b_j) * scale))
    return segments


def ex_ante_player_payoff(
    norm: str,
    player: str,
    source: _StatsLike,
    c_hat: float,
    wj_mode: str = "exact",
) -> float:
    """Expected payoff before contributions are realised.

    Success segments pay the norm's credit share times (1 + c_hat); refusal
    regions pay the solo shares c_j and 1 - c_j, integrated against the
    prior by quadrature.
    """
    _check_norm(norm)
    if player not in (PLAYER_JUNIOR, PLAYER_SENIOR):
        raise ParameterError(f"player must be junior or senior, got {player!r}")
    c_hat = _check_c_hat(c_hat)
    stats, prior = _as_stats(source, wj_mode)
    junior, senior = _refusal_regions(norm, stats, c_hat)
    refusal = junior.union(senior)
    success = refusal.complement()

    total = 0.0
    for lo, hi, jr_credit, sr_credit in _success_credit_segments(norm, stats, c_hat, success):
        mass = beta_cdf(prior, hi) - beta_cdf(prior, lo)
        total += (jr_credit if player == PLAYER_JUNIOR else sr_credit) * mass
    for lo, hi in refusal.intervals:
        mean_c = _partial_mean(prior, lo, hi)
        if player == PLAYER_JUNIOR:
            total += mean_c
        else:
            total += (beta_cdf(prior, hi) - beta_cdf(prior, lo)) - mean_c
    return float(total)


# ---------------------------------------------------------------------------
# parameter grids

def _family_stats(mu: float, family_sum: float, wj_mode: str) -> ContributionStats:
    """Stats for the prior with mean mu inside the fixed-sum Beta family."""
    return derive_contribution_stats(
        BetaPrior(mu * family_sum, (1.0 - mu) * family_sum), wj_mode=wj_mode
    )


def norm_comparison_grid(
    mu_values: Sequence[float],
    c_hat_values: Sequence[float],
    family_sum: float = 7.0,
    wj_mode: str = "exact",
) -> List[ComparisonCell]:
    """Failure and loss differences between the norms over a prior family.

    Differences are C-norm minus I-norm, so negative values mean the
    contribution-ordered norm fails less (loses less surplus).  Cells whose
    prior cannot support the conditional credit expectations are reported
    with NaN differences instead of aborting the grid.
    """
    cells = []
    for mu in mu_values:
        try:
            stats = _family_stats(mu, family_sum, wj_mode)
        except (DegenerateDistributionError, ParameterError):
            stats = None
        for c_hat in c_hat_values:
            if stats is None:
                cells.append(ComparisonCell(float(mu), float(c_hat), np.nan, np.nan, np.nan, np.nan))
                continue
            rep_i = failure_report(NORM_I, stats, c_hat)
            rep_c = failure_report(NORM_C, stats, c_hat)
            fail_diff = rep_c.failure_probability - rep_i.failure_probability
            loss_diff = rep_c.public_good_loss - rep_i.public_good_loss
            cells.append(
                ComparisonCell(
                    float(mu),
                    float(c_hat),
                    rep_i.failure_probability,
                    rep_c.failure_probability,
                    fail_diff,
                    loss_diff,
                )
            )
    return cells


def preference_grid(
    mu_values: Sequence[float],
    c_hat_values: Sequence[float],
    family_sum: float = 7.0,
    wj_mode: str = "exact",
) -> List[PreferenceCell]:
    """Ex-ante norm preferences per player over a prior family.

    Positive entries mean the player expects more under the
    contribution-ordered norm (payoff_C - payoff_I).
    """
    cells = []
    for mu in mu_values:
        try:
            stats = _family_stats(mu, family_sum, wj_mode)
        except (DegenerateDistributionError, ParameterError):
            stats = None
        for c_hat in c_hat_values:
            if stats is None:
                cells.append(PreferenceCell(float(mu), float(c_hat), np.nan, np.nan))
                continue
            jr = ex_ante_player_payoff(NORM_C, PLAYER_JUNIOR, stats, c_hat) - ex_ante_player_payoff(
                NORM_I, PLAYER_JUNIOR, stats, c_hat
            )
            sr = ex_ante_player_payoff(NORM_C, PLAYER_SENIOR, stats, c_hat) - ex_ante_player_payoff(
                NORM_I, PLAYER_SENIOR, stats, c_hat
            )
            cells.append(PreferenceCell(float(mu), float(c_hat), jr, sr))
    return cells
