"""Credit attribution and expected payoffs in the listing-norm game.

Matched junior/senior pairs either collaborate (producing ``1 + c_hat``
units of credit) or work solo (one unit each side, split by realized
contribution).  Each player follows one of two listing conventions:

I-norm
    list the junior first regardless of contribution,
C-norm
    list authors in order of contribution.

``p_j`` and ``p_s`` are the fractions of juniors and seniors following the
I-norm.  A pair collaborates unless the junior plays I while the senior
plays C, so P(collab) = 1 - p_j (1 - p_s).  The community reads the author
order and splits collaboration credit three ways:

* with probability ``correct`` it attributes by Bayesian posterior over who
  contributed more given the observed order,
* with probability ``first_author`` it hands everything to the first-listed
  author,
* with probability ``senior`` it hands everything to the senior author
  regardless of order (cumulative-advantage bias).

All state-dependent functions accept scalar or ndarray population shares
and broadcast elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError
from .priors import ContributionStats

__all__ = [
    "BiasParams",
    "CreditMixture",
    "GameParams",
    "PopulationState",
    "PureStrategyPayoffs",
    "PAYOFF_MODES",
    "bias_mixture",
    "collaboration_probability",
    "expected_payoffs",
    "listing_probabilities",
    "posterior_junior_greater",
    "pure_strategy_payoffs",
]

# How pure-strategy payoffs are read off the population game:
#   "substitution": substitute the candidate population share (0 or 1) into
#       the full payoff, letting community beliefs move with it;
#   "fixed-belief": hold the credit posterior at the current population
#       state while varying the share.
PAYOFF_MODES = ("substitution", "fixed-belief")


@dataclass(frozen=True)
class BiasParams:
    """Attribution-bias intensities.

    ``epsilon`` is the share of the community that credits whoever is listed
    first; ``chi`` is the share that credits the senior no matter what.  The
    two biases must leave room for correct attribution: epsilon + chi < 1.
    """

    epsilon: float
    chi: float

    def __post_init__(self) -> None:
        for name, value in (("epsilon", self.epsilon), ("chi", self.chi)):
            if not np.isfinite(value) or value < 0.0:
                raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")
        if self.epsilon + self.chi >= 1.0:
            raise ParameterError(
                f"epsilon + chi must be < 1, got {self.epsilon + self.chi!r}"
            )


@dataclass(frozen=True)
class GameParams:
    """Everything the payoff functions need: stats, biases, bonus."""

    stats: ContributionStats
    bias: BiasParams
    c_hat: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.c_hat) or self.c_hat < 0.0:
            raise ParameterError(f"c_hat must be finite and >= 0, got {self.c_hat!r}")


@dataclass(frozen=True)
class PopulationState:
    """Fractions of juniors (``p_j``) and seniors (``p_s``) playing the I-norm."""

    p_j: float | np.ndarray
    p_s: float | np.ndarray

    def __post_init__(self) -> None:
        for name, value in (("p_j", self.p_j), ("p_s", self.p_s)):
            arr = np.asarray(value, dtype=float)
            if not (np.all(np.isfinite(arr)) and np.all(arr >= 0.0) and np.all(arr <= 1.0)):
                raise ParameterError(f"{name} must lie in [0, 1], got {value!r}")


class CreditMixture(NamedTuple):
    """Probabilities of the three community attribution behaviours."""

    correct: float
    first_author: float
    senior: float


class PureStrategyPayoffs(NamedTuple):
    """Expected payoffs to each pure strategy for each role."""

    pi_j_I: float | np.ndarray
    pi_j_C: float | np.ndarray
    pi_s_I: float | np.ndarray
    pi_s_C: float | np.ndarray


def _pair(state: PopulationState) -> tuple[np.ndarray, np.ndarray, bool]:
    p_j = np.asarray(state.p_j, dtype=float)
    p_s = np.asarray(state.p_s, dtype=float)
    scalar = p_j.ndim == 0 and p_s.ndim == 0
    return p_j, p_s, scalar


def collaboration_probability(state: PopulationState) -> float | np.ndarray:
    """P(a matched pair collaborates) = 1 - p_j (1 - p_s)."""
    p_j, p_s, scalar = _pair(state)
    out = 1.0 - p_j * (1.0 - p_s)
    return float(out) if scalar else out


def _listing_and_posterior(p_j, p_s, w_j):
    """Joint listing probabilities and the junior-first posterior.

    Returns (f_j, f_s, m_j) where f_j/f_s are the probabilities that a
    random pair collaborates with the junior/senior listed first, and m_j is
    P(junior contributed more | junior listed first).  The posterior shares
    its denominator with f_j, which keeps the two exactly consistent.
    """
    collab = 1.0 - p_j * (1.0 - p_s)
    # Junior ends up first despite the senior contributing more when both
    # play I, or on the coin flip when only the senior plays I.
    jr_first_given_senior_more = p_s * (p_j + 0.5 * (1.0 - p_j))
    f_j = collab * w_j + jr_first_given_senior_more * (1.0 - w_j)
    f_s = (1.0 - w_j) * (1.0 - p_j) * (1.0 - p_s + 0.5 * p_s)
    with np.errstate(divide="ignore", invalid="ignore"):
        m_j = np.where(f_j > 0.0, (collab * w_j) / np.where(f_j > 0.0, f_j, 1.0), 0.0)
    return f_j, f_s, m_j


def posterior_junior_greater(state: PopulationState, w_j: float) -> float | np.ndarray:
    """P(junior contributed more | junior listed first).

    At the never-collaborating corner (p_j, p_s) = (1, 0) the conditioning
    event has probability zero; the posterior is pinned to 0 there.
    """
    if not 0.0 <= w_j <= 1.0:
        raise ParameterError(f"w_j must lie in [0, 1], got {w_j!r}")
    p_j, p_s, scalar = _pair(state)
    _, _, m_j = _listing_and_posterior(p_j, p_s, w_j)
    return float(m_j) if scalar else m_j


def listing_probabilities(state: PopulationState, w_j: float):
    """(f_j, f_s): P(collaborate with junior / senior listed first)."""
    if not 0.0 <= w_j <= 1.0:
        raise ParameterError(f"w_j must lie in [0, 1], got {w_j!r}")
    p_j, p_s, scalar = _pair(state)
    f_j, f_s, _ = _listing_and_posterior(p_j, p_s, w_j)
    if scalar:
        return float(f_j), float(f_s)
    return f_j, f_s


def bias_mixture(bias: BiasParams) -> CreditMixture:
    """Normalized weights of correct / first-author / senior attribution.

    The senior-leaning community members defer to the first-author reading
    when the first author is the senior, so the joint weight epsilon*chi is
    renormalized away.
    """
    scale = 1.0 - bias.epsilon * bias.chi
    return CreditMixture(
        correct=(1.0 - bias.epsilon) * (1.0 - bias.chi) / scale,
        first_author=bias.epsilon * (1.0 - bias.chi) / scale,
        senior=(1.0 - bias.epsilon) * bias.chi / scale,
    )


def _expected_payoffs_raw(p_j, p_s, params: GameParams, posterior=None):
    """Core payoff computation on raw arrays.

    ``posterior`` overrides the credit posterior m_j (used by the
    fixed-belief pure-strategy mode); by default it is evaluated at the
    supplied state.
    """
    stats = params.stats
    mix = bias_mixture(params.bias)
    f_j, f_s, m_j = _listing_and_posterior(p_j, p_s, stats.w_j)
    if posterior is not None:
        m_j = posterior

    # Credit shares conditional on the realized listing.
    jr_when_jr_first = mix.correct * (m_j * stats.b_j + (1.0 - m_j) * (1.0 - stats.b_s))
    jr_when_jr_first += mix.first_author
    sr_when_jr_first = mix.correct * (m_j * (1.0 - stats.b_j) + (1.0 - m_j) * stats.b_s)
    sr_when_jr_first += mix.senior
    # A senior listed first reveals the contribution order outright.
    jr_when_sr_first = mix.correct * (1.0 - stats.b_s)
    sr_when_sr_first = mix.correct * stats.b_s + mix.first_author + mix.senior

    bonus = 1.0 + params.c_hat
    solo = p_j * (1.0 - p_s)
    pi_j = bonus * (f_j * jr_when_jr_first + f_s * jr_when_sr_first) + solo * stats.mu_j
    pi_s = bonus * (f_j * sr_when_jr_first + f_s * sr_when_sr_first) + solo * stats.mu_s
    return pi_j, pi_s


def expected_payoffs(state: PopulationState, params: GameParams):
    """Population-average payoffs (pi_j, pi_s) at ``state``."""
    p_j, p_s, scalar = _pair(state)
    pi_j, pi_s = _expected_payoffs_raw(p_j, p_s, params)
    if scalar:
        return float(pi_j), float(pi_s)
    return pi_j, pi_s


def _pure_strategy_payoffs_raw(p_j, p_s, params: GameParams, mode: str):
    """Stacked evaluation of the four pure-strategy payoffs."""
    if mode not in PAYOFF_MODES:
        raise ParameterError(f"mode must be one of {PAYOFF_MODES}, got {mode!r}")
    p_j, p_s = np.broadcast_arrays(p_j, p_s)
    ones = np.ones_like(p_j)
    zeros = np.zeros_like(p_j)
    # Rows: junior all-I, junior all-C, senior all-I, senior all-C.
    stack_j = np.stack([ones, zeros, p_j, p_j])
    stack_s = np.stack([p_s, p_s, ones, zeros])
    posterior = None
    if mode == "fixed-belief":
        _, _, m_j = _listing_and_posterior(p_j, p_s, params.stats.w_j)
        posterior = np.broadcast_to(m_j, stack_j.shape)
    pi_j, pi_s = _expected_payoffs_raw(stack_j, stack_s, params, posterior=posterior)
    return pi_j[0], pi_j[1], pi_s[2], pi_s[3]


def pure_strategy_payoffs(
    state: PopulationState, params: GameParams, mode: str = "substitution"
) -> PureStrategyPayoffs:
    """Expected payoff to each pure strategy for each role at ``state``.

    In the default "substitution" reading, the payoff to (say) a junior
    playing I is the population payoff evaluated with every junior playing
    I; community beliefs and listing frequencies move along.  This keeps the
    two special cases exact: juniors are indifferent when all seniors list
    junior-first, and seniors are indifferent when all juniors order by
    contribution.  The "fixed-belief" reading pins the credit posterior at
    the current state instead.
    """
    p_j, p_s, scalar = _pair(state)
    a, b, c, d = _pure_strategy_payoffs_raw(p_j, p_s, params, mode)
    if scalar:
        return PureStrategyPayoffs(float(a), float(b), float(c), float(d))
    return PureStrategyPayoffs(a, b, c, d)
