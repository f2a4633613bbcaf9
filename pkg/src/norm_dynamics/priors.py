"""Beta priors over the junior collaborator's contribution share.

A collaboration between a junior and a senior author produces one unit of
joint work; ``c_j`` denotes the share contributed by the junior.  The
community holds a Beta prior over ``c_j``, and the game layer consumes four
summary statistics of that prior:

``w_j``
    probability that the junior contributed more than half,
``b_j``
    expected junior share given the junior contributed more,
``b_s``
    expected senior share (``1 - c_j``) given the senior contributed more,
``mu_j``
    ex-ante expected junior share, ``w_j*b_j + (1-w_j)*(1-b_s)``.

Conditional means are evaluated by adaptive quadrature of the density
(absolute tolerance 1e-10); the CDF uses the regularized incomplete beta
function.  Conditioning events with mass below ``MIN_CONDITIONING_MASS``
raise :class:`DegenerateDistributionError` rather than clamping, so callers
can record gaps instead of propagating junk values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .errors import DegenerateDistributionError, ParameterError

__all__ = [
    "MIN_CONDITIONING_MASS",
    "WEIGHT_MODES",
    "BetaPrior",
    "ContributionStats",
    "beta_cdf",
    "conditional_mean_above",
    "conditional_mean_below",
    "derive_contribution_stats",
    "stats_from_explicit",
]

# Conditioning events with less prior mass than this are treated as empty.
MIN_CONDITIONING_MASS = 1e-12

# How the mixing weight w_j is read off the prior:
#   "exact": w_j = P(c_j > 1/2), so mu_j recovers the prior mean exactly;
#   "mean":  w_j = alpha/(alpha+beta), a common shortcut that treats the
#            prior mean itself as the exceedance weight.
WEIGHT_MODES = ("exact", "mean")


@dataclass(frozen=True)
class BetaPrior:
    """Beta(alpha, beta) distribution over the junior share ``c_j``."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not np.isfinite(value) or value <= 0.0:
                raise ParameterError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    def pdf(self, x):
        """Density at ``x`` (array friendly); 0 outside the open interval."""
        x = np.asarray(x, dtype=float)
        inside = (x > 0.0) & (x < 1.0)
        safe = np.where(inside, x, 0.5)
        log_pdf = (
            (self.alpha - 1.0) * np.log(safe)
            + (self.beta - 1.0) * np.log1p(-safe)
            - special.betaln(self.alpha, self.beta)
        )
        out = np.where(inside, np.exp(log_pdf), 0.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class ContributionStats:
    """Summary statistics of the contribution prior used by the game layer.

    ``prior`` is retained when the stats were derived from a full density so
    downstream analyses that need the distribution (not just its summaries)
    can get at it; stats built from explicit numbers carry ``prior=None``.
    """

    w_j: float
    b_j: float
    b_s: float
    mu_j: float
    prior: BetaPrior | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not 0.0 < self.w_j < 1.0:
            raise ParameterError(f"w_j must lie in (0, 1), got {self.w_j!r}")
        for name, value in (("b_j", self.b_j), ("b_s", self.b_s)):
            if not 0.5 < value < 1.0:
                raise ParameterError(f"{name} must lie in (0.5, 1), got {value!r}")
        expected = self.w_j * self.b_j + (1.0 - self.w_j) * (1.0 - self.b_s)
        if abs(self.mu_j - expected) > 1e-9:
            raise ParameterError(
                f"mu_j={self.mu_j!r} inconsistent with "
                f"w_j*b_j + (1-w_j)*(1-b_s) = {expected!r}"
            )

    @property
    def mu_s(self) -> float:
        """Ex-ante expected senior share."""
        return 1.0 - self.mu_j


def beta_cdf(prior: BetaPrior, x: float) -> float:
    """P(c_j <= x) under ``prior``; raises for ``x`` outside [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"cdf argument must lie in [0, 1], got {x!r}")
    return float(special.betainc(prior.alpha, prior.beta, x))


def _upper_mass(prior: BetaPrior, x: float) -> float:
    # Complemented incomplete beta; 1 - cdf(x) would cancel badly in tails.
    return float(special.betaincc(prior.alpha, prior.beta, x))


def _partial_mean(prior: BetaPrior, lo: float, hi: float) -> float:
    """Adaptive quadrature of ``x * pdf(x)`` over [lo, hi]."""
    value, _ = integrate.quad(
        lambda x: x * prior.pdf(x),
        lo,
        hi,
        epsabs=1e-12,
        epsrel=1e-10,
        limit=200,
    )
    return value


def conditional_mean_above(prior: BetaPrior, threshold: float) -> float:
    """E[c_j | c_j > threshold].

    Raises :class:`DegenerateDistributionError` when the conditioning event
    has mass below :data:`MIN_CONDITIONING_MASS`.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ParameterError(f"threshold must lie in [0, 1], got {threshold!r}")
    mass = _upper_mass(prior, threshold)
    if mass <= MIN_CONDITIONING_MASS:
        raise DegenerateDistributionError(
            f"P(c_j > {threshold}) = {mass:.3e} is too small to condition on"
        )
    return _partial_mean(prior, threshold, 1.0) / mass


def conditional_mean_below(prior: BetaPrior, threshold: float) -> float:
    """E[c_j | c_j < threshold]; companion of :func:`conditional_mean_above`."""
    if not 0.0 <= threshold <= 1.0:
        raise ParameterError(f"threshold must lie in [0, 1], got {threshold!r}")
    mass = beta_cdf(prior, threshold)
    if mass <= MIN_CONDITIONING_MASS:
        raise DegenerateDistributionError(
            f"P(c_j < {threshold}) = {mass:.3e} is too small to condition on"
        )
    return _partial_mean(prior, 0.0, threshold) / mass


def derive_contribution_stats(prior: BetaPrior, wj_mode: str = "exact") -> ContributionStats:
    """Compute (w_j, b_j, b_s, mu_j) from a Beta prior.

    ``wj_mode`` selects how w_j is read off the prior (see
    :data:`WEIGHT_MODES`).  In "exact" mode the law of total expectation
    makes ``mu_j`` coincide with the prior mean.
    """
    if wj_mode not in WEIGHT_MODES:
        raise ParameterError(f"wj_mode must be one of {WEIGHT_MODES}, got {wj_mode!r}")
    # Check both conditioning events up front so a one-sided prior fails
    # before any quadrature runs.
    for mass, side in ((_upper_mass(prior, 0.5), ">"), (beta_cdf(prior, 0.5), "<")):
        if mass <= MIN_CONDITIONING_MASS:
            raise DegenerateDistributionError(
                f"P(c_j {side} 0.5) = {mass:.3e} is too small to condition on"
            )
    b_j = conditional_mean_above(prior, 0.5)
    b_s = 1.0 - conditional_mean_below(prior, 0.5)
    if wj_mode == "exact":
        w_j = _upper_mass(prior, 0.5)
    else:
        w_j = prior.mean
    mu_j = w_j * b_j + (1.0 - w_j) * (1.0 - b_s)
    return ContributionStats(w_j=w_j, b_j=b_j, b_s=b_s, mu_j=mu_j, prior=prior)


def stats_from_explicit(w_j: float, b_j: float, b_s: float) -> ContributionStats:
    """Build stats directly from the three primitive numbers.

    The returned object carries no density, so analyses that integrate over
    the contribution share will reject it.
    """
    mu_j = w_j * b_j + (1.0 - w_j) * (1.0 - b_s)
    return ContributionStats(w_j=w_j, b_j=b_j, b_s=b_s, mu_j=mu_j, prior=None)
