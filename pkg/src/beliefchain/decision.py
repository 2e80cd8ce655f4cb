"""Threshold tests: Bayes decision thresholds and their error probabilities.

A decision maker with belief q (probability of state 0) and costs
(c10, c01) decides 1 exactly when the likelihood ratio at its signal
reaches c10*q / (c01*(1-q)); with an increasing likelihood ratio this is a
threshold test on the signal itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import logit

from .errors import BracketingError
from .likelihood import GaussianLikelihood

__all__ = ["CostPair", "ErrorProbPair", "solve_threshold", "error_probs",
           "decide"]

# Interior clamp for beliefs inside iterative updates: q is kept within
# [Q_EPS, 1 - Q_EPS], i.e. |log-odds| <= LOG_ODDS_CAP.
Q_EPS = 1e-12
LOG_ODDS_CAP = math.log((1.0 - Q_EPS) / Q_EPS)

_BISECT_MAX_ITER = 200
_BISECT_TOL = 1e-12


@dataclass(frozen=True)
class CostPair:
    """Bayes costs: c10 for a false alarm, c01 for a missed detection.

    Correct decisions cost zero.  The critical prior c01 / (c10 + c01) is
    the belief at which the cost-weighted odds ratio equals one.
    """

    c10: float = 1.0
    c01: float = 1.0

    def __post_init__(self):
        if not self.c10 > 0:
            raise ValueError(f"c10 must be positive, got {self.c10}")
        if not self.c01 > 0:
            raise ValueError(f"c01 must be positive, got {self.c01}")

    @property
    def critical_prior(self) -> float:
        return self.c01 / (self.c10 + self.c01)

    @property
    def log_cost_ratio(self) -> float:
        return math.log(self.c10 / self.c01)


@dataclass(frozen=True)
class ErrorProbPair:
    """Type I (decide 1 under state 0) and Type II (decide 0 under state 1)
    probabilities of a threshold test."""

    p_fa: float
    p_md: float

    def __post_init__(self):
        if not 0.0 <= self.p_fa <= 1.0 or not 0.0 <= self.p_md <= 1.0:
            raise ValueError(f"error probabilities must lie in [0, 1], "
                             f"got ({self.p_fa}, {self.p_md})")


def threshold_from_log_odds(model, costs: CostPair, log_odds: float) -> float:
    """Decision threshold for a belief given as log-odds log(q/(1-q)).

    Solves likelihood_ratio(t) = exp(log_cost_ratio + log_odds).  The
    Gaussian model has the closed form
    h1/2 + (sigma^2/h1) * (log_cost_ratio + log_odds); other models are
    solved by bisection on the truncated support.
    """
    target = costs.log_cost_ratio + log_odds
    if isinstance(model, GaussianLikelihood):
        h1, sigma = model.h1, model.sigma
        return 0.5 * h1 + (sigma * sigma / h1) * target
    lo, hi = model.truncated_support
    g_lo = model.log_likelihood_ratio(lo) - target
    g_hi = model.log_likelihood_ratio(hi) - target
    if g_lo > 0 or g_hi < 0:
        raise BracketingError(
            f"log likelihood ratio range [{g_lo + target:.6g}, "
            f"{g_hi + target:.6g}] does not bracket target {target:.6g}")
    for _ in range(_BISECT_MAX_ITER):
        if hi - lo <= _BISECT_TOL:
            break
        mid = 0.5 * (lo + hi)
        if model.log_likelihood_ratio(mid) - target < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_threshold(model, costs: CostPair, q: float) -> float:
    """Decision threshold of an agent holding belief q in (0, 1)."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"belief must lie strictly inside (0, 1), got {q}")
    return threshold_from_log_odds(model, costs, float(logit(q)))


def error_probs(model, threshold: float) -> ErrorProbPair:
    """Error probabilities of the test 'decide 1 iff y >= threshold'."""
    return ErrorProbPair(p_fa=float(model.sf(threshold, 0)),
                         p_md=float(model.cdf(threshold, 1)))


def decide(model, costs: CostPair, belief: float, y: float) -> int:
    """Run the threshold test on a signal; ties resolve to decision 1."""
    return 1 if y >= solve_threshold(model, costs, belief) else 0
