"""Recursive prior-belief updates from an observed decision history.

An agent holding initial belief q observes the decisions of its
predecessors.  Not knowing their beliefs, it interprets every past
decision as if the decider shared its own belief: each stage applies
Bayes' rule with the tail masses of the threshold that *this agent*
would have used at that stage.  The recursion therefore depends only on
the agent's own belief and the observed bits.

Updates run in log-odds space so long histories cannot underflow; a
stage pushed outside (Q_EPS, 1 - Q_EPS) is clamped and flagged rather
than allowed to produce NaN or infinite thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.special import expit, logit

from .decision import LOG_ODDS_CAP, CostPair, threshold_from_log_odds

__all__ = ["History", "BeliefTrajectory", "as_history", "belief_trajectory",
           "update_belief"]

History = tuple[int, ...]


def as_history(bits: Iterable[int]) -> History:
    """Validate and normalize a decision history to a tuple of 0/1 ints."""
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"history must contain only 0/1 decisions, got {out}")
    return out


@dataclass(frozen=True)
class BeliefTrajectory:
    """Belief stages along a history: stages[k] is the belief after the
    first k observed decisions (stages[0] is the initial belief)."""

    stages: tuple[float, ...]
    saturated: bool

    @property
    def final(self) -> float:
        return self.stages[-1]


def _clamped_log_odds(q: float) -> tuple[float, bool]:
    log_odds = float(logit(q))
    if log_odds > LOG_ODDS_CAP:
        return LOG_ODDS_CAP, True
    if log_odds < -LOG_ODDS_CAP:
        return -LOG_ODDS_CAP, True
    return log_odds, False


def log_odds_stages(model, costs: CostPair, q: float,
                    history: Sequence[int]) -> tuple[list[float], bool]:
    """Log-odds form of the update recursion (the numerical workhorse)."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"belief must lie strictly inside (0, 1), got {q}")
    bits = as_history(history)
    log_odds, saturated = _clamped_log_odds(q)
    stages = [log_odds]
    for bit in bits:
        lam = threshold_from_log_odds(model, costs, log_odds)
        if bit == 0:
            step = model.log_cdf(lam, 0) - model.log_cdf(lam, 1)
        else:
            step = model.log_sf(lam, 0) - model.log_sf(lam, 1)
        if math.isnan(step):
            # both tail masses vanished numerically: keep the current stage
            saturated = True
        else:
            log_odds = log_odds + step
            if log_odds > LOG_ODDS_CAP:
                log_odds, saturated = LOG_ODDS_CAP, True
            elif log_odds < -LOG_ODDS_CAP:
                log_odds, saturated = -LOG_ODDS_CAP, True
        stages.append(log_odds)
    return stages, saturated


def belief_trajectory(model, costs: CostPair, q: float,
                      history: Sequence[int]) -> BeliefTrajectory:
    """All intermediate beliefs along ``history``, plus a saturation flag."""
    stages, saturated = log_odds_stages(model, costs, q, history)
    return BeliefTrajectory(tuple(float(expit(s)) for s in stages), saturated)


def update_belief(model, costs: CostPair, q: float,
                  history: Sequence[int]) -> float:
    """Belief after observing ``history``; the empty history returns q.

    Saturated stages are clamped to the interior (never NaN); use
    :func:`belief_trajectory` to inspect the saturation flag.
    """
    stages, _ = log_odds_stages(model, costs, q, history)
    return float(expit(stages[-1]))
