"""Pure-NumPy kernels: per-prefix threshold trees, exact sequence pmfs and
seeded chain simulation.

The compiled extension (_core) mirrors these routines operation for
operation.  Keep the arithmetic order aligned between the two files and use
only scipy's ndtr/log_ndtr/ndtri for transcendentals: that is what makes
the backends bit-identical (the extension is compiled with
-ffp-contract=off for the same reason).

Tree layout: the node for a decision prefix of length k, encoded as the
integer p whose most significant bit is the first decision, sits at flat
index 2**k - 1 + p and holds the threshold applied by agent k+1 after
observing that prefix.  Children of (k, p) are (k+1, 2p) and (k+1, 2p+1).
"""

from __future__ import annotations

import numpy as np
from scipy.special import log_ndtr, ndtr, ndtri

MAX_AGENTS = 24  # tree memory guard: 2**24 doubles is ~134 MB

# splitmix64 stream constants; stateless access by absolute position keeps
# sharded simulation reproducible regardless of chunking.
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_TWO_NEG_53 = 1.1102230246251565e-16  # 2.0**-53


def counter_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Uniform draws in (0, 1) at absolute stream positions
    start .. start+count-1 of the stream keyed by ``seed``."""
    c = np.arange(start, start + count, dtype=np.uint64)
    z = np.uint64(seed) + (c + np.uint64(1)) * _GOLDEN
    z ^= z >> np.uint64(30)
    z *= _MIX_1
    z ^= z >> np.uint64(27)
    z *= _MIX_2
    z ^= z >> np.uint64(31)
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_NEG_53


def _check_n_agents(n: int):
    if not 1 <= n <= MAX_AGENTS:
        raise ValueError(f"agent count {n} outside supported range "
                         f"[1, {MAX_AGENTS}]")


def threshold_tree(h1: float, sigma: float, log_cost_ratio: float,
                   log_odds0: np.ndarray, log_odds_cap: float):
    """Thresholds for every (agent, prefix) pair under Gaussian signals.

    ``log_odds0[n]`` is agent n+1's initial belief as log-odds.  Each agent
    reinterprets the whole prefix with its own belief, so the log-odds
    recursion runs once per agent from its own root.  Stage log-odds are
    clamped to [-cap, cap]; returns (tree, saturated).
    """
    log_odds0 = np.ascontiguousarray(log_odds0, dtype=np.float64)
    n = log_odds0.shape[0]
    _check_n_agents(n)
    tree = np.empty(2 ** n - 1)
    scale = sigma * sigma / h1
    half = 0.5 * h1
    saturated = bool(np.any(np.abs(log_odds0) > log_odds_cap))
    for agent in range(n):
        level = np.clip(log_odds0[agent:agent + 1], -log_odds_cap,
                        log_odds_cap)
        for _ in range(agent):
            lam = half + scale * (log_cost_ratio + level)
            z0 = lam / sigma
            z1 = (lam - h1) / sigma
            step0 = log_ndtr(z0) - log_ndtr(z1)
            step1 = log_ndtr(-z0) - log_ndtr(-z1)
            child = np.empty(2 * level.size)
            child[0::2] = level + step0
            child[1::2] = level + step1
            if np.any(np.abs(child) > log_odds_cap):
                saturated = True
                child = np.clip(child, -log_odds_cap, log_odds_cap)
            level = child
        tree[2 ** agent - 1:2 ** (agent + 1) - 1] = \
            half + scale * (log_cost_ratio + level)
    return tree, saturated


def sequence_pmf(h1: float, sigma: float, tree: np.ndarray,
                 n_agents: int) -> np.ndarray:
    """P(decision sequence | state) for both states as a (2, 2**n) array;
    the first decision is the most significant bit of the sequence index."""
    _check_n_agents(n_agents)
    pmf = np.ones((2, 1))
    for level in range(n_agents):
        thr = tree[2 ** level - 1:2 ** (level + 1) - 1]
        stay0 = ndtr(thr / sigma)
        stay1 = ndtr((thr - h1) / sigma)
        nxt = np.empty((2, 2 * pmf.shape[1]))
        nxt[0, 0::2] = pmf[0] * stay0
        nxt[0, 1::2] = pmf[0] * (1.0 - stay0)
        nxt[1, 0::2] = pmf[1] * stay1
        nxt[1, 1::2] = pmf[1] * (1.0 - stay1)
        pmf = nxt
    return pmf


def simulate_counts(h1: float, sigma: float, p0: float, tree: np.ndarray,
                    n_agents: int, trials: int, seed: int,
                    trial_offset: int = 0, chunk: int = 1 << 19) -> np.ndarray:
    """Tally (state, decision sequence) over seeded trials.

    Trial t consumes stream positions t*(n+1) .. t*(n+1)+n: one uniform for
    the state and one per agent, mapped through the normal quantile.  The
    tally is invariant to chunking and to sharding via ``trial_offset``.
    """
    _check_n_agents(n_agents)
    n_seq = 2 ** n_agents
    counts = np.zeros((2, n_seq), dtype=np.uint64)
    draws = n_agents + 1
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        base = (trial_offset + done) * draws
        u = counter_uniforms(seed, base, m * draws).reshape(m, draws)
        state = (u[:, 0] >= p0).astype(np.intp)
        y = np.where(state[:, None] == 1, h1, 0.0) + sigma * ndtri(u[:, 1:])
        idx = np.zeros(m, dtype=np.intp)
        for i in range(n_agents):
            thr = tree[(1 << i) - 1 + idx]
            idx = 2 * idx + (y[:, i] >= thr)
        flat = np.bincount(state * n_seq + idx, minlength=2 * n_seq)
        counts += flat.astype(np.uint64).reshape(2, n_seq)
        done += m
    return counts
