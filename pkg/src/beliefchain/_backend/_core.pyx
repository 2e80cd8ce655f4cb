# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.

Mirrors _purepy operation for operation; see the layout and bit-identity
notes there.  Transcendentals come from scipy.special.cython_special so
both backends run the same Cephes code.
"""

import numpy as np

cimport numpy as cnp
from scipy.special.cython_special cimport log_ndtr, ndtr, ndtri

cnp.import_array()

ctypedef unsigned long long u64

cdef double _TWO_NEG_53 = 1.1102230246251565e-16  # 2.0**-53

MAX_AGENTS = 24


cdef inline double _uniform(u64 seed, u64 counter) noexcept nogil:
    # splitmix64 finalizer at an absolute stream position (same constants
    # as _purepy.counter_uniforms).
    cdef u64 z = seed + (counter + 1ULL) * 0x9E3779B97F4A7C15ULL
    z ^= z >> 30
    z *= 0xBF58476D1CE4E5B9ULL
    z ^= z >> 27
    z *= 0x94D049BB133111EBULL
    z ^= z >> 31
    return (<double> (z >> 11) + 0.5) * _TWO_NEG_53


cdef inline double _clamp(double x, double cap, bint* saturated) noexcept nogil:
    if x > cap:
        saturated[0] = True
        return cap
    if x < -cap:
        saturated[0] = True
        return -cap
    return x


def _check_n_agents(n):
    if not 1 <= n <= MAX_AGENTS:
        raise ValueError(f"agent count {n} outside supported range "
                         f"[1, {MAX_AGENTS}]")


def threshold_tree(double h1, double sigma, double log_cost_ratio,
                   log_odds0, double log_odds_cap):
    """Thresholds for every (agent, prefix) pair; see _purepy.threshold_tree."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] l0 = \
        np.ascontiguousarray(log_odds0, dtype=np.float64)
    cdef Py_ssize_t n = l0.shape[0]
    _check_n_agents(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tree_arr = np.empty((1 << n) - 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] buf_a = np.empty(1 << (n - 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] buf_b = np.empty(1 << (n - 1))
    cdef double* tree = <double*> tree_arr.data
    cdef double* cur = <double*> buf_a.data
    cdef double* nxt = <double*> buf_b.data
    cdef double* tmp
    cdef double scale = sigma * sigma / h1
    cdef double half = 0.5 * h1
    cdef bint saturated = False
    cdef Py_ssize_t agent, level, p, width, base
    cdef double lval, lam, z0, z1
    with nogil:
        for agent in range(n):
            cur[0] = _clamp(l0[agent], log_odds_cap, &saturated)
            width = 1
            for level in range(agent):
                for p in range(width):
                    lval = cur[p]
                    lam = half + scale * (log_cost_ratio + lval)
                    z0 = lam / sigma
                    z1 = (lam - h1) / sigma
                    nxt[2 * p] = _clamp(
                        lval + (log_ndtr(z0) - log_ndtr(z1)),
                        log_odds_cap, &saturated)
                    nxt[2 * p + 1] = _clamp(
                        lval + (log_ndtr(-z0) - log_ndtr(-z1)),
                        log_odds_cap, &saturated)
                tmp = cur
                cur = nxt
                nxt = tmp
                width <<= 1
            base = (1 << agent) - 1
            for p in range(width):
                tree[base + p] = half + scale * (log_cost_ratio + cur[p])
    return tree_arr, bool(saturated)


def sequence_pmf(double h1, double sigma, tree, Py_ssize_t n_agents):
    """P(decision sequence | state); see _purepy.sequence_pmf."""
    _check_n_agents(n_agents)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tr = \
        np.ascontiguousarray(tree, dtype=np.float64)
    cdef Py_ssize_t n_seq = 1 << n_agents
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((2, n_seq))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] buf = np.empty((2, n_seq))
    cdef double* cur = <double*> buf.data
    cdef double* nxt = <double*> out.data
    cdef double* tmp
    cdef Py_ssize_t level, p, width, base
    cdef double thr, stay0, stay1
    # keep parity: with n_agents levels the final swap must land in `out`
    if n_agents % 2 == 0:
        tmp = cur
        cur = nxt
        nxt = tmp
    cur[0] = 1.0
    cur[n_seq] = 1.0
    width = 1
    with nogil:
        for level in range(n_agents):
            base = (1 << level) - 1
            for p in range(width):
                thr = tr[base + p]
                stay0 = ndtr(thr / sigma)
                stay1 = ndtr((thr - h1) / sigma)
                nxt[2 * p] = cur[p] * stay0
                nxt[2 * p + 1] = cur[p] * (1.0 - stay0)
                nxt[n_seq + 2 * p] = cur[n_seq + p] * stay1
                nxt[n_seq + 2 * p + 1] = cur[n_seq + p] * (1.0 - stay1)
            tmp = cur
            cur = nxt
            nxt = tmp
            width <<= 1
    return out


def simulate_counts(double h1, double sigma, double p0, tree,
                    Py_ssize_t n_agents, Py_ssize_t trials, u64 seed,
                    u64 trial_offset=0, chunk=None):
    """Tally (state, decision sequence) over seeded trials; see
    _purepy.simulate_counts (``chunk`` is accepted for signature parity)."""
    _check_n_agents(n_agents)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tr = \
        np.ascontiguousarray(tree, dtype=np.float64)
    cdef Py_ssize_t n_seq = 1 << n_agents
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] out = \
        np.zeros((2, n_seq), dtype=np.uint64)
    cdef u64* counts = <u64*> out.data
    cdef u64 draws = <u64> n_agents + 1
    cdef u64 base
    cdef Py_ssize_t t, i, idx
    cdef int state
    cdef double u, mu, y
    with nogil:
        for t in range(trials):
            base = (trial_offset + <u64> t) * draws
            u = _uniform(seed, base)
            state = 0 if u < p0 else 1
            mu = h1 if state else 0.0
            idx = 0
            for i in range(n_agents):
                u = _uniform(seed, base + 1 + <u64> i)
                y = mu + sigma * ndtri(u)
                idx = 2 * idx + (1 if y >= tr[(1 << i) - 1 + idx] else 0)
            counts[state * n_seq + idx] += 1
    return out
