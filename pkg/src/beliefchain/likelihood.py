"""Signal models: conditional densities, CDFs and likelihood ratios.

Two models are provided.  :class:`GaussianLikelihood` is the closed-form
workhorse: the signal is the binary state plus Gaussian noise, so the
conditional densities are normal with means 0 and ``h1`` and common
standard deviation ``sigma``.  :class:`GenericLikelihood` wraps an
arbitrary pair of densities with an increasing likelihood ratio and
computes CDFs by adaptive quadrature.

Both expose the same surface: ``pdf``, ``cdf``, ``sf``, ``log_cdf``,
``log_sf``, ``likelihood_ratio``, ``log_likelihood_ratio`` and
``quantile``, each taking the binary state ``h`` where conditioning
applies.  Instances are immutable and safe to share between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import log_ndtr, ndtr, ndtri

from .errors import QuadratureError

__all__ = ["GaussianLikelihood", "GenericLikelihood"]

_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Adaptive quadrature settings for the generic model: absolute tolerance and
# a hard cap on interval subdivisions.
_QUAD_TOL = 1e-10
_QUAD_LIMIT = 200

# Infinite supports are truncated this many standard deviations from each
# density's mean; the neglected tail mass is far below _QUAD_TOL.
_TAIL_SIGMAS = 12.0


@dataclass(frozen=True)
class GaussianLikelihood:
    """Gaussian signal model: mean 0 under state 0, mean ``h1`` under state 1.

    The likelihood ratio exp((y - h1/2) * h1 / sigma**2) is strictly
    increasing in y, so threshold tests are well defined.
    """

    h1: float = 1.0
    sigma: float = 1.0

    def __post_init__(self):
        if not self.h1 > 0:
            raise ValueError(f"h1 must be positive, got {self.h1}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def mean(self, h: int) -> float:
        return self.h1 if h else 0.0

    def _z(self, y, h: int):
        return (y - self.mean(h)) / self.sigma

    def pdf(self, y, h: int):
        z = self._z(y, h)
        return np.exp(-0.5 * z * z) / (self.sigma * _SQRT_2PI)

    def cdf(self, y, h: int):
        return ndtr(self._z(y, h))

    def sf(self, y, h: int):
        return ndtr(-self._z(y, h))

    def log_cdf(self, y, h: int):
        return log_ndtr(self._z(y, h))

    def log_sf(self, y, h: int):
        return log_ndtr(-self._z(y, h))

    def quantile(self, p, h: int):
        """Inverse CDF; maps uniforms to signals when sampling."""
        return self.mean(h) + self.sigma * ndtri(p)

    def log_likelihood_ratio(self, y):
        return (y - 0.5 * self.h1) * self.h1 / (self.sigma * self.sigma)

    def likelihood_ratio(self, y):
        return np.exp(self.log_likelihood_ratio(y))


def _quad(fn: Callable[[float], float], lo: float, hi: float) -> float:
    if hi <= lo:
        return 0.0
    value, abserr = quad(fn, lo, hi, epsabs=_QUAD_TOL, epsrel=1e-10,
                         limit=_QUAD_LIMIT)
    if abserr > 100.0 * _QUAD_TOL:
        raise QuadratureError(
            f"integral over [{lo}, {hi}] reached error {abserr:.3e} "
            f"(requested {_QUAD_TOL:.1e})")
    return value


class GenericLikelihood:
    """Signal model defined by a pair of density callables.

    The densities must be normalized over ``support`` and their ratio
    density1/density0 must be increasing in y; both are checked numerically
    at construction and violations raise ValueError.  CDFs integrate the
    densities with adaptive quadrature, so this model is orders of magnitude
    slower than the Gaussian one and meant for small studies and tests.
    """

    def __init__(self, density0: Callable[[float], float],
                 density1: Callable[[float], float],
                 support: tuple[float, float] = (-math.inf, math.inf),
                 *, lr_check_points: int = 64):
        self._densities = (density0, density1)
        lo, hi = float(support[0]), float(support[1])
        if not lo < hi:
            raise ValueError(f"empty support ({lo}, {hi})")
        self.support = (lo, hi)
        self._lo, self._hi = self._truncated_bounds(lo, hi)
        self._check_normalization()
        self._check_increasing_ratio(lr_check_points)

    def _truncated_bounds(self, lo: float, hi: float) -> tuple[float, float]:
        if math.isfinite(lo) and math.isfinite(hi):
            return lo, hi
        bounds = []
        for fn in self._densities:
            total = quad(fn, lo, hi, limit=_QUAD_LIMIT)[0]
            mean = quad(lambda y: y * fn(y), lo, hi, limit=_QUAD_LIMIT)[0] / total
            var = quad(lambda y: (y - mean) ** 2 * fn(y), lo, hi,
                       limit=_QUAD_LIMIT)[0] / total
            sd = math.sqrt(max(var, 0.0))
            bounds.append((mean - _TAIL_SIGMAS * sd, mean + _TAIL_SIGMAS * sd))
        t_lo = max(lo, min(b[0] for b in bounds))
        t_hi = min(hi, max(b[1] for b in bounds))
        return t_lo, t_hi

    def _check_normalization(self):
        for h, fn in enumerate(self._densities):
            mass = _quad(fn, self._lo, self._hi)
            if abs(mass - 1.0) > 1e-6:
                raise ValueError(
                    f"density for state {h} integrates to {mass:.9f}, not 1 "
                    "(over the truncated support)")

    def _check_increasing_ratio(self, points: int):
        ys = np.linspace(self._lo, self._hi, points)
        ratios = []
        for y in ys:
            f0 = self._densities[0](float(y))
            f1 = self._densities[1](float(y))
            if f0 > 0:
                ratios.append(f1 / f0)
        diffs = np.diff(ratios)
        if len(ratios) >= 2 and np.any(diffs < -1e-9 * max(abs(r) for r in ratios)):
            raise ValueError("likelihood ratio is not increasing on the support")

    @property
    def truncated_support(self) -> tuple[float, float]:
        """Working interval actually used for quadrature and root finding."""
        return (self._lo, self._hi)

    def pdf(self, y, h: int):
        lo, hi = self.support
        if y < lo or y > hi:
            return 0.0
        return self._densities[h](float(y))

    def cdf(self, y, h: int):
        if y <= self._lo:
            return 0.0
        if y >= self._hi:
            return 1.0
        return min(1.0, max(0.0, _quad(self._densities[h], self._lo, float(y))))

    def sf(self, y, h: int):
        if y <= self._lo:
            return 1.0
        if y >= self._hi:
            return 0.0
        return min(1.0, max(0.0, _quad(self._densities[h], float(y), self._hi)))

    def log_cdf(self, y, h: int):
        mass = self.cdf(y, h)
        return math.log(mass) if mass > 0 else -math.inf

    def log_sf(self, y, h: int):
        mass = self.sf(y, h)
        return math.log(mass) if mass > 0 else -math.inf

    def quantile(self, p, h: int) -> float:
        """Numerical inverse CDF by bisection on the truncated support."""
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile level must be in (0, 1), got {p}")
        lo, hi = self._lo, self._hi
        for _ in range(200):
            if hi - lo <= 1e-12 * max(1.0, abs(lo), abs(hi)):
                break
            mid = 0.5 * (lo + hi)
            if self.cdf(mid, h) < p:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def likelihood_ratio(self, y):
        f0 = self.pdf(y, 0)
        if f0 <= 0.0:
            raise ValueError(f"zero density under state 0 at y={y}; "
                             "point is outside the usable support")
        return self.pdf(y, 1) / f0

    def log_likelihood_ratio(self, y):
        return math.log(self.likelihood_ratio(y))
