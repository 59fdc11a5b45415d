"""Finite discrete distributions over non-negative integer counts.

Distributions are stored as dense probability vectors on a contiguous
window of integers. Every constructor accounts explicitly for the mass it
drops when truncating a support, so normalisation stays checkable through
long convolution pipelines instead of silently eroding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal, stats
from scipy.special import gammaln, xlogy

__all__ = [
    "DiscreteDist",
    "DomainError",
    "RateParams",
    "convolve",
    "mixture",
    "moments",
    "n_fold_convolve",
    "point_mass",
    "poisson_pmf",
    "tail_ge",
    "tv_distance",
]

# Constructors keep at least 1 - TRUNCATION_EPS of the mass they truncate.
TRUNCATION_EPS = 1e-12
# Hard ceiling on stored support points; beyond it the window is clipped
# around the bulk and the clipped mass lands in truncation_loss.
MAX_SUPPORT = 10**6
# Largest support length that stays on the direct O(n*m) convolution path.
DIRECT_CONV_LIMIT = 4096

_NORM_TOL = 1e-9


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


@dataclass(frozen=True)
class RateParams:
    """Emission and decay rates, all in 1/ms.

    mu0 is the dark emission rate, mu1 >= mu0 the bright emission rate and
    lam the bright-to-dark decay rate.
    """

    mu0: float
    mu1: float
    lam: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu0", float(self.mu0))
        object.__setattr__(self, "mu1", float(self.mu1))
        object.__setattr__(self, "lam", float(self.lam))
        for name in ("mu0", "mu1", "lam"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not 0.0 <= self.mu0 <= self.mu1:
            raise DomainError(
                f"rates must satisfy 0 <= mu0 <= mu1, got mu0={self.mu0}, mu1={self.mu1}"
            )
        if self.lam < 0.0:
            raise DomainError(f"decay rate must be non-negative, got {self.lam}")


@dataclass
class DiscreteDist:
    """Probability law on a contiguous window of non-negative integers.

    ``masses[i]`` is the probability of the count ``offset + i``. Mass
    dropped when a support was truncated is recorded in
    ``truncation_loss``, so ``sum(masses) + truncation_loss`` stays equal
    to one up to float rounding. Leave ``truncation_loss`` as None to have
    it inferred from the mass actually stored.

    Instances are immutable after construction; the mass array is marked
    read-only.
    """

    offset: int
    masses: np.ndarray
    truncation_loss: float | None = None

    def __post_init__(self):
        if self.offset != int(self.offset) or self.offset < 0:
            raise DomainError(f"offset must be a non-negative integer, got {self.offset}")
        self.offset = int(self.offset)
        arr = np.array(self.masses, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("masses must be a non-empty 1-d array")
        if not np.all(np.isfinite(arr)):
            raise DomainError("masses must be finite")
        if np.any(arr < 0.0):
            raise DomainError("masses must be non-negative")
        total = float(arr.sum())
        if self.truncation_loss is None:
            self.truncation_loss = max(0.0, 1.0 - total)
        self.truncation_loss = float(self.truncation_loss)
        if self.truncation_loss < 0.0:
            raise DomainError("truncation_loss must be non-negative")
        if abs(total + self.truncation_loss - 1.0) > _NORM_TOL:
            raise DomainError(
                f"masses plus truncation_loss must sum to one, got {total + self.truncation_loss}"
            )
        arr.setflags(write=False)
        self.masses = arr

    @property
    def k_max(self) -> int:
        return self.offset + self.masses.size - 1

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.masses.size)

    def pmf(self, k: int) -> float:
        """Probability of the exact count k (zero outside the stored window)."""
        i = int(k) - self.offset
        if 0 <= i < self.masses.size:
            return float(self.masses[i])
        return 0.0


def point_mass(k: int) -> DiscreteDist:
    """Deterministic count k."""
    return DiscreteDist(int(k), np.ones(1), 0.0)


def _poisson_window(omega: float) -> tuple[int, int]:
    """Smallest integer window holding all but ~TRUNCATION_EPS of a Poisson law."""
    law = stats.poisson(mu=omega)
    tail = TRUNCATION_EPS / 4.0
    lo = max(0, int(law.ppf(tail)) - 2)
    hi = int(law.isf(tail)) + 2
    if hi - lo + 1 > MAX_SUPPORT:
        lo = max(0, int(omega) - MAX_SUPPORT // 2)
        hi = lo + MAX_SUPPORT - 1
    return lo, hi


def poisson_pmf(omega: float) -> DiscreteDist:
    """Poisson law with mean omega.

    The support window is chosen so the two discarded tails together hold
    no more than about 1e-12 of the mass. Values are evaluated in log
    space and exponentiated, which keeps far-tail bins accurate.
    """
    omega = float(omega)
    if not math.isfinite(omega) or omega < 0.0:
        raise DomainError(f"poisson mean must be finite and non-negative, got {omega}")
    if omega == 0.0:
        return point_mass(0)
    lo, hi = _poisson_window(omega)
    k = np.arange(lo, hi + 1, dtype=np.float64)
    log_pmf = xlogy(k, omega) - omega - gammaln(k + 1.0)
    return DiscreteDist(lo, np.exp(log_pmf))


def convolve(a: DiscreteDist, b: DiscreteDist) -> DiscreteDist:
    """Distribution of the sum of independent draws from a and b.

    Small supports use the direct O(n*m) product sum; large ones switch to
    an FFT path whose rounding noise is clipped at zero. The two paths
    agree to better than 1e-12 per bin.
    """
    if max(a.masses.size, b.masses.size) <= DIRECT_CONV_LIMIT:
        out = np.convolve(a.masses, b.masses)
    else:
        out = signal.fftconvolve(a.masses, b.masses)
        np.maximum(out, 0.0, out=out)
    return DiscreteDist(a.offset + b.offset, out)


def n_fold_convolve(d: DiscreteDist, n: int) -> DiscreteDist:
    """d convolved with itself n times, by exponentiation by squaring.

    n = 0 yields the empty convolution, a point mass at zero.
    """
    if n != int(n) or n < 0:
        raise DomainError(f"fold count must be a non-negative integer, got {n}")
    n = int(n)
    if n == 0:
        return point_mass(0)
    result: DiscreteDist | None = None
    base = d
    while n:
        if n & 1:
            result = base if result is None else convolve(result, base)
        n >>= 1
        if n:
            base = convolve(base, base)
    assert result is not None
    return result


def moments(d: DiscreteDist) -> tuple[float, float]:
    """Mean and variance as exact weighted sums over the stored support."""
    k = d.support.astype(np.float64)
    mean = float(k @ d.masses)
    var = float(((k - mean) ** 2) @ d.masses)
    return mean, var


def tail_ge(d: DiscreteDist, eta: float) -> float:
    """Probability of a count at or above the threshold eta.

    A non-integer threshold rounds up, so the sum runs over k >= ceil(eta);
    an integer threshold keeps k >= eta itself.
    """
    i0 = math.ceil(eta) - d.offset
    if i0 <= 0:
        return float(d.masses.sum())
    if i0 >= d.masses.size:
        return 0.0
    return float(d.masses[i0:].sum())


def _window(d: DiscreteDist, lo: int, hi: int) -> np.ndarray:
    """Masses of d laid out on the window [lo, hi], zero-padded."""
    out = np.zeros(hi - lo + 1)
    out[d.offset - lo : d.offset - lo + d.masses.size] = d.masses
    return out


def tv_distance(a: DiscreteDist, b: DiscreteDist) -> float:
    """Total variation distance, half the L1 gap on the union support."""
    lo = min(a.offset, b.offset)
    hi = max(a.k_max, b.k_max)
    diff = _window(a, lo, hi) - _window(b, lo, hi)
    return min(1.0, 0.5 * float(np.abs(diff).sum()))


def mixture(dists: list[DiscreteDist] | tuple[DiscreteDist, ...], weights) -> DiscreteDist:
    """Weighted mixture on the union support.

    Weights must be non-negative; any shortfall from one (dropped mixture
    terms, component truncation) shows up in the truncation_loss of the
    result.
    """
    dists = list(dists)
    weights = np.asarray(weights, dtype=np.float64)
    if len(dists) == 0 or weights.shape != (len(dists),):
        raise DomainError("mixture needs one weight per component")
    if np.any(weights < 0.0) or not np.all(np.isfinite(weights)):
        raise DomainError("mixture weights must be finite and non-negative")
    lo = min(d.offset for d in dists)
    hi = max(d.k_max for d in dists)
    acc = np.zeros(hi - lo + 1)
    for d, w in zip(dists, weights):
        acc[d.offset - lo : d.offset - lo + d.masses.size] += w * d.masses
    return DiscreteDist(lo, acc)
