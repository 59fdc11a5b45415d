"""Photon-count statistics for a bright emitter that can fall dark mid-window.

A qubit that starts bright emits photons at rate mu1 until an exponential
decay event of rate lam, after which it emits at the dark rate mu0 for the
rest of the counting window. Conditioned on the decay time the count is
Poisson, so the overall law is a Poisson mixture: a weight exp(-lam*t) on
a pure Poisson with mean mu1*t, plus an integral over decay times of
Poisson laws whose mean interpolates from mu0*t up to mu1*t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy

from .dist import DiscreteDist, DomainError, RateParams, point_mass, _poisson_window
from .quadrature import integrate_family

__all__ = ["DecayModelParams", "decaying_poisson", "decaying_poisson_moments"]


@dataclass(frozen=True)
class DecayModelParams:
    """Rates plus the counting window length t in ms."""

    rates: RateParams
    t: float

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        if not isinstance(self.rates, RateParams):
            raise DomainError("rates must be a RateParams instance")
        if not math.isfinite(self.t) or self.t < 0.0:
            raise DomainError(f"window length must be finite and non-negative, got {self.t}")


def _decay_seed_points(lam: float, t: float):
    # A coarse uniform pass cannot see an exponential factor that dies on a
    # scale 1/lam much shorter than t, so pre-split geometrically from well
    # inside that scale.
    if lam <= 0.0:
        return ()
    pts = [t * i / 8.0 for i in range(1, 8)]
    s = min(t, 1.0 / lam) / 64.0
    while s < t:
        pts.append(s)
        s *= 2.0
    return pts


def decaying_poisson(
    params: DecayModelParams, *, rel_tol: float = 1e-10, max_panels: int = 4096
) -> DiscreteDist:
    """Exact count law for one initially bright qubit over a window t.

    The support is the union of the windows that hold all but ~1e-12 of
    the mass of the two extreme Poisson laws (means mu0*t and mu1*t),
    which covers every mixture component. The decay-time integral is done
    by adaptive panel quadrature with a per-count relative tolerance of
    rel_tol, one shared subdivision for all counts.
    """
    rates, t = params.rates, params.t
    mu0, mu1, lam = rates.mu0, rates.mu1, rates.lam
    if mu1 * t == 0.0:
        return point_mass(0)
    lo = 0 if mu0 * t == 0.0 else _poisson_window(mu0 * t)[0]
    hi = _poisson_window(mu1 * t)[1]
    k = np.arange(lo, hi + 1, dtype=np.float64)
    log_fact = gammaln(k + 1.0)
    m1 = mu1 * t
    masses = np.exp(-lam * t - m1 + xlogy(k, m1) - log_fact)
    if lam > 0.0:

        def integrand(tp):
            m = mu0 * t + (mu1 - mu0) * tp
            amp = lam * np.exp(-lam * tp)
            log_pois = xlogy(k[:, None], m[None, :]) - m[None, :] - log_fact[:, None]
            return amp[None, :] * np.exp(log_pois)

        masses = masses + integrate_family(
            integrand,
            0.0,
            t,
            rel_tol=rel_tol,
            seed_points=_decay_seed_points(lam, t),
            max_panels=max_panels,
        )
    return DiscreteDist(lo, masses)


def decaying_poisson_moments(
    params: DecayModelParams, *, rel_tol: float = 1e-10
) -> tuple[float, float]:
    """Mean and variance of the count law without building the pmf.

    The decay time acts as a mixing variable over Poisson means M, so
    mean = E[M] and var = E[M] + Var[M]. Both expectations over M are
    one-dimensional quadratures, which keeps this cheap enough for tight
    optimisation loops at any window length.
    """
    rates, t = params.rates, params.t
    mu0, mu1, lam = rates.mu0, rates.mu1, rates.lam
    m1 = mu1 * t
    if lam == 0.0 or t == 0.0:
        return m1, m1
    stay = math.exp(-lam * t)

    def integrand(tp):
        m = mu0 * t + (mu1 - mu0) * tp
        amp = lam * np.exp(-lam * tp)
        return np.stack((amp * m, amp * m * m))

    i1, i2 = integrate_family(
        integrand,
        0.0,
        t,
        rel_tol=rel_tol,
        seed_points=_decay_seed_points(lam, t),
    )
    e1 = stay * m1 + float(i1)
    e2 = stay * m1 * m1 + float(i2)
    return e1, e1 + e2 - e1 * e1
