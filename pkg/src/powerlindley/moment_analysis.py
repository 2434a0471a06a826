"""Characteristic-function classification and moment determinacy.

The classification depends only on the shape parameter: the characteristic
function is entire of order a/(a-1) for a > 1, analytic on (-beta, beta)
for a = 1, and not analytic at zero for a < 1 (the heavy-tailed regime).
The distribution is moment-determinate exactly when a >= 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import pl_log_moment
from .errors import DomainError

__all__ = [
    "AnalyticityReport",
    "analyze",
    "lindley_cf",
    "lin_function",
    "lin_derivative",
    "moment_growth_exponent",
]


@dataclass(frozen=True)
class AnalyticityReport:
    cf_class: str                            # entire | analytic-on-interval | not-analytic-at-0
    order: float | None                      # growth order, entire case only
    type: float | None                       # growth type, entire case only
    mgf_interval: tuple[float, float] | None  # None means the MGF does not exist
    determinate: bool
    heavy_tailed: bool


def analyze(p):
    """Classify analyticity, MGF existence, and moment determinacy."""
    a, b = p.alpha, p.beta
    if a > 1.0:
        order = a / (a - 1.0)
        gtype = (a - 1.0) / a * (a * b) ** (-1.0 / (a - 1.0))
        return AnalyticityReport("entire", order, gtype,
                                 (-math.inf, math.inf), True, False)
    if a == 1.0:
        return AnalyticityReport("analytic-on-interval", None, None,
                                 (-b, b), True, False)
    return AnalyticityReport("not-analytic-at-0", None, None, None,
                             a >= 0.5, True)


def lindley_cf(beta, t):
    """Characteristic function of the Lindley(beta) law at real t."""
    if not beta > 0.0:
        raise DomainError("beta must be positive")
    it = 1j * t
    return beta * beta * (beta + 1.0 - it) / ((beta + 1.0) * (beta - it) ** 2)


def _as_positive_array(x):
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr)
    if not (flat > 0.0).all():
        raise DomainError("x must be positive")
    return arr, flat


def lin_function(p, x):
    """-x f'(x)/f(x), simplified: -(a-1) - a x^a/(1+x^a) + a b x^a."""
    arr, flat = _as_positive_array(x)
    a, b = p.alpha, p.beta
    t = flat ** a
    vals = -(a - 1.0) - a * t / (1.0 + t) + a * b * t
    return float(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def lin_derivative(p, x):
    """Exact derivative of lin_function: a^2 x^(a-1) (b - (1+x^a)^-2)."""
    arr, flat = _as_positive_array(x)
    a, b = p.alpha, p.beta
    t = flat ** a
    vals = a * a * flat ** (a - 1.0) * (b - (1.0 + t) ** -2)
    return float(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def moment_growth_exponent(p, K):
    """Growth rate of log m_k per k*log(k), estimated over k in [K/2, K].

    For PL(a, b) the estimate converges to 1/a. The regression includes a
    linear-in-k nuisance term that absorbs the Stirling correction; without
    it the estimate is biased by several percent at K = 200.
    """
    if K < 10:
        raise DomainError("K must be at least 10")
    ks = np.arange(K // 2, K + 1, dtype=float)
    y = np.array([pl_log_moment(p, int(k)) for k in ks])
    design = np.column_stack([ks * np.log(ks), ks, np.ones_like(ks)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[0])
