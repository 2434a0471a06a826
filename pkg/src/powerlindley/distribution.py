"""The power Lindley distribution and the Weibull comparison baseline.

PL(alpha, beta) is the law of a Lindley(beta) variable raised to the power
1/alpha, with density

    alpha * beta^2 / (beta + 1) * (1 + x^alpha) * x^(alpha-1) * exp(-beta * x^alpha)

on x > 0. Closed forms are used for the survival function and the raw
moments; the quantile inverts the survival function numerically; sampling
uses the exponential/Erlang mixture representation of the Lindley law with
mixing proportion beta / (beta + 1).

Evaluation functions accept a float or an ndarray and return the matching
kind. Everything here is pure except pl_sample, which advances only the
RandomSource it is given.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kern
from .errors import DomainError
from .numerics import RootBracket, find_root, log_gamma

__all__ = [
    "PLParams",
    "WeibullParams",
    "RandomSource",
    "pl_pdf",
    "pl_log_pdf",
    "pl_survival",
    "pl_cdf",
    "pl_hazard",
    "pl_quantile",
    "pl_moment",
    "pl_log_moment",
    "pl_mean",
    "pl_variance",
    "pl_sample",
    "weibull_pdf",
    "weibull_cdf",
    "weibull_mean",
    "weibull_median",
]


@dataclass(frozen=True)
class PLParams:
    """Shape alpha and rate beta, both positive."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0.0 and self.beta > 0.0):
            raise DomainError("power Lindley parameters must be positive")


@dataclass(frozen=True)
class WeibullParams:
    """Shape-scale Weibull: cdf 1 - exp(-(x/scale)^shape)."""

    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0.0 and self.scale > 0.0):
            raise DomainError("Weibull parameters must be positive")


class RandomSource:
    """Deterministic random stream: identical seeds give identical samples."""

    def __init__(self, seed):
        self._rng = np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)

    @property
    def generator(self):
        return self._rng


def _dispatch(values, x):
    arr = np.asarray(x, dtype=float)
    return float(values[0]) if arr.ndim == 0 else values.reshape(arr.shape)


def _require_positive(x):
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        if not arr > 0.0:
            raise DomainError("x must be positive")
    elif not (arr > 0.0).all():
        raise DomainError("x must be positive")
    return arr


def pl_pdf(p, x):
    """Density at x; 0 for x <= 0.

    For alpha < 1 the density is unbounded as x -> 0+; the value at exactly
    zero is 0 by the support convention (use pl_log_pdf near the
    singularity).
    """
    return _dispatch(kern.pl_pdf(p.alpha, p.beta, x), x)


def pl_log_pdf(p, x):
    """Log-density for x > 0; stays finite where pl_pdf underflows."""
    arr = _require_positive(x)
    return _dispatch(kern.pl_log_pdf(p.alpha, p.beta, arr), x)


def pl_survival(p, x):
    """Survival function (1 + beta x^a / (beta+1)) exp(-beta x^a); 1 for x <= 0."""
    return _dispatch(kern.pl_survival(p.alpha, p.beta, x), x)


def pl_cdf(p, x):
    arr = np.asarray(x, dtype=float)
    vals = 1.0 - kern.pl_survival(p.alpha, p.beta, arr)
    return _dispatch(vals, x)


def pl_hazard(p, x):
    """Failure rate pdf/survival, built in log space so the far tail stays finite."""
    arr = _require_positive(x)
    a, b = p.alpha, p.beta
    flat = np.atleast_1d(arr).astype(float)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        lx = np.log(flat)
        t = np.exp(a * lx)
        # the exp(-beta t) factors of pdf and survival cancel exactly
        diff = np.where(np.isfinite(t),
                        np.log1p(t) - np.log1p(b * t / (b + 1.0)),
                        math.log((b + 1.0) / b))
        lh = math.log(a * b * b / (b + 1.0)) + diff + (a - 1.0) * lx
        vals = np.exp(lh)
    return _dispatch(vals, x)


def pl_quantile(p, u):
    """Value x with pl_cdf(p, x) = u, for 0 < u < 1.

    Inverts the survival function with a bracketed root search (bracket
    width 1e-12); the bracket is grown automatically.
    """
    if not 0.0 < u < 1.0:
        raise DomainError("quantile level must be in (0, 1)")
    s0 = 1.0 - u

    def g(x):
        return pl_survival(p, x) - s0

    hi = 1.0
    while pl_survival(p, hi) > s0:
        hi *= 2.0
    return find_root(g, RootBracket(0.0, hi, tol=1e-12))


def pl_log_moment(p, k):
    """Log of the k-th raw moment, exact in log space for large k."""
    if k < 1 or k != int(k):
        raise DomainError("moment order must be a positive integer")
    a, b = p.alpha, p.beta
    return (math.log(k) + log_gamma(k / a) + math.log(k + a * (b + 1.0))
            - (k / a) * math.log(b) - math.log(a * a * (b + 1.0)))


def pl_moment(p, k):
    """k-th raw moment k * Gamma(k/a) * (a*(b+1) + k) / (a^2 * b^(k/a) * (b+1)).

    Raises OverflowError when the moment exceeds the float range even though
    its log does not; use pl_log_moment then.
    """
    lm = pl_log_moment(p, k)
    if lm > 709.0:
        raise OverflowError(
            f"moment of order {k} overflows a float; use pl_log_moment")
    return math.exp(lm)


def pl_mean(p):
    return pl_moment(p, 1)


def pl_variance(p):
    m1 = pl_moment(p, 1)
    return pl_moment(p, 2) - m1 * m1


def pl_sample(p, n, rng):
    """Draw n i.i.d. values.

    A Lindley(beta) draw is an exponential(rate beta) with probability
    beta/(beta+1) and a two-stage Erlang(rate beta) otherwise; the power
    transform draw^(1/alpha) then yields PL(alpha, beta). Three variates per
    draw are consumed regardless of the mixture branch, so the stream layout
    is reproducible.
    """
    if n < 1:
        raise DomainError("sample size must be at least 1")
    g = rng.generator
    pick = g.random(n) < p.beta / (p.beta + 1.0)
    e1 = g.exponential(1.0 / p.beta, n)
    e2 = g.exponential(1.0 / p.beta, n)
    lindley = e1 + np.where(pick, 0.0, e2)
    return lindley ** (1.0 / p.alpha)


def weibull_pdf(w, x):
    """Density (k/s) (x/s)^(k-1) exp(-(x/s)^k); 0 for x <= 0."""
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr).astype(float)
    out = np.zeros_like(flat)
    pos = flat > 0.0
    z = flat[pos] / w.scale
    with np.errstate(over="ignore", under="ignore"):
        out[pos] = w.shape / w.scale * z ** (w.shape - 1.0) * np.exp(-z ** w.shape)
    out[~np.isfinite(out)] = 0.0
    return _dispatch(out, x)


def weibull_cdf(w, x):
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr).astype(float)
    out = np.zeros_like(flat)
    pos = flat > 0.0
    with np.errstate(over="ignore", under="ignore"):
        out[pos] = -np.expm1(-((flat[pos] / w.scale) ** w.shape))
    return _dispatch(out, x)


def weibull_mean(w):
    return w.scale * math.exp(log_gamma(1.0 + 1.0 / w.shape))


def weibull_median(w):
    return w.scale * math.log(2.0) ** (1.0 / w.shape)
