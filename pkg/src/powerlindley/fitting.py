"""Least-squares fitting of frequency tables to power Lindley and Weibull models.

Observed frequencies (typically percentages) are normalized to weights; a
model is fit by minimizing a sum of squared residuals under one of three
objectives. The default, binned-mass, compares weights against the
probability mass the model assigns to bins whose edges sit midway between
consecutive observed values (first edge 0, last edge infinity); the two
pdf-based objectives evaluate the density at the observed values or at
shifted values, which is how continuous densities are often matched to
discrete data even though the evaluation points are a modeling choice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import (
    PLParams,
    WeibullParams,
    pl_cdf,
    pl_mean,
    pl_pdf,
    pl_quantile,
    weibull_cdf,
    weibull_mean,
    weibull_median,
    weibull_pdf,
)
from .errors import DomainError, FitError, OptimizationError
from .numerics import minimize_2d

__all__ = [
    "FrequencyTable",
    "FitObjective",
    "FitReport",
    "MODELS",
    "normalize_table",
    "sample_mean",
    "objective_error",
    "fit",
]

MODELS = ("power-lindley", "weibull")
_DEFAULT_STARTS = ((0.5, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 3.0))


@dataclass(frozen=True)
class FrequencyTable:
    """Observed (value, frequency) pairs; values strictly increasing."""

    rows: tuple
    name: str = ""

    def __post_init__(self):
        rows = tuple((float(v), float(f)) for v, f in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) < 2:
            raise DomainError("a frequency table needs at least 2 rows")
        values = [v for v, _ in rows]
        if any(v < 0.0 for v in values):
            raise DomainError("values must be nonnegative")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise DomainError("values must be strictly increasing")
        if any(f < 0.0 for _, f in rows):
            raise DomainError("frequencies must be nonnegative")
        if not sum(f for _, f in rows) > 0.0:
            raise DomainError("total frequency must be positive")

    @property
    def values(self):
        return np.array([v for v, _ in self.rows])

    @property
    def frequencies(self):
        return np.array([f for _, f in self.rows])


def normalize_table(table):
    """Weights f_i / sum(f); they sum to one."""
    f = table.frequencies
    return f / f.sum()


def sample_mean(table):
    """Weighted mean of the observed values."""
    return float(np.dot(normalize_table(table), table.values))


@dataclass(frozen=True)
class FitObjective:
    """Residual definition for the least-squares criterion.

    kind is one of 'binned-mass', 'pdf-at-values', 'pdf-at-shifted'.
    zero_handling decides whether a row at value 0 participates under
    pdf-at-values (the density at 0 is 0 by the support convention).
    """

    kind: str = "binned-mass"
    shift: float = 0.5
    zero_handling: str = "include"

    def __post_init__(self):
        if self.kind not in ("binned-mass", "pdf-at-values", "pdf-at-shifted"):
            raise DomainError(f"unknown objective kind {self.kind!r}")
        if self.kind == "pdf-at-shifted" and not self.shift > 0.0:
            raise DomainError("shift must be positive")
        if self.zero_handling not in ("include", "exclude"):
            raise DomainError(f"unknown zero handling {self.zero_handling!r}")


def _as_params(model, params):
    if model == "power-lindley":
        return params if isinstance(params, PLParams) else PLParams(*params)
    if model == "weibull":
        return params if isinstance(params, WeibullParams) else WeibullParams(*params)
    raise DomainError(f"unknown model {model!r}")


def _pdf(model, params, x):
    return pl_pdf(params, x) if model == "power-lindley" else weibull_pdf(params, x)


def _cdf(model, params, x):
    return pl_cdf(params, x) if model == "power-lindley" else weibull_cdf(params, x)


def objective_error(model, params, table, objective=FitObjective()):
    """Sum of squared residuals of the model against the table weights."""
    params = _as_params(model, params)
    w = normalize_table(table)
    v = table.values
    if objective.kind == "binned-mass":
        edges = np.concatenate([[0.0], 0.5 * (v[:-1] + v[1:])])
        cdf_vals = np.append(_cdf(model, params, edges), 1.0)
        masses = np.diff(cdf_vals)
        resid = w - masses
    elif objective.kind == "pdf-at-values":
        keep = np.ones(len(v), dtype=bool)
        if objective.zero_handling == "exclude":
            keep = v > 0.0
        resid = w[keep] - _pdf(model, params, v[keep])
    else:
        resid = w - _pdf(model, params, v + objective.shift)
    return float(np.dot(resid, resid))


@dataclass(frozen=True)
class FitReport:
    """One row of a fit summary table."""

    model: str
    params: object
    objective: FitObjective
    error: float
    mean: float
    median: float
    sample_mean: float
    mean_gap: float


def fit(table, model, objective=FitObjective(), start=None):
    """Fit a model to a table by least squares.

    Runs the derivative-free minimizer from a deterministic multi-start set
    (or the single given start) and keeps the best result. Report moments
    come from the distribution module's closed forms.
    """
    if model not in MODELS:
        raise DomainError(f"unknown model {model!r}")
    starts = [tuple(start)] if start is not None else list(_DEFAULT_STARTS)

    def objective_fn(a, b):
        try:
            return objective_error(model, (a, b), table, objective)
        except DomainError:
            return math.inf

    best = None
    failures = []
    for s in starts:
        try:
            res = minimize_2d(objective_fn, s)
        except (OptimizationError, DomainError) as exc:
            failures.append(f"start {s}: {exc}")
            continue
        if best is None or res.value < best.value:
            best = res
    if best is None:
        raise FitError("all optimizer starts failed: " + "; ".join(failures))

    params = _as_params(model, best.point)
    if model == "power-lindley":
        mean = pl_mean(params)
        median = pl_quantile(params, 0.5)
    else:
        mean = weibull_mean(params)
        median = weibull_median(params)
    xbar = sample_mean(table)
    return FitReport(model, params, objective, best.value, mean, median,
                     xbar, abs(xbar - mean))
