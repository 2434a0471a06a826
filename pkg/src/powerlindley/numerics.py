"""Shared numerical kernels.

Adaptive Gauss-Kronrod quadrature on (0, inf) with oscillation-aware
splitting, bracketed scalar root finding, and a derivative-free minimizer
over a pair of positive parameters. All functions are pure and safe to call
concurrently.
"""
from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import optimize as _opt

from .errors import AccuracyError, BracketError, DomainError, OptimizationError

__all__ = [
    "QuadratureSpec",
    "RootBracket",
    "MinimizeResult",
    "log_gamma",
    "integrate_semi_infinite",
    "find_root",
    "minimize_2d",
]


def _env_rel_tol():
    # PLFIT_QUAD_RTOL overrides the default relative quadrature tolerance
    return float(os.environ.get("PLFIT_QUAD_RTOL", "1e-10"))


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for semi-infinite quadrature."""

    rel_tol: float = field(default_factory=_env_rel_tol)
    abs_tol: float = 1e-14
    max_subdivisions: int = 10000
    tail_cutoff: float = 1e-300

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0 and self.tail_cutoff > 0.0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    tol: float = 1e-12

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError("bracket requires lo < hi")
        if not self.tol > 0.0:
            raise DomainError("bracket tolerance must be positive")


class MinimizeResult(NamedTuple):
    point: tuple[float, float]
    value: float
    converged: bool
    iterations: int


def log_gamma(x):
    """Natural log of the gamma function for x > 0."""
    if not x > 0.0:
        raise DomainError("log_gamma requires x > 0")
    return math.lgamma(x)


# 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 ascending nodes
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])              # Kronrod weights
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])             # Gauss nodes within the 15
_GW = np.concatenate([_WG[:-1], _WG[::-1]])                # Gauss weights
_EPS = np.finfo(float).eps


def _gk_batch(fvec, a, b):
    """Apply the 15-point rule to panels [a_i, b_i] in one vector call.

    Returns (integral, error_estimate, integral_of_abs) per panel; the error
    estimate follows the QUADPACK sharpening of |K15 - G7|.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    pts = c[:, None] + h[:, None] * _NODES[None, :]
    fv = fvec(pts.ravel()).reshape(pts.shape)
    resk = h * (fv @ _KW)
    resg = h * (fv[:, _GAUSS_IDX] @ _GW)
    resabs = np.abs(h) * (np.abs(fv) @ _KW)
    mean = resk / (b - a)
    resasc = np.abs(h) * (np.abs(fv - mean[:, None]) @ _KW)
    err = np.abs(resk - resg)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    use = (resasc > 0.0) & (err > 0.0) & np.isfinite(scaled)
    err = np.where(use, scaled, err)
    err = np.maximum(err, 50.0 * _EPS * resabs)
    return resk, err, resabs


def _adaptive_finite(fvec, a, b, rel_tol, abs_tol, budget):
    """Adaptive bisection with batched panel evaluation on [a, b].

    `budget` is a single-element list holding the remaining subdivision
    count, shared across calls. Returns (integral, error, integral_of_abs,
    converged).
    """
    i0, e0, r0 = _gk_batch(fvec, [a], [b])
    heap = [(-e0[0], a, b, i0[0], e0[0], r0[0])]
    while True:
        total_i = math.fsum(s[3] for s in heap)
        total_e = math.fsum(s[4] for s in heap)
        total_r = math.fsum(s[5] for s in heap)
        target = max(abs_tol, rel_tol * total_r)
        if total_e <= target:
            return total_i, total_e, total_r, True
        if budget[0] <= 0:
            return total_i, total_e, total_r, False
        k = min(32, len(heap), budget[0])
        worst = [heapq.heappop(heap) for _ in range(k)]
        budget[0] -= k
        los, his = [], []
        for _, wa, wb, _, _, _ in worst:
            mid = 0.5 * (wa + wb)
            los.extend([wa, mid])
            his.extend([mid, wb])
        ci, ce, cr = _gk_batch(fvec, los, his)
        for j in range(len(los)):
            heapq.heappush(heap, (-ce[j], los[j], his[j], ci[j], ce[j], cr[j]))


def _origin_mapped(fvec, width):
    """Integrand for a panel [0, width] under x = width * s^8, s in (0, 1].

    The power map absorbs integrable endpoint singularities such as the
    x^(alpha-1) factor of the density for alpha < 1.
    """
    def g(s):
        return 8.0 * width * s ** 7 * fvec(width * s ** 8)

    return g


def _integrate_windows(fvec, spec, budget):
    """Doubling windows [0,1], [1,2], [2,4], ... until the tail is dead."""
    results = []   # (integral, error, resabs) per window
    g0 = _origin_mapped(fvec, 1.0)
    i0, e0, r0, ok = _adaptive_finite(g0, 0.0, 1.0, spec.rel_tol, 0.25 * spec.abs_tol, budget)
    results.append((i0, e0, r0))
    if not ok:
        raise AccuracyError("quadrature budget exhausted near the origin", i0, e0)
    lo, width = 1.0, 1.0
    quiet = 0
    while quiet < 3:
        hi = lo + width
        iw, ew, rw, ok = _adaptive_finite(fvec, lo, hi, spec.rel_tol, 0.25 * spec.abs_tol, budget)
        results.append((iw, ew, rw))
        total_i = math.fsum(r[0] for r in results)
        total_r = math.fsum(r[2] for r in results)
        if not ok:
            total_e = math.fsum(r[1] for r in results)
            raise AccuracyError("quadrature budget exhausted", total_i, total_e)
        dead = rw <= spec.tail_cutoff * max(width, 1.0)
        small = abs(iw) + ew <= 0.25 * max(spec.abs_tol, spec.rel_tol * total_r)
        quiet = quiet + 1 if (dead or small) else 0
        lo, width = hi, 2.0 * width
        if lo > 8.9e307:
            break
    total_i = math.fsum(r[0] for r in results)
    total_e = math.fsum(r[1] for r in results)
    total_r = math.fsum(r[2] for r in results)
    if total_e > 4.0 * max(spec.abs_tol, spec.rel_tol * total_r):
        raise AccuracyError("quadrature tolerance not met", total_i, total_e)
    return total_i


def _euler_accelerated(partials):
    """Iterated averaging of the trailing partial sums of an alternating tail."""
    arr = np.array(partials, dtype=float)
    while arr.size > 1:
        arr = 0.5 * (arr[1:] + arr[:-1])
    return float(arr[0])


def _integrate_oscillatory(fvec, spec, period, budget):
    """Half-period panels aligned to the sign-change spacing of the integrand.

    Consecutive panel integrals of an oscillation with a smooth envelope
    alternate in sign, so the partial sums are accelerated by iterated
    averaging before truncation.
    """
    h = 0.5 * period
    panel_abs = 0.25 * spec.abs_tol
    panel_rel = min(spec.rel_tol, 1e-12)
    values, errors, resabss = [], [], []
    n = 0
    quiet = 0
    while quiet < 4 or n < 8:
        if budget[0] <= 0:
            est = math.fsum(values)
            raise AccuracyError("quadrature budget exhausted",
                                est, math.fsum(errors) + (abs(values[-1]) if values else 0.0))
        a, b = n * h, (n + 1) * h
        g = _origin_mapped(fvec, h) if n == 0 else fvec
        ga, gb = (0.0, 1.0) if n == 0 else (a, b)
        iw, ew, rw, ok = _adaptive_finite(g, ga, gb, panel_rel, panel_abs, budget)
        if not ok:
            est = math.fsum(values) + iw
            raise AccuracyError("quadrature budget exhausted",
                                est, math.fsum(errors) + ew + abs(iw))
        values.append(iw)
        errors.append(ew)
        resabss.append(rw)
        total_r = math.fsum(resabss)
        tol = max(spec.abs_tol, spec.rel_tol * total_r)
        dead = rw <= spec.tail_cutoff * max(h, 1.0)
        small = abs(iw) + ew <= 0.125 * tol
        quiet = quiet + 1 if (dead or small) else 0
        n += 1
        if n > 4 * spec.max_subdivisions:
            break

    plain = math.fsum(values)
    estimate = plain
    trunc = abs(values[-1])
    tail = values[-10:]
    if len(tail) >= 4 and all(tail[i] * tail[i + 1] < 0.0 for i in range(len(tail) - 1)):
        partials = np.cumsum(values)[-len(tail):]
        accel = _euler_accelerated(partials)
        # adopt the accelerated value only when it agrees with the plain sum
        # within the truncation bound; for an already-converged tail the
        # window average would otherwise drag in older partial sums
        if math.isfinite(accel) and abs(accel - plain) <= trunc:
            estimate = accel
    total_e = math.fsum(errors) + trunc
    total_r = math.fsum(resabss)
    if total_e > 4.0 * max(spec.abs_tol, spec.rel_tol * total_r):
        raise AccuracyError("quadrature tolerance not met", estimate, total_e)
    return estimate


def _ensure_vectorized(f):
    """Accept integrands written for scalars or for arrays."""
    probe = np.array([0.6180339887498949, 1.2360679774997896])
    try:
        out = np.asarray(f(probe), dtype=float)
        if out.shape == probe.shape:
            return f
    except Exception:
        pass

    def fv(x):
        return np.fromiter((f(float(v)) for v in x), dtype=float, count=len(x))

    return fv


def integrate_semi_infinite(f, spec=None, oscillation_period=None):
    """Integrate f over (0, inf).

    Parameters
    ----------
    f:
        Integrand; may accept a float or a float64 array.
    spec:
        QuadratureSpec; defaults honor the PLFIT_QUAD_RTOL environment
        override. The result satisfies |I - true| <= max(abs_tol,
        rel_tol * integral of |f|).
    oscillation_period:
        Full period of an oscillatory factor of f. When given, subdivision
        is aligned to consecutive sign-change intervals (half periods) and
        the alternating partial sums are accelerated; this is required for
        integrals whose value is tiny relative to the integral of |f|.

    Raises
    ------
    AccuracyError
        When the tolerance cannot be met within max_subdivisions; carries
        the best estimate and its error bound.
    """
    if spec is None:
        spec = QuadratureSpec()
    fvec = _ensure_vectorized(f)
    budget = [spec.max_subdivisions]
    if oscillation_period is not None:
        if not oscillation_period > 0.0:
            raise DomainError("oscillation_period must be positive")
        return _integrate_oscillatory(fvec, spec, oscillation_period, budget)
    return _integrate_windows(fvec, spec, budget)


def find_root(f, bracket):
    """Locate the root of f inside a sign-changing bracket.

    The result is bracketed to a width of at most bracket.tol.
    """
    flo = f(bracket.lo)
    fhi = f(bracket.hi)
    if math.isnan(flo) or math.isnan(fhi):
        raise BracketError("function is NaN at a bracket endpoint")
    if flo == 0.0:
        return float(bracket.lo)
    if fhi == 0.0:
        return float(bracket.hi)
    if flo * fhi > 0.0:
        raise BracketError("no sign change on the bracket")
    return float(_opt.brentq(f, bracket.lo, bracket.hi,
                             xtol=bracket.tol, maxiter=200))


def minimize_2d(objective, start, *, max_iterations=5000, diameter_tol=1e-10):
    """Minimize a function of two positive reals, derivative-free.

    The search runs in log-parameter space so positivity is maintained, and
    converges when the simplex diameter in log space drops below
    diameter_tol. Non-finite objective values are rejected (treated as
    +inf); a long run of them aborts with OptimizationError. The result's
    `converged` flag is False when the iteration cap was hit instead.
    """
    a0, b0 = float(start[0]), float(start[1])
    if not (a0 > 0.0 and b0 > 0.0):
        raise DomainError("start point must be positive")
    z0 = np.log([a0, b0])
    streak = [0]

    def wrapped(z):
        if not np.all(np.isfinite(z)):
            return math.inf
        try:
            v = float(objective(math.exp(z[0]), math.exp(z[1])))
        except (OverflowError, ZeroDivisionError, FloatingPointError):
            v = math.inf
        if not math.isfinite(v):
            streak[0] += 1
            if streak[0] > 100:
                raise OptimizationError("objective persistently non-finite")
            return math.inf
        streak[0] = 0
        return v

    if not math.isfinite(wrapped(z0)):
        raise OptimizationError("objective non-finite at the start point")
    sim = np.array([z0, z0 + np.array([0.25, 0.0]), z0 + np.array([0.0, 0.25])])
    res = _opt.minimize(
        wrapped, z0, method="Nelder-Mead",
        options={
            "initial_simplex": sim,
            "xatol": diameter_tol,
            "fatol": math.inf,
            "maxiter": max_iterations,
            "maxfev": 8 * max_iterations,
            "adaptive": False,
        },
    )
    if not math.isfinite(res.fun):
        raise OptimizationError("minimizer ended on a non-finite value")
    point = (math.exp(res.x[0]), math.exp(res.x[1]))
    return MinimizeResult(point, float(res.fun), bool(res.success), int(res.nit))
