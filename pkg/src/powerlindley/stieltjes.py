"""Perturbation families and Stieltjes classes for the heavy-tailed regime.

For alpha < 1/2 the power Lindley distribution is moment-indeterminate and
admits bounded perturbations h, sup|h| = 1, with integral x^k f(x) h(x) dx
equal to zero for every k >= 0. The family f * (1 + eps * h), eps in
[-1, 1], is then an infinite set of distinct densities sharing all moments
of f. Three families are provided:

* H1: damped oscillation sin(2 beta x^a tan(pi a)) under the envelope
  x^(1-a) (1+x^a)^-1 exp(-beta x^a);
* H2: exponentially tilted oscillation sin(b x^g tan(pi g)) with free
  parameters b > 0 and g in (alpha, 1/2), envelope
  x^(1-a) (1+x^a)^-1 exp(beta x^a - b x^g);
* H3: an undamped pair of phase-shifted oscillations under the rational
  envelope (1+x^a)^-1, whose sup equals 1 only in the x -> infinity limit.

Normalization constants are computed numerically and deflated by 1e-9 so
that f * (1 +/- h) stays nonnegative despite sup-estimation error.

The vanishing-moment check integrates in the substituted variable u = x^a
(u = x^g for H2), where every product x^k f h becomes a damped sinusoid
u^(p-1) exp(-q u) sin(w u + phase) with constant frequency, the form whose
closed-form integral gr_sine_integral/gr_cosine_integral serve as oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels as kern
from .distribution import PLParams, pl_moment
from .errors import AccuracyError, DomainError, NormalizationError
from .numerics import QuadratureSpec, integrate_semi_infinite, log_gamma

__all__ = [
    "PerturbationSpec",
    "StieltjesMember",
    "perturbation",
    "normalize",
    "perturbation_value",
    "stieltjes_density",
    "verify_vanishing_moments",
    "gr_sine_integral",
    "gr_cosine_integral",
    "density_cutoff",
]

_DEFLATION = 1.0 - 1e-9
_FAMILIES = {"H1": 1, "H2": 2, "H3": 3}


@dataclass(frozen=True)
class PerturbationSpec:
    """Selection and parameters of one perturbation family.

    `gamma` defaults to the midpoint (alpha + 1/2) / 2 of its admissible
    interval; `b` and `gamma` only matter for H2. `M` is the unit-sup
    normalization constant, filled in by normalize().
    """

    which: str
    params: PLParams
    b: float = 1.0
    gamma: float | None = None
    M: float | None = None

    def __post_init__(self):
        if self.which not in _FAMILIES:
            raise DomainError("family must be one of H1, H2, H3")
        if not self.params.alpha < 0.5:
            raise DomainError("perturbations require alpha < 1/2")
        if self.gamma is None:
            object.__setattr__(self, "gamma", (self.params.alpha + 0.5) / 2.0)
        if self.which == "H2":
            if not self.params.alpha < self.gamma < 0.5:
                raise DomainError("gamma must lie in (alpha, 1/2)")
            if not self.b > 0.0:
                raise DomainError("b must be positive")


@dataclass(frozen=True)
class StieltjesMember:
    spec: PerturbationSpec
    epsilon: float

    def __post_init__(self):
        if not -1.0 <= self.epsilon <= 1.0:
            raise DomainError("epsilon must lie in [-1, 1]")


def _raw(spec, x):
    return kern.perturbation_raw(_FAMILIES[spec.which], spec.params.alpha,
                                 spec.params.beta, spec.b, spec.gamma, x)


def density_cutoff(params):
    """x beyond which the density underflows to zero in double precision."""
    return (800.0 / params.beta) ** (1.0 / params.alpha)


def _scan_upper(spec):
    """Upper end of the sup scan: where the decaying envelope is ~1e-300."""
    a, bta = spec.params.alpha, spec.params.beta
    if spec.which == "H1":
        x = (720.0 / bta) ** (1.0 / a)
        for _ in range(4):
            x = ((720.0 + max(0.0, (1.0 - 2.0 * a)) * math.log(x)) / bta) ** (1.0 / a)
        return 2.0 * x
    # H2: solve b x^g - beta x^a - (1-2a) log x ~ 720 by fixed point
    g, b = spec.gamma, spec.b
    x = (720.0 / b) ** (1.0 / g)
    for _ in range(6):
        x = ((720.0 + bta * x ** a + max(0.0, (1.0 - 2.0 * a)) * math.log(x)) / b) ** (1.0 / g)
    return 2.0 * x


def _golden_max(f, lo, hi, iterations=120):
    """Golden-section maximization on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return max(fc, fd)


def normalize(spec):
    """Return a copy of the spec with the unit-sup constant M computed.

    H1 and H2 have decaying envelopes, so the sup is attained at finite x:
    it is located on a 10^6-point logarithmic grid over [1e-12, X_max]
    (X_max where the envelope falls below ~1e-300) and refined by
    golden-section around the best grid point. H3 has no decay; its
    oscillation amplitude increases to 1 as x -> infinity and the sup is
    that limit, never attained, so the limit is used directly (a finite
    scan alone would overshoot M and push |h| above 1).

    The constant is deflated by 1e-9 so that densities f * (1 +/- h) stay
    nonnegative despite any remaining sup underestimate.
    """
    if spec.which == "H3":
        return replace(spec, M=_DEFLATION)
    hi = _scan_upper(spec)
    grid = np.exp(np.linspace(math.log(1e-12), math.log(hi), 1_000_000))
    vals = np.abs(_raw(spec, grid))
    i = int(np.argmax(vals))
    best = float(vals[i])
    if not (best > 0.0 and math.isfinite(best)):
        raise NormalizationError("perturbation envelope is numerically zero")
    lo_b = grid[max(i - 1, 0)]
    hi_b = grid[min(i + 1, grid.size - 1)]

    def g(x):
        return abs(float(_raw(spec, x)[0]))

    sup = max(best, _golden_max(g, lo_b, hi_b))
    return replace(spec, M=_DEFLATION / sup)


def perturbation(which, params, b=1.0, gamma=None):
    """Build and normalize a perturbation spec in one step."""
    return normalize(PerturbationSpec(which, params, b=b, gamma=gamma))


def _require_normalized(spec):
    if spec.M is None:
        raise DomainError("spec has no normalization constant; call normalize()")


def perturbation_value(spec, x):
    """Normalized perturbation value in [-1, 1]; 0 for x < 0."""
    _require_normalized(spec)
    arr = np.asarray(x, dtype=float)
    vals = spec.M * _raw(spec, arr)
    return float(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def stieltjes_density(member, x):
    """Density f(x) * (1 + eps * h(x)) of one member of the class."""
    spec = member.spec
    _require_normalized(spec)
    arr = np.asarray(x, dtype=float)
    f = kern.pl_pdf(spec.params.alpha, spec.params.beta, arr)
    h = spec.M * _raw(spec, arr)
    vals = f * (1.0 + member.epsilon * h)
    return float(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def _substituted_terms(spec, k):
    """Damped-sinusoid components of integral x^k f h dx after u = x^a (x^g for H2).

    Each term is (coefficient, p, q, omega, phase) for the integrand
    u^(p-1) exp(-q u) sin(omega u + phase).
    """
    a, bta = spec.params.alpha, spec.params.beta
    c = spec.M * bta * bta / (bta + 1.0)
    if spec.which == "H1":
        return [(c, (k + 1.0) / a, 2.0 * bta,
                 2.0 * bta * math.tan(math.pi * a), 0.0)]
    if spec.which == "H2":
        g, b = spec.gamma, spec.b
        return [(c * a / g, (k + 1.0) / g, b,
                 b * math.tan(math.pi * g), 0.0)]
    w = bta * math.tan(math.pi * a)
    return [
        (c, k / a + 1.0, bta, w, -math.pi * a),
        (c, k / a + 2.0, bta, w, -2.0 * math.pi * a),
    ]


def verify_vanishing_moments(spec, k_max, quad=None):
    """Residuals |integral x^k f h dx| / m_k for k = 0 .. k_max.

    Integration happens in the substituted variable, where the integrand is
    a damped sinusoid of constant frequency, using oscillation-aware
    quadrature. A quadrature accuracy failure is not silent: the error
    bound is folded into the reported residual, which then fails any
    smallness check loudly.
    """
    if k_max < 0:
        raise DomainError("k_max must be nonnegative")
    _require_normalized(spec)
    qspec = quad if quad is not None else QuadratureSpec()
    residuals = []
    for k in range(k_max + 1):
        total = 0.0
        slack = 0.0
        for coef, p, q, omega, phase in _substituted_terms(spec, k):
            def integrand(u, p=p, q=q, omega=omega, phase=phase):
                return kern.damped_sine(p, q, omega, phase, u)

            period = 2.0 * math.pi / omega
            try:
                total += coef * integrate_semi_infinite(
                    integrand, qspec, oscillation_period=period)
            except AccuracyError as exc:
                total += coef * exc.estimate
                slack += abs(coef) * exc.error_bound
        mk = 1.0 if k == 0 else pl_moment(spec.params, k)
        residuals.append((abs(total) + slack) / mk)
    return residuals


def gr_sine_integral(p, q, t):
    """Closed form of integral x^(p-1) exp(-q x) sin(q x tan t) dx over (0, inf).

    Equals Gamma(p) q^-p cos(t)^p sin(p t) for p, q > 0 and |t| < pi/2; this
    is the oracle against which the oscillatory quadrature is checked.
    """
    if not (p > 0.0 and q > 0.0):
        raise DomainError("p and q must be positive")
    if not abs(t) < math.pi / 2.0:
        raise DomainError("t must satisfy |t| < pi/2")
    scale = math.exp(log_gamma(p) - p * math.log(q) + p * math.log(math.cos(t)))
    return scale * math.sin(p * t)


def gr_cosine_integral(p, q, t):
    """Cosine analogue of gr_sine_integral, with cos(p t) in place of sin(p t)."""
    if not (p > 0.0 and q > 0.0):
        raise DomainError("p and q must be positive")
    if not abs(t) < math.pi / 2.0:
        raise DomainError("t must satisfy |t| < pi/2")
    scale = math.exp(log_gamma(p) - p * math.log(q) + p * math.log(math.cos(t)))
    return scale * math.cos(p * t)
