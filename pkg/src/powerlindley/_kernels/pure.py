"""Numpy implementations of the evaluation kernels.

Reference implementation mirrored by the compiled extension in
``powerlindley._kernels._core``; the two must agree to floating-point
roundoff (checked by the test suite).
"""
import math

import numpy as np

KERNEL_BACKEND = "python"


def pl_pdf_arr(alpha, beta, x):
    """Density (alpha*beta^2/(beta+1)) (1+x^a) x^(a-1) exp(-beta x^a); 0 for x <= 0."""
    out = np.zeros_like(x)
    pos = x > 0.0
    if not pos.any():
        return out
    xp = x[pos]
    c = alpha * beta * beta / (beta + 1.0)
    with np.errstate(over="ignore", invalid="ignore", under="ignore", divide="ignore"):
        t = xp ** alpha
        v = c * (1.0 + t) * xp ** (alpha - 1.0) * np.exp(-beta * t)
        bad = ~np.isfinite(v)
        if bad.any():
            # rebuild through logs where the linear form degenerates
            tb = t[bad]
            lv = math.log(c) + np.log1p(tb) + (alpha - 1.0) * np.log(xp[bad]) - beta * tb
            ev = np.exp(lv)
            ev[np.isnan(lv)] = 0.0
            v[bad] = ev
    out[pos] = v
    return out


def pl_log_pdf_arr(alpha, beta, x):
    """Log-density for x > 0 (callers enforce the domain)."""
    lc = math.log(alpha) + 2.0 * math.log(beta) - math.log1p(beta)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        lx = np.log(x)
        t = np.exp(alpha * lx)
        out = lc + np.log1p(t) + (alpha - 1.0) * lx - beta * t
        out[~np.isfinite(t)] = -np.inf
    return out


def pl_survival_arr(alpha, beta, x):
    """Survival (1 + beta x^a / (beta+1)) exp(-beta x^a); 1 for x <= 0."""
    out = np.ones_like(x)
    pos = x > 0.0
    if not pos.any():
        return out
    xp = x[pos]
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        t = xp ** alpha
        bt = beta * t
        s = (1.0 + bt / (beta + 1.0)) * np.exp(-bt)
        s[~np.isfinite(s)] = 0.0
    out[pos] = s
    return out


def perturbation_raw_arr(which, alpha, beta, b, gam, x):
    """Unnormalized perturbation value (family 1, 2 or 3); 0 for x <= 0."""
    out = np.zeros_like(x)
    pos = x > 0.0
    if not pos.any():
        return out
    xp = x[pos]
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        t = xp ** alpha
        if which == 1:
            w = 2.0 * beta * math.tan(math.pi * alpha)
            v = xp ** (1.0 - alpha) / (1.0 + t) * np.exp(-beta * t) * np.sin(w * t)
        elif which == 2:
            s = xp ** gam
            w = b * math.tan(math.pi * gam)
            v = xp ** (1.0 - alpha) / (1.0 + t) * np.exp(beta * t - b * s) * np.sin(w * s)
        else:
            phi = beta * math.tan(math.pi * alpha) * t
            v = (np.sin(phi - math.pi * alpha)
                 + t * np.sin(phi - 2.0 * math.pi * alpha)) / (1.0 + t)
        v = np.where(np.isfinite(v), v, 0.0)
    out[pos] = v
    return out


def damped_sine_arr(p, q, omega, phase, u):
    """u^(p-1) exp(-q u) sin(omega u + phase) for u > 0."""
    with np.errstate(over="ignore", invalid="ignore", under="ignore", divide="ignore"):
        if p == 1.0:
            le = -q * u
        else:
            le = (p - 1.0) * np.log(u) - q * u
        return np.exp(le) * np.sin(omega * u + phase)
