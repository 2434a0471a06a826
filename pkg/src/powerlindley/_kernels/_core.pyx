# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels.

Mirrors powerlindley._kernels.pure; that module is the reference
implementation. Keep the two in sync.
"""
from libc.math cimport exp, log, log1p, sin, pow, tan, isfinite, isnan, M_PI

import numpy as np

KERNEL_BACKEND = "compiled"


def pl_pdf_arr(double alpha, double beta, double[::1] x):
    cdef Py_ssize_t n = x.shape[0], i
    out_np = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_np
    cdef double c = alpha * beta * beta / (beta + 1.0)
    cdef double lc = log(c)
    cdef double xi, t, bt, v, lv
    for i in range(n):
        xi = x[i]
        if xi <= 0.0:
            out[i] = 0.0
            continue
        t = pow(xi, alpha)
        bt = beta * t
        v = c * (1.0 + t) * pow(xi, alpha - 1.0) * exp(-bt)
        if not isfinite(v):
            lv = lc + log1p(t) + (alpha - 1.0) * log(xi) - bt
            v = 0.0 if isnan(lv) else exp(lv)
        out[i] = v
    return out_np


def pl_log_pdf_arr(double alpha, double beta, double[::1] x):
    cdef Py_ssize_t n = x.shape[0], i
    out_np = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_np
    cdef double lc = log(alpha) + 2.0 * log(beta) - log1p(beta)
    cdef double xi, lx, t
    for i in range(n):
        xi = x[i]
        lx = log(xi)
        t = exp(alpha * lx)
        if isfinite(t):
            out[i] = lc + log1p(t) + (alpha - 1.0) * lx - beta * t
        else:
            out[i] = -float("inf")
    return out_np


def pl_survival_arr(double alpha, double beta, double[::1] x):
    cdef Py_ssize_t n = x.shape[0], i
    out_np = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_np
    cdef double xi, t, bt, s
    for i in range(n):
        xi = x[i]
        if xi <= 0.0:
            out[i] = 1.0
            continue
        t = pow(xi, alpha)
        bt = beta * t
        s = (1.0 + bt / (beta + 1.0)) * exp(-bt)
        out[i] = s if isfinite(s) else 0.0
    return out_np


def perturbation_raw_arr(int which, double alpha, double beta, double b,
                         double gam, double[::1] x):
    cdef Py_ssize_t n = x.shape[0], i
    out_np = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_np
    cdef double w1 = 2.0 * beta * tan(M_PI * alpha)
    cdef double w2 = b * tan(M_PI * gam)
    cdef double w3 = beta * tan(M_PI * alpha)
    cdef double xi, t, s, v, phi
    for i in range(n):
        xi = x[i]
        if xi <= 0.0:
            out[i] = 0.0
            continue
        t = pow(xi, alpha)
        if which == 1:
            v = pow(xi, 1.0 - alpha) / (1.0 + t) * exp(-beta * t) * sin(w1 * t)
        elif which == 2:
            s = pow(xi, gam)
            v = pow(xi, 1.0 - alpha) / (1.0 + t) * exp(beta * t - b * s) * sin(w2 * s)
        else:
            phi = w3 * t
            v = (sin(phi - M_PI * alpha) + t * sin(phi - 2.0 * M_PI * alpha)) / (1.0 + t)
        out[i] = v if isfinite(v) else 0.0
    return out_np


def damped_sine_arr(double p, double q, double omega, double phase, double[::1] u):
    cdef Py_ssize_t n = u.shape[0], i
    out_np = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_np
    cdef double ui, le
    for i in range(n):
        ui = u[i]
        if p == 1.0:
            le = -q * ui
        else:
            le = (p - 1.0) * log(ui) - q * ui
        out[i] = exp(le) * sin(omega * ui + phase)
    return out_np
