"""Evaluation kernels with a compiled fast path.

The hot inner loops of the package (density and perturbation evaluation
inside quadrature panels, and the million-point sup scans used to normalize
perturbations) are implemented twice: in Cython
(``powerlindley._kernels._core``) and in numpy
(``powerlindley._kernels.pure``). The compiled module is preferred when the
extension was built; set ``PLFIT_PURE_PYTHON=1`` to force the fallback.
Both implementations agree to floating-point roundoff and are compared by
the test suite and by ``benchmarks/bench_kernels.py``.
"""
import os

import numpy as np

from . import pure

try:
    from . import _core
except ImportError:
    _core = None

if _core is not None and not os.environ.get("PLFIT_PURE_PYTHON"):
    _impl = _core
else:
    _impl = pure


def backend():
    """Name of the active kernel implementation: 'compiled' or 'python'."""
    return _impl.KERNEL_BACKEND


def available_backends():
    return ("python",) if _core is None else ("python", "compiled")


def set_backend(name):
    """Swap the active implementation; testing and benchmarking hook."""
    global _impl
    if name == "python":
        _impl = pure
    elif name == "compiled":
        if _core is None:
            raise RuntimeError("compiled kernels are not built")
        _impl = _core
    else:
        raise ValueError(f"unknown backend {name!r}")


def _farr(x):
    return np.ascontiguousarray(np.atleast_1d(x), dtype=np.float64)


def pl_pdf(alpha, beta, x):
    return _impl.pl_pdf_arr(float(alpha), float(beta), _farr(x))


def pl_log_pdf(alpha, beta, x):
    return _impl.pl_log_pdf_arr(float(alpha), float(beta), _farr(x))


def pl_survival(alpha, beta, x):
    return _impl.pl_survival_arr(float(alpha), float(beta), _farr(x))


def perturbation_raw(which, alpha, beta, b, gam, x):
    return _impl.perturbation_raw_arr(int(which), float(alpha), float(beta),
                                      float(b), float(gam), _farr(x))


def damped_sine(p, q, omega, phase, u):
    return _impl.damped_sine_arr(float(p), float(q), float(omega),
                                 float(phase), _farr(u))
