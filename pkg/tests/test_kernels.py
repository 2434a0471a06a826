"""Backend parity: the compiled kernels must agree with the numpy fallback."""
import math
import os

import numpy as np
import pytest

from powerlindley import _kernels as kern
from powerlindley._kernels import pure

_core = pytest.importorskip("powerlindley._kernels._core",
                            reason="compiled kernels not built")

PARAMS = [(0.3, 1.0), (0.25, 2.0), (0.471, 3.65), (1.0, 1.0), (2.0, 0.5)]


def _moderate_grid():
    rng = np.random.default_rng(123)
    return np.ascontiguousarray(np.exp(rng.uniform(math.log(1e-6), math.log(1e3), 5000)))


def _wild_grid():
    rng = np.random.default_rng(321)
    extremes = np.array([-5.0, 0.0, 5e-324, 1e-300, 1e300])
    return np.ascontiguousarray(np.concatenate([extremes, np.exp(rng.uniform(-40, 40, 5000))]))


def _rel_diff(u, v):
    return np.nanmax(np.abs(u - v) / (np.abs(u) + np.abs(v) + 1e-300))


class TestBackendSelection:
    def test_compiled_is_active_by_default(self):
        if os.environ.get("PLFIT_PURE_PYTHON"):
            pytest.skip("fallback forced via PLFIT_PURE_PYTHON")
        assert kern.backend() == "compiled"
        assert set(kern.available_backends()) == {"python", "compiled"}

    def test_switch_and_restore(self):
        kern.set_backend("python")
        try:
            assert kern.backend() == "python"
        finally:
            kern.set_backend("compiled")
        assert kern.backend() == "compiled"

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            kern.set_backend("fortran")


@pytest.mark.parametrize("alpha,beta", PARAMS)
class TestEvaluationParity:
    def test_pdf_tight_on_moderate_range(self, alpha, beta):
        x = _moderate_grid()
        assert _rel_diff(pure.pl_pdf_arr(alpha, beta, x),
                         _core.pl_pdf_arr(alpha, beta, x)) < 1e-13

    def test_pdf_wild_range(self, alpha, beta):
        x = _wild_grid()
        assert _rel_diff(pure.pl_pdf_arr(alpha, beta, x),
                         _core.pl_pdf_arr(alpha, beta, x)) < 5e-8

    def test_log_pdf(self, alpha, beta):
        x = _moderate_grid()
        u = pure.pl_log_pdf_arr(alpha, beta, x)
        v = _core.pl_log_pdf_arr(alpha, beta, x)
        assert np.nanmax(np.abs(u - v) / (np.abs(u) + 1.0)) < 1e-13

    def test_survival(self, alpha, beta):
        x = _wild_grid()
        assert _rel_diff(pure.pl_survival_arr(alpha, beta, x),
                         _core.pl_survival_arr(alpha, beta, x)) < 1e-10


class TestPerturbationParity:
    # large phases amplify 1-ulp pow() differences, hence the looser wild bound
    @pytest.mark.parametrize("which", [1, 2, 3])
    @pytest.mark.parametrize("alpha,beta", [(0.3, 1.0), (0.25, 2.0)])
    def test_families(self, which, alpha, beta):
        gam = (alpha + 0.5) / 2.0
        x = _moderate_grid()
        assert _rel_diff(pure.perturbation_raw_arr(which, alpha, beta, 1.0, gam, x),
                         _core.perturbation_raw_arr(which, alpha, beta, 1.0, gam, x)) < 1e-11
        xw = _wild_grid()
        assert _rel_diff(pure.perturbation_raw_arr(which, alpha, beta, 1.0, gam, xw),
                         _core.perturbation_raw_arr(which, alpha, beta, 1.0, gam, xw)) < 5e-7


class TestDampedSineParity:
    @pytest.mark.parametrize("p,q,omega,phase", [
        (1.0, 1.0, 1.0, 0.0),
        (3.33, 2.0, 2.75, 0.0),
        (11.0, 1.0, 3.08, -0.3 * math.pi),
    ])
    def test_values(self, p, q, omega, phase):
        u = _moderate_grid()
        assert _rel_diff(pure.damped_sine_arr(p, q, omega, phase, u),
                         _core.damped_sine_arr(p, q, omega, phase, u)) < 1e-10


class TestDispatchWrappers:
    def test_scalar_promoted_to_array(self):
        out = kern.pl_pdf(1.0, 1.0, 1.0)
        assert out.shape == (1,)
        assert out[0] == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_noncontiguous_input_accepted(self):
        x = np.linspace(0.1, 5.0, 40)[::2]
        out = kern.pl_survival(1.0, 1.0, x)
        assert out.shape == (20,)
