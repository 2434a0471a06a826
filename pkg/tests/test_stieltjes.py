import math

import numpy as np
import pytest

from powerlindley.distribution import PLParams, pl_moment, pl_pdf
from powerlindley.errors import DomainError
from powerlindley.numerics import integrate_semi_infinite
from powerlindley.stieltjes import (
    PerturbationSpec,
    StieltjesMember,
    density_cutoff,
    gr_cosine_integral,
    gr_sine_integral,
    normalize,
    perturbation,
    perturbation_value,
    stieltjes_density,
    verify_vanishing_moments,
)

P03 = PLParams(0.3, 1.0)
P025 = PLParams(0.25, 2.0)


def sup_scan_points(spec, n=200_000):
    """Scan grid including, for H3, points phase-aligned to the sup limit."""
    params = spec.params
    grid = np.exp(np.linspace(math.log(1e-10), math.log(density_cutoff(params)), n))
    if spec.which != "H3":
        return grid
    w = params.beta * math.tan(math.pi * params.alpha)
    ns = np.arange(1, n)
    u = (math.pi / 2.0 + 2.0 * math.pi * ns + 2.0 * math.pi * params.alpha) / w
    x = u ** (1.0 / params.alpha)
    return np.concatenate([grid, x[np.isfinite(x)]])


class TestSpecValidation:
    def test_rejects_alpha_at_boundary(self):
        with pytest.raises(DomainError):
            PerturbationSpec("H1", PLParams(0.5, 1.0))
        with pytest.raises(DomainError):
            PerturbationSpec("H3", PLParams(0.7, 1.0))

    def test_gamma_default_is_midpoint(self):
        spec = PerturbationSpec("H2", P03)
        assert spec.gamma == pytest.approx((0.3 + 0.5) / 2.0)

    def test_h2_parameter_bounds(self):
        with pytest.raises(DomainError):
            PerturbationSpec("H2", P03, gamma=0.2)   # below alpha
        with pytest.raises(DomainError):
            PerturbationSpec("H2", P03, gamma=0.6)   # above 1/2
        with pytest.raises(DomainError):
            PerturbationSpec("H2", P03, b=0.0)

    def test_unknown_family(self):
        with pytest.raises(DomainError):
            PerturbationSpec("H4", P03)

    def test_epsilon_bounds(self):
        spec = perturbation("H1", P03)
        with pytest.raises(DomainError):
            StieltjesMember(spec, 1.5)

    def test_unnormalized_spec_refused(self):
        spec = PerturbationSpec("H1", P03)
        with pytest.raises(DomainError):
            perturbation_value(spec, 1.0)


class TestPerturbationValue:
    @pytest.mark.parametrize("fam", ["H1", "H2", "H3"])
    def test_zero_for_negative_x(self, fam):
        spec = perturbation(fam, P03)
        assert perturbation_value(spec, -3.0) == 0.0

    def test_h1_vanishes_at_origin(self):
        spec = perturbation("H1", P03)
        assert abs(perturbation_value(spec, 1e-12)) < 1e-8

    @pytest.mark.parametrize("fam", ["H1", "H2", "H3"])
    @pytest.mark.parametrize("params", [P03, P025])
    def test_unit_sup(self, fam, params):
        spec = perturbation(fam, params)
        vals = np.abs(perturbation_value(spec, sup_scan_points(spec)))
        assert vals.max() <= 1.0
        assert vals.max() >= 1.0 - 1e-6

    def test_h2_sup_attained_at_interior_point(self):
        # envelope vanishes at both ends, so the scan max is interior
        spec = perturbation("H2", P03)
        grid = sup_scan_points(spec)
        vals = np.abs(perturbation_value(spec, grid))
        i = int(np.argmax(vals))
        assert 0 < i < len(grid) - 1


class TestNormalize:
    def test_idempotent(self):
        spec = perturbation("H1", P03)
        again = normalize(spec)
        assert again.M == pytest.approx(spec.M, rel=1e-9)

    def test_h3_constant_lower_bound(self):
        # |H3| is bounded by (1 + x^a) / (1 + x^a) = 1, so M3 >= 1/2
        spec = perturbation("H3", P025)
        assert spec.M >= 0.5

    @pytest.mark.parametrize("fam", ["H1", "H2"])
    def test_scan_constants_positive(self, fam):
        spec = perturbation(fam, P025)
        assert spec.M > 0.0


class TestStieltjesDensity:
    def test_epsilon_zero_is_plain_density(self):
        spec = perturbation("H2", P03)
        member = StieltjesMember(spec, 0.0)
        xs = np.array([-1.0, 0.0, 0.2, 1.0, 7.0])
        assert stieltjes_density(member, xs) == pytest.approx(pl_pdf(P03, xs), rel=1e-14)

    @pytest.mark.parametrize("fam", ["H1", "H2", "H3"])
    @pytest.mark.parametrize("eps", [-1.0, -0.5, 0.5, 1.0])
    def test_nonnegative_on_stress_grid(self, fam, eps):
        spec = perturbation(fam, P03)
        member = StieltjesMember(spec, eps)
        xs = np.concatenate([[0.0],
                             np.exp(np.linspace(math.log(1e-10),
                                                math.log(density_cutoff(P03)), 100_000))])
        assert (stieltjes_density(member, xs) >= 0.0).all()

    def test_total_mass_preserved(self):
        spec = perturbation("H1", P03)
        member = StieltjesMember(spec, 1.0)
        total = integrate_semi_infinite(lambda x: stieltjes_density(member, x))
        assert total == pytest.approx(1.0, abs=1e-7)

    @pytest.mark.parametrize("fam", ["H1", "H2", "H3"])
    def test_moments_match_across_class(self, fam):
        # quadrature moments of f_eps in the substituted variable u = x^a
        spec = perturbation(fam, P03)
        a, b = P03.alpha, P03.beta
        c = b * b / (b + 1.0)
        for eps in (-1.0, 1.0):
            member = StieltjesMember(spec, eps)
            for k in range(0, 7):
                def g(u):
                    x = u ** (1.0 / a)
                    h = perturbation_value(spec, x)
                    return (c * u ** (k / a) * (1.0 + u) * np.exp(-b * u)
                            * (1.0 + member.epsilon * h))

                q = integrate_semi_infinite(g)
                mk = 1.0 if k == 0 else pl_moment(P03, k)
                assert q == pytest.approx(mk, rel=1e-6)

    def test_members_are_distinct(self):
        spec = perturbation("H1", P03)
        grid = sup_scan_points(spec, 50_000)
        x_star = grid[int(np.argmax(np.abs(perturbation_value(spec, grid))))]
        d1 = stieltjes_density(StieltjesMember(spec, 1.0), x_star)
        d2 = stieltjes_density(StieltjesMember(spec, -1.0), x_star)
        assert abs(d1 - d2) > 0.0


class TestVanishingMoments:
    @pytest.mark.parametrize("fam,params", [
        ("H1", P03), ("H2", P03), ("H3", P03),
        ("H1", P025), ("H2", P025), ("H3", P025),
    ])
    def test_residuals_small(self, fam, params):
        spec = perturbation(fam, params)
        residuals = verify_vanishing_moments(spec, 10)
        assert len(residuals) == 11
        assert max(residuals) <= 1e-8

    def test_proof_variant_phase_is_wrong(self):
        # the tilted family requires tan(pi*gamma) in the sine; a tan(pi*alpha)
        # variant (gamma != alpha) must leave visibly nonzero moments
        from powerlindley import _kernels as kern

        spec = perturbation("H2", P03)
        a, b = P03.alpha, P03.beta
        g, b2 = spec.gamma, spec.b
        c = spec.M * a * b * b / (g * (b + 1.0))
        omega = b2 * math.tan(math.pi * a)
        p = 1.0 / g
        val = c * integrate_semi_infinite(
            lambda u: kern.damped_sine(p, b2, omega, 0.0, u),
            oscillation_period=2.0 * math.pi / omega)
        assert abs(val) > 1e-3

    def test_negative_kmax(self):
        with pytest.raises(DomainError):
            verify_vanishing_moments(perturbation("H1", P03), -1)

    def test_accuracy_failure_is_flagged_not_silent(self):
        # starving the quadrature budget must inflate the residual with the
        # error bound rather than report a small value
        from powerlindley.numerics import QuadratureSpec

        spec = perturbation("H1", P03)
        strict = verify_vanishing_moments(spec, 2)
        starved = verify_vanishing_moments(spec, 2, quad=QuadratureSpec(max_subdivisions=2))
        assert max(strict) <= 1e-8
        assert max(starved) > 1e-4


class TestClosedFormIntegrals:
    def test_sine_hand_value(self):
        assert gr_sine_integral(2.0, 1.0, math.pi / 4.0) == pytest.approx(0.5, rel=1e-14)

    def test_sine_zero_angle(self):
        for p in (1.0, 2.5):
            assert gr_sine_integral(p, 1.3, 0.0) == 0.0

    def test_cosine_zero_angle(self):
        assert gr_cosine_integral(1.0, 1.0, 0.0) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("t", [math.pi / 2.0, -math.pi / 2.0, 2.0])
    def test_angle_domain(self, t):
        with pytest.raises(DomainError):
            gr_sine_integral(1.0, 1.0, t)
        with pytest.raises(DomainError):
            gr_cosine_integral(1.0, 1.0, t)

    def test_parameter_domain(self):
        with pytest.raises(DomainError):
            gr_sine_integral(0.0, 1.0, 0.1)
        with pytest.raises(DomainError):
            gr_cosine_integral(1.0, -1.0, 0.1)
