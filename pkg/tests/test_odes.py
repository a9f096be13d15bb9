"""Tests for the wave equations and the RK4 integrator."""

import numpy as np
import numpy.testing as npt
import pytest

from ptresonance import (
    OverflowRangeError,
    ResonanceParams,
    SecondOrderIVP,
    build_model,
    damped_oscillator_equation,
    damped_oscillator_ivp,
    integrate,
    inverse_ft,
    pt_wave_equation,
    pt_wave_ivp,
)
from ptresonance.odes import characteristic_roots

P = ResonanceParams(1.0, 0.8)


class TestCoefficients:
    def test_balanced_pair_equation(self):
        c2, c1, c0 = pt_wave_equation(P)
        assert c2 == 1.0
        assert c1 == 2j
        assert c0 == pytest.approx(-1.64)

    def test_balanced_pair_roots(self):
        roots = sorted(characteristic_roots(pt_wave_equation(P)), key=lambda z: z.real)
        npt.assert_allclose(roots[0], -0.8 - 1j, atol=1e-12)
        npt.assert_allclose(roots[1], +0.8 - 1j, atol=1e-12)

    def test_root_product_is_constant_coefficient(self):
        """Vieta: the product of the roots equals c0 for a monic quadratic."""
        c2, c1, c0 = pt_wave_equation(P)
        assert np.prod(characteristic_roots((c2, c1, c0))) == pytest.approx(c0)

    def test_vanishing_width_limit(self):
        small = ResonanceParams(1.0, 1e-8)
        roots = characteristic_roots(pt_wave_equation(small))
        npt.assert_allclose(roots, [-1j, -1j], atol=2e-8)

    def test_damped_equation(self):
        c2, c1, c0 = damped_oscillator_equation(P)
        assert (c2, c1) == (1.0, 1.6)
        assert c0 == pytest.approx(1.64)

    def test_damped_second_solution_flips_frequency_not_damping(self):
        roots = characteristic_roots(damped_oscillator_equation(P))
        npt.assert_allclose(sorted(roots.real), [-0.8, -0.8], atol=1e-12)
        npt.assert_allclose(sorted(roots.imag), [-1.0, 1.0], atol=1e-12)

    def test_energy_space_factorizations(self):
        """E = i r maps the time-domain roots onto the pole pairs: the
        balanced equation onto E0 +/- i Gamma, the damped one onto
        {E0 - i Gamma, -E0 - i Gamma}."""
        energies = sorted(1j * characteristic_roots(pt_wave_equation(P)),
                          key=lambda z: z.imag)
        npt.assert_allclose(energies[0], P.e0 - 1j * P.gamma, atol=1e-12)
        npt.assert_allclose(energies[1], P.e0 + 1j * P.gamma, atol=1e-12)
        energies = sorted(1j * characteristic_roots(damped_oscillator_equation(P)),
                          key=lambda z: z.real)
        npt.assert_allclose(energies[0], -P.e0 - 1j * P.gamma, atol=1e-12)
        npt.assert_allclose(energies[1], P.e0 - 1j * P.gamma, atol=1e-12)


class TestIntegrate:
    def test_balanced_pair_matches_residue_transform(self):
        """Antisymmetric initial data reproduce the two-pole time-domain form."""
        times = np.linspace(0.0, 5.0, 51)
        series = integrate(pt_wave_ivp(P, times, step=1e-3))
        expected = inverse_ft(build_model("pt-pair", P), times)
        assert np.max(np.abs(series.psi - expected)) <= 1e-6

    def test_damped_mode_closed_form(self):
        times = np.linspace(0.0, 5.0, 51)
        series = integrate(damped_oscillator_ivp(P, times, step=1e-3))
        expected = np.exp(-1j * P.e0 * times - P.gamma * times)
        assert np.max(np.abs(series.psi - expected)) <= 1e-6

    def test_damped_modulus(self):
        times = np.linspace(0.0, 5.0, 51)
        series = integrate(damped_oscillator_ivp(P, times, step=1e-3))
        npt.assert_allclose(np.abs(series.psi), np.exp(-P.gamma * times), atol=1e-9)

    def test_zero_data_stays_zero(self):
        times = np.linspace(0.0, 3.0, 31)
        ivp = SecondOrderIVP(c1=2j, c0=-1.64, psi0=0.0, dpsi0=0.0, times=times, step=1e-2)
        series = integrate(ivp)
        npt.assert_array_equal(series.psi, np.zeros_like(series.psi))
        npt.assert_array_equal(series.dpsi, np.zeros_like(series.dpsi))

    def test_fourth_order_convergence(self):
        """Halving the step shrinks the max error by at least 14x."""
        times = np.linspace(0.0, 5.0, 51)
        exact = inverse_ft(build_model("pt-pair", P), times)
        errors = []
        for step in (0.02, 0.01):
            series = integrate(pt_wave_ivp(P, times, step=step))
            errors.append(np.max(np.abs(series.psi - exact)))
        assert errors[0] / errors[1] >= 14.0

        exact2 = np.exp(-1j * P.e0 * times - P.gamma * times)
        errors2 = []
        for step in (0.02, 0.01):
            series = integrate(damped_oscillator_ivp(P, times, step=step))
            errors2.append(np.max(np.abs(series.psi - exact2)))
        assert errors2[0] / errors2[1] >= 14.0

    def test_step_cap_enforced(self):
        times = np.linspace(0.0, 5.0, 11)
        with pytest.raises(ValueError):
            integrate(pt_wave_ivp(P, times, step=0.2))

    def test_overflow_guard(self):
        times = np.linspace(0.0, 500.0, 11)
        with pytest.raises(OverflowRangeError):
            integrate(pt_wave_ivp(P, times, step=1e-2))

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            SecondOrderIVP(c1=0.0, c0=1.0, psi0=1.0, dpsi0=0.0,
                           times=np.array([1.0, 0.5]), step=1e-2)
        with pytest.raises(ValueError):
            SecondOrderIVP(c1=0.0, c0=1.0, psi0=1.0, dpsi0=0.0,
                           times=np.array([-1.0, 0.5]), step=1e-2)
        with pytest.raises(ValueError):
            SecondOrderIVP(c1=0.0, c0=1.0, psi0=1.0, dpsi0=0.0,
                           times=np.array([0.0, 1.0]), step=0.0)
        with pytest.raises(ValueError):
            SecondOrderIVP(c1=0.0, c0=1.0, psi0=1.0, dpsi0=0.0,
                           times=np.array([0.0, 1.0]), step=1e-2, c2=2.0)

    def test_slope_normalized_route(self):
        """Integrating with unit slope and rescaling by 2 i Gamma matches the
        canonical run, so the initial-slope gauge drops out."""
        times = np.linspace(0.0, 5.0, 26)
        c2, c1, c0 = pt_wave_equation(P)
        unit = integrate(
            SecondOrderIVP(c1=c1, c0=c0, psi0=0.0, dpsi0=1.0, times=times, step=1e-3)
        )
        rescaled = unit.psi * (2j * P.gamma)
        expected = inverse_ft(build_model("pt-pair", P), times)
        assert np.max(np.abs(rescaled - expected)) <= 1e-6
