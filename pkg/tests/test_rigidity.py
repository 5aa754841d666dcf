import numpy as np
import pytest

from ifonoise.errors import SingularFrequencyError, ZeroResponseError
from ifonoise.rigidity import (
    DetunedRegime,
    PoleRegimeParams,
    bad_cavity_xi2,
    bad_cavity_xi2_phase_readout,
    characteristic_roots,
    dual_carrier_expansion,
    dual_carrier_rigidity,
    effective_susceptibility,
    instability_time,
    optimal_beta,
    perturbative_roots,
    second_order_pole_susceptibility,
    second_order_pole_xi2,
    undamped_roots,
)

DELTA = 1000.0


class TestRoots:
    def test_undamped_limit(self):
        J = 0.05 * DELTA**3
        pair = characteristic_roots(J, 1e-9 * DELTA, DELTA)
        mech0, opt0 = undamped_roots(J, DELTA)
        assert abs(pair.mechanical - mech0) / abs(mech0) < 1e-7
        assert abs(pair.optical - opt0) / abs(opt0) < 1e-7

    def test_merged_root_at_critical_coupling(self):
        J = DELTA**3 / 4
        pair = characteristic_roots(J, 1e-12 * DELTA, DELTA)
        target = DELTA / np.sqrt(2)
        assert abs(pair.mechanical - target) / target < 1e-5
        assert abs(pair.optical - target) / target < 1e-5

    def test_merged_flag_gamma0_exact(self):
        mech, opt = undamped_roots(DELTA**3 / 4, DELTA)
        assert mech == pytest.approx(DELTA / np.sqrt(2), rel=1e-9)
        assert opt == pytest.approx(DELTA / np.sqrt(2), rel=1e-9)

    def test_vieta(self):
        J, gamma = 0.07 * DELTA**3, 0.05 * DELTA
        roots = np.roots([1.0, 2j * gamma, -(gamma**2 + DELTA**2), 0.0, J * DELTA])
        assert abs(np.sum(roots) - (-2j * gamma)) < 1e-10 * DELTA
        assert abs(np.prod(roots) - J * DELTA) < 1e-10 * DELTA**4

    @pytest.mark.parametrize("jfrac", [0.02, 0.05, 0.1, 0.2])
    def test_small_gamma_approximation(self, jfrac):
        gamma = 0.03 * DELTA
        J = jfrac * DELTA**3
        pair = characteristic_roots(J, gamma, DELTA)
        mech, opt = perturbative_roots(J, gamma, DELTA)
        assert abs(pair.mechanical - mech) / abs(mech) < 0.03
        assert abs(pair.optical - opt) / abs(opt) < 0.03

    def test_mechanical_branch_unstable(self):
        pair = characteristic_roots(0.05 * DELTA**3, 0.03 * DELTA, DELTA)
        assert pair.mechanical.imag > 0
        assert pair.optical.imag < 0
        assert pair.unstable

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            characteristic_roots(1.0, 1.0, -5.0)


class TestSusceptibility:
    def test_free_mass_limit(self):
        om = 2 * np.pi * 100
        chi = effective_susceptibility(0.0, 0.0, 1.0, 40.0, om)
        assert chi == pytest.approx(-1 / (40.0 * om**2))

    def test_poles_coincide_with_roots(self):
        J, gamma = 0.05 * DELTA**3, 0.03 * DELTA
        pair = characteristic_roots(J, gamma, DELTA)
        for z in (pair.mechanical, pair.optical):
            d = (gamma - 1j * z) ** 2 + DELTA**2
            inv_chi = 40.0 * (J * DELTA / d - z**2)
            assert abs(inv_chi) < 1e-6 * 40.0 * abs(z) ** 2

    def test_second_order_pole_local_form(self):
        # the residual numerator factor delta^2 - Omega^2 makes the local
        # approximation drift linearly, ~2 |nu|/Omega_0
        J = DELTA**3 / 4
        om0 = DELTA / np.sqrt(2)
        for nu_frac, tol in ((0.005, 0.011), (0.03, 0.07)):
            nu = np.array([-nu_frac, nu_frac]) * om0
            om = om0 + nu
            full = effective_susceptibility(J, 0.0, DELTA, 40.0, om)
            local = second_order_pole_susceptibility(DELTA, 40.0, om)
            assert np.max(np.abs(full - local) / np.abs(full)) < tol

    def test_resonance_rejected(self):
        with pytest.raises(SingularFrequencyError):
            effective_susceptibility(0.0, 0.0, 1.0, 40.0, np.array([0.0]))


class TestBadCavity:
    def test_envelope_low_frequency(self):
        # xi^2_env ~ 2 Omega^2/Omega_q^2 ~ gamma/delta far from resonance
        om_q = 2 * np.pi * 100
        for om_frac in (0.1, 0.2, 0.3):
            om = om_frac * om_q
            beta = optimal_beta(om, om_q**2, 1.0)
            gamma = 3e5 * np.cos(beta)  # Gamma >> Omega regardless of split
            reg = DetunedRegime(J=om_q**2 * gamma / 2 / np.cos(beta)** -1, gamma=gamma, delta=3e5 * np.sin(beta))
            # build the regime directly from (Omega_q, beta)
            xi2 = _xi2_from_angles(om_q, beta, 1.0, om)
            assert xi2 == pytest.approx(2 * om**2 / om_q**2, rel=0.15)

    def test_optimal_beta_asymptote(self):
        om_q = 2 * np.pi * 100
        om0 = 0.05 * om_q
        beta = optimal_beta(om0, om_q**2, 1.0)
        assert beta == pytest.approx(np.pi / 2 - 2 * om0**2 / om_q**2, abs=2e-4)

    def test_optimal_beta_minimizes(self):
        om_q = 2 * np.pi * 100
        om0 = 0.2 * om_q
        beta_star = optimal_beta(om0, om_q**2, 0.95)
        betas = np.linspace(0.3, np.pi / 2 - 1e-4, 4001)
        vals = [_xi2_from_angles(om_q, b, 0.95, om0) for b in betas]
        assert betas[int(np.argmin(vals))] == pytest.approx(beta_star, abs=2e-3)

    def test_loss_insensitivity_of_envelope(self):
        om_q = 2 * np.pi * 100
        oms = om_q * np.array([0.05, 0.1, 0.3, 1.0])
        for om in oms:
            lossless = _xi2_from_angles(om_q, optimal_beta(om, om_q**2, 1.0), 1.0, om)
            lossy = _xi2_from_angles(om_q, optimal_beta(om, om_q**2, 0.95), 0.95, om)
            assert abs(lossy - lossless) / lossless < 0.10

    def test_phase_readout_dominates_with_loss(self):
        # for equal bandwidth, phi = pi/2 gives the broadest band at a
        # given xi; check it beats nearby angles at the band edges
        reg = DetunedRegime(J=(2 * np.pi * 70) ** 2 * 500.0 / 2, gamma=500.0, delta=2e4)
        om = 0.8 * np.sqrt(reg.omega_q2)
        base = bad_cavity_xi2(reg, 0.95, np.pi / 2 + reg.beta, om)
        for dphi in (-0.4, -0.2, 0.2, 0.4):
            assert base <= bad_cavity_xi2(reg, 0.95, np.pi / 2 + reg.beta + dphi, om)

    def test_zero_response_rejected(self):
        reg = DetunedRegime(J=1e8, gamma=500.0, delta=2e4)
        with pytest.raises(ZeroResponseError):
            bad_cavity_xi2(reg, 0.95, reg.beta, 100.0)


def _xi2_from_angles(om_q, beta, eta, om):
    """Evaluate the phi = pi/2 beating factor from (Omega_q, beta)."""
    gamma = 1.0  # arbitrary: formula depends only on Omega_q and beta
    reg = DetunedRegime(J=om_q**2 * gamma / 2, gamma=gamma, delta=gamma * np.tan(beta))
    return float(bad_cavity_xi2_phase_readout(reg, eta, om))


class TestInstability:
    def test_no_detuning_no_instability(self):
        tau, _ = instability_time(1e8, 500.0, 0.0)
        assert tau == np.inf

    def test_inverse_power_scaling(self):
        t1, _ = instability_time(1e8, 500.0, 2000.0)
        t2, _ = instability_time(2e8, 500.0, 2000.0)
        assert t1 / t2 == pytest.approx(2.0, rel=1e-12)

    def test_consistency_with_root_damping(self):
        J, gamma, delta = 0.02 * DELTA**3, 0.01 * DELTA, DELTA
        pair = characteristic_roots(J, gamma, delta)
        tau, _ = instability_time(J, gamma, delta)
        # growth rate of the mechanical branch ~ gamma Omega_m^2 / ...;
        # compare against the perturbative imaginary part
        mech, _ = perturbative_roots(J, gamma, delta)
        assert pair.mechanical.imag == pytest.approx(mech.imag, rel=0.05)
        assert pair.mechanical.imag > 0 and np.isfinite(tau)


class TestDualCarrier:
    C1 = DetunedRegime(J=0.01 * DELTA**3, gamma=0.2 * DELTA, delta=DELTA)

    def test_single_carrier_limit(self):
        c2 = DetunedRegime(J=0.0, gamma=1.0, delta=-1.0)
        om = np.array([100.0, 300.0])
        k = dual_carrier_rigidity(self.C1, c2, 40.0, om)
        expected = dual_carrier_rigidity(self.C1, self.C1, 40.0, om) / 2
        assert np.allclose(k, expected)

    def test_antisymmetric_cancellation(self):
        c2 = DetunedRegime(J=self.C1.J, gamma=self.C1.gamma, delta=-self.C1.delta)
        k = dual_carrier_rigidity(self.C1, c2, 40.0, np.array([100.0, 500.0]))
        assert np.allclose(k, 0.0, atol=1e-20)

    def test_stable_spring_exists(self):
        # narrow positive detuning + broad negative detuning: positive
        # restoring force with positive damping (negative friction sign)
        found = False
        for j2 in np.linspace(0.001, 0.02, 40) * DELTA**3:
            c1 = DetunedRegime(J=0.005 * DELTA**3, gamma=0.05 * DELTA, delta=DELTA)
            c2 = DetunedRegime(J=j2, gamma=0.8 * DELTA, delta=-0.9 * DELTA)
            k0, fric = dual_carrier_expansion(c1, c2, 40.0)
            if k0 > 0 and fric < 0:
                found = True
                break
        assert found


class TestSecondOrderPole:
    def test_band_edge_value(self):
        om0 = 1000.0
        dom = 0.1 * om0
        pole = PoleRegimeParams(omega0=om0, separation=0.0, omega_q=dom)
        xi2 = second_order_pole_xi2(pole, 0.0, dom / 2)
        assert xi2 == pytest.approx((dom / om0) ** 2, rel=1e-12)

    def test_dip_center(self):
        om0 = 1000.0
        pole = PoleRegimeParams(omega0=om0, separation=0.0, omega_q=100.0)
        assert second_order_pole_xi2(pole, 0.0, 0.0) == pytest.approx(
            100.0**2 / (2 * om0**2)
        )

    def test_even_in_nu_and_separation(self):
        pole_p = PoleRegimeParams(omega0=1000.0, separation=40.0, omega_q=80.0)
        pole_m = PoleRegimeParams(omega0=1000.0, separation=-40.0, omega_q=80.0)
        nu = np.linspace(0, 50, 6)
        a = second_order_pole_xi2(pole_p, 0.1, nu)
        b = second_order_pole_xi2(pole_p, 0.1, -nu)
        c = second_order_pole_xi2(pole_m, 0.1, nu)
        assert np.allclose(a, b) and np.allclose(a, c)

    def test_beats_oscillator_inside_dip(self):
        om0, om_q = 1000.0, 100.0
        pole = PoleRegimeParams(omega0=om0, separation=0.0, omega_q=om_q)
        for nu in (10.0, 50.0, 200.0, 400.0):
            dbl = second_order_pole_xi2(pole, 0.0, nu)
            osc = 0.5 * (4 * nu**2 / om_q**2 + om_q**2 / om0**2)
            assert dbl < osc  # holds for |nu| < om0/2

    def test_loss_terms_increase_noise(self):
        pole = PoleRegimeParams(omega0=1000.0, separation=30.0, omega_q=70.0)
        nu = np.linspace(-60, 60, 13)
        assert np.all(
            second_order_pole_xi2(pole, 0.3, nu)
            >= second_order_pole_xi2(pole, 0.0, nu)
        )
