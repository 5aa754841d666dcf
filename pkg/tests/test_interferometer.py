import numpy as np
import pytest
import scipy.constants

from ifonoise.errors import (
    SingularFrequencyError,
    UnsupportedRegimeError,
    ZeroResponseError,
)
from ifonoise.interferometer import (
    J_ALIGO,
    EffectiveCavity,
    InterferometerConfig,
    budget_noise_h,
    caves_psd,
    coupling_factor,
    critical_coupling_power,
    detuned_noise_triple,
    detuned_sum_noise_h,
    fpmi_noise_triple,
    lossy_redefinition,
    scaling_law,
    sql_strain,
    sum_noise_h,
    sum_noise_h_from_triple,
)
from ifonoise.twophoton import LightState

HBAR = scipy.constants.hbar

OMEGA = 2 * np.pi * np.logspace(np.log10(5), np.log10(5000), 60)


def _eff(**kw):
    base = dict(gamma1=2 * np.pi * 500, gamma2=0.0, delta=0.0, J=J_ALIGO,
                mass=40.0, arm_length=4000.0)
    base.update(kw)
    return EffectiveCavity(**base)


class TestScalingLaw:
    def _cfg(self, **kw):
        base = dict(mass=40.0, arm_length=4000.0, arm_power=840e3, T_arm=0.014)
        base.update(kw)
        return InterferometerConfig(**base)

    def test_no_recycling(self):
        cfg = self._cfg(R_S=0.0, delta_arm=123.0)
        eff = scaling_law(cfg)
        assert eff.gamma1 == pytest.approx(cfg.gamma1_arm)
        assert eff.delta == pytest.approx(123.0)

    def test_tuned_recycling_narrows_bandwidth(self):
        cfg = self._cfg(R_S=0.81, phi_S=0.0)
        eff = scaling_law(cfg)
        assert eff.gamma1 == pytest.approx(cfg.gamma1_arm * 0.19 / 3.61, rel=1e-12)
        assert eff.delta == 0.0

    def test_quarter_wave_recycling_detunes(self):
        cfg = self._cfg(R_S=0.5, phi_S=np.pi / 4, delta_arm=0.0)
        eff = scaling_law(cfg)
        expected = 2 * cfg.gamma1_arm * np.sqrt(0.5) / 1.5
        assert eff.delta == pytest.approx(expected, rel=1e-12)

    def test_effective_mass_and_power_convention(self):
        cfg = self._cfg()
        eff = scaling_law(cfg)
        assert eff.mass == cfg.mass
        # J folds the doubled circulating power: 8 w_p I_arm / (M c L)
        assert eff.J == pytest.approx(J_ALIGO, rel=0.02)

    def test_rejects_overunity_reflectivity(self):
        with pytest.raises(ValueError):
            self._cfg(R_S=1.0)

    def test_critical_coupling_power(self):
        cfg = self._cfg(A_arm=1e-4)
        tau = cfg.tau
        assert critical_coupling_power(125.0, cfg.gamma2, tau) == pytest.approx(
            125.0 / (4 * cfg.gamma2 * tau)
        )


class TestNoiseTriple:
    def test_lossless_uncertainty_equality(self):
        rng = np.random.RandomState(0)
        for _ in range(8):
            eff = _eff(
                gamma1=rng.uniform(100, 5000),
                delta=rng.uniform(-3000, 3000),
                J=rng.uniform(0.01, 10) * J_ALIGO,
            )
            st = LightState.squeezed(rng.uniform(0, 1.5), rng.uniform(-2, 2))
            t = fpmi_noise_triple(eff, rng.uniform(0.3, 2.8), st, 1.0, OMEGA)
            assert np.allclose(
                t.uncertainty_product(), HBAR**2 / 4, rtol=1e-9, atol=0
            )

    def test_lossy_uncertainty_excess(self):
        eff = _eff(gamma2=1.875, delta=500.0)
        t = fpmi_noise_triple(eff, 1.0, LightState.vacuum(), 0.95, OMEGA)
        assert np.all(t.uncertainty_product() > HBAR**2 / 4)

    def test_cross_density_vanishes_phase_readout(self):
        t = fpmi_noise_triple(_eff(), np.pi / 2, LightState.vacuum(), 1.0, OMEGA)
        assert np.allclose(np.abs(t.S_XF), 0.0, atol=HBAR * 1e-14)

    def test_back_action_reduction_tuned(self):
        eff = _eff()
        t = fpmi_noise_triple(eff, np.pi / 2, LightState.vacuum(), 1.0, OMEGA)
        kappa = coupling_factor(eff.J, eff.gamma, OMEGA)
        expected = HBAR * eff.mass * OMEGA**2 * kappa / 2
        assert np.allclose(t.S_FF, expected, rtol=1e-12, atol=0)

    def test_zero_frequency_rejected(self):
        with pytest.raises(SingularFrequencyError):
            fpmi_noise_triple(_eff(), 1.0, LightState.vacuum(), 1.0, np.array([0.0]))


class TestSumNoise:
    def test_two_path_agreement(self):
        cases = [
            (_eff(), np.pi / 2, LightState.vacuum(), 1.0),
            (_eff(), np.pi / 2, LightState.squeezed_db(10), 0.95),
            (_eff(gamma2=1.875, delta=2 * np.pi * 250), 0.9, LightState.vacuum(), 0.95),
            (_eff(delta=-800.0, J=3 * J_ALIGO), 2.2, LightState.vacuum(), 0.9),
        ]
        for eff, phi, st, eta in cases:
            a = sum_noise_h(eff, phi, st, eta, OMEGA)
            b = sum_noise_h_from_triple(eff, phi, st, eta, OMEGA)
            assert np.allclose(a, b, rtol=1e-10, atol=0)

    def test_caves_identity(self):
        eff = _eff()
        for r, eta_d in ((0.0, 1.0), (1.1512925464970228, 0.95)):
            st = LightState.squeezed(r, 0.0) if r else LightState.vacuum()
            a = sum_noise_h(eff, np.pi / 2, st, eta_d, OMEGA)
            c = caves_psd(eff.J, eff.gamma, eff.mass, eff.arm_length, r, eta_d, OMEGA)
            assert np.allclose(a, c, rtol=1e-10, atol=0)

    def test_squeezing_scales_shot_noise(self):
        eff = _eff()
        om = np.array([10 * eff.gamma])
        plain = sum_noise_h(eff, np.pi / 2, LightState.vacuum(), 1.0, om)
        sq = sum_noise_h(eff, np.pi / 2, LightState.squeezed_db(10), 1.0, om)
        assert sq / plain == pytest.approx(0.1, rel=0.01)

    def test_ordinary_preset_minimum_location(self):
        # the resonance-tuned reference curve dips where K(Omega) ~ 1,
        # i.e. in the 55-75 Hz range for the 840 kW configuration
        f = np.logspace(np.log10(5), np.log10(5000), 600)
        s = sum_noise_h(_eff(), np.pi / 2, LightState.vacuum(), 0.95, 2 * np.pi * f)
        xi2 = s / sql_strain(40.0, 4000.0, 2 * np.pi * f)
        fmin = f[np.argmin(xi2)]
        assert 55 < fmin < 75

    def test_blind_readout_rejected(self):
        with pytest.raises(ZeroResponseError):
            sum_noise_h(_eff(), 0.0, LightState.vacuum(), 1.0, OMEGA)

    def test_detuned_squeezed_unsupported(self):
        with pytest.raises(UnsupportedRegimeError):
            budget_noise_h(
                _eff(delta=100.0), np.pi / 2, LightState.squeezed_db(10), 1.0, OMEGA
            )


class TestLossyRedefinition:
    def test_lossless(self):
        eta, eps = lossy_redefinition(100.0, 0.0, 1.0)
        assert eta == 1.0 and eps == 0.0

    def test_balanced_loss(self):
        eta, eps = lossy_redefinition(100.0, 100.0, 1.0)
        assert eta == pytest.approx(0.5)
        assert eps == pytest.approx(1.0)

    def test_detector_dominated(self):
        eta, eps = lossy_redefinition(1e4, 1e-2, 0.95)
        assert eps == pytest.approx(0.2294, abs=2e-3)

    def test_rejects_bad_efficiency(self):
        with pytest.raises(ValueError):
            lossy_redefinition(1.0, 0.0, 1.2)


class TestDetunedTriple:
    def test_matches_resonance_tuned_triple(self):
        eff = _eff()
        t1 = fpmi_noise_triple(eff, 1.2, LightState.vacuum(), 1.0, OMEGA)
        t2 = detuned_noise_triple(eff.big_gamma, 0.0, 1.2, 1.0, eff.J, eff.mass, OMEGA)
        assert np.allclose(t1.S_XX, t2.S_XX, rtol=1e-12, atol=0)
        assert np.allclose(t1.S_FF, t2.S_FF, rtol=1e-12, atol=0)
        assert np.allclose(t1.S_XF, t2.S_XF, rtol=1e-12, atol=1e-80)

    def test_matches_general_triple_detuned(self):
        eff = _eff(gamma1=2 * np.pi * 300, delta=2 * np.pi * 250)
        eta, _ = lossy_redefinition(eff.gamma1, eff.gamma2, 0.95)
        t1 = fpmi_noise_triple(eff, 1.1, LightState.vacuum(), 0.95, OMEGA)
        t2 = detuned_noise_triple(
            eff.big_gamma, eff.beta, 1.1, eta, eff.J, eff.mass, OMEGA
        )
        for name in ("S_XX", "S_FF", "S_XF"):
            assert np.allclose(
                getattr(t1, name), getattr(t2, name), rtol=1e-12, atol=0
            )

    def test_lossless_uncertainty_equality(self):
        t = detuned_noise_triple(3000.0, 0.8, 1.0, 1.0, J_ALIGO, 40.0, OMEGA)
        assert np.allclose(t.uncertainty_product(), HBAR**2 / 4, rtol=1e-9, atol=0)

    def test_high_frequency_cross_limit(self):
        # phi_lo = pi/2: S_XF -> (hbar/2) cos(phi_lo)/sin(phi_lo) = 0
        t = detuned_noise_triple(
            3000.0, 0.8, np.pi / 2, 1.0, J_ALIGO, 40.0, np.array([1e12])
        )
        assert abs(t.S_XF[0]) < HBAR * 1e-6

    def test_detuned_sum_noise_matches_transfer_matrix(self):
        eff = _eff(gamma1=2 * np.pi * 300, gamma2=1.875, delta=2 * np.pi * 250)
        a = sum_noise_h(eff, 0.9, LightState.vacuum(), 0.95, OMEGA)
        b = detuned_sum_noise_h(eff, 0.9, 0.95, OMEGA)
        assert np.allclose(a, b, rtol=1e-10, atol=0)

    def test_rejects_bad_eta(self):
        with pytest.raises(ValueError):
            detuned_noise_triple(3000.0, 0.8, 1.0, 0.0, J_ALIGO, 40.0, OMEGA)
