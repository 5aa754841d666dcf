import numpy as np
import pytest

from ifonoise.errors import ZeroResponseError
from ifonoise.interferometer import J_ALIGO, coupling_factor, sql_strain
from ifonoise.speedmeter import (
    SpeedmeterConfig,
    lossless,
    lossy_speedmeter_psd,
    lossy_speedmeter_psd_optimal,
    sagnac_coupling,
    speedmeter_noise_parts,
    speedmeter_psd,
)
from ifonoise.twophoton import db_to_r

R10DB = float(db_to_r(10.0))


def _cfg(**kw):
    base = dict(J=2 * J_ALIGO, gamma=2 * np.pi * 385, r=R10DB, mass=40.0,
                arm_length=4000.0)
    base.update(kw)
    return SpeedmeterConfig(**base)


class TestCoupling:
    def test_dc_value(self):
        cfg = _cfg()
        assert sagnac_coupling(cfg.J, cfg.gamma, 0.0) == pytest.approx(
            4 * cfg.J / cfg.gamma**3, rel=1e-14
        )

    def test_at_bandwidth(self):
        cfg = _cfg()
        assert sagnac_coupling(cfg.J, cfg.gamma, cfg.gamma) == pytest.approx(
            cfg.J / cfg.gamma**3, rel=1e-14
        )

    def test_flatness_at_tenth_bandwidth(self):
        cfg = _cfg()
        ratio = sagnac_coupling(cfg.J, cfg.gamma, 0.1 * cfg.gamma) / sagnac_coupling(
            cfg.J, cfg.gamma, 0.0
        )
        assert ratio == pytest.approx((1 / 1.01) ** 2, rel=1e-12)

    def test_monotone_decreasing(self):
        cfg = _cfg()
        om = np.linspace(0, 5 * cfg.gamma, 200)
        k = sagnac_coupling(cfg.J, cfg.gamma, om)
        assert np.all(np.diff(k) < 0)


class TestLosslessPsd:
    def test_low_frequency_shot_limit(self):
        cfg = _cfg()
        om = np.array([1e-3 * cfg.gamma])
        s = speedmeter_psd(cfg, om)
        k0 = sagnac_coupling(cfg.J, cfg.gamma, 0.0)
        shot = 0.5 * sql_strain(cfg.mass, cfg.arm_length, om) * np.exp(-2 * cfg.r) / k0
        assert s[0] == pytest.approx(shot[0], rel=1e-3)

    def test_sub_sql_plateau(self):
        cfg = _cfg()
        f = np.logspace(1, 2, 30)
        om = 2 * np.pi * f
        xi2 = speedmeter_psd(cfg, om) / sql_strain(cfg.mass, cfg.arm_length, om)
        assert np.all(xi2 < 1.0)

    def test_plateau_flat_within_3pc(self):
        cfg = _cfg()
        f_hi = cfg.gamma / (2 * np.pi * 10)
        om = 2 * np.pi * np.linspace(1.0, f_hi, 50)
        xi2 = speedmeter_psd(cfg, om) / sql_strain(cfg.mass, cfg.arm_length, om)
        assert np.ptp(xi2) / xi2.min() < 0.03

    def test_squeezing_scales_low_frequency_noise(self):
        om = np.array([2 * np.pi * 10])
        plain = speedmeter_psd(_cfg(r=0.0), om)
        squeezed = speedmeter_psd(_cfg(), om)
        assert squeezed[0] / plain[0] == pytest.approx(0.1, rel=0.01)

    def test_lossy_config_rejected(self):
        with pytest.raises(ValueError):
            speedmeter_psd(_cfg(gamma2=1.875), np.array([100.0]))

    def test_blind_angle_rejected(self):
        with pytest.raises(ZeroResponseError):
            speedmeter_psd(_cfg(), np.array([100.0]), phi_lo=0.0)


class TestLossyPsd:
    def _lossy(self):
        return _cfg(gamma=2 * np.pi * 360, gamma2=1.875, eta_d=0.95)

    def test_reduces_to_lossless(self):
        cfg = _cfg()
        om = 2 * np.pi * np.logspace(0.5, 3, 20)
        assert np.allclose(
            lossy_speedmeter_psd(cfg, om), speedmeter_psd(cfg, om), rtol=1e-12, atol=0
        )

    def test_general_angle_matches_optimal_closed_form(self):
        cfg = self._lossy()
        om = 2 * np.pi * np.logspace(0.5, 3, 20)
        a = lossy_speedmeter_psd(cfg, om)  # at the optimal angle by default
        b = lossy_speedmeter_psd_optimal(cfg, om)
        assert np.allclose(a, b, rtol=1e-12, atol=0)

    def test_arm_loss_term_scales_inverse_square(self):
        cfg = self._lossy()
        for f in (2.5, 5.0, 10.0):
            lo = speedmeter_noise_parts(cfg, np.array([2 * np.pi * f]))
            hi = speedmeter_noise_parts(cfg, np.array([2 * np.pi * 2 * f]))
            xi_lo = lo["arm_loss"] * (2 * np.pi * f) ** 2
            xi_hi = hi["arm_loss"] * (2 * np.pi * 2 * f) ** 2
            assert xi_lo[0] / xi_hi[0] == pytest.approx(4.0, abs=0.01)

    def test_position_coupling_dominates_at_low_frequency(self):
        cfg = self._lossy()
        om = 2 * np.pi * np.array([5.0, 0.5, 0.05])
        ratio = coupling_factor(cfg.J, cfg.gamma, om) / sagnac_coupling(
            cfg.J, cfg.gamma, om
        )
        assert ratio[1] / ratio[0] == pytest.approx(100.0, rel=0.01)
        assert ratio[2] / ratio[1] == pytest.approx(100.0, rel=0.01)

    def test_losses_make_things_worse(self):
        cfg = self._lossy()
        om = 2 * np.pi * np.logspace(0.5, 2, 10)
        assert np.all(
            lossy_speedmeter_psd(cfg, om) > speedmeter_psd(lossless(cfg), om)
        )

    def test_eps_arm_definition(self):
        cfg = self._lossy()
        assert cfg.eps_arm2 == pytest.approx(1.875 / (cfg.gamma - 1.875), rel=1e-12)

    def test_crosses_lossy_post_filtering_at_tens_of_hz(self):
        # the lossy speedmeter beats the loss-limited post-filtered
        # position meter below a crossover in the tens-of-Hz range
        from ifonoise.filters import ideal_filtered_psd

        cfg = self._lossy()
        f = np.logspace(np.log10(5), np.log10(200), 200)
        om = 2 * np.pi * f
        s_sm = lossy_speedmeter_psd(cfg, om)
        s_pf = ideal_filtered_psd("post", J_ALIGO, 2 * np.pi * 500, cfg.mass,
                                  cfg.arm_length, cfg.r, 0.95, om)
        sign_flip = np.where(np.diff(np.sign(s_sm - s_pf)) != 0)[0]
        assert len(sign_flip) == 1
        assert 8.0 < f[sign_flip[0]] < 60.0
        assert s_sm[0] < s_pf[0]
