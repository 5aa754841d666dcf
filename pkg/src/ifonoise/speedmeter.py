"""Sagnac speedmeter quantum noise.

The zero-area Sagnac topology makes each beam visit both arms, so the
readout senses the relative mirror velocity.  The optomechanical
coupling becomes

    K_SM(Omega) = 4 J gamma / (gamma^2 + Omega^2)^2,

flat below the bandwidth, which lets a frequency-independent homodyne
angle phi_LO = arccot K_SM(0) cancel the back-action over a broad band.
For the given input power the circulating power (and hence J) is twice
the position-meter value; presets encode the doubled J explicitly.

Optical losses enter through the detector term eps_d and through the
arm-loss admixture eps_arm^2 = gamma2/gamma1, whose back-action carries
the position-meter coupling K(Omega) and therefore dominates at low
frequency.
"""

from dataclasses import dataclass, replace

import numpy as np
import scipy.constants

from .errors import ZeroResponseError
from .interferometer import coupling_factor, sql_strain

HBAR = scipy.constants.hbar


@dataclass(frozen=True)
class SpeedmeterConfig:
    """Sagnac speedmeter parameters (doubled-power J convention)."""

    J: float
    gamma: float
    gamma2: float = 0.0
    r: float = 0.0
    phi_lo: float = None
    eta_d: float = 1.0
    mass: float = 40.0
    arm_length: float = 4000.0

    def __post_init__(self):
        if self.J < 0 or self.gamma <= 0:
            raise ValueError("J must be non-negative and gamma positive")
        if not 0 <= self.gamma2 < self.gamma:
            raise ValueError("gamma2 must lie in [0, gamma)")
        if not 0 < self.eta_d <= 1:
            raise ValueError("eta_d must lie in (0, 1]")

    @property
    def gamma1(self):
        return self.gamma - self.gamma2

    @property
    def eps_d(self):
        return np.sqrt(1.0 / self.eta_d - 1.0)

    @property
    def eps_arm2(self):
        return self.gamma2 / self.gamma1

    def optimal_phi_lo(self):
        """Low-frequency optimized readout angle arccot[K_SM(0)/(1 + eps_d^2 e^{-2r})]."""
        k0 = sagnac_coupling(self.J, self.gamma, 0.0)
        return np.arctan2(1.0 + self.eps_d**2 * np.exp(-2 * self.r), k0)


def sagnac_coupling(J, gamma, Omega):
    """Speedmeter coupling K_SM(Omega) = 4 J gamma / (gamma^2 + Omega^2)^2."""
    Omega = np.asarray(Omega, dtype=float)
    return 4 * J * gamma / (gamma**2 + Omega**2) ** 2


def speedmeter_psd(cfg, Omega, phi_lo=None):
    """Lossless speedmeter sum noise in strain units.

    With the default phi_LO = arccot K_SM(0) the back-action term carries
    the suppression factor Omega^4 (2 gamma^2 + Omega^2)^2 / gamma^8 and
    the noise beats the SQL over a broad low-frequency band.
    """
    if cfg.gamma2 != 0.0 or cfg.eta_d != 1.0:
        raise ValueError("lossless form requires gamma2 = 0 and eta_d = 1")
    Omega = np.asarray(Omega, dtype=float)
    phi = _resolve_angle(cfg, phi_lo)
    ksm = sagnac_coupling(cfg.J, cfg.gamma, Omega)
    cot = np.cos(phi) / np.sin(phi)
    e2r = np.exp(2 * cfg.r)
    body = (np.exp(-2 * cfg.r) + e2r * cot**2) / ksm - 2 * e2r * cot + ksm * e2r
    return 0.5 * sql_strain(cfg.mass, cfg.arm_length, Omega) * body


def lossy_speedmeter_psd(cfg, Omega, phi_lo=None):
    """Speedmeter sum noise with detector and arm losses (strain units)."""
    Omega = np.asarray(Omega, dtype=float)
    parts = speedmeter_noise_parts(cfg, Omega, phi_lo)
    return (parts["shot"] + parts["back_action"] + parts["correlation"]
            + parts["arm_loss"])


def speedmeter_noise_parts(cfg, Omega, phi_lo=None):
    """Shot, back-action, correlation and arm-loss parts of the sum noise.

    The correlation part (from the amplitude admixture in the readout)
    is negative: it is what cancels the back-action at low frequency.
    """
    Omega = np.asarray(Omega, dtype=float)
    phi = _resolve_angle(cfg, phi_lo)
    ksm = sagnac_coupling(cfg.J, cfg.gamma, Omega)
    cot = np.cos(phi) / np.sin(phi)
    e2r, em2r = np.exp(2 * cfg.r), np.exp(-2 * cfg.r)
    half_sql = 0.5 * sql_strain(cfg.mass, cfg.arm_length, Omega)
    shot = half_sql * (em2r + e2r * cot**2 + cfg.eps_d**2 / np.sin(phi) ** 2) / ksm
    back_action = half_sql * ksm * e2r
    correlation = -half_sql * 2 * e2r * cot * np.ones_like(ksm)
    arm_loss = half_sql * cfg.eps_arm2 * coupling_factor(cfg.J, cfg.gamma, Omega)
    return {"shot": shot, "back_action": back_action,
            "correlation": correlation, "arm_loss": arm_loss}


def lossy_speedmeter_psd_optimal(cfg, Omega):
    """Closed form at the loss-optimized angle (oracle for the general form).

    S^h = (S_SQL/2) { (e^{-2r} + eps_d^2)/K_SM
          + K_SM/(1 + eps_d^2 e^{-2r}) [Omega^4 (2g^2+Omega^2)^2 e^{2r}/g^8 + eps_d^2]
          + eps_arm^2 K }.
    """
    Omega = np.asarray(Omega, dtype=float)
    g = cfg.gamma
    ksm = sagnac_coupling(cfg.J, g, Omega)
    supp = Omega**4 * (2 * g**2 + Omega**2) ** 2 / g**8
    em2r, e2r = np.exp(-2 * cfg.r), np.exp(2 * cfg.r)
    body = (
        (em2r + cfg.eps_d**2) / ksm
        + ksm / (1 + cfg.eps_d**2 * em2r) * (supp * e2r + cfg.eps_d**2)
        + cfg.eps_arm2 * coupling_factor(cfg.J, g, Omega)
    )
    return 0.5 * sql_strain(cfg.mass, cfg.arm_length, Omega) * body


def _resolve_angle(cfg, phi_lo):
    phi = cfg.phi_lo if phi_lo is None else phi_lo
    if phi is None:
        phi = cfg.optimal_phi_lo()
    if abs(np.sin(phi)) < 1e-12:
        raise ZeroResponseError("phi_lo = 0 carries no signal")
    return phi


def lossless(cfg):
    """Copy of a config with losses switched off."""
    return replace(cfg, gamma2=0.0, eta_d=1.0)
