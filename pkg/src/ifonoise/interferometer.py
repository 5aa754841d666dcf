"""Dual-recycled Fabry-Perot-Michelson quantum noise.

The differential mode of a power- and signal-recycled Michelson with arm
cavities reduces to a single effective detuned cavity: the signal
recycling mirror renormalizes the input coupling rate and detuning,

    gamma1 = gamma1_arm T_S / (1 + 2 sqrt(R_S) cos(2 phi_S) + R_S),
    delta  = delta_arm + 2 gamma1_arm sqrt(R_S) sin(2 phi_S) / (same),

while the effective mass equals the mirror mass M and the effective
circulating power is twice the per-arm power, J = 8 w_p I_arm / (M c L).

On top of that reduction this module evaluates the quantum noise of the
homodyne readout in two independent ways:

* the measurement / back-action / cross spectral densities
  (S_XX, S_FF, S_XF) assembled with the optical spring into the sum
  noise, and
* the full transfer-matrix sum noise built from the C1 (input field) and
  C2 (internal loss field) matrices.

Both routes must agree to float precision; the acceptance suite asserts
this.  The canonical internal normalization is signal force; strain
follows as S^h = 4 S^F / (M^2 L^2 Omega^4).
"""

from dataclasses import dataclass

import numpy as np
import scipy.constants

from .cavity import mode_matrix, resonance_denominator
from .errors import SingularFrequencyError, UnsupportedRegimeError, ZeroResponseError
from .twophoton import LightState, mat2, squeeze_matrix

HBAR = scipy.constants.hbar
C = scipy.constants.c

DEFAULT_WAVELENGTH = 1.064e-6

# J of the reference 840 kW / 40 kg / 4 km configuration
J_ALIGO = (2 * np.pi * 100.0) ** 3


def sql_force(mass, Omega):
    """Free-mass standard quantum limit in force normalization."""
    return HBAR * mass * np.asarray(Omega, dtype=float) ** 2


def sql_strain(mass, arm_length, Omega):
    """Free-mass standard quantum limit in strain normalization."""
    Omega = np.asarray(Omega, dtype=float)
    return 4 * HBAR / (mass * arm_length**2 * Omega**2)


def coupling_factor(J, gamma, Omega):
    """Optomechanical coupling K(Omega) = 2 J gamma / (Omega^2 (gamma^2 + Omega^2))."""
    Omega = np.asarray(Omega, dtype=float)
    return 2 * J * gamma / (Omega**2 * (gamma**2 + Omega**2))


@dataclass(frozen=True)
class EffectiveCavity:
    """Effective single-cavity parameters of the reduced interferometer."""

    gamma1: float
    gamma2: float
    delta: float
    J: float
    mass: float
    arm_length: float

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0 or self.gamma1 + self.gamma2 <= 0:
            raise ValueError("bandwidth parts must be non-negative, gamma > 0")
        if self.J < 0 or self.mass <= 0 or self.arm_length <= 0:
            raise ValueError("J must be non-negative; mass and length positive")

    @property
    def gamma(self):
        return self.gamma1 + self.gamma2

    @property
    def big_gamma(self):
        return np.hypot(self.gamma, self.delta)

    @property
    def beta(self):
        return np.arctan2(self.delta, self.gamma)


@dataclass(frozen=True)
class InterferometerConfig:
    """Physical parameters of the dual-recycled interferometer."""

    mass: float
    arm_length: float
    arm_power: float
    T_arm: float
    A_arm: float = 0.0
    delta_arm: float = 0.0
    R_S: float = 0.0
    phi_S: float = 0.0
    R_W: float = 0.0
    phi_W: float = 0.0
    phi_lo: float = np.pi / 2
    squeeze: LightState = LightState.vacuum()
    eta_d: float = 1.0
    wavelength: float = DEFAULT_WAVELENGTH

    def __post_init__(self):
        if self.R_S >= 1.0 or self.R_S < 0.0:
            raise ValueError("signal recycling power reflectivity must lie in [0, 1)")
        if not 0.0 < self.eta_d <= 1.0:
            raise ValueError("eta_d must lie in (0, 1]")
        if not (0.0 < self.T_arm <= 1.0 and 0.0 <= self.A_arm < 1.0):
            raise ValueError("T_arm in (0, 1], A_arm in [0, 1)")

    @property
    def tau(self):
        return self.arm_length / C

    @property
    def omega_p(self):
        return 2 * np.pi * C / self.wavelength

    @property
    def gamma1_arm(self):
        return self.T_arm / (4 * self.tau)

    @property
    def gamma2(self):
        return self.A_arm / (4 * self.tau)

    @property
    def J(self):
        return 8 * self.omega_p * self.arm_power / (self.mass * C * self.arm_length)


def scaling_law(cfg):
    """Reduce the dual-recycled interferometer to an EffectiveCavity.

    Valid for a short signal-recycling cavity, |Omega| tau_S << 1.  The
    constant recycling-cavity phases are already absorbed into the field
    definitions and never appear.
    """
    t_s = 1.0 - cfg.R_S
    denom = 1.0 + 2 * np.sqrt(cfg.R_S) * np.cos(2 * cfg.phi_S) + cfg.R_S
    if denom <= 0:
        raise ValueError("signal recycling drives the effective bandwidth to zero")
    gamma1 = cfg.gamma1_arm * t_s / denom
    delta = cfg.delta_arm + 2 * cfg.gamma1_arm * np.sqrt(cfg.R_S) * np.sin(
        2 * cfg.phi_S
    ) / denom
    return EffectiveCavity(
        gamma1=gamma1,
        gamma2=cfg.gamma2,
        delta=delta,
        J=cfg.J,
        mass=cfg.mass,
        arm_length=cfg.arm_length,
    )


def critical_coupling_power(input_power, gamma2, tau):
    """Circulating power at critical power-recycling coupling, I0 / (4 gamma2 tau)."""
    if gamma2 <= 0:
        raise ValueError("critical coupling requires a finite loss rate")
    return input_power / (4 * gamma2 * tau)


def optical_rigidity(eff, Omega):
    """Frequency-dependent optical spring K(Omega) = M J delta / D(Omega)."""
    d = resonance_denominator(eff.gamma, eff.delta, Omega)
    return eff.mass * eff.J * eff.delta / d


@dataclass(frozen=True)
class NoiseTriple:
    """Measurement, back-action and cross spectral densities.

    S_XX is displacement-normalized [m^2 s], S_FF force-normalized
    [N^2 s], S_XF the (complex) cross density [m N s].
    """

    S_XX: np.ndarray
    S_FF: np.ndarray
    S_XF: np.ndarray

    def uncertainty_product(self):
        """S_XX S_FF - |S_XF|^2; >= hbar^2/4, equality when lossless."""
        return self.S_XX * self.S_FF - np.abs(self.S_XF) ** 2


def _homodyne_vector(phi_lo):
    return np.array([np.cos(phi_lo), np.sin(phi_lo)])


def _signal_vector(eff, Omega):
    """D(Omega) = (-delta, gamma - i Omega): optical response direction."""
    Omega = np.asarray(Omega, dtype=float)
    g = eff.gamma - 1j * Omega
    dvec = np.stack(np.broadcast_arrays(-eff.delta * np.ones_like(g), g), axis=-1)
    return dvec


def _check_response(eff, phi_lo, Omega):
    h = _homodyne_vector(phi_lo)
    hd = np.einsum("i,...i->...", h, _signal_vector(eff, Omega))
    if np.any(np.abs(hd) == 0.0):
        raise ZeroResponseError("homodyne quadrature is blind to the signal")
    return h, hd


def fpmi_noise_triple(eff, phi_lo, squeeze, eta_d, Omega):
    """Quantum noise triple of the reduced interferometer.

    ``squeeze`` is the LightState injected into the dark port; ``eta_d``
    the photodetector quantum efficiency.  Loss enters twice: through
    the gamma2 part of the bandwidth (internal vacuum) and through the
    detector term eps_d^2 = 1/eta_d - 1.
    """
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0.0):
        raise SingularFrequencyError("triple diverges at Omega = 0")
    h, hd = _check_response(eff, phi_lo, Omega)
    eps_d2 = 1.0 / eta_d - 1.0
    s2 = squeeze_matrix(2 * squeeze.r, squeeze.theta) if squeeze.is_squeezed else np.eye(2)

    lmat = mode_matrix(eff.gamma, eff.delta, Omega)
    d = resonance_denominator(eff.gamma, eff.delta, Omega)
    eye = np.eye(2)
    r1 = 2 * eff.gamma1 * lmat - eye
    tmat = 2 * np.sqrt(eff.gamma1 * eff.gamma2) * lmat

    m, j, g1, g2 = eff.mass, eff.J, eff.gamma1, eff.gamma2
    e1 = np.array([1.0, 0.0])

    v = np.einsum("...ji,j->...i", np.conj(r1), h)  # R1^dag H
    meas = np.einsum("...i,ij,...j->...", np.conj(v), s2 - eye, v).real + 1.0 + eps_d2
    s_xx = HBAR / (4 * m * j * g1) * np.abs(d) ** 2 / np.abs(hd) ** 2 * meas

    ldag_e1 = np.einsum("...ji,j->...i", np.conj(lmat), e1)
    s_ff = HBAR * m * j * np.einsum(
        "...i,ij,...j->...", np.conj(ldag_e1), g1 * s2 + g2 * eye, ldag_e1
    ).real

    mix = r1 @ s2 + (np.sqrt(g2 / g1) * tmat if g2 > 0 else 0.0 * tmat)
    s_xf = (
        0.5
        * HBAR
        * d
        / hd
        * np.einsum("i,...ij,...j->...", h, mix, ldag_e1)
    )
    return NoiseTriple(S_XX=s_xx, S_FF=s_ff, S_XF=s_xf)


def force_noise_from_triple(triple, K, mass, Omega):
    """Assemble the sum force noise from a NoiseTriple and the spring K.

    Uses the expanded form |K - M Omega^2|^2 S_XX
    + 2 Re[(K - M Omega^2) S_XF] + S_FF, finite at the spring resonance.
    """
    Omega = np.asarray(Omega, dtype=float)
    inv_chi = K - mass * Omega**2
    return (
        np.abs(inv_chi) ** 2 * triple.S_XX
        + 2 * (inv_chi * triple.S_XF).real
        + triple.S_FF
    )


def sum_noise_h_from_triple(eff, phi_lo, squeeze, eta_d, Omega):
    """Strain sum noise via the triple-assembly route (oracle pair)."""
    Omega = np.asarray(Omega, dtype=float)
    triple = fpmi_noise_triple(eff, phi_lo, squeeze, eta_d, Omega)
    s_f = force_noise_from_triple(triple, optical_rigidity(eff, Omega), eff.mass, Omega)
    return 4 * s_f / (eff.mass**2 * eff.arm_length**2 * Omega**4)


def sum_noise_h(eff, phi_lo, squeeze, eta_d, Omega):
    """Strain sum noise via the full transfer-matrix route.

    Evaluates the C1/C2 matrix form with the squeezed input PSD and both
    loss channels (internal gamma2 vacuum and detector inefficiency).
    """
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0.0):
        raise SingularFrequencyError("sum noise diverges at Omega = 0")
    h, hd = _check_response(eff, phi_lo, Omega)
    eps_d2 = 1.0 / eta_d - 1.0
    s2 = squeeze_matrix(2 * squeeze.r, squeeze.theta) if squeeze.is_squeezed else np.eye(2)

    m, j, g1, g2, delta = eff.mass, eff.J, eff.gamma1, eff.gamma2, eff.delta
    gamma = eff.gamma
    g_i = gamma - 1j * Omega
    d = resonance_denominator(gamma, delta, Omega)
    jd_w2 = j * delta / Omega**2

    diag1 = 2 * g1 * g_i - d + jd_w2
    c1 = mat2(diag1, -2 * g1 * delta * np.ones_like(diag1),
              2 * g1 * delta - 2 * j * g1 / Omega**2, diag1)
    c2 = 2 * np.sqrt(g1 * g2) * mat2(
        g_i, -delta * np.ones_like(g_i), delta - j / Omega**2, g_i
    )

    def quad_form(mat):
        hm = np.einsum("i,...ij->...j", h, mat)
        return hm

    hc1 = quad_form(c1)
    hc2 = quad_form(c2)
    noise = np.einsum("...i,ij,...j->...", np.conj(hc1), s2, hc1).real
    noise = noise + np.einsum("...i,...i->...", np.conj(hc2), hc2).real
    noise = noise + np.abs(d - jd_w2) ** 2 * eps_d2
    return HBAR / (m * j * g1 * eff.arm_length**2) * noise / np.abs(hd) ** 2


def caves_psd(J, gamma, mass, arm_length, r, eta_d, Omega):
    """Closed-form sum noise of the classically optimized tuned meter.

    Resonance-tuned interferometer read out in the phase quadrature with
    a phase-squeezed (theta = 0) input:
    S^h = (2 hbar / (M L^2 Omega^2)) [(e^{-2r} + eps_d^2)/K + K e^{2r}].
    """
    Omega = np.asarray(Omega, dtype=float)
    kappa = coupling_factor(J, gamma, Omega)
    eps_d2 = 1.0 / eta_d - 1.0
    return (
        2
        * HBAR
        / (mass * arm_length**2 * Omega**2)
        * ((np.exp(-2 * r) + eps_d2) / kappa + kappa * np.exp(2 * r))
    )


def lossy_redefinition(gamma1, gamma2, eta_d):
    """Unified quantum efficiency: eta = (gamma1/gamma) eta_d, eps = sqrt(1/eta - 1)."""
    if not 0.0 < eta_d <= 1.0:
        raise ValueError("eta_d must lie in (0, 1]")
    eta = gamma1 / (gamma1 + gamma2) * eta_d
    return eta, np.sqrt(1.0 / eta - 1.0)


def detuned_noise_triple(big_gamma, beta, phi_lo, eta, J, mass, Omega):
    """Vacuum-input noise triple of the lossy-equivalent detuned meter.

    ``big_gamma`` and ``beta`` parametrize gamma = Gamma cos(beta) and
    delta = Gamma sin(beta); ``eta`` is the unified quantum efficiency.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    if big_gamma <= 0:
        raise ValueError("Gamma must be positive")
    Omega = np.asarray(Omega, dtype=float)
    gamma = big_gamma * np.cos(beta)
    delta = big_gamma * np.sin(beta)
    phi = phi_lo - beta
    denom = big_gamma**2 * np.sin(phi) ** 2 + Omega**2 * np.sin(phi_lo) ** 2
    if np.any(denom == 0.0):
        raise ZeroResponseError("readout carries no signal at this frequency")
    d2 = np.abs(resonance_denominator(gamma, delta, Omega)) ** 2
    s_xx = HBAR / (4 * mass * J * gamma * eta) * d2 / denom
    s_ff = HBAR * mass * J * gamma * (big_gamma**2 + Omega**2) / d2
    s_xf = (
        0.5
        * HBAR
        * (big_gamma * np.cos(phi) - 1j * Omega * np.cos(phi_lo))
        / (big_gamma * np.sin(phi) - 1j * Omega * np.sin(phi_lo))
    )
    return NoiseTriple(S_XX=s_xx, S_FF=s_ff, S_XF=s_xf)


def detuned_sum_noise_h(eff, phi_lo, eta_d, Omega):
    """Vacuum-input sum noise of the detuned interferometer (strain units).

    The two loss channels are folded into the single unified efficiency
    eta = (gamma1/gamma) eta_d.  Squeezed input in a detuned
    interferometer is not modeled; use `sum_noise_h` for the general
    transfer-matrix evaluation instead.
    """
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0.0):
        raise SingularFrequencyError("sum noise diverges at Omega = 0")
    gamma, delta, j, m = eff.gamma, eff.delta, eff.J, eff.mass
    big_gamma, beta = eff.big_gamma, eff.beta
    phi = phi_lo - beta
    eta, eps = lossy_redefinition(eff.gamma1, eff.gamma2, eta_d)
    denom = Omega**2 * np.sin(phi_lo) ** 2 + big_gamma**2 * np.sin(phi) ** 2
    if np.any(denom == 0.0):
        raise ZeroResponseError("readout carries no signal at this frequency")
    d = resonance_denominator(gamma, delta, Omega)
    term1 = (
        gamma**2
        - delta**2
        + Omega**2
        + j / Omega**2 * (delta - gamma * np.sin(2 * phi_lo))
    ) ** 2
    term2 = 4 * gamma**2 * (delta - j / Omega**2 * np.sin(phi_lo) ** 2) ** 2
    term3 = eps**2 * np.abs(d - j * delta / Omega**2) ** 2
    return (
        HBAR
        / (m * eff.arm_length**2 * j * gamma)
        * (term1 + term2 + term3)
        / denom
    )


def budget_noise_h(eff, phi_lo, squeeze, eta_d, Omega):
    """Sum noise dispatcher honoring the supported squeezing regimes.

    Squeezed input is modeled for the resonance-tuned interferometer
    only; a detuned request with squeezing raises UnsupportedRegimeError.
    """
    if squeeze.is_squeezed and eff.delta != 0.0:
        raise UnsupportedRegimeError(
            "squeezed input is only modeled for the resonance-tuned interferometer"
        )
    return sum_noise_h(eff, phi_lo, squeeze, eta_d, Omega)
