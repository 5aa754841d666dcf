"""Frequency-dependent squeeze/homodyne angles and filter cavities.

A detuned cavity reflects the two-photon quadratures through a
frequency-dependent rotation; placed before the interferometer it rotates
the squeeze angle (pre-filtering), placed before the detector it rotates
the effective homodyne angle (post-filtering).  For a tuned
interferometer with gamma > J^(1/3) a single cavity with

    gamma_f = delta_f = gamma_f0 = sqrt(J / gamma)

realizes the target dependences tan(theta) = K(Omega) (pre) or
cot(phi_LO) = K / (1 + eps_d^2 e^{-2r}) (post).  The ideal filtered
spectral densities and the full lossy-cavity forms are both provided;
the latter reduce to the former for a lossless cavity within the
bad-cavity band.
"""

from dataclasses import dataclass

import numpy as np
import scipy.constants

from .cavity import resonance_denominator
from .errors import UnsupportedRegimeError, ZeroResponseError
from .interferometer import coupling_factor
from .twophoton import mat2, squeeze_matrix

HBAR = scipy.constants.hbar
C = scipy.constants.c


@dataclass(frozen=True)
class FilterCavityConfig:
    """Filter cavity: length, input transmissivity, loss per bounce, detuning."""

    length: float
    T_f: float
    A_f: float = 0.0
    detuning: float = 0.0

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError("length must be positive")
        if not (0 <= self.T_f <= 1 and 0 <= self.A_f <= 1):
            raise ValueError("T_f and A_f must lie in [0, 1]")
        if self.T_f + self.A_f == 0:
            raise ValueError("filter cavity must couple to its input port")

    @classmethod
    def from_rates(cls, gamma_f1, delta_f, gamma_f2=0.0, length=50.0):
        """Build a config from angular rates (rad/s) at a given length."""
        return cls(
            length=length,
            T_f=4 * length * gamma_f1 / C,
            A_f=4 * length * gamma_f2 / C,
            detuning=delta_f,
        )

    @property
    def gamma_f1(self):
        return C * self.T_f / (4 * self.length)

    @property
    def gamma_f2(self):
        return C * self.A_f / (4 * self.length)

    @property
    def gamma_f(self):
        return self.gamma_f1 + self.gamma_f2

    @property
    def specific_loss(self):
        return self.A_f / self.length


def filter_reflection(fc, Omega):
    """Reflection and loss-transmission matrices of the filter cavity.

    The pair satisfies the completeness relation
    R_f R_f^dag + T_f T_f^dag = I; for a lossless cavity the reflection
    is a pure rotation P[theta_f] times a phase.
    """
    Omega = np.asarray(Omega, dtype=float)
    g1, g2, gf, df = fc.gamma_f1, fc.gamma_f2, fc.gamma_f, fc.detuning
    d = resonance_denominator(gf, df, Omega)
    diag = (g1**2 - g2**2 - df**2 + Omega**2 + 2j * Omega * g2) / d
    off = 2 * g1 * df / d
    refl = mat2(diag, -off, off, diag)
    g_i = (gf - 1j * Omega) / d
    trans = 2 * np.sqrt(g1 * g2) * mat2(g_i, -df / d, df / d, g_i)
    return refl, trans


def rotation_angle(fc, Omega):
    """Quadrature rotation angle theta_f(Omega) of the lossless reflection.

    Continuous branch through the two-argument arctangent of
    (2 gamma_f delta_f, gamma_f^2 - delta_f^2 + Omega^2); unwrap along a
    grid with `unwrap_angle` when the denominator crosses zero.
    """
    Omega = np.asarray(Omega, dtype=float)
    return np.arctan2(
        2 * fc.gamma_f * fc.detuning, fc.gamma_f**2 - fc.detuning**2 + Omega**2
    )


def unwrap_angle(theta):
    """Remove 2 pi jumps from an angle sampled along a frequency grid."""
    return np.unwrap(np.asarray(theta, dtype=float))


def ideal_angles(variant, kappa, r, eps_d):
    """Target squeeze/homodyne angles for a tuned interferometer.

    ``kappa`` is the optomechanical coupling K(Omega) (array ok).
    Returns (theta, phi_lo) for variant 'pre', 'post' or 'double'.
    """
    kappa = np.asarray(kappa, dtype=float)
    if variant == "pre":
        return np.arctan(kappa), np.full_like(kappa, np.pi / 2)
    if variant == "post":
        phi = np.arctan2(1.0 + eps_d**2 * np.exp(-2 * r), kappa)
        return np.zeros_like(kappa), phi
    if variant == "double":
        phi = np.arctan2(1.0 + eps_d**2 * np.exp(2 * r), kappa)
        theta = np.arctan(eps_d**2 * kappa / (np.exp(-2 * r) + eps_d**2))
        return theta, phi
    raise ValueError("variant must be 'pre', 'post' or 'double'")


def ideal_filtered_psd(variant, J, gamma, mass, arm_length, r, eta_d, Omega,
                       delta=0.0):
    """Sum noise with ideal frequency-dependent squeeze/homodyne angles.

    pre:    (e^{-2r} + eps_d^2)/K + K e^{-2r}
    post:   (e^{-2r} + eps_d^2)/K + eps_d^2 K / (1 + eps_d^2 e^{-2r})
    double: (e^{-2r} + eps_d^2)/K + eps_d^2 K / (1 + eps_d^2 e^{+2r})
    in units of 2 hbar / (M L^2 Omega^2).
    """
    if delta != 0.0:
        raise UnsupportedRegimeError("ideal filtering assumes a tuned interferometer")
    Omega = np.asarray(Omega, dtype=float)
    kappa = coupling_factor(J, gamma, Omega)
    eps2 = 1.0 / eta_d - 1.0
    shot = (np.exp(-2 * r) + eps2) / kappa
    if variant == "pre":
        ba = kappa * np.exp(-2 * r)
    elif variant == "post":
        ba = eps2 * kappa / (1.0 + eps2 * np.exp(-2 * r))
    elif variant == "double":
        ba = eps2 * kappa / (1.0 + eps2 * np.exp(2 * r))
    else:
        raise ValueError("variant must be 'pre', 'post' or 'double'")
    return 2 * HBAR / (mass * arm_length**2 * Omega**2) * (shot + ba)


def loss_limited_minimum(mass, arm_length, r, eta_d, Omega):
    """Minimum of the double-filtered noise over the coupling strength.

    Returns (S_min, K_opt): S_min = 4 hbar eps_d e^{-r} / (M L^2 Omega^2)
    at K = 1/(eps_d e^r) + eps_d e^r.  The SQL beating floor is
    xi_min = sqrt(eps_d e^{-r}).
    """
    Omega = np.asarray(Omega, dtype=float)
    eps_d = np.sqrt(1.0 / eta_d - 1.0)
    if eps_d == 0.0:
        raise ZeroResponseError("no loss floor without detector loss")
    k_opt = 1.0 / (eps_d * np.exp(r)) + eps_d * np.exp(r)
    s_min = 4 * HBAR * eps_d * np.exp(-r) / (mass * arm_length**2 * Omega**2)
    return s_min, k_opt


def design_rates(scheme, J, gamma, r=0.0, eta_d=1.0):
    """Lossless filter-cavity rates realizing the target angle dependence.

    pre:  gamma_f = delta_f = gamma_f0 = sqrt(J/gamma);
    post: the same divided by (1 + eps_d^2 e^{-2r})^(1/2).
    """
    gf0 = np.sqrt(J / gamma)
    if scheme == "pre":
        return gf0, gf0
    if scheme == "post":
        eps2 = 1.0 / eta_d - 1.0
        scale = np.sqrt(1.0 + eps2 * np.exp(-2 * r))
        return gf0 / scale, gf0 / scale
    raise ValueError("scheme must be 'pre' or 'post'")


def loss_thresholds(J, gamma, eta_d):
    """Specific-loss limits (tight, crude) for a useful filter cavity.

    tight: A_f/L_f << 4 gamma_f0 eps_d^2 / c  (losses below detector loss)
    crude: A_f/L_f << 4 gamma_f0 / c          (cavity still works at all)
    """
    gf0 = np.sqrt(J / gamma)
    eps2 = 1.0 / eta_d - 1.0
    return 4 * gf0 * eps2 / C, 4 * gf0 / C


def filtered_sum_noise(scheme, fc, J, gamma, mass, arm_length, r, eta_d, Omega):
    """Sum noise of the tuned interferometer with one real filter cavity.

    ``scheme`` is 'pre' (squeezed vacuum reflects off the cavity before
    injection) or 'post' (the interferometer output reflects off the
    cavity before the phase-quadrature homodyne).  The squeeze angle is
    fixed at theta = 0 and the cavity noise input is vacuum.
    """
    Omega = np.asarray(Omega, dtype=float)
    kappa = coupling_factor(J, gamma, Omega)
    eps2 = 1.0 / eta_d - 1.0
    refl, trans = filter_reflection(fc, Omega)
    s2 = squeeze_matrix(2 * r, 0.0)
    kmat = mat2(
        np.ones_like(kappa), np.zeros_like(kappa), -kappa, np.ones_like(kappa)
    )
    h = np.array([0.0, 1.0])

    if scheme == "pre":
        core = kmat @ (refl @ s2 @ hc(refl) + trans @ hc(trans)) @ hc(kmat)
        noise = np.einsum("i,...ij,j->...", h, core, h).real + eps2
        gain = 1.0
    elif scheme == "post":
        core = refl @ kmat @ s2 @ hc(kmat) @ hc(refl) + trans @ hc(trans)
        noise = np.einsum("i,...ij,j->...", h, core, h).real + eps2
        hr = np.einsum("i,...ij,j->...", h, refl, np.array([0.0, 1.0]))
        gain = np.abs(hr) ** 2
        if np.any(gain == 0.0):
            raise ZeroResponseError("filtered readout loses the signal quadrature")
    else:
        raise ValueError("scheme must be 'pre' or 'post'")
    return 2 * HBAR / (mass * arm_length**2 * Omega**2 * kappa) * noise / gain


def hc(m):
    return np.conj(np.swapaxes(m, -1, -2))
