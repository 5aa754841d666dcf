"""Optical element transfer rules and the two-sided movable-mirror meter.

Fixed mirrors and beamsplitters act on quadrature pairs through unitary
2x2 matrices; free propagation adds a sideband phase on top of a carrier
rotation; optical loss admixes uncorrelated vacuum.  The movable mirror
pumped from both sides is the elementary position meter: its readouts
carry displacement signal and quantum noise, its back-action force
includes a ponderomotive spring, and the force-normalized noise spectral
densities follow either from the analytic partial densities (coherent
inputs) or from the full transfer matrix (any Gaussian inputs).
"""

from dataclasses import dataclass

import numpy as np
import scipy.constants

from .errors import SingularFrequencyError, ZeroResponseError
from .twophoton import rotation_matrix, state_psd_matrix

HBAR = scipy.constants.hbar
C = scipy.constants.c

_UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class MirrorSpec:
    """Lossless mirror with power reflectivity R and transmissivity T.

    R + T = 1 is enforced; absorption is modeled separately by
    `apply_loss`.  ``convention`` selects between the symmetric
    (i*sqrt(T) off-diagonal) and real transfer matrix choices.
    """

    R: float
    T: float
    convention: str = "real"

    def __post_init__(self):
        if not (0.0 <= self.R <= 1.0 and 0.0 <= self.T <= 1.0):
            raise ValueError("R and T must lie in [0, 1]")
        if abs(self.R + self.T - 1.0) > _UNITARITY_TOL:
            raise ValueError("R + T must equal 1 for a lossless mirror")
        if self.convention not in ("real", "symmetric"):
            raise ValueError("convention must be 'real' or 'symmetric'")

    @property
    def r(self):
        return np.sqrt(self.R)

    @property
    def t(self):
        return np.sqrt(self.T)


def mirror_matrix(spec):
    """Port-coupling matrix of a fixed lossless mirror (unitary)."""
    sr, st = spec.r, spec.t
    if spec.convention == "real":
        return np.array([[-sr, st], [st, sr]])
    return np.array([[sr, 1j * st], [1j * st, sr]])


def propagation_matrix(length, omega0, Omega):
    """Free-space transfer over ``length``: exp(i Omega L/c) P[omega0 L/c].

    The carrier rotation acts on the quadrature pair; the sideband picks
    up the extra frequency-dependent phase.  Norm preserving.
    """
    Omega = np.asarray(Omega, dtype=float)
    phase = np.exp(1j * Omega * length / C)
    rot = rotation_matrix(omega0 * length / C)
    return phase[..., None, None] * rot


def propagate(e, length, omega0, Omega):
    """Propagate a quadrature pair ``e`` (shape (..., 2)) over free space."""
    if length < 0:
        raise ValueError("length must be non-negative")
    m = propagation_matrix(length, omega0, Omega)
    return np.einsum("...ij,...j->...i", m, np.asarray(e))


def apply_loss(e, eps, noise):
    """Admix loss: (1 - eps) * signal + sqrt(eps) * uncorrelated vacuum.

    This is the sideband loss rule for a mirror with absorption
    coefficient eps << 1; it attenuates classical amplitudes by (1 - eps)
    and keeps a vacuum input at the vacuum PSD up to O(eps).
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    return (1.0 - eps) * np.asarray(e) + np.sqrt(eps) * np.asarray(noise)


@dataclass(frozen=True)
class MovableMirrorMeter:
    """Movable mirror of mass ``mass`` pumped from both sides.

    ``power1``/``power2`` are the two pump powers, ``pump_phase`` their
    constant phase difference, ``phi1``/``phi2`` the homodyne angles of
    the two readouts, and ``eta_d`` the detector quantum efficiency.
    """

    mass: float
    R: float
    T: float
    omega_p: float
    power1: float
    power2: float = 0.0
    pump_phase: float = 0.0
    phi1: float = np.pi / 2
    phi2: float = np.pi / 2
    eta_d: float = 1.0

    def __post_init__(self):
        MirrorSpec(self.R, self.T)
        if self.mass <= 0 or self.omega_p <= 0:
            raise ValueError("mass and omega_p must be positive")
        if self.power1 < 0 or self.power2 < 0:
            raise ValueError("pump powers must be non-negative")
        if not 0.0 < self.eta_d <= 1.0:
            raise ValueError("eta_d must lie in (0, 1]")

    @property
    def eps_d(self):
        return np.sqrt(1.0 / self.eta_d - 1.0)

    def pump_amplitudes(self):
        """Classical quadrature pairs of both pumps (phase of pump 1 = 0)."""
        a1 = np.sqrt(2 * self.power1 / (HBAR * self.omega_p))
        a2 = np.sqrt(2 * self.power2 / (HBAR * self.omega_p))
        A1 = np.array([a1, 0.0])
        A2 = a2 * np.array([np.cos(self.pump_phase), np.sin(self.pump_phase)])
        return A1, A2


def ponderomotive_rigidity(meter):
    """Spring constant of the standing-wave potential, 8 w_p sqrt(R T I1 I2) sin(Phi0) / c^2."""
    return (
        8.0
        * meter.omega_p
        * np.sqrt(meter.R * meter.T * meter.power1 * meter.power2)
        * np.sin(meter.pump_phase)
        / C**2
    )


def static_radiation_force(meter):
    """DC radiation-pressure force (compensated by an actuator, not noise)."""
    interference = (
        4.0
        * np.sqrt(meter.R * meter.T * meter.power1 * meter.power2)
        * np.cos(meter.pump_phase)
    )
    return (2.0 * meter.R * (meter.power1 - meter.power2) - interference) / C


def _signal_vectors(meter):
    """Displacement response R_i and back-action F_i coefficient vectors."""
    A1, A2 = meter.pump_amplitudes()
    sr, st = np.sqrt(meter.R), np.sqrt(meter.T)
    kp = meter.omega_p / C
    R1 = 2.0 * sr * kp * np.array([A1[1], -A1[0]])
    R2 = 2.0 * sr * kp * np.array([A2[1], -A2[0]])
    f0 = 2.0 * np.sqrt(2 * HBAR * meter.omega_p * meter.R) / C
    i1, i2, phi0 = meter.power1, meter.power2, meter.pump_phase
    F1 = f0 * np.array(
        [np.sqrt(meter.R * i1) - np.sqrt(meter.T * i2) * np.cos(phi0),
         -np.sqrt(meter.T * i2) * np.sin(phi0)]
    )
    F2 = -f0 * np.array(
        [np.sqrt(meter.T * i1) + np.sqrt(meter.R * i2) * np.cos(phi0),
         np.sqrt(meter.R * i2) * np.sin(phi0)]
    )
    return R1, R2, F1, F2


@dataclass(frozen=True)
class MirrorNoise:
    """Force-normalized sum-noise spectral densities of the two readouts."""

    S11: np.ndarray
    S22: np.ndarray
    S12: np.ndarray


def movable_mirror_noise(meter, states, Omega):
    """Sum quantum noise of the two-sided mirror meter via transfer matrices.

    ``states`` is the pair of input LightStates.  Returns the
    force-normalized (cross-) spectral densities S11, S22, S12 at the
    sideband frequencies ``Omega`` (rad/s).  The ponderomotive rigidity
    is kept inside the effective susceptibility; the densities stay
    finite at the spring resonance because the assembled form multiplies
    through by |K - M Omega^2|^2 before dividing.
    """
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0.0):
        raise SingularFrequencyError("free-mass susceptibility diverges at Omega = 0")
    for phi, label in ((meter.phi1, "phi1"), (meter.phi2, "phi2")):
        if abs(np.sin(phi)) < 1e-12:
            raise ZeroResponseError("%s has zero displacement response" % label)

    R1, R2, F1, F2 = _signal_vectors(meter)
    K = ponderomotive_rigidity(meter)
    chi = 1.0 / (K - meter.mass * Omega**2)

    sr, st = np.sqrt(meter.R), np.sqrt(meter.T)
    eye = np.eye(2)
    s_in = np.zeros((4, 4))
    s_in[:2, :2] = state_psd_matrix(states[0])
    s_in[2:, 2:] = state_psd_matrix(states[1])

    def transfer(mir_row, Rv):
        # mir_row = (m_i1, m_i2) entries of the fixed-mirror matrix row
        blocks = [
            mir_row[0] * eye + chi[..., None, None] * np.outer(Rv, F1),
            mir_row[1] * eye + chi[..., None, None] * np.outer(Rv, F2),
        ]
        return np.concatenate(blocks, axis=-1)  # (..., 2, 4)

    M1 = transfer((-sr, st), R1)
    M2 = transfer((st, sr), R2)
    H1 = np.array([np.cos(meter.phi1), np.sin(meter.phi1)])
    H2 = np.array([np.cos(meter.phi2), np.sin(meter.phi2)])

    def density(Mi, Mj, Hi, Hj, Ri, Rj, lossy_diag):
        # S_ij = (H_i M_i) S_in (H_j M_j)^dag normalized to signal force;
        # for i = j the real part realizes the symmetrized product
        num = np.einsum("i,...ik,kl,...jl,j->...", Hi, Mi, s_in, np.conj(Mj), Hj)
        out = num / ((Hi @ Ri) * (Rj @ Hj))
        if lossy_diag:
            out = out.real + 0.5 * meter.eps_d**2 / (Hi @ Ri) ** 2
        return out / np.abs(chi) ** 2

    s11 = density(M1, M1, H1, H1, R1, R1, True).real
    if meter.power2 > 0:
        s22 = density(M2, M2, H2, H2, R2, R2, True).real
        s12 = density(M1, M2, H1, H2, R1, R2, False)
    else:
        # no pump on side 2: that readout carries no displacement signal
        s22 = np.full_like(s11, np.inf)
        s12 = np.full_like(s11, np.nan, dtype=complex)
    return MirrorNoise(S11=s11, S22=s22, S12=s12)


def movable_mirror_noise_coherent(meter, Omega):
    """Analytic partial-density route, valid for coherent inputs only.

    Returns the same MirrorNoise triple assembled from the closed-form
    measurement/back-action/cross densities.  Serves as an independent
    oracle for `movable_mirror_noise`.
    """
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0.0):
        raise SingularFrequencyError("free-mass susceptibility diverges at Omega = 0")
    p = mirror_partial_densities(meter)
    K = ponderomotive_rigidity(meter)
    inv_chi = K - meter.mass * Omega**2
    s11 = p["S_x1x1"] * inv_chi**2 + p["S_ff"] + 2 * inv_chi * p["S_x1f"]
    s22 = p["S_x2x2"] * inv_chi**2 + p["S_ff"] + 2 * inv_chi * p["S_x2f"]
    s12 = p["S_x1x2"] * inv_chi**2 + p["S_ff"] + inv_chi * (p["S_x1f"] + p["S_x2f"])
    if meter.eta_d < 1.0:
        eps2 = meter.eps_d**2
        s11 = s11 + eps2 * p["S_x1x1"] * inv_chi**2
        s22 = s22 + eps2 * p["S_x2x2"] * inv_chi**2
    return MirrorNoise(S11=s11, S22=s22, S12=s12 + 0j)


def mirror_partial_densities(meter):
    """Closed-form measurement, back-action and cross densities (coherent pumps)."""
    phi1 = meter.phi1
    phi2 = meter.phi2 - meter.pump_phase
    for phi, label in ((phi1, "phi1"), (phi2, "phi2 - pump_phase")):
        if abs(np.sin(phi)) < 1e-12:
            raise ZeroResponseError("%s has zero displacement response" % label)
    w = meter.omega_p
    return {
        "S_x1x1": HBAR * C**2 / (16 * w * meter.power1 * meter.R * np.sin(phi1) ** 2),
        "S_x2x2": HBAR * C**2 / (16 * w * meter.power2 * meter.R * np.sin(phi2) ** 2)
        if meter.power2 > 0
        else np.inf,
        "S_x1x2": 0.0,
        "S_ff": 4 * HBAR * w * meter.R * (meter.power1 + meter.power2) / C**2,
        "S_x1f": 0.5 * HBAR / np.tan(phi1),
        "S_x2f": 0.5 * HBAR / np.tan(phi2),
    }
