"""Fabry-Perot cavity: single-mode model and the exact two-sided solution.

The single-mode (lumped resonator) approximation describes a high-finesse
cavity by its half-bandwidth split into an input part ``gamma1 = T1/(4 tau)``
and a loss/back-port part ``gamma2 = A/(4 tau)``, a detuning ``delta`` and
the normalized circulating power ``J = 4 w_p I_c / (M c L)``.  All transfer
matrices share the mode factor

    L(Omega) = [[gamma - i Omega, -delta], [delta, gamma - i Omega]] / D(Omega),
    D(Omega) = (gamma - i Omega)^2 + delta^2.

The exact frequency-domain input/output solution of the two-mirror cavity
(no single-mode assumptions) is also provided; it serves as a validation
oracle for the lumped model.  Its frequencies are measured from the
nearest even longitudinal resonance, so round-trip phases stay accurate
at machine precision.
"""

from dataclasses import dataclass

import numpy as np
import scipy.constants

from .errors import UndampedResonanceError
from .twophoton import mat2

HBAR = scipy.constants.hbar
C = scipy.constants.c


def resonance_denominator(gamma, delta, Omega):
    """D(Omega) = (gamma - i Omega)^2 + delta^2."""
    Omega = np.asarray(Omega, dtype=float)
    return (gamma - 1j * Omega) ** 2 + delta**2


def mode_matrix(gamma, delta, Omega):
    """The cavity mode matrix L(Omega), shape Omega.shape + (2, 2)."""
    Omega = np.asarray(Omega, dtype=float)
    d = resonance_denominator(gamma, delta, Omega)
    g = gamma - 1j * Omega
    return mat2(g / d, -delta / d, delta / d, g / d)


@dataclass(frozen=True)
class CavityMatrices:
    """Mode, reflection, transmission matrices and their denominator."""

    L: np.ndarray
    R1: np.ndarray
    R2: np.ndarray
    T: np.ndarray
    D: np.ndarray


def cavity_matrices(gamma1, gamma2, delta, Omega):
    """Single-mode reflection/transmission matrices of a two-port cavity.

    R_i = 2 gamma_i L - I and T = 2 sqrt(gamma1 gamma2) L.  Treating both
    ports, the set is unitary: R_i R_i^dag + T T^dag = I and
    R1 T^dag + T R2^dag = 0.
    """
    gamma = gamma1 + gamma2
    if gamma <= 0:
        raise ValueError("gamma1 + gamma2 must be positive")
    lmat = mode_matrix(gamma, delta, Omega)
    d = resonance_denominator(gamma, delta, Omega)
    assert np.all(np.abs(d) > 0)
    eye = np.eye(2)
    return CavityMatrices(
        L=lmat,
        R1=2 * gamma1 * lmat - eye,
        R2=2 * gamma2 * lmat - eye,
        T=2 * np.sqrt(gamma1 * gamma2) * lmat,
        D=d,
    )


@dataclass(frozen=True)
class CavityParams:
    """Physical parameters of a pumped Fabry-Perot cavity.

    ``T1`` is the input-mirror power transmissivity, ``loss`` the power
    loss per bounce (modeled as the back-port transmissivity), ``detuning``
    the pump offset from the nearest resonance in rad/s, ``mass`` the
    reduced mass of the elongation mode and ``power`` the circulating
    optical power.
    """

    length: float
    T1: float
    loss: float = 0.0
    detuning: float = 0.0
    mass: float = 1.0
    power: float = 0.0
    omega_p: float = 2 * np.pi * C / 1.064e-6

    def __post_init__(self):
        if self.length <= 0 or self.mass <= 0 or self.omega_p <= 0:
            raise ValueError("length, mass and omega_p must be positive")
        if not (0 <= self.T1 <= 1 and 0 <= self.loss <= 1):
            raise ValueError("T1 and loss must lie in [0, 1]")
        if self.T1 + self.loss == 0:
            raise ValueError("cavity must couple to at least one port")

    @property
    def tau(self):
        return self.length / C

    @property
    def gamma1(self):
        return self.T1 / (4 * self.tau)

    @property
    def gamma2(self):
        return self.loss / (4 * self.tau)

    @property
    def gamma(self):
        return self.gamma1 + self.gamma2

    @property
    def J(self):
        """Normalized circulating power, 4 w_p I_c / (M c L)."""
        return 4 * self.omega_p * self.power / (self.mass * C * self.length)

    def single_mode_flags(self, Omega):
        """Validity indicators of the lumped model (warnings, not errors)."""
        Omega = np.asarray(Omega, dtype=float)
        return {
            "high_finesse": self.T1 < 0.1,
            "narrow_detuning": abs(self.detuning) * self.tau < 0.1,
            "narrow_band": bool(np.all(np.abs(Omega) * self.tau < 0.1)),
        }

    def matrices(self, Omega):
        return cavity_matrices(self.gamma1, self.gamma2, self.detuning, Omega)


def fp_rigidity(params, Omega):
    """Ponderomotive rigidity K(Omega) = M J delta / D(Omega)."""
    d = resonance_denominator(params.gamma, params.detuning, Omega)
    return params.mass * params.J * params.detuning / d


def effective_susceptibility(params, Omega):
    """Modified mechanical response 1 / (K(Omega) - M Omega^2)."""
    Omega = np.asarray(Omega, dtype=float)
    return 1.0 / (fp_rigidity(params, Omega) - params.mass * Omega**2)


def fp_response_vectors(params, phase, Omega):
    """Displacement-to-sideband response vectors of both cavity ports.

    ``phase`` is the phase of the classical intracavity field; its
    magnitude follows from the circulating power.  Returns the pair
    (R1, R2) with shape Omega.shape + (2,).
    """
    e_amp = np.sqrt(params.power / (HBAR * params.omega_p))
    e_c = np.sqrt(2) * e_amp * np.cos(phase)
    e_s = np.sqrt(2) * e_amp * np.sin(phase)
    kp = params.omega_p / C
    lmat = mode_matrix(params.gamma, params.detuning, Omega)
    direction = np.einsum("...ij,j->...i", lmat, np.array([-e_s, e_c]))
    r1 = 2 * kp * np.sqrt(params.gamma1 / params.tau) * direction
    r2 = 2 * kp * np.sqrt(params.gamma2 / params.tau) * direction
    return r1, r2


def exact_fp_io(m1, m2, length, omega, a1=0.0, a2=0.0, x1=0.0, x2=0.0,
                pump=None, pump_omega=0.0, k_p=None):
    """Exact frequency-domain I/O relations of a two-mirror cavity.

    All frequencies are offsets from the nearest even longitudinal
    resonance (so the round-trip phase is exp(2i omega tau) exactly).
    ``m1``/``m2`` are MirrorSpec-like objects with amplitude coefficients
    ``r``/``t``; ``a1``/``a2`` are the input sideband amplitudes at
    absolute frequency offset ``omega``; ``x1``/``x2`` the mirror motion
    spectra; ``pump = (A1, A2)`` the classical drive amplitudes at offset
    ``pump_omega`` (needed only when x1/x2 are nonzero, together with the
    absolute carrier wavenumber ``k_p``).

    Returns a dict with the output amplitudes ``b1``/``b2``, the
    intracavity fields ``e1``/``e2``/``f1``/``f2`` and, when a pump is
    given, the classical solution ``B1``/``B2``/``E1``/``E2``/``F1``/``F2``.
    """
    tau = length / C
    out = {}

    def _solve(freq, in1, in2, src1, src2):
        phase = np.exp(1j * freq * tau)
        loop = m1.r * m2.r * phase**2
        denom = 1.0 - loop
        if np.any(np.abs(denom) < 1e-14):
            raise UndampedResonanceError(
                "lossless mirrors exactly on resonance: cavity response diverges"
            )
        s1 = m1.t * in1 + src1
        s2 = m2.t * in2 + src2
        e1 = (m2.r * s1 * phase**2 + s2 * phase) / denom
        e2 = (m1.r * s2 * phase**2 + s1 * phase) / denom
        f1 = s1 + m1.r * e1
        f2 = s2 + m2.r * e2
        return e1, e2, f1, f2

    if pump is not None:
        A1, A2 = pump
        E1, E2, F1, F2 = _solve(pump_omega, A1, A2, 0.0, 0.0)
        out.update(
            B1=-m1.r * A1 + m1.t * E1,
            B2=-m2.r * A2 + m2.t * E2,
            E1=E1, E2=E2, F1=F1, F2=F2,
        )

    if (np.any(np.asarray(x1) != 0) or np.any(np.asarray(x2) != 0)):
        if pump is None or k_p is None:
            raise ValueError("mirror motion requires pump amplitudes and k_p")
        src1 = 2j * k_p * m1.r * out["E1"] * x1
        src2 = 2j * k_p * m2.r * out["E2"] * x2
        extra1 = 2j * k_p * m1.r * A1 * x1
        extra2 = 2j * k_p * m2.r * A2 * x2
    else:
        src1 = src2 = extra1 = extra2 = 0.0

    e1, e2, f1, f2 = _solve(omega, a1, a2, src1, src2)
    out.update(
        b1=-m1.r * a1 + m1.t * e1 + extra1,
        b2=-m2.r * a2 + m2.t * e2 + extra2,
        e1=e1, e2=e2, f1=f1, f2=f2,
    )
    return out


def exact_reflection_quadratures(m1, m2, length, delta, Omega):
    """Two-photon reflection matrix of port 1 from the exact solution.

    Builds the quadrature transfer from the upper/lower sideband
    reflectivities at detuning ``delta``; used as an oracle for the
    single-mode ``cavity_matrices`` reflection.
    """

    def refl(freq):
        sol = exact_fp_io(m1, m2, length, freq, a1=1.0)
        return sol["b1"]

    f_plus = np.asarray([refl(delta + w) for w in np.atleast_1d(Omega)])
    f_minus = np.asarray([np.conj(refl(delta - w)) for w in np.atleast_1d(Omega)])
    return sideband_to_quadrature_matrix(f_plus, f_minus)


def sideband_to_quadrature_matrix(f_plus, f_minus_conj):
    """Convert sideband-pair transfer factors to a two-photon 2x2 matrix.

    ``f_plus`` is the transfer at the upper sideband, ``f_minus_conj``
    the conjugated transfer at the lower sideband.
    """
    half_sum = 0.5 * (f_plus + f_minus_conj)
    half_dif = 0.5j * (f_plus - f_minus_conj)
    return mat2(half_sum, half_dif, -half_dif, half_sum)
