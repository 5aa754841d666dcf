"""Two-photon quadrature algebra.

Stationary sideband fields around an optical carrier are described by
pairs of cosine/sine quadrature amplitudes (a_c, a_s) at sideband
frequency Omega.  This module provides the 2x2 building blocks acting on
such pairs: rotation and squeeze matrices, power spectral density (PSD)
matrices of vacuum/coherent/squeezed states, and the spectral densities
of generic linear readouts.

Conventions used throughout the package:

* all spectral densities are double-sided; single-sided conversion
  S+ = 2 S happens only at the output boundary (CLI),
* angles are in radians,
* the squeeze matrix is P[theta] diag(e^r, e^-r) P[-theta] with P the
  counterclockwise rotation matrix, so a squeezed-state PSD matrix is
  (1/2) P[theta] diag(e^{2r}, e^{-2r}) P[-theta].

Frequency-dependent matrices are returned with the matrix axes last,
i.e. with shape ``Omega.shape + (2, 2)``, so ``@`` composes them.
"""

from dataclasses import dataclass

import numpy as np

LOG10_E = np.log10(np.e)


def mat2(m11, m12, m21, m22):
    """Stack four (broadcastable) entries into a (..., 2, 2) array."""
    m11, m12, m21, m22 = np.broadcast_arrays(m11, m12, m21, m22)
    return np.stack(
        [np.stack([m11, m12], axis=-1), np.stack([m21, m22], axis=-1)], axis=-2
    )


def hconj(m):
    """Hermitian conjugate on the trailing matrix axes."""
    return np.conj(np.swapaxes(m, -1, -2))


def sandwich(y, m, z):
    """Quadratic form y^dag . m . z over the trailing axes."""
    return np.einsum("...i,...ij,...j->...", np.conj(y), m, z)


def rotation_matrix(alpha):
    """Counterclockwise rotation (pivoting) matrix P[alpha]."""
    alpha = np.asarray(alpha)
    return mat2(np.cos(alpha), -np.sin(alpha), np.sin(alpha), np.cos(alpha))


def squeeze_matrix(r, phi=0.0):
    """Squeeze matrix S[r, phi] = P[phi] diag(e^r, e^-r) P[-phi].

    Negative ``r`` swaps the stretched and squeezed axes (equivalent to
    phi -> phi + pi/2).  det S = 1 for any arguments.
    """
    r = np.asarray(r)
    phi = np.asarray(phi)
    ch, sh = np.cosh(r), np.sinh(r)
    c2, s2 = np.cos(2 * phi), np.sin(2 * phi)
    return mat2(ch + sh * c2, sh * s2, sh * s2, ch - sh * c2)


def db_to_r(r_db):
    """Squeeze factor r from the decibel figure: r = r_dB / (20 log10 e)."""
    return np.asarray(r_db) / (20.0 * LOG10_E)


def r_to_db(r):
    """Decibel figure of a squeeze factor r."""
    return np.asarray(r) * 20.0 * LOG10_E


@dataclass(frozen=True)
class LightState:
    """Quantum state of one input field: vacuum, coherent or squeezed.

    Only the fluctuation statistics matter for noise budgets, so a
    coherent state carries the same PSD matrix as vacuum.  ``r`` is the
    squeeze factor and ``theta`` the squeeze angle of the noise ellipse.
    """

    kind: str = "vacuum"
    r: float = 0.0
    theta: float = 0.0

    _KINDS = ("vacuum", "coherent", "squeezed")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError("kind must be one of %s" % (self._KINDS,))
        if not np.isfinite(self.r) or not np.isfinite(self.theta):
            raise ValueError("r and theta must be finite")

    @classmethod
    def vacuum(cls):
        return cls("vacuum")

    @classmethod
    def coherent(cls):
        return cls("coherent")

    @classmethod
    def squeezed(cls, r, theta=0.0):
        return cls("squeezed", float(r), float(theta))

    @classmethod
    def squeezed_db(cls, r_db, theta=0.0):
        return cls("squeezed", float(db_to_r(r_db)), float(theta))

    @property
    def is_squeezed(self):
        return self.kind == "squeezed" and self.r != 0.0


def state_psd_matrix(state):
    """Double-sided PSD matrix of the quadrature pair in a given state.

    Vacuum and coherent states give I/2; a squeezed state gives
    (1/2) S[2r, theta].  The determinant is exactly 1/4 for all of them
    (pure states saturate the Heisenberg bound).
    """
    if state.kind in ("vacuum", "coherent"):
        return 0.5 * np.eye(2)
    return 0.5 * squeeze_matrix(2.0 * state.r, state.theta)


def readout_psd(y, state):
    """Double-sided PSD of the readout Y = Yc* a_c + Ys* a_s.

    ``y`` is the coefficient pair (Yc, Ys), possibly frequency dependent
    with shape (..., 2).  The result is real and non-negative.
    """
    y = np.asarray(y)
    return sandwich(y, state_psd_matrix(state), y).real


def cross_psd(y, z, state):
    """Cross-spectral density of two readouts; S_ZY = conj(S_YZ)."""
    y = np.asarray(y)
    z = np.asarray(z)
    return sandwich(y, state_psd_matrix(state), z)
