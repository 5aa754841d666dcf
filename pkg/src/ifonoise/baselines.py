"""Reference meters: the simple quantum meter, SQLs and the toy schemes.

A Simple Quantum Meter (SQM) has white, mutually uncorrelated
measurement and back-action noises saturating S_x S_F = hbar^2/4; its
strength is parametrized by the corner frequency
Omega_q = (S_F / (M^2 S_x))^{1/4}.  Minimizing the SQM sum noise over
Omega_q yields the standard quantum limit hbar/|chi_xx| of the probe.

The toy single-beam position meter with homodyne angle phi_LO realizes a
constant measurement/back-action correlation ("virtual rigidity"); the
toy delay-line speedmeter realizes the frequency-dependent correlation
that cancels back-action at all frequencies.  Both serve as oracles for
the interferometer models.
"""

from dataclasses import dataclass

import numpy as np
import scipy.constants

from .errors import SingularFrequencyError, ZeroResponseError

HBAR = scipy.constants.hbar
C = scipy.constants.c


@dataclass(frozen=True)
class Probe:
    """Mechanical test object: free mass or harmonic oscillator."""

    kind: str = "free-mass"
    mass: float = 1.0
    omega0: float = 0.0

    def __post_init__(self):
        if self.kind not in ("free-mass", "oscillator"):
            raise ValueError("kind must be 'free-mass' or 'oscillator'")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.kind == "oscillator" and self.omega0 <= 0:
            raise ValueError("oscillator needs a positive resonance frequency")

    def susceptibility(self, Omega):
        Omega = np.asarray(Omega, dtype=float)
        if self.kind == "free-mass":
            return -1.0 / (self.mass * Omega**2)
        return 1.0 / (self.mass * (self.omega0**2 - Omega**2))


def sql(probe, normalization, Omega, arm_length=None):
    """Standard quantum limit of a probe in F, h or x normalization.

    F: hbar/|chi|;  h: 4 hbar / (M^2 L^2 Omega^4 |chi|);  x: hbar |chi|.
    An oscillator read at resonance has zero force SQL (valid) but a
    divergent displacement SQL (error).
    """
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega <= 0):
        raise SingularFrequencyError("SQL defined for Omega > 0")
    if normalization == "F":
        # hbar / |chi|, written without dividing so the oscillator
        # resonance gives a clean zero
        if probe.kind == "oscillator":
            return HBAR * probe.mass * np.abs(probe.omega0**2 - Omega**2)
        return HBAR * probe.mass * Omega**2
    if normalization not in ("x", "h"):
        raise ValueError("normalization must be one of 'F', 'h', 'x'")
    if probe.kind == "oscillator" and np.any(Omega == probe.omega0):
        raise SingularFrequencyError("SQL in this normalization diverges at resonance")
    chi = probe.susceptibility(Omega)
    if normalization == "x":
        return HBAR * np.abs(chi)
    if arm_length is None:
        raise ValueError("h normalization requires arm_length")
    return 4 * HBAR / (probe.mass**2 * arm_length**2 * Omega**4 * np.abs(chi))


def sqm_noise_pair(probe, omega_q):
    """Minimum-uncertainty SQM densities S_x, S_F for strength omega_q."""
    s_x = HBAR / (2 * probe.mass * omega_q**2)
    s_f = HBAR * probe.mass * omega_q**2 / 2
    return s_x, s_f


def sqm_sum_noise(probe, omega_q, Omega):
    """Force-normalized sum noise of the SQM monitoring the probe.

    Free mass: (hbar M Omega_q^2 / 2)(Omega^4/Omega_q^4 + 1); the
    oscillator replaces Omega^2 by Omega0^2 - Omega^2.  The envelope
    over omega_q at fixed Omega is the force SQL.
    """
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega <= 0):
        raise SingularFrequencyError("sum noise defined for Omega > 0")
    s_x, s_f = sqm_noise_pair(probe, omega_q)
    if probe.kind == "free-mass":
        inv_chi = probe.mass * Omega**2
    else:
        inv_chi = probe.mass * (probe.omega0**2 - Omega**2)
    return s_x * inv_chi**2 + s_f


@dataclass(frozen=True)
class ToyMeter:
    """Single-beam position meter: power I0, bounce factor, pump frequency."""

    power: float
    bounces: float = 1.0
    omega_p: float = 2 * np.pi * C / 1.064e-6
    mass: float = 1.0

    @property
    def drive(self):
        """Effective optical drive F^2 I_0 controlling the coupling."""
        return self.bounces**2 * self.power

    @property
    def omega_q(self):
        """Measurement-strength corner frequency sqrt(8 w_p I0 F^2 / (M c^2))."""
        return np.sqrt(8 * self.omega_p * self.drive / (self.mass * C**2))


def equivalent_toy_drive(J, gamma, mass, omega_p):
    """F^2 I_0 of the toy meter equivalent to a cavity meter: I_c/(gamma tau).

    Expressed through the normalized power, F^2 I_0 = J M c^2 / (4 w_p gamma),
    which keeps Omega_q^2 = 2 J / gamma.
    """
    return J * mass * C**2 / (4 * omega_p * gamma)


def virtual_rigidity_noise(meter, phi_lo, Omega):
    """Toy position meter with homodyne readout at angle phi_LO.

    Returns a dict with the (white) densities S_x, S_F, S_xF, the virtual
    spring K_virt = S_xF/S_x and the assembled free-mass sum noise S_F_sum.
    The product S_x S_F - S_xF^2 = hbar^2/4 exactly (coherent light).
    """
    if abs(np.sin(phi_lo)) < 1e-12:
        raise ZeroResponseError("phi_lo = 0 carries no displacement signal")
    Omega = np.asarray(Omega, dtype=float)
    w, drive = meter.omega_p, meter.drive
    s_x = HBAR * C**2 / (16 * w * drive * np.sin(phi_lo) ** 2)
    s_f = 4 * HBAR * w * drive / C**2
    s_xf = 0.5 * HBAR / np.tan(phi_lo)
    sum_f = meter.mass**2 * Omega**4 * s_x + s_f - 2 * meter.mass * Omega**2 * s_xf
    return {
        "S_x": s_x,
        "S_F": s_f,
        "S_xF": s_xf,
        "K_virt": s_xf / s_x,
        "S_F_sum": sum_f,
    }


def toy_speedmeter_noise(meter, tau_delay, phi_lo, Omega):
    """Toy two-reflection speedmeter with delay tau_delay.

    Returns the velocity/momentum densities S_v, S_p, S_vp and the
    assembled free-mass sum noise Omega^2 (M^2 S_v + 2 M S_vp + S_p).
    Valid for Omega tau_delay << 1 (flag in the result).
    """
    if abs(np.sin(phi_lo)) < 1e-12:
        raise ZeroResponseError("phi_lo = 0 carries no velocity signal")
    Omega = np.asarray(Omega, dtype=float)
    w, i0, m = meter.omega_p, meter.power, meter.mass
    ff = meter.bounces
    kp = w / C
    s_phi = HBAR * w / (4 * i0)
    s_i = HBAR * w * i0
    cot = 1.0 / np.tan(phi_lo)
    s_v = (s_phi + s_i * cot**2 / (4 * i0**2)) / (4 * ff**2 * kp**2 * tau_delay**2)
    s_p = 4 * ff**2 * tau_delay**2 * s_i / C**2
    s_vp = -s_i * cot / (2 * w * i0)
    sum_f = Omega**2 * (m**2 * s_v + 2 * m * s_vp + s_p)
    return {
        "S_v": s_v,
        "S_p": s_p,
        "S_vp": s_vp,
        "S_F_sum": sum_f,
        "narrowband_ok": bool(np.all(np.abs(Omega) * tau_delay < 0.1)),
    }


def speedmeter_optimal_cot(meter, tau_delay):
    """Homodyne angle cotangent cancelling the speedmeter back-action."""
    return 8 * meter.bounces**2 * tau_delay**2 * meter.omega_p * meter.power / (
        meter.mass * C**2
    )


def velocity_sql(mass, tau):
    """Velocity-measurement SQL sqrt(hbar / (M tau)) of a single pass."""
    return np.sqrt(HBAR / (mass * tau))
