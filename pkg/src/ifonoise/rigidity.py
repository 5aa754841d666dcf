"""Detuned-interferometer dynamics: optical spring resonances and regimes.

A detuned cavity turns the free mirror into an effective oscillator with
the complex, frequency-dependent spring K(Omega) = M J delta / D(Omega).
The characteristic equation

    -Omega^2 [(gamma - i Omega)^2 + delta^2] + J delta = 0

has a mechanical and an optical root that approach each other as the
pumping grows and merge at J = delta^3/4 into the second-order pole at
Omega_0 = delta/sqrt(2).  The mechanical branch is unstable (Im > 0 in
the e^{-i Omega t} convention); the instability time is
Gamma^4 / (2 J gamma delta).  Two carriers with opposite detunings can
combine into a spring with positive restoring force and positive
damping.

All roots come from the companion-matrix eigenvalues of the quartic, so
the evaluation is deterministic and branch-safe near the merge point.
"""

from dataclasses import dataclass

import numpy as np

from .cavity import resonance_denominator
from .errors import SingularFrequencyError, ZeroResponseError

# double roots are conditioned as sqrt(machine eps): collapse splits
# below this radius to their (well-conditioned) mean
MERGE_TOL = 1e-6


@dataclass(frozen=True)
class DetunedRegime:
    """Detuned operating point (J, gamma, delta) with derived angles."""

    J: float
    gamma: float
    delta: float

    @property
    def big_gamma(self):
        return np.hypot(self.gamma, self.delta)

    @property
    def beta(self):
        return np.arctan2(self.delta, self.gamma)

    @property
    def omega_q2(self):
        """Bad-cavity measurement strength Omega_q^2 = 2 J / gamma."""
        return 2 * self.J / self.gamma


@dataclass(frozen=True)
class RootPair:
    """Positive-real-part roots of the characteristic equation."""

    mechanical: complex
    optical: complex
    merged: bool

    @property
    def unstable(self):
        """Mechanical-branch instability flag (Im > 0 grows as e^{Im t})."""
        return self.mechanical.imag > 0


def characteristic_roots(J, gamma, delta):
    """Solve Omega^4 + 2 i gamma Omega^3 - Gamma^2 Omega^2 + J delta = 0.

    Returns the two roots with positive real part labeled by magnitude
    (mechanical = smaller).  At the critical coupling J = delta^3/4 the
    labels are meaningless and ``merged`` is set.
    """
    if delta <= 0 or J <= 0:
        raise ValueError("characteristic roots need delta > 0 and J > 0")
    big_gamma2 = gamma**2 + delta**2
    coeffs = [1.0, 2j * gamma, -big_gamma2, 0.0, J * delta]
    roots = np.roots(coeffs)
    right = sorted((z for z in roots if z.real > 0), key=lambda z: abs(z))
    if len(right) != 2:
        # roots straddling the imaginary axis: fall back to |Re| ordering
        right = sorted(roots, key=lambda z: z.real)[-2:]
        right = sorted(right, key=lambda z: abs(z))
    mech, opt = right
    merged = abs(opt - mech) <= MERGE_TOL * max(abs(opt), 1.0)
    if merged:
        mean = 0.5 * (mech + opt)
        mech = opt = mean
    return RootPair(mechanical=complex(mech), optical=complex(opt), merged=merged)


def undamped_roots(J, delta):
    """gamma = 0 limit: Omega^2 = delta^2/2 -+ sqrt(delta^4/4 - J delta)."""
    disc = delta**4 / 4 - J * delta
    inner = np.sqrt(disc + 0j)
    mech = np.sqrt(delta**2 / 2 - inner)
    opt = np.sqrt(delta**2 / 2 + inner)
    return mech, opt


def perturbative_roots(J, gamma, delta):
    """First order in gamma: Omega_{m,o} = Omega^(0) [1 +- i gamma Omega^(0)/sqrt(delta^4 - 4 J delta)].

    The mechanical branch takes the plus sign (negative damping).
    """
    mech0, opt0 = undamped_roots(J, delta)
    spread = np.sqrt(delta**4 - 4 * J * delta + 0j)
    mech = mech0 * (1 + 1j * gamma * mech0 / spread)
    opt = opt0 * (1 - 1j * gamma * opt0 / spread)
    return mech, opt


def effective_susceptibility(J, gamma, delta, mass, Omega):
    """chi_eff = 1 / (K(Omega) - M Omega^2) with the optical spring K."""
    Omega = np.asarray(Omega, dtype=float)
    if np.any(Omega == 0.0) and J * delta == 0.0:
        raise SingularFrequencyError("free mass diverges at Omega = 0")
    d = resonance_denominator(gamma, delta, Omega)
    inv = mass * (J * delta / d - Omega**2)
    if np.any(inv == 0):
        raise SingularFrequencyError("evaluation exactly at a spring resonance")
    return 1.0 / inv


def second_order_pole_susceptibility(delta, mass, Omega):
    """Local form Omega_0^2 / (M (Omega_0^2 - Omega^2)^2) near the merged pole."""
    Omega = np.asarray(Omega, dtype=float)
    om0_sq = delta**2 / 2
    return om0_sq / (mass * (om0_sq - Omega**2) ** 2)


def bad_cavity_xi2(regime, eta, phi_lo, Omega):
    """SQL beating factor of the detuned meter for Gamma >> Omega.

    xi^2 = (1/Omega^2)[(Omega_m^2 - Omega^2)^2 Gamma^2/(4 J gamma eta sin^2 phi)
           + (J gamma / Gamma^2)(1 - eta cos^2 phi)]
    with phi = phi_lo - beta and the effective resonance
    Omega_m^2 = (J/Gamma^2)(delta - gamma eta sin 2 phi).
    """
    Omega = np.asarray(Omega, dtype=float)
    phi = phi_lo - regime.beta
    if abs(np.sin(phi)) < 1e-12 and eta < 1.0:
        raise ZeroResponseError("response-free quadrature with lossy readout")
    g2 = regime.big_gamma**2
    om_m2 = regime.J / g2 * (regime.delta - regime.gamma * eta * np.sin(2 * phi))
    meas = (om_m2 - Omega**2) ** 2 * g2 / (
        4 * regime.J * regime.gamma * eta * np.sin(phi) ** 2
    )
    ba = regime.J * regime.gamma / g2 * (1 - eta * np.cos(phi) ** 2)
    return (meas + ba) / Omega**2


def bad_cavity_xi2_phase_readout(regime, eta, Omega):
    """phi = pi/2 specialization with Omega_m^2 = (Omega_q^2/4) sin 2 beta."""
    Omega = np.asarray(Omega, dtype=float)
    om_q2 = regime.omega_q2
    beta = regime.beta
    om_m2 = om_q2 / 4 * np.sin(2 * beta)
    return (
        (om_m2 - Omega**2) ** 2 / (om_q2 * eta * np.cos(beta) ** 2)
        + om_q2 * np.cos(beta) ** 2
    ) / (2 * Omega**2)


def optimal_beta(omega0, omega_q2, eta):
    """Detuning angle minimizing the phase-readout xi^2 at Omega = omega0.

    Solves 4 Omega_0^2/Omega_q^2 - 2/tan(beta)
    - (Omega_q^2/Omega_0^2)(4 eta - 1) cos^4 beta = 0 on (0, pi/2);
    approaches pi/2 - 2 Omega_0^2/Omega_q^2 for omega0 << Omega_q.
    """
    from scipy.optimize import brentq

    def lhs(beta):
        return (
            4 * omega0**2 / omega_q2
            - 2 / np.tan(beta)
            - omega_q2 / omega0**2 * (4 * eta - 1) * np.cos(beta) ** 4
        )

    return brentq(lhs, 1e-6, np.pi / 2 - 1e-12, xtol=1e-14)


def instability_time(J, gamma, delta):
    """Optical-spring instability time Gamma^4 / (2 J gamma delta).

    The companion figure Omega_m tau_inst ~ Gamma^2/(2 gamma Omega_m)
    measures how slow the instability is on the oscillation timescale.
    Returns (tau_inst, omega_m_tau) with infinities for delta = 0.
    """
    if delta == 0.0:
        return np.inf, np.inf
    big_gamma2 = gamma**2 + delta**2
    tau = big_gamma2**2 / (2 * J * gamma * delta)
    om_m2 = J * delta / big_gamma2
    return tau, np.sqrt(om_m2) * tau


def dual_carrier_rigidity(c1, c2, mass, Omega):
    """Sum spring of two carriers, K1(Omega) + K2(Omega).

    ``c1``/``c2`` are DetunedRegime instances (a zero-power carrier just
    drops out).  Returns the complex K_sum; see
    `dual_carrier_expansion` for the static restoring force and damping
    signs.
    """
    Omega = np.asarray(Omega, dtype=float)
    k = np.zeros(np.shape(Omega), dtype=complex)
    for c in (c1, c2):
        if c.J == 0.0:
            continue
        k = k + mass * c.J * c.delta / resonance_denominator(c.gamma, c.delta, Omega)
    return k


def dual_carrier_expansion(c1, c2, mass):
    """O(Omega) expansion coefficients of the summed spring.

    Returns (K0, friction) in K_sum ~ K0 + i Omega * friction; a stable
    spring needs K0 > 0 and friction < 0.
    """
    k0 = 0.0
    fric = 0.0
    for c in (c1, c2):
        if c.J == 0.0:
            continue
        g2 = c.big_gamma**2
        k0 += mass * c.J * c.delta / g2
        fric += 2 * mass * c.J * c.gamma * c.delta / g2**2
    return k0, fric


@dataclass(frozen=True)
class PoleRegimeParams:
    """Second-order-pole neighbourhood: center, pole separation, strength."""

    omega0: float
    separation: float = 0.0
    omega_q: float = 0.0
    xi_tech2: float = 0.0

    def __post_init__(self):
        if self.omega0 <= 0 or self.omega_q < 0:
            raise ValueError("omega0 must be positive and omega_q non-negative")


def second_order_pole_xi2(pole, eps, nu, phi_lo=np.pi / 2):
    """SQL beating factor xi^2(Omega_0 + nu) near the merged resonance.

    xi^2 = (1/(2 Omega_0^2)) [((4 nu^2 - Lambda^2)^2 + loss terms)/Omega_q^2
           + Omega_q^2], where the eps-loss terms carry the residual
    bandwidth gamma = Omega_q^2 / (sqrt(2) Omega_0 (1 + cos^2 phi_lo)).
    Valid for |nu| << Omega_0.
    """
    nu = np.asarray(nu, dtype=float)
    om0, lam, om_q = pole.omega0, pole.separation, pole.omega_q
    if om_q == 0:
        raise ZeroResponseError("omega_q = 0 means no measurement at all")
    core = (4 * nu**2 - lam**2) ** 2
    if eps != 0.0:
        gamma = om_q**2 / (np.sqrt(2) * om0 * (1 + np.cos(phi_lo) ** 2))
        shifted = (
            4 * nu**2 - lam**2 + om0 * gamma / np.sqrt(2) * np.sin(2 * phi_lo)
        ) ** 2
        core = core + eps**2 * (shifted + 4 * gamma**2 * om0**2)
    return (core / om_q**2 + om_q**2) / (2 * om0**2)
