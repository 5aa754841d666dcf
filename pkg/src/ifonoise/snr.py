"""Matched-filter SNR integrals and design optimizers.

The figure of merit is rho^2 = integral |h_s|^2 / S^h dOmega/(2 pi);
for inspiraling binaries |h_s|^2 ~ Omega^{-7/3} up to a cutoff, and for
broadband bursts the measure is dOmega/Omega.  Constant signal
prefactors cancel in the ratios used here.

For the narrow-band second-order-pole regime the burst SNR has a closed
form: with y = nu/Omega_q, lambda = Lambda/Omega_q and
s = (Omega_0/Omega_q) xi_tech,

    sigma^2 (Omega_q/Omega_0)
        = (2/pi) int dy / ((4 y^2 - lambda^2)^2 + 1 + 2 s^2)
        = 1/sqrt(2 (1 + 2s^2 + lambda^4)(sqrt(1 + 2s^2 + lambda^4) - lambda^2)),

maximized at lambda^2 = sqrt((1 + 2 s^2)/3) and, over the measurement
strength, at Lambda = Omega_q = Omega_0 xi_tech, giving
sigma^2 = 1/(2 sqrt(2) xi_tech) (the Lambda = 0 variant reaches
1/(sqrt(6 sqrt 3) xi_tech)).

Both optimizers are deterministic: Nelder-Mead with a fixed seed point
and a fixed restart schedule, no randomness anywhere.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.constants
from scipy.integrate import quad, simpson
from scipy.optimize import minimize

from .errors import ConvergenceError
from .filters import FilterCavityConfig, filtered_sum_noise
from .interferometer import caves_psd, detuned_sum_noise_h, EffectiveCavity

HBAR = scipy.constants.hbar
C = scipy.constants.c

DEFAULT_F_MIN = 5.0  # Hz; below this the band is technical-noise dominated
DEFAULT_F_MAX = 1500.0  # Hz; binary neutron-star inspiral cutoff


@dataclass(frozen=True)
class SignalModel:
    """Spectral weighting of the matched-filter integral."""

    kind: str = "inspiral"
    f_max: float = DEFAULT_F_MAX
    f_min: float = DEFAULT_F_MIN

    def __post_init__(self):
        if self.kind not in ("inspiral", "burst", "flat"):
            raise ValueError("kind must be 'inspiral', 'burst' or 'flat'")
        if not 0 < self.f_min < self.f_max:
            raise ValueError("need 0 < f_min < f_max")

    def weight(self, Omega):
        Omega = np.asarray(Omega, dtype=float)
        if self.kind == "inspiral":
            return Omega ** (-7.0 / 3.0)
        if self.kind == "burst":
            return 1.0 / Omega
        return np.ones_like(Omega)

    @property
    def omega_band(self):
        return 2 * np.pi * self.f_min, 2 * np.pi * self.f_max


def log_integral(fn, omega_lo, omega_hi, rtol=1e-9, n0=129, max_doublings=12):
    """Adaptive Simpson integral of a vectorized integrand on a log axis.

    Doubles the grid density until two successive estimates agree to
    ``rtol``; raises ConvergenceError otherwise.  Deterministic for
    identical inputs.
    """
    u_lo, u_hi = np.log(omega_lo), np.log(omega_hi)
    n = n0
    prev = None
    for _ in range(max_doublings):
        u = np.linspace(u_lo, u_hi, n)
        om = np.exp(u)
        y = fn(om) * om  # dOmega = Omega du
        val = simpson(y, x=u)
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val
        prev = val
        n = 2 * n - 1
    raise ConvergenceError("log_integral did not reach rtol=%g" % rtol)


def snr_weight_integral(psd_fn, signal, rtol=1e-9):
    """integral w(Omega)/S^h(Omega) dOmega over the signal band."""
    lo, hi = signal.omega_band

    def integrand(om):
        s = psd_fn(om)
        if np.any(s <= 0):
            raise ValueError("spectral density must be positive over the band")
        return signal.weight(om) / s

    return log_integral(integrand, lo, hi, rtol=rtol)


def snr_ratio(psd_a, psd_b, signal, rtol=1e-9):
    """rho^2_A / rho^2_B for two noise curves under the same signal model."""
    return snr_weight_integral(psd_a, signal, rtol) / snr_weight_integral(
        psd_b, signal, rtol
    )


def sigma2_narrowband(lam, s):
    """Closed-form normalized burst sensitivity (times Omega_q/Omega_0).

    lam = Lambda/Omega_q is the normalized pole separation and
    s = (Omega_0/Omega_q) xi_tech the normalized technical noise.
    """
    q = 1.0 + 2.0 * s**2 + lam**4
    return 1.0 / np.sqrt(2.0 * q * (np.sqrt(q) - lam**2))


def sigma2_narrowband_quadrature(lam, s, epsabs=1e-12):
    """Direct quadrature oracle for `sigma2_narrowband`."""

    def integrand(y):
        return 1.0 / ((4 * y**2 - lam**2) ** 2 + 1.0 + 2.0 * s**2)

    val, err = quad(integrand, -np.inf, np.inf, epsabs=epsabs, epsrel=1e-12)
    return 2.0 / np.pi * val


def sigma2_optimal(xi_tech):
    """Analytic burst-sensitivity optimum for a given technical-noise level.

    Returns a dict with the optimal and pole-merged (Lambda = 0)
    sensitivities and the optimizing parameters
    Lambda = Omega_q = Omega_0 xi_tech.
    """
    if xi_tech <= 0:
        raise ValueError("xi_tech must be positive")
    return {
        "sigma2_opt": 1.0 / (2.0 * np.sqrt(2.0) * xi_tech),
        "sigma2_merged": 1.0 / (np.sqrt(6.0 * np.sqrt(3.0)) * xi_tech),
        "lambda_over_omega0": xi_tech,
        "omega_q_over_omega0": xi_tech,
    }


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of a deterministic design search."""

    params: dict
    objective: float
    iterations: int
    converged: bool
    tolerance: float
    boundary: bool = False
    extra: dict = field(default_factory=dict)


_NM_OPTS = dict(xatol=1e-4, fatol=1e-7, maxiter=400)


def _nelder_mead(fun, seeds, scale_tol):
    """Fixed-schedule Nelder-Mead restarts; returns the best result."""
    best = None
    total_iter = 0
    for seed in seeds:
        res = minimize(fun, np.asarray(seed, dtype=float), method="Nelder-Mead",
                       options=_NM_OPTS)
        total_iter += res.nit
        if best is None or res.fun < best.fun:
            best = res
    return best, total_iter


def optimize_filter_cavity(J, gamma, mass, arm_length, r, eta_d, specific_loss,
                           scheme, signal=None, rtol=1e-6, max_iterations=None):
    """Maximize the inspiral SNR over filter-cavity rate and detuning.

    ``specific_loss`` is A_f/L_f in 1/m.  The search runs in units of
    gamma_f0 = sqrt(J/gamma), seeded at (1, 1) with a fixed restart
    schedule.  The reference rho_0^2 uses the tuned interferometer
    without squeezing.  A result near zero rate means the optimizer
    turned the cavity off (losses too high to help); the ``boundary``
    flag reports it.
    """
    signal = signal or SignalModel("inspiral")
    gf0 = np.sqrt(J / gamma)
    length = 50.0  # arbitrary: only A_f/L_f matters for the rates
    gamma_f2 = C * specific_loss / 4.0

    def psd_ref(om):
        return caves_psd(J, gamma, mass, arm_length, 0.0, eta_d, om)

    rho0 = snr_weight_integral(psd_ref, signal, rtol=rtol)

    def objective(p):
        gf1, df = p * gf0
        if gf1 <= 0 or df < 0:
            return 1e9 * (1 + abs(gf1) + abs(df))
        fc = FilterCavityConfig.from_rates(gf1, df, gamma_f2, length=length)

        def psd(om):
            return filtered_sum_noise(scheme, fc, J, gamma, mass, arm_length,
                                      r, eta_d, om)

        try:
            return -snr_weight_integral(psd, signal, rtol=rtol) / rho0
        except (ValueError, ConvergenceError):
            return 1e9

    if max_iterations is not None:
        opts = dict(_NM_OPTS, maxiter=max_iterations)
    else:
        opts = _NM_OPTS
    seeds = [(1.0, 1.0), (0.5, 1.2), (2.0, 0.8)]
    best, total = None, 0
    for seed in seeds:
        res = minimize(objective, np.asarray(seed), method="Nelder-Mead", options=opts)
        total += res.nit
        if best is None or res.fun < best.fun:
            best = res
    gf1, df = best.x * gf0
    converged = bool(best.success)
    if not converged and max_iterations is None:
        raise ConvergenceError("filter-cavity optimization exhausted its budget")
    return OptimizationResult(
        params={"gamma_f1": gf1, "delta_f": df, "gamma_f2": gamma_f2,
                "gamma_f0": gf0},
        objective=-best.fun,
        iterations=total,
        converged=converged,
        tolerance=rtol,
        boundary=bool(gf1 < 0.05 * gf0),
        extra={"scheme": scheme, "specific_loss": specific_loss},
    )


def burst_sigma2(eff, phi_lo, eta_d, omega0, xi_tech2, rtol=1e-6,
                 band=(0.01, 100.0)):
    """Burst-weighted sensitivity sigma^2 of a detuned configuration.

    sigma^2 = (S_SQL(Omega_0)/pi) integral (dOmega/Omega) / (S^h + S_tech)
    with the flat technical density S_tech = xi_tech^2 S_SQL(Omega_0).
    This normalization reduces exactly to the narrow-band measure
    (1/pi Omega_0) integral dnu / (xi^2 + xi_tech^2) around the dip.
    """
    sql0 = 4 * HBAR / (eff.mass * eff.arm_length**2 * omega0**2)
    s_tech = xi_tech2 * sql0

    def integrand(om):
        return 1.0 / (om * (detuned_sum_noise_h(eff, phi_lo, eta_d, om) + s_tech))

    val = log_integral(integrand, band[0] * omega0, band[1] * omega0, rtol=rtol)
    return sql0 / np.pi * val


def optimize_burst_snr(J, mass, arm_length, xi_tech2, eta_d=1.0, gamma2=0.0,
                       omega0=None, rtol=1e-6, max_iterations=None):
    """Maximize the burst sigma^2 over (Gamma, beta, phi_LO).

    ``omega0`` defaults to the second-order-pole frequency of the given
    power, (4J)^(1/3)/sqrt(2).  Seeds come from the narrow-band analytic
    optimum; the restart schedule is fixed.
    """
    if omega0 is None:
        omega0 = (4 * J) ** (1.0 / 3.0) / np.sqrt(2.0)
    xi_tech = np.sqrt(xi_tech2)

    def seed_point(phi0, gamma_scale):
        gamma = omega0 * xi_tech2 / (np.sqrt(2) * (1 + np.cos(phi0) ** 2))
        gamma *= gamma_scale
        lam = omega0 * xi_tech
        delta = (omega0**4 - omega0**2 * lam**2) / J + gamma * np.sin(2 * phi0)
        return np.array([np.log(gamma), delta / omega0, phi0])

    def objective(p):
        ln_gamma, delta_norm, phi_lo = p
        gamma = np.exp(ln_gamma)
        delta = delta_norm * omega0
        if not (0 < gamma < 10 * omega0) or delta <= 0:
            return 1e9
        if not (0.05 < phi_lo < np.pi - 0.05):
            return 1e9
        g2 = min(gamma2, 0.5 * gamma)
        eff = EffectiveCavity(gamma1=gamma - g2, gamma2=g2, delta=delta, J=J,
                              mass=mass, arm_length=arm_length)
        try:
            return -burst_sigma2(eff, phi_lo, eta_d, omega0, xi_tech2, rtol=rtol)
        except (ValueError, ConvergenceError):
            return 1e9

    opts = dict(_NM_OPTS, xatol=1e-5)
    if max_iterations is not None:
        opts["maxiter"] = max_iterations
    seeds = [seed_point(0.91, 1.0), seed_point(0.6, 0.5), seed_point(1.2, 2.0)]
    best, total = None, 0
    for seed in seeds:
        res = minimize(objective, seed, method="Nelder-Mead", options=opts)
        total += res.nit
        if best is None or res.fun < best.fun:
            best = res
    ln_gamma, delta_norm, phi_lo = best.x
    gamma = float(np.exp(ln_gamma))
    delta = float(delta_norm * omega0)
    converged = bool(best.success) and best.fun < 0
    if not converged and max_iterations is None:
        raise ConvergenceError("burst optimization exhausted its budget")
    return OptimizationResult(
        params={
            "Gamma": float(np.hypot(gamma, delta)),
            "beta": float(np.arctan2(delta, gamma)),
            "phi_lo": float(phi_lo),
            "gamma": gamma,
            "delta": delta,
        },
        objective=-best.fun,
        iterations=total,
        converged=converged,
        tolerance=rtol,
        extra={"omega0": omega0, "xi_tech2": xi_tech2,
               "sigma2_analytic": sigma2_optimal(xi_tech)["sigma2_opt"]},
    )
