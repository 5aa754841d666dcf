"""Command-line front end: config ingestion, presets, sweeps, CSV output.

Subcommands:

    budget            evaluate a noise budget over a frequency grid
    sql               standard quantum limit curves
    roots             optical-spring characteristic roots
    optimize-filter   inspiral-SNR optimization of a filter cavity
    optimize-detuned  burst-SNR optimization of a detuned configuration
    presets           list the catalog or run a named preset

Configs are JSON documents with SI units; frequencies at the boundary
are given in Hz (fields named *_hz) or as raw angular rates (*_s1).
All spectral densities are double-sided internally; requesting
``--sided single`` multiplies by two at the output (S+ = 2 S).  Every
numeric field is emitted with 17 significant digits, so identical
configurations produce byte-identical tables.

Exit codes: 0 success, 2 configuration error, 3 numerical or
convergence failure.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .baselines import Probe, sql as sql_curve
from .cavity import CavityParams
from .errors import ConfigError, ConvergenceError, SingularFrequencyError
from .filters import FilterCavityConfig, design_rates, filtered_sum_noise
from .interferometer import (
    EffectiveCavity,
    budget_noise_h,
    coupling_factor,
    detuned_sum_noise_h,
    fpmi_noise_triple,
    lossy_redefinition,
    optical_rigidity,
    sql_strain,
)
from .presets import PRESETS, preset_config
from .rigidity import PoleRegimeParams, characteristic_roots, instability_time, \
    second_order_pole_xi2
from .snr import optimize_burst_snr, optimize_filter_cavity
from .speedmeter import SpeedmeterConfig, lossy_speedmeter_psd, sagnac_coupling
from .twophoton import LightState, db_to_r

TWO_PI = 2 * np.pi

TOPOLOGIES = (
    "sqm", "mirror", "cavity", "fpmi", "speedmeter",
    "filtered-pre", "filtered-post", "detuned", "second-order-pole",
)


# ---------------------------------------------------------------------------
# configuration

def _require(params, field):
    if field not in params:
        raise ConfigError("missing required field %r" % field)
    return params[field]


def _positive(params, field, value=None):
    v = params[field] if value is None else value
    if not np.isfinite(v) or v <= 0:
        raise ConfigError("field %r must be positive and finite" % field)
    return float(v)


def _in_range(params, field, lo, hi, default=None):
    if field not in params:
        if default is None:
            raise ConfigError("missing required field %r" % field)
        return default
    v = params[field]
    if not (lo <= v <= hi):
        raise ConfigError("field %r out of range [%g, %g]" % (field, lo, hi))
    return float(v)


def _rate(params, base, default=None):
    """Angular rate from either <base>_hz (x 2 pi) or <base>_s1 (raw)."""
    hz_key, s1_key = base + "_hz", base + "_s1"
    if hz_key in params and s1_key in params:
        raise ConfigError("give only one of %r and %r" % (hz_key, s1_key))
    if hz_key in params:
        return TWO_PI * float(params[hz_key])
    if s1_key in params:
        return float(params[s1_key])
    if default is None:
        raise ConfigError("missing required field %r (or %r)" % (hz_key, s1_key))
    return default


def _normalized_power(params):
    """J in s^-3 from J_s3, J_pole_hz or physical arm power."""
    given = [k for k in ("J_s3", "J_pole_hz", "arm_power_W") if k in params]
    if len(given) != 1:
        raise ConfigError(
            "power must be given by exactly one of J_s3, J_pole_hz, arm_power_W"
        )
    if given[0] == "J_s3":
        return _positive(params, "J_s3")
    if given[0] == "J_pole_hz":
        return (TWO_PI * _positive(params, "J_pole_hz")) ** 3
    power = _positive(params, "arm_power_W")
    wavelength = _positive(params, "wavelength_m",
                           params.get("wavelength_m", 1.064e-6))
    mass = _positive(params, "mass_kg", params.get("mass_kg"))
    length = _positive(params, "arm_length_m", params.get("arm_length_m"))
    c = 299792458.0
    omega_p = TWO_PI * c / wavelength
    return 8 * omega_p * power / (mass * c * length)


def _squeeze_state(params):
    db = params.get("squeeze_db", 0.0)
    if db < 0:
        raise ConfigError("field 'squeeze_db' must be non-negative")
    if db == 0.0:
        return LightState.vacuum()
    return LightState.squeezed(float(db_to_r(db)), params.get("squeeze_angle_rad", 0.0))


def load_config(source):
    """Parse and validate a run configuration from a path or JSON text."""
    if isinstance(source, dict):
        raw = source
    else:
        text = source
        if not text.lstrip().startswith("{"):
            try:
                with open(source) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError("cannot read config: %s" % exc)
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config parse error at line %d: %s"
                              % (exc.lineno, exc.msg))
    topology = raw.get("topology")
    if topology not in TOPOLOGIES:
        raise ConfigError("field 'topology' must be one of %s" % (TOPOLOGIES,))
    grid = dict({"f_min_hz": 5.0, "f_max_hz": 5000.0, "points": 200,
                 "spacing": "log"}, **raw.get("grid", {}))
    if grid["f_min_hz"] <= 0 or grid["f_max_hz"] <= grid["f_min_hz"]:
        raise ConfigError("grid requires 0 < f_min_hz < f_max_hz")
    if int(grid["points"]) < 2:
        raise ConfigError("field 'points' must be at least 2")
    if grid["spacing"] not in ("log", "linear"):
        raise ConfigError("field 'spacing' must be 'log' or 'linear'")
    sided = raw.get("sided", "double")
    if sided not in ("single", "double"):
        raise ConfigError("field 'sided' must be 'single' or 'double'")
    normalization = raw.get("normalization", "h")
    if normalization not in ("h", "F", "x"):
        raise ConfigError("field 'normalization' must be 'h', 'F' or 'x'")
    return {
        "topology": topology,
        "params": dict(raw.get("params", {})),
        "grid": grid,
        "sided": sided,
        "normalization": normalization,
        "columns": raw.get("columns"),
        "comment": raw.get("comment"),
    }


def serialize_config(cfg):
    """Canonical JSON text of a configuration (round-trip stable)."""
    return json.dumps(cfg, indent=2, sort_keys=True)


def frequency_grid(grid):
    n = int(grid["points"])
    if grid["spacing"] == "log":
        u = np.linspace(np.log(grid["f_min_hz"]), np.log(grid["f_max_hz"]), n)
        return np.exp(u)
    return np.linspace(grid["f_min_hz"], grid["f_max_hz"], n)


# ---------------------------------------------------------------------------
# budget evaluation

def _convert_from_h(s_h, normalization, mass, length, Omega):
    """Translate a strain PSD into the requested normalization."""
    if normalization == "h":
        return s_h
    s_f = s_h * mass**2 * length**2 * Omega**4 / 4
    if normalization == "F":
        return s_f
    return s_f / (mass**2 * Omega**4)  # free-mass displacement


def _effective_cavity(params):
    mass = _positive(params, "mass_kg", params.get("mass_kg"))
    length = _positive(params, "arm_length_m", params.get("arm_length_m"))
    if "T_arm" in params:
        # physical route: reduce the recycled interferometer first
        from .interferometer import InterferometerConfig, scaling_law

        cfg = InterferometerConfig(
            mass=mass,
            arm_length=length,
            arm_power=_positive(params, "arm_power_W", params.get("arm_power_W")),
            T_arm=_in_range(params, "T_arm", 0.0, 1.0),
            A_arm=_in_range(params, "A_arm", 0.0, 1.0, default=0.0),
            delta_arm=_rate(params, "delta_arm", 0.0),
            R_S=_in_range(params, "R_S", 0.0, 1.0 - 1e-12, default=0.0),
            phi_S=params.get("phi_S_rad", 0.0),
            wavelength=_positive(params, "wavelength_m",
                                 params.get("wavelength_m", 1.064e-6)),
        )
        return scaling_law(cfg)
    j = _normalized_power(params)
    gamma2 = _rate(params, "gamma2", 0.0)
    if "Gamma_s1" in params or "beta_rad" in params:
        big_gamma = _positive(params, "Gamma_s1", params.get("Gamma_s1"))
        beta = _in_range(params, "beta_rad", -np.pi / 2, np.pi / 2)
        gamma = big_gamma * np.cos(beta)
        delta = big_gamma * np.sin(beta)
    else:
        gamma = _rate(params, "gamma")
        delta = _rate(params, "delta", 0.0)
    if gamma2 >= gamma:
        raise ConfigError("field 'gamma2_s1' must stay below the bandwidth")
    return EffectiveCavity(gamma1=gamma - gamma2, gamma2=gamma2, delta=delta,
                           J=j, mass=mass, arm_length=length)


def _triple_columns(eff, phi_lo, squeeze, eta_d, Omega):
    triple = fpmi_noise_triple(eff, phi_lo, squeeze, eta_d, Omega)
    k = optical_rigidity(eff, Omega)
    s_xf = np.broadcast_to(np.asarray(triple.S_XF), np.shape(triple.S_XX))
    return {
        "S_XX": triple.S_XX,
        "S_FF": triple.S_FF,
        "Re_S_XF": s_xf.real,
        "Im_S_XF": s_xf.imag,
        "coupling_K": coupling_factor(eff.J, eff.gamma, Omega),
        "Re_rigidity_K": k.real,
        "Im_rigidity_K": k.imag,
    }


def _eval_fpmi(cfg, Omega):
    p = cfg["params"]
    eff = _effective_cavity(p)
    phi_lo = p.get("phi_lo_rad", np.pi / 2)
    eta_d = _in_range(p, "eta_d", 1e-6, 1.0, default=1.0)
    squeeze = _squeeze_state(p)
    s_h = budget_noise_h(eff, phi_lo, squeeze, eta_d, Omega)
    cols = {"S": s_h, "SQL": sql_strain(eff.mass, eff.arm_length, Omega)}
    cols["xi2"] = s_h / cols["SQL"]
    cols.update(_triple_columns(eff, phi_lo, squeeze, eta_d, Omega))
    comments = [
        "derived: gamma1=%.6g s^-1, gamma2=%.6g s^-1, delta=%.6g s^-1, "
        "J=%.6g s^-3" % (eff.gamma1, eff.gamma2, eff.delta, eff.J),
        "derived: eps_d=%.6g, eta=%.6g"
        % (np.sqrt(1 / eta_d - 1), lossy_redefinition(eff.gamma1, eff.gamma2, eta_d)[0]),
    ]
    return cols, comments, eff.mass, eff.arm_length


def _eval_detuned(cfg, Omega):
    p = cfg["params"]
    eff = _effective_cavity(p)
    phi_lo = p.get("phi_lo_rad", np.pi / 2)
    eta_d = _in_range(p, "eta_d", 1e-6, 1.0, default=1.0)
    if p.get("squeeze_db", 0.0):
        raise ConfigError("topology 'detuned' models vacuum input only "
                          "(drop 'squeeze_db')")
    s_h = detuned_sum_noise_h(eff, phi_lo, eta_d, Omega)
    cols = {"S": s_h, "SQL": sql_strain(eff.mass, eff.arm_length, Omega)}
    cols["xi2"] = s_h / cols["SQL"]
    cols.update(_triple_columns(eff, phi_lo, LightState.vacuum(), eta_d, Omega))
    pair = characteristic_roots(eff.J, eff.gamma, eff.delta) if eff.delta > 0 else None
    comments = ["derived: Gamma=%.6g s^-1, beta=%.6g rad, J=%.6g s^-3"
                % (eff.big_gamma, eff.beta, eff.J)]
    if pair is not None:
        tau_inst, _ = instability_time(eff.J, eff.gamma, eff.delta)
        comments.append(
            "derived: mechanical root=(%.6g%+.6gj) s^-1, optical root="
            "(%.6g%+.6gj) s^-1, tau_inst=%.6g s"
            % (pair.mechanical.real, pair.mechanical.imag,
               pair.optical.real, pair.optical.imag, tau_inst))
    return cols, comments, eff.mass, eff.arm_length


def _eval_speedmeter(cfg, Omega):
    p = cfg["params"]
    mass = _positive(p, "mass_kg", p.get("mass_kg"))
    length = _positive(p, "arm_length_m", p.get("arm_length_m"))
    sm = SpeedmeterConfig(
        J=_normalized_power(p),
        gamma=_rate(p, "gamma"),
        gamma2=_rate(p, "gamma2", 0.0),
        r=float(db_to_r(p.get("squeeze_db", 0.0))),
        phi_lo=p.get("phi_lo_rad"),
        eta_d=_in_range(p, "eta_d", 1e-6, 1.0, default=1.0),
        mass=mass,
        arm_length=length,
    )
    s_h = lossy_speedmeter_psd(sm, Omega)
    cols = {"S": s_h, "SQL": sql_strain(mass, length, Omega)}
    cols["xi2"] = s_h / cols["SQL"]
    cols["coupling_K_SM"] = sagnac_coupling(sm.J, sm.gamma, Omega)
    comments = ["derived: phi_lo=%.6g rad, eps_arm^2=%.6g"
                % (sm.phi_lo if sm.phi_lo is not None else sm.optimal_phi_lo(),
                   sm.eps_arm2)]
    return cols, comments, mass, length


def _eval_filtered(cfg, Omega, scheme):
    p = cfg["params"]
    mass = _positive(p, "mass_kg", p.get("mass_kg"))
    length = _positive(p, "arm_length_m", p.get("arm_length_m"))
    j = _normalized_power(p)
    gamma = _rate(p, "gamma")
    r = float(db_to_r(p.get("squeeze_db", 0.0)))
    eta_d = _in_range(p, "eta_d", 1e-6, 1.0, default=1.0)
    spec = p.get("filter", "auto")
    if spec == "auto":
        gf1, df = design_rates(scheme, j, gamma, r, eta_d)
        fc = FilterCavityConfig.from_rates(gf1, df, 0.0, length=50.0)
    else:
        if not isinstance(spec, dict):
            raise ConfigError("field 'filter' must be 'auto' or an object")
        fc_len = _positive(spec, "length_m", spec.get("length_m", 50.0))
        if "T_f" in spec:
            fc = FilterCavityConfig(
                length=fc_len,
                T_f=_in_range(spec, "T_f", 0.0, 1.0),
                A_f=_in_range(spec, "A_f", 0.0, 1.0, default=0.0),
                detuning=_rate(spec, "detuning", 0.0),
            )
        else:
            fc = FilterCavityConfig.from_rates(
                _rate(spec, "gamma_f1"), _rate(spec, "delta_f"),
                _rate(spec, "gamma_f2", 0.0), length=fc_len)
    s_h = filtered_sum_noise(scheme, fc, j, gamma, mass, length, r, eta_d, Omega)
    cols = {"S": s_h, "SQL": sql_strain(mass, length, Omega)}
    cols["xi2"] = s_h / cols["SQL"]
    cols["coupling_K"] = coupling_factor(j, gamma, Omega)
    comments = ["derived: gamma_f1=%.6g s^-1, gamma_f2=%.6g s^-1, "
                "delta_f=%.6g s^-1 (%s-filter)"
                % (fc.gamma_f1, fc.gamma_f2, fc.detuning, scheme)]
    return cols, comments, mass, length


def _eval_sqm(cfg, Omega):
    from .baselines import sqm_sum_noise

    p = cfg["params"]
    kind = p.get("probe", "free-mass")
    mass = _positive(p, "mass_kg", p.get("mass_kg"))
    omega0 = _rate(p, "resonance", 0.0)
    probe = Probe(kind, mass=mass, omega0=omega0)
    omega_q = _rate(p, "omega_q")
    s_f = sqm_sum_noise(probe, omega_q, Omega)
    sql_f = sql_curve(probe, "F", Omega)
    with np.errstate(divide="ignore"):
        cols = {"S": s_f, "SQL": sql_f, "xi2": np.where(sql_f > 0, s_f / sql_f, np.inf)}
    comments = ["derived: Omega_q=%.6g s^-1, probe=%s" % (omega_q, kind)]
    return cols, comments, mass, p.get("arm_length_m")


def _eval_mirror(cfg, Omega):
    from .elements import MovableMirrorMeter, movable_mirror_noise, \
        ponderomotive_rigidity

    p = cfg["params"]
    c = 299792458.0
    wavelength = _positive(p, "wavelength_m", p.get("wavelength_m", 1.064e-6))
    meter = MovableMirrorMeter(
        mass=_positive(p, "mass_kg", p.get("mass_kg")),
        R=_in_range(p, "R", 0.0, 1.0),
        T=_in_range(p, "T", 0.0, 1.0),
        omega_p=TWO_PI * c / wavelength,
        power1=_positive(p, "power1_W", p.get("power1_W")),
        power2=_in_range(p, "power2_W", 0.0, np.inf, default=0.0),
        pump_phase=p.get("pump_phase_rad", 0.0),
        phi1=p.get("phi1_rad", np.pi / 2),
        phi2=p.get("phi2_rad", np.pi / 2),
        eta_d=_in_range(p, "eta_d", 1e-6, 1.0, default=1.0),
    )
    states = (_squeeze_state(p), LightState.vacuum())
    noise = movable_mirror_noise(meter, states, Omega)
    cols = {
        "S_F11": noise.S11,
        "S_F22": noise.S22,
        "Re_S_F12": np.asarray(noise.S12).real,
        "Im_S_F12": np.asarray(noise.S12).imag,
        "SQL_F": sql_curve(Probe(mass=meter.mass), "F", Omega),
    }
    comments = ["derived: ponderomotive K=%.6g N/m" % ponderomotive_rigidity(meter)]
    return cols, comments, meter.mass, None


def _eval_cavity(cfg, Omega):
    p = cfg["params"]
    cav = CavityParams(
        length=_positive(p, "length_m", p.get("length_m")),
        T1=_in_range(p, "T1", 0.0, 1.0),
        loss=_in_range(p, "A", 0.0, 1.0, default=0.0),
        detuning=_rate(p, "detuning", 0.0),
        mass=_positive(p, "mass_kg", p.get("mass_kg")),
        power=_positive(p, "power_W", p.get("power_W")),
        omega_p=TWO_PI * 299792458.0
        / _positive(p, "wavelength_m", p.get("wavelength_m", 1.064e-6)),
    )
    eff = EffectiveCavity(gamma1=cav.gamma1, gamma2=cav.gamma2,
                          delta=cav.detuning, J=cav.J, mass=cav.mass,
                          arm_length=cav.length)
    phi_lo = p.get("phi_lo_rad", np.pi / 2)
    eta_d = _in_range(p, "eta_d", 1e-6, 1.0, default=1.0)
    squeeze = _squeeze_state(p)
    s_h = budget_noise_h(eff, phi_lo, squeeze, eta_d, Omega)
    cols = {"S": s_h, "SQL": sql_strain(cav.mass, cav.length, Omega)}
    cols["xi2"] = s_h / cols["SQL"]
    cols.update(_triple_columns(eff, phi_lo, squeeze, eta_d, Omega))
    flags = cav.single_mode_flags(Omega)
    comments = ["derived: gamma1=%.6g s^-1, gamma2=%.6g s^-1, J=%.6g s^-3, "
                "single-mode flags=%s" % (cav.gamma1, cav.gamma2, cav.J,
                                          json.dumps(flags, sort_keys=True))]
    return cols, comments, cav.mass, cav.length


def _eval_pole(cfg, Omega):
    p = cfg["params"]
    mass = _positive(p, "mass_kg", p.get("mass_kg"))
    length = _positive(p, "arm_length_m", p.get("arm_length_m"))
    pole = PoleRegimeParams(
        omega0=_rate(p, "omega0"),
        separation=_rate(p, "Lambda", 0.0),
        omega_q=_rate(p, "omega_q"),
        xi_tech2=_in_range(p, "xi_tech2", 0.0, np.inf, default=0.0),
    )
    eps = _in_range(p, "eps", 0.0, np.inf, default=0.0)
    phi_lo = p.get("phi_lo_rad", np.pi / 2)
    nu = Omega - pole.omega0
    xi2 = second_order_pole_xi2(pole, eps, nu, phi_lo)
    sqlv = sql_strain(mass, length, Omega)
    cols = {"S": xi2 * sqlv, "SQL": sqlv, "xi2": xi2, "nu_s1": nu}
    comments = ["derived: Omega_0=%.6g s^-1, Lambda=%.6g s^-1, "
                "Omega_q=%.6g s^-1" % (pole.omega0, pole.separation, pole.omega_q)]
    return cols, comments, mass, length


_EVALUATORS = {
    "fpmi": _eval_fpmi,
    "detuned": _eval_detuned,
    "speedmeter": _eval_speedmeter,
    "filtered-pre": lambda cfg, om: _eval_filtered(cfg, om, "pre"),
    "filtered-post": lambda cfg, om: _eval_filtered(cfg, om, "post"),
    "sqm": _eval_sqm,
    "mirror": _eval_mirror,
    "cavity": _eval_cavity,
    "second-order-pole": _eval_pole,
}


def run_budget(cfg):
    """Evaluate a validated config into (columns, comments).

    The leading column is frequency_hz; the main density column follows
    the requested normalization and sidedness.  Non-finite rows (e.g. an
    oscillator SQL pole hit exactly by the grid) are dropped with a
    warning comment.
    """
    f = frequency_grid(cfg["grid"])
    Omega = TWO_PI * f
    cols, comments, mass, length = _EVALUATORS[cfg["topology"]](cfg, Omega)

    norm = cfg["normalization"]
    if "S" in cols:
        if norm != "h" and cfg["topology"] in (
            "fpmi", "detuned", "speedmeter", "filtered-pre", "filtered-post",
            "cavity", "second-order-pole",
        ):
            cols["S"] = _convert_from_h(cols["S"], norm, mass, length, Omega)
            cols["SQL"] = _convert_from_h(cols["SQL"], norm, mass, length, Omega)
        label = {"h": "S_h", "F": "S_F", "x": "S_x"}[norm]
        if cfg["sided"] == "single":
            cols["S"] = 2.0 * cols["S"]
            cols["SQL"] = 2.0 * cols["SQL"]
            label += "_plus"
        sqrt_label = "sqrt_" + label
        renamed = {"frequency_hz": f, label: cols.pop("S")}
        renamed[sqrt_label] = np.sqrt(renamed[label])
        renamed.update(cols)
        cols = renamed
    else:
        cols = {"frequency_hz": f, **cols}

    if cfg.get("columns"):
        keep = ["frequency_hz"] + [c for c in cfg["columns"] if c != "frequency_hz"]
        unknown = [c for c in keep if c not in cols]
        if unknown:
            raise ConfigError("unknown columns requested: %s (available: %s)"
                              % (unknown, sorted(cols)))
        cols = {k: cols[k] for k in keep}

    # drop singular grid points (e.g. exactly at an oscillator resonance)
    finite = np.ones(len(f), dtype=bool)
    for v in cols.values():
        finite &= np.isfinite(np.asarray(v, dtype=float))
    if not finite.all():
        comments.append("warning: dropped %d singular grid point(s)"
                        % int((~finite).sum()))
        cols = {k: np.asarray(v)[finite] for k, v in cols.items()}

    head = ["ifonoise budget v%s" % __version__,
            "topology: %s" % cfg["topology"],
            "normalization: %s, sided: %s" % (cfg["normalization"], cfg["sided"])]
    if cfg.get("comment"):
        head.insert(1, "preset: %s" % cfg["comment"])
    return cols, head + comments


def write_table(cols, comments, stream):
    """Emit a commented CSV table with 17-significant-digit numbers."""
    for line in comments:
        stream.write("# %s\n" % line)
    names = list(cols)
    stream.write(",".join(names) + "\n")
    arrays = [np.asarray(cols[k], dtype=float) for k in names]
    n = len(arrays[0]) if arrays else 0
    for i in range(n):
        stream.write(",".join("%.17g" % a[i] for a in arrays) + "\n")


# ---------------------------------------------------------------------------
# subcommand drivers

def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w"), True


def _apply_grid_overrides(cfg, args):
    if args.fmin is not None:
        cfg["grid"]["f_min_hz"] = args.fmin
    if args.fmax is not None:
        cfg["grid"]["f_max_hz"] = args.fmax
    if args.points is not None:
        cfg["grid"]["points"] = args.points
    if args.log:
        cfg["grid"]["spacing"] = "log"
    if args.linear:
        cfg["grid"]["spacing"] = "linear"
    if args.sided:
        cfg["sided"] = args.sided
    if args.columns:
        cfg["columns"] = [c.strip() for c in args.columns.split(",") if c.strip()]
    # re-validate after overrides
    return load_config(cfg)


def _add_grid_flags(sub):
    sub.add_argument("--fmin", type=float, help="grid start [Hz]")
    sub.add_argument("--fmax", type=float, help="grid end [Hz]")
    sub.add_argument("--points", type=int, help="number of grid points")
    sub.add_argument("--log", action="store_true", help="log spacing")
    sub.add_argument("--linear", action="store_true", help="linear spacing")
    sub.add_argument("--sided", choices=("single", "double"))
    sub.add_argument("--columns", help="comma-separated column selection")
    sub.add_argument("--out", help="output path (default stdout)")


def _cmd_budget(args):
    if bool(args.config) == bool(args.preset):
        raise ConfigError("give exactly one of --config or --preset")
    cfg = preset_config(args.preset) if args.preset else load_config(args.config)
    cfg = _apply_grid_overrides(cfg, args)
    cols, comments = run_budget(cfg)
    stream, close = _open_out(args.out)
    try:
        write_table(cols, comments, stream)
    finally:
        if close:
            stream.close()
    return 0


def _cmd_sql(args):
    probe = Probe(args.probe, mass=args.mass_kg,
                  omega0=TWO_PI * args.resonance_hz)
    cfg = load_config({"topology": "sqm", "params": {}})
    cfg = _apply_grid_overrides(cfg, args)
    f = frequency_grid(cfg["grid"])
    Omega = TWO_PI * f
    try:
        vals = sql_curve(probe, args.normalization, Omega,
                         arm_length=args.arm_length_m)
    except SingularFrequencyError:
        keep = Omega != probe.omega0
        Omega, f = Omega[keep], f[keep]
        vals = sql_curve(probe, args.normalization, Omega,
                         arm_length=args.arm_length_m)
    if cfg["sided"] == "single":
        vals = 2.0 * vals
    name = "SQL_%s%s" % (args.normalization,
                         "_plus" if cfg["sided"] == "single" else "")
    cols = {"frequency_hz": f, name: vals, "sqrt_" + name: np.sqrt(vals)}
    comments = ["ifonoise sql v%s" % __version__,
                "probe: %s, mass: %g kg" % (args.probe, args.mass_kg)]
    stream, close = _open_out(args.out)
    try:
        write_table(cols, comments, stream)
    finally:
        if close:
            stream.close()
    return 0


def _cmd_roots(args):
    j = (TWO_PI * args.j_pole_hz) ** 3 if args.j_pole_hz else args.j_s3
    if not j or j <= 0:
        raise ConfigError("give a positive power via --j-s3 or --j-pole-hz")
    gamma = TWO_PI * args.gamma_hz if args.gamma_hz is not None else args.gamma_s1
    delta = TWO_PI * args.delta_hz if args.delta_hz is not None else args.delta_s1
    if gamma is None or delta is None:
        raise ConfigError("give --gamma-hz/--gamma-s1 and --delta-hz/--delta-s1")
    pair = characteristic_roots(j, gamma, delta)
    tau_inst, slow = instability_time(j, gamma, delta)
    cols = {
        "Re_mechanical_s1": np.array([pair.mechanical.real]),
        "Im_mechanical_s1": np.array([pair.mechanical.imag]),
        "Re_optical_s1": np.array([pair.optical.real]),
        "Im_optical_s1": np.array([pair.optical.imag]),
        "tau_inst_s": np.array([tau_inst]),
        "Omega_m_tau_inst": np.array([slow]),
    }
    comments = ["ifonoise roots v%s" % __version__,
                "J=%.17g s^-3, gamma=%.17g s^-1, delta=%.17g s^-1" % (j, gamma, delta),
                "merged: %s, unstable: %s" % (pair.merged, pair.unstable)]
    stream, close = _open_out(args.out)
    try:
        write_table(cols, comments, stream)
    finally:
        if close:
            stream.close()
    return 0


def _cmd_optimize_filter(args):
    j = (TWO_PI * args.j_pole_hz) ** 3
    gamma = TWO_PI * args.gamma_hz
    res = optimize_filter_cavity(
        j, gamma, args.mass_kg, args.arm_length_m,
        float(db_to_r(args.squeeze_db)), args.eta_d, args.specific_loss,
        args.scheme, max_iterations=args.budget,
    )
    gf0 = res.params["gamma_f0"]
    cols = {
        "gamma_f1_s1": np.array([res.params["gamma_f1"]]),
        "delta_f_s1": np.array([res.params["delta_f"]]),
        "gamma_f1_over_gamma_f0": np.array([res.params["gamma_f1"] / gf0]),
        "delta_f_over_gamma_f0": np.array([res.params["delta_f"] / gf0]),
        "snr_ratio": np.array([res.objective]),
        "iterations": np.array([float(res.iterations)]),
    }
    comments = ["ifonoise optimize-filter v%s" % __version__,
                "scheme: %s, specific loss A_f/L_f = %.3g 1/m"
                % (args.scheme, args.specific_loss),
                "gamma_f0 = %.17g s^-1" % gf0,
                "converged: %s, cavity off: %s" % (res.converged, res.boundary)]
    stream, close = _open_out(args.out)
    try:
        write_table(cols, comments, stream)
    finally:
        if close:
            stream.close()
    return 0 if res.converged else 3


def _cmd_optimize_detuned(args):
    j = (TWO_PI * args.j_pole_hz) ** 3
    res = optimize_burst_snr(
        j, args.mass_kg, args.arm_length_m, args.xi_tech2,
        eta_d=args.eta_d, gamma2=args.gamma2_s1, max_iterations=args.budget,
    )
    cols = {
        "Gamma_s1": np.array([res.params["Gamma"]]),
        "beta_rad": np.array([res.params["beta"]]),
        "phi_lo_rad": np.array([res.params["phi_lo"]]),
        "sigma2": np.array([res.objective]),
        "sigma2_analytic": np.array([res.extra["sigma2_analytic"]]),
        "iterations": np.array([float(res.iterations)]),
    }
    comments = ["ifonoise optimize-detuned v%s" % __version__,
                "xi_tech^2 = %.3g, eta_d = %.3g, gamma2 = %.3g s^-1"
                % (args.xi_tech2, args.eta_d, args.gamma2_s1),
                "Omega_0 = %.17g s^-1" % res.extra["omega0"],
                "converged: %s" % res.converged]
    stream, close = _open_out(args.out)
    try:
        write_table(cols, comments, stream)
    finally:
        if close:
            stream.close()
    return 0 if res.converged else 3


def _cmd_presets(args):
    if args.action == "list":
        stream, close = _open_out(args.out)
        try:
            for name in sorted(PRESETS):
                stream.write("%s: %s\n" % (name, PRESETS[name]["comment"]))
        finally:
            if close:
                stream.close()
        return 0
    cfg = preset_config(args.name)
    cfg = _apply_grid_overrides(cfg, args)
    cols, comments = run_budget(cfg)
    stream, close = _open_out(args.out)
    try:
        write_table(cols, comments, stream)
    finally:
        if close:
            stream.close()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ifonoise",
        description="Quantum-noise budgets for interferometric meters",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("budget", help="evaluate a noise budget")
    b.add_argument("--config", help="JSON config path or inline JSON")
    b.add_argument("--preset", help="preset name (see 'presets list')")
    _add_grid_flags(b)
    b.set_defaults(func=_cmd_budget)

    s = sub.add_parser("sql", help="standard quantum limit curves")
    s.add_argument("--probe", choices=("free-mass", "oscillator"),
                   default="free-mass")
    s.add_argument("--mass-kg", type=float, required=True)
    s.add_argument("--resonance-hz", type=float, default=0.0)
    s.add_argument("--normalization", choices=("F", "h", "x"), default="h")
    s.add_argument("--arm-length-m", type=float)
    _add_grid_flags(s)
    s.set_defaults(func=_cmd_sql)

    r = sub.add_parser("roots", help="optical-spring characteristic roots")
    r.add_argument("--j-s3", type=float, help="normalized power J [s^-3]")
    r.add_argument("--j-pole-hz", type=float, help="J = (2 pi x)^3")
    r.add_argument("--gamma-hz", type=float)
    r.add_argument("--gamma-s1", type=float)
    r.add_argument("--delta-hz", type=float)
    r.add_argument("--delta-s1", type=float)
    r.add_argument("--out")
    r.set_defaults(func=_cmd_roots)

    of = sub.add_parser("optimize-filter", help="filter-cavity inspiral SNR")
    of.add_argument("--j-pole-hz", type=float, default=100.0)
    of.add_argument("--gamma-hz", type=float, default=500.0)
    of.add_argument("--mass-kg", type=float, default=40.0)
    of.add_argument("--arm-length-m", type=float, default=4000.0)
    of.add_argument("--squeeze-db", type=float, default=10.0)
    of.add_argument("--eta-d", type=float, default=0.95)
    of.add_argument("--specific-loss", type=float, required=True,
                    help="A_f/L_f in 1/m")
    of.add_argument("--scheme", choices=("pre", "post"), default="post")
    of.add_argument("--budget", type=int, help="iteration budget per restart")
    of.add_argument("--out")
    of.set_defaults(func=_cmd_optimize_filter)

    od = sub.add_parser("optimize-detuned", help="burst SNR of detuned meter")
    od.add_argument("--j-pole-hz", type=float, default=100.0)
    od.add_argument("--mass-kg", type=float, default=40.0)
    od.add_argument("--arm-length-m", type=float, default=4000.0)
    od.add_argument("--xi-tech2", type=float, required=True)
    od.add_argument("--eta-d", type=float, default=1.0)
    od.add_argument("--gamma2-s1", type=float, default=0.0)
    od.add_argument("--budget", type=int, help="iteration budget per restart")
    od.add_argument("--out")
    od.set_defaults(func=_cmd_optimize_detuned)

    p = sub.add_parser("presets", help="list or run presets")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?")
    _add_grid_flags(p)
    p.set_defaults(func=_cmd_presets)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "presets" and args.action == "run" and not args.name:
        print("error: 'presets run' needs a preset name", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ConfigError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ConvergenceError, SingularFrequencyError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
