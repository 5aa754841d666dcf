"""Named reference configurations for the CLI.

Each preset pins the exact parameter set of a benchmark noise curve; the
``comment`` records the parameter provenance that is echoed into the
emitted table.  Frequencies named *_hz are in Hz, *_s1 rates are angular
(rad/s), powers in s^-3 via the normalized J convention (J_pole_hz = x
means J = (2 pi x)^3).
"""

_ALIGO_CORE = {
    "mass_kg": 40.0,
    "arm_length_m": 4000.0,
    "J_pole_hz": 100.0,
}

PRESETS = {
    "fig34-ordinary": {
        "comment": "resonance-tuned position meter, J_pole=100 Hz (840 kW "
                   "circulating), gamma=2pi*500 s^-1, eta_d=0.95, no squeezing",
        "topology": "fpmi",
        "params": dict(_ALIGO_CORE, gamma_hz=500.0, eta_d=0.95),
    },
    "fig34-increased-power": {
        "comment": "position meter at tenfold power, J=10*J(100 Hz), "
                   "gamma=2pi*500 s^-1, eta_d=0.95, no squeezing",
        "topology": "fpmi",
        "params": dict(_ALIGO_CORE, J_pole_hz=100.0 * 10 ** (1 / 3.0),
                       gamma_hz=500.0, eta_d=0.95),
    },
    "fig34-squeezed": {
        "comment": "position meter with 10 dB phase-squeezed input, "
                   "J_pole=100 Hz, gamma=2pi*500 s^-1, eta_d=0.95",
        "topology": "fpmi",
        "params": dict(_ALIGO_CORE, gamma_hz=500.0, eta_d=0.95,
                       squeeze_db=10.0),
    },
    "fig39-prefilter": {
        "comment": "tuned meter, 10 dB squeezing reflected off a lossless "
                   "input filter cavity with gamma_f=delta_f=sqrt(J/gamma), "
                   "eta_d=0.95",
        "topology": "filtered-pre",
        "params": dict(_ALIGO_CORE, gamma_hz=500.0, eta_d=0.95,
                       squeeze_db=10.0, filter="auto"),
    },
    "fig39-postfilter": {
        "comment": "tuned meter, 10 dB squeezing, output filter cavity "
                   "before the homodyne, rates sqrt(J/gamma)/(1+eps_d^2 "
                   "e^{-2r})^{1/2}, eta_d=0.95",
        "topology": "filtered-post",
        "params": dict(_ALIGO_CORE, gamma_hz=500.0, eta_d=0.95,
                       squeeze_db=10.0, filter="auto"),
    },
    "fig42-speedmeter": {
        "comment": "lossless Sagnac speedmeter, doubled power J=2*J(100 Hz), "
                   "gamma=2pi*385 s^-1, 10 dB squeezing, low-frequency "
                   "optimized readout angle",
        "topology": "speedmeter",
        "params": dict(mass_kg=40.0, arm_length_m=4000.0,
                       J_s3=2 * (6.2831853071795865 * 100.0) ** 3,
                       gamma_hz=385.0, squeeze_db=10.0),
    },
    "fig42-speedmeter-lossy": {
        "comment": "Sagnac speedmeter with losses: J=2*J(100 Hz), "
                   "gamma=2pi*360 s^-1, gamma2=1.875 s^-1, eta_d=0.95, "
                   "10 dB squeezing",
        "topology": "speedmeter",
        "params": dict(mass_kg=40.0, arm_length_m=4000.0,
                       J_s3=2 * (6.2831853071795865 * 100.0) ** 3,
                       gamma_hz=360.0, gamma2_s1=1.875, eta_d=0.95,
                       squeeze_db=10.0),
    },
    "fig45-detuned-broadband": {
        "comment": "broadband detuned optical-spring meter: J_pole=100 Hz, "
                   "Gamma=3100 s^-1, beta=0.80, phi_LO=pi/2-0.44, "
                   "eta_d=0.95, gamma2=1.875 s^-1, vacuum input",
        "topology": "detuned",
        "params": dict(_ALIGO_CORE, Gamma_s1=3100.0, beta_rad=0.80,
                       phi_lo_rad=1.1307963267948965, gamma2_s1=1.875,
                       eta_d=0.95),
    },
    "fig45-second-order-pole": {
        "comment": "near-critical optical spring (burst optimized at "
                   "S_tech=0.1 S_SQL): J_pole=100 Hz, Gamma=1050 s^-1, "
                   "beta=pi/2-0.040, phi_LO=0.91, eta_d=0.95, "
                   "gamma2=1.875 s^-1",
        "topology": "detuned",
        "params": dict(_ALIGO_CORE, Gamma_s1=1050.0,
                       beta_rad=1.5307963267948966, phi_lo_rad=0.91,
                       gamma2_s1=1.875, eta_d=0.95),
    },
}


def preset_config(name):
    """Full run configuration of a named preset (deep copy)."""
    if name not in PRESETS:
        raise KeyError("unknown preset %r; see 'presets list'" % name)
    entry = PRESETS[name]
    return {
        "topology": entry["topology"],
        "params": dict(entry["params"]),
        "comment": entry["comment"],
        "grid": {"f_min_hz": 5.0, "f_max_hz": 5000.0, "points": 200,
                 "spacing": "log"},
        "sided": "double",
        "normalization": "h",
    }
