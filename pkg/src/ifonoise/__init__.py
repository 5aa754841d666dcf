"""Frequency-domain quantum-noise budgets for interferometric meters.

Numpy/scipy library for the quantum noise of laser interferometers used
as position and force meters: two-photon quadrature transfer matrices,
shot/radiation-pressure/cross spectral densities, standard quantum
limits, squeezed input with filter cavities, Sagnac speedmeters,
optical-spring regimes and matched-filter SNR optimization.  The
``ifonoise`` console script exposes budgets, presets and optimizers.
"""

__version__ = "0.1.0"

from .baselines import Probe, ToyMeter, sql, sqm_sum_noise
from .cavity import CavityParams, cavity_matrices, exact_fp_io, fp_rigidity
from .elements import MirrorSpec, MovableMirrorMeter, movable_mirror_noise
from .filters import FilterCavityConfig, filtered_sum_noise, ideal_filtered_psd
from .interferometer import (
    EffectiveCavity,
    InterferometerConfig,
    NoiseTriple,
    budget_noise_h,
    coupling_factor,
    fpmi_noise_triple,
    scaling_law,
    sql_strain,
    sum_noise_h,
)
from .rigidity import DetunedRegime, PoleRegimeParams, characteristic_roots
from .snr import SignalModel, optimize_burst_snr, optimize_filter_cavity, snr_ratio
from .speedmeter import SpeedmeterConfig, lossy_speedmeter_psd, sagnac_coupling
from .twophoton import LightState, db_to_r, rotation_matrix, squeeze_matrix

__all__ = [
    "CavityParams",
    "DetunedRegime",
    "EffectiveCavity",
    "FilterCavityConfig",
    "InterferometerConfig",
    "LightState",
    "MirrorSpec",
    "MovableMirrorMeter",
    "NoiseTriple",
    "PoleRegimeParams",
    "Probe",
    "SignalModel",
    "SpeedmeterConfig",
    "ToyMeter",
    "budget_noise_h",
    "cavity_matrices",
    "characteristic_roots",
    "coupling_factor",
    "db_to_r",
    "exact_fp_io",
    "filtered_sum_noise",
    "fp_rigidity",
    "fpmi_noise_triple",
    "ideal_filtered_psd",
    "lossy_speedmeter_psd",
    "movable_mirror_noise",
    "optimize_burst_snr",
    "optimize_filter_cavity",
    "rotation_matrix",
    "sagnac_coupling",
    "scaling_law",
    "snr_ratio",
    "sql",
    "sql_strain",
    "sqm_sum_noise",
    "squeeze_matrix",
    "sum_noise_h",
]
