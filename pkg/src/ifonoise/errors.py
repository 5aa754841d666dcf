"""Exception types shared across the package."""


class ZeroResponseError(ValueError):
    """Readout quadrature is blind to the signal (normalization divides by zero)."""


class UnsupportedRegimeError(ValueError):
    """Requested parameter combination lies outside the modeled regimes."""


class SingularFrequencyError(ValueError):
    """Evaluation requested exactly at a singular frequency (e.g. Omega = 0)."""


class UndampedResonanceError(ValueError):
    """Lossless cavity driven exactly on resonance: response diverges."""


class ConvergenceError(RuntimeError):
    """An adaptive integral or an optimizer did not reach its tolerance."""


class ConfigError(ValueError):
    """Invalid run configuration; message names the offending field."""
