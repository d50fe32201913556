"""Lower bounds on secret key rates for binary-modulated coherent-state
CV-QKD over a lossy, noiseless quantum channel.

Alice sends |alpha> / |-alpha>, Bob heterodynes, and the public
announcement of beta_y and |beta_x| decomposes the protocol into binary
symmetric channels. The package evaluates the Devetak-Winter bound
G >= I_AB - chi per channel and integrates it, for direct and reverse
reconciliation, with optional postselection, realistic error-correction
overhead f(e), and trusted detector excess noise.
"""

from .channel import (
    BinaryChannel,
    ChannelParams,
    SignalParams,
    binary_entropy,
    channel_density,
    channel_mass,
    effective_channel,
    error_rate,
    eve_overlap,
    integration_limit,
)
from .ecmodel import (
    CASCADE_POINTS,
    ECModel,
    cascade_linear_fit,
    cascade_table,
    efficiency,
    load_table,
)
from .holevo import (
    EnsembleCoefficients,
    RRConditionalSpectrum,
    chi_dr,
    chi_rr,
    ensemble_coefficients,
    holevo_bound,
    rr_spectrum,
)
from .keyrate import KeyRateResult, QuadratureError, RateConfig, delta_i, key_rate, ps_boundary
from .montecarlo import MCConfig, MCReport, mc_estimate_iab, simulate
from .optimize import SweepRow, SweepSpec, optimize_alpha, sweep
from .quadrature import adaptive_quad

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SignalParams",
    "ChannelParams",
    "BinaryChannel",
    "binary_entropy",
    "eve_overlap",
    "error_rate",
    "channel_density",
    "channel_mass",
    "effective_channel",
    "integration_limit",
    "EnsembleCoefficients",
    "RRConditionalSpectrum",
    "ensemble_coefficients",
    "chi_dr",
    "rr_spectrum",
    "chi_rr",
    "holevo_bound",
    "CASCADE_POINTS",
    "ECModel",
    "cascade_linear_fit",
    "cascade_table",
    "load_table",
    "efficiency",
    "RateConfig",
    "KeyRateResult",
    "QuadratureError",
    "delta_i",
    "key_rate",
    "ps_boundary",
    "SweepSpec",
    "SweepRow",
    "optimize_alpha",
    "sweep",
    "MCConfig",
    "MCReport",
    "simulate",
    "mc_estimate_iab",
    "adaptive_quad",
]
