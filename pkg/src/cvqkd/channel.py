"""Signal/channel model and Bob's measurement statistics.

Alice encodes one bit into the sign of a real coherent amplitude, |alpha> or
|-alpha>, with equal priors. The lossy channel is modelled as a beamsplitter
of transmittance eta, so Bob receives |+-sqrt(eta) alpha> while the tapped
fraction |+-sqrt(1-eta) alpha> is attributed to the eavesdropper. Bob
heterodynes and announces beta_y and |beta_x|; what remains is a family of
binary symmetric channels labelled by beta_x >= 0.

Units are shot-noise units: a noiseless heterodyne outcome on a coherent
state of mean amplitude m has density (1/pi) exp(-|beta - m|^2), i.e.
variance 1/2 per quadrature. Trusted detector noise delta inflates the
beta_x variance to (1 + delta)/2; it acts on Bob's record only, never on
the eavesdropper's states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit, xlogy

__all__ = [
    "SignalParams",
    "ChannelParams",
    "BinaryChannel",
    "binary_entropy",
    "eve_overlap",
    "error_rate",
    "error_rate_slope",
    "channel_density",
    "channel_mass",
    "effective_channel",
    "integration_limit",
]

_LN2 = math.log(2.0)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SignalParams:
    """Alice's modulation: real coherent amplitude alpha >= 0 (shot-noise units)."""

    alpha: float

    def __post_init__(self):
        alpha = _require_finite("alpha", self.alpha)
        if alpha < 0.0:
            raise ValueError(f"alpha must be >= 0, got {alpha}")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class ChannelParams:
    """Transmittance eta in (0, 1] and trusted detector excess noise delta >= 0.

    eta = 0 is rejected: nothing arrives and every rate is trivially zero,
    so downstream math should never see it.
    """

    eta: float
    delta: float = 0.0

    def __post_init__(self):
        eta = _require_finite("eta", self.eta)
        delta = _require_finite("delta", self.delta)
        if not 0.0 < eta <= 1.0:
            raise ValueError(f"eta must be in (0, 1], got {eta}")
        if delta < 0.0:
            raise ValueError(f"delta must be >= 0, got {delta}")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "delta", delta)


@dataclass(frozen=True)
class BinaryChannel:
    """One effective binary symmetric channel: label beta_x, error rate e,
    and the probability density p_c with which the channel is used."""

    beta_x: float
    e: float
    p_c: float

    def __post_init__(self):
        beta_x = _require_finite("beta_x", self.beta_x)
        e = _require_finite("e", self.e)
        p_c = _require_finite("p_c", self.p_c)
        if beta_x < 0.0:
            raise ValueError(f"beta_x must be >= 0, got {beta_x}")
        if not 0.0 <= e <= 0.5:
            raise ValueError(f"error rate must be in [0, 1/2], got {e}")
        if p_c < 0.0:
            raise ValueError(f"p_c must be >= 0, got {p_c}")
        object.__setattr__(self, "beta_x", beta_x)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "p_c", p_c)


def binary_entropy(e):
    """Binary entropy H(e) = -e log2 e - (1-e) log2(1-e), with 0 log 0 = 0.

    Accepts scalars or arrays. All entropies in this package are in bits.
    """
    arr = np.asarray(e, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("entropy argument must be finite")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("entropy argument must lie in [0, 1]")
    # xlogy(0, 0) = 0 handles both endpoints without branching
    h = -(xlogy(arr, arr) + xlogy(1.0 - arr, 1.0 - arr)) / _LN2
    if arr.ndim == 0:
        return float(h)
    return h


def eve_overlap(signal: SignalParams, channel: ChannelParams) -> float:
    """Overlap <eps0|eps1> = exp(-2 (1-eta) alpha^2) of the tapped states.

    Equals 1 iff the channel is lossless or the signal is vacuum; detector
    noise does not enter (it is trusted, nothing reaches the eavesdropper).
    """
    return float(np.exp(-2.0 * (1.0 - channel.eta) * signal.alpha**2))


def error_rate(signal: SignalParams, channel: ChannelParams, beta_x):
    """Error rate e = 1 / (1 + exp(4 sqrt(eta) alpha beta_x / (1+delta))).

    The sign channels at +-beta_x share this rate, so only beta_x >= 0 is
    accepted. e(0) = 1/2 and e decreases monotonically in beta_x.
    """
    b = _check_beta(beta_x)
    x = 4.0 * math.sqrt(channel.eta) * signal.alpha / (1.0 + channel.delta)
    e = expit(-x * b)
    if b.ndim == 0:
        return float(e)
    return e


def error_rate_slope(signal: SignalParams, channel: ChannelParams, beta_x):
    """d e / d beta_x, used by diagnostics; equals -k e (1 - e) with
    k = 4 sqrt(eta) alpha / (1 + delta)."""
    b = _check_beta(beta_x)
    k = 4.0 * math.sqrt(channel.eta) * signal.alpha / (1.0 + channel.delta)
    e = expit(-k * b)
    out = -k * e * (1.0 - e)
    if b.ndim == 0:
        return float(out)
    return out


def channel_density(signal: SignalParams, channel: ChannelParams, beta_x):
    """Density p_c(beta_x) of the effective channel labelled beta_x >= 0.

    p_c = 2 p(beta_x) where p is the two-Gaussian marginal with means
    +-sqrt(eta) alpha and variance (1+delta)/2; integrates to 1 on [0, inf).
    """
    b = _check_beta(beta_x)
    m = math.sqrt(channel.eta) * signal.alpha
    v = 1.0 + channel.delta  # = 2 * variance per quadrature
    pc = (np.exp(-((b - m) ** 2) / v) + np.exp(-((b + m) ** 2) / v)) / math.sqrt(
        math.pi * v
    )
    if b.ndim == 0:
        return float(pc)
    return pc


def channel_mass(signal: SignalParams, channel: ChannelParams, lo: float, hi: float) -> float:
    """Closed-form probability that |beta_x| falls in [lo, hi].

    Exact Gaussian-CDF expression for the mass of channel_density; used for
    postselection fractions and Monte Carlo bin expectations.
    """
    if hi < lo:
        raise ValueError("need lo <= hi")
    lo = max(float(lo), 0.0)
    hi = float(hi)
    m = math.sqrt(channel.eta) * signal.alpha
    s = math.sqrt(1.0 + channel.delta)  # = sqrt(2) * std dev of beta_x

    def cdf(x: float) -> float:
        # P(|beta_x| <= x) for the symmetric two-Gaussian mixture
        return 0.5 * (math.erf((x - m) / s) - math.erf((-x - m) / s))

    return cdf(hi) - cdf(lo)


def effective_channel(
    signal: SignalParams, channel: ChannelParams, beta_x: float
) -> BinaryChannel:
    """Bundle the statistics of the channel labelled beta_x."""
    return BinaryChannel(
        beta_x=float(beta_x),
        e=error_rate(signal, channel, beta_x),
        p_c=channel_density(signal, channel, beta_x),
    )


def integration_limit(
    signal: SignalParams, channel: ChannelParams, cutoff_sigmas: float = 10.0
) -> float:
    """Truncation point for integrals over beta_x.

    sqrt(eta) alpha + cutoff_sigmas standard deviations; the discarded
    Gaussian tail carries < 1e-20 of the channel mass at the default 10.
    """
    return math.sqrt(channel.eta) * signal.alpha + cutoff_sigmas * math.sqrt(
        (1.0 + channel.delta) / 2.0
    )


def _check_beta(beta_x) -> np.ndarray:
    b = np.asarray(beta_x, dtype=float)
    if not np.all(np.isfinite(b)):
        raise ValueError("beta_x must be finite")
    if np.any(b < 0.0):
        raise ValueError("beta_x must be >= 0 (sign channels are folded)")
    return b
