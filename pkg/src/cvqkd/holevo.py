"""Holevo bound on the eavesdropper's information per effective channel.

After the beamsplitter attack Eve holds one of two pure coherent states
whose overlap c = <eps0|eps1> is fixed by the loss. The symmetric
superposition basis turns every density operator that appears into a 2x2
problem with closed-form eigenvalues, so all entropies here are two-term
sums; no operator representation is ever built.

Direct reconciliation: Eve's states conditioned on Alice's bit are pure,
so chi_dr = S(rho_bar) = H2((1-c)/2), the same for every effective channel.

Reverse reconciliation: conditioned on Bob's sign, Eve holds a mixture of
the two states weighted by the channel error rate e, with eigenvalues
(1 +- sqrt(1 + 4 e (e-1) (1-c^2)))/2. Detector noise raises e and thereby
lowers chi_rr: a noisy detector makes Bob's record harder to predict.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, SignalParams, binary_entropy, error_rate, eve_overlap

__all__ = [
    "EnsembleCoefficients",
    "RRConditionalSpectrum",
    "ensemble_coefficients",
    "chi_dr",
    "rr_spectrum",
    "chi_rr",
    "holevo_bound",
]

_RADICAND_TOL = -1e-12


@dataclass(frozen=True)
class EnsembleCoefficients:
    """Squared coefficients of Eve's states in the symmetric basis.

    c0_sq + c1_sq = 1 and c0_sq - c1_sq equals the state overlap; they are
    the eigenvalues of the equal-weight average state rho_bar.
    """

    c0_sq: float
    c1_sq: float

    def __post_init__(self):
        if abs(self.c0_sq + self.c1_sq - 1.0) > 1e-12:
            raise ValueError("coefficients must sum to 1")
        if not 0.0 <= self.c1_sq <= self.c0_sq <= 1.0:
            raise ValueError("coefficients must satisfy 0 <= c1_sq <= c0_sq <= 1")


@dataclass(frozen=True)
class RRConditionalSpectrum:
    """Eigenvalue pair of Eve's state conditioned on Bob's sign."""

    lambda1: float
    lambda2: float

    def __post_init__(self):
        if abs(self.lambda1 + self.lambda2 - 1.0) > 1e-12:
            raise ValueError("eigenvalues must sum to 1")
        if not 0.0 <= self.lambda2 <= self.lambda1:
            raise ValueError("eigenvalues must satisfy lambda1 >= lambda2 >= 0")


def ensemble_coefficients(
    signal: SignalParams, channel: ChannelParams
) -> EnsembleCoefficients:
    """Coefficients (1 +- c)/2 from the overlap c of Eve's two states."""
    c = eve_overlap(signal, channel)
    return EnsembleCoefficients(c0_sq=0.5 * (1.0 + c), c1_sq=0.5 * (1.0 - c))


def chi_dr(signal: SignalParams, channel: ChannelParams) -> float:
    """Holevo quantity for direct reconciliation.

    Eve's conditional states are pure, so chi_dr = S(rho_bar) = H2((1-c)/2).
    Independent of the effective channel label beta_x.
    """
    coeffs = ensemble_coefficients(signal, channel)
    return binary_entropy(coeffs.c1_sq)


def _rr_eigenvalues(e, overlap: float):
    """Vectorized eigenvalues (1 +- sqrt(1 + 4 e (e-1) (1 - c^2)))/2.

    The radicand is >= 0 for any e in [0, 1] and c in [0, 1]; round-off can
    push it a hair below zero near e = 1/2, which is clamped. A materially
    negative radicand means the inputs were inconsistent.
    """
    e = np.asarray(e, dtype=float)
    radicand = 1.0 + 4.0 * e * (e - 1.0) * (1.0 - overlap**2)
    if np.any(radicand < _RADICAND_TOL):
        raise ValueError(
            f"negative radicand {float(np.min(radicand)):.3e}: inconsistent inputs"
        )
    root = np.sqrt(np.clip(radicand, 0.0, 1.0))
    return 0.5 * (1.0 + root), 0.5 * (1.0 - root)


def rr_spectrum(e: float, overlap: float) -> RRConditionalSpectrum:
    """Spectrum of Eve's sign-conditioned state for error rate e and overlap c.

    At e = 0 the state is pure, (1, 0); at e = 1/2 it equals rho_bar with
    spectrum ((1+c)/2, (1-c)/2).
    """
    e = float(e)
    overlap = float(overlap)
    if not 0.0 <= e <= 0.5:
        raise ValueError(f"error rate must be in [0, 1/2], got {e}")
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must be in [0, 1], got {overlap}")
    lam1, lam2 = _rr_eigenvalues(e, overlap)
    return RRConditionalSpectrum(lambda1=float(lam1), lambda2=float(lam2))


def chi_rr(signal: SignalParams, channel: ChannelParams, beta_x):
    """Holevo quantity chi_rr(beta_x) = S(rho_bar) - S(rho_+) for reverse
    reconciliation.

    S(rho_+) = S(rho_-) by a phase flip, so only one spectrum is needed.
    The error rate entering rho_+ includes detector noise (Bob's record is
    what Eve must predict), while the overlap does not (the noise is
    trusted). Subtractive cancellation near beta_x = 0 can produce values
    like -1e-16; the output is clamped to [0, chi_dr], both of which are
    analytic bounds.
    """
    c = eve_overlap(signal, channel)
    s_bar = binary_entropy(0.5 * (1.0 - c))
    e = error_rate(signal, channel, beta_x)
    _, lam2 = _rr_eigenvalues(e, c)
    chi = np.clip(s_bar - binary_entropy(lam2), 0.0, s_bar)
    if np.ndim(beta_x) == 0:
        return float(chi)
    return chi


def holevo_bound(
    signal: SignalParams, channel: ChannelParams, scheme: str, beta_x
):
    """chi(beta_x) for the given reconciliation direction ('dr' or 'rr').

    The DR branch is constant in beta_x but is broadcast to the input shape
    so both schemes share one call signature.
    """
    if scheme == "dr":
        value = chi_dr(signal, channel)
        if np.ndim(beta_x) == 0:
            return value
        return np.full(np.shape(beta_x), value)
    if scheme == "rr":
        return chi_rr(signal, channel, beta_x)
    raise ValueError(f"scheme must be 'dr' or 'rr', got {scheme!r}")
