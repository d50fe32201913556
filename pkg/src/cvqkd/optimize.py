"""Amplitude optimization and transmission sweeps.

For every transmission value the signal amplitude is the one free knob:
too weak and Bob learns nothing, too strong and the tapped states become
distinguishable. G(alpha) is smooth but its unimodality is not proven
here, so the search is a coarse scan over a log-spaced amplitude grid
(resolving the small-alpha region where rates change fastest) followed by
derivative-free golden-section refinement around the best grid point.
Everything is deterministic: identical specs produce bit-identical rows.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import Optional

import numpy as np

from .channel import ChannelParams, SignalParams
from .keyrate import KeyRateResult, RateConfig, _rate_integral, key_rate

__all__ = ["SweepSpec", "SweepRow", "optimize_alpha", "sweep"]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepSpec:
    """One transmission sweep: eta grid, detector noise, rate config and
    amplitude-search settings."""

    eta_values: tuple
    delta: float
    config: RateConfig
    alpha_min: float = 0.05
    alpha_max: float = 5.0
    coarse_points: int = 100
    refine_tol: float = 1e-4

    def __post_init__(self):
        etas = tuple(float(v) for v in self.eta_values)
        if not etas:
            raise ValueError("eta_values must not be empty")
        if any(not 0.0 < v <= 1.0 for v in etas):
            raise ValueError("eta values must lie in (0, 1]")
        if any(b < a for a, b in zip(etas, etas[1:])):
            raise ValueError("eta_values must be sorted ascending")
        if float(self.delta) < 0.0:
            raise ValueError("delta must be >= 0")
        _check_search_settings(
            self.alpha_min, self.alpha_max, self.coarse_points, self.refine_tol
        )
        object.__setattr__(self, "eta_values", etas)
        object.__setattr__(self, "delta", float(self.delta))


@dataclass(frozen=True)
class SweepRow:
    """One optimized point of a sweep; `error` holds the failure message
    when the row could not be computed (numeric fields are then NaN)."""

    eta: float
    alpha_opt: float
    G: float
    I_ab: float
    chi_total: float
    ps_boundary: Optional[float]
    ps_fraction: float
    error: Optional[str] = None


def _check_search_settings(alpha_min, alpha_max, coarse_points, refine_tol):
    if not 0.0 < alpha_min < alpha_max:
        raise ValueError("need 0 < alpha_min < alpha_max")
    if coarse_points < 10:
        raise ValueError("coarse_points must be >= 10")
    if refine_tol <= 0.0:
        raise ValueError("refine_tol must be positive")


def _golden_max(g, lo: float, hi: float, tol: float, best_x: float, best_g: float):
    """Golden-section maximization on [lo, hi] down to bracket width tol.

    Tracks the best evaluated point, seeded with the coarse-scan winner so
    the result can never fall below it; exact ties go to the smaller
    amplitude.
    """

    def consider(x, gx):
        nonlocal best_x, best_g
        if gx > best_g or (gx == best_g and x < best_x):
            best_x, best_g = x, gx

    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    gc, gd = g(c), g(d)
    consider(c, gc)
    consider(d, gd)
    while hi - lo > tol:
        if gc >= gd:  # ties shrink toward the smaller amplitude
            hi, d, gd = d, c, gc
            c = hi - _INV_PHI * (hi - lo)
            gc = g(c)
            consider(c, gc)
        else:
            lo, c, gc = c, d, gd
            d = lo + _INV_PHI * (hi - lo)
            gd = g(d)
            consider(d, gd)
    return best_x, best_g


def optimize_alpha(
    eta: float,
    delta: float,
    config: RateConfig,
    alpha_min: float = 0.05,
    alpha_max: float = 5.0,
    coarse_points: int = 100,
    refine_tol: float = 1e-4,
):
    """Best amplitude and its full key-rate result at fixed (eta, delta).

    Coarse log-spaced scan, then golden-section refinement between the
    neighbours of the best grid point. Warns (without failing) when the
    optimum sits on a search bound, which usually means the bounds are
    misconfigured.
    """
    _check_search_settings(alpha_min, alpha_max, coarse_points, refine_tol)
    channel = ChannelParams(eta=eta, delta=delta)

    def g(alpha: float) -> float:
        return _rate_integral(SignalParams(alpha), channel, config)

    alphas = np.geomspace(alpha_min, alpha_max, coarse_points)
    values = np.array([g(float(a)) for a in alphas])
    i = int(np.argmax(values))  # first maximum: smallest alpha on ties
    lo = float(alphas[max(i - 1, 0)])
    hi = float(alphas[min(i + 1, len(alphas) - 1)])
    alpha_opt, _ = _golden_max(g, lo, hi, refine_tol, float(alphas[i]), float(values[i]))

    if alpha_opt - alpha_min < refine_tol or alpha_max - alpha_opt < refine_tol:
        warnings.warn(
            f"optimal amplitude {alpha_opt:.6g} lies on the search bound "
            f"[{alpha_min}, {alpha_max}]",
            stacklevel=2,
        )
    return alpha_opt, key_rate(SignalParams(alpha_opt), channel, config)


def _sweep_row(eta: float, spec: SweepSpec) -> SweepRow:
    try:
        alpha_opt, res = optimize_alpha(
            eta,
            spec.delta,
            spec.config,
            alpha_min=spec.alpha_min,
            alpha_max=spec.alpha_max,
            coarse_points=spec.coarse_points,
            refine_tol=spec.refine_tol,
        )
    except Exception as exc:  # recorded per row; the sweep continues
        nan = float("nan")
        return SweepRow(
            eta=eta,
            alpha_opt=nan,
            G=nan,
            I_ab=nan,
            chi_total=nan,
            ps_boundary=None,
            ps_fraction=nan,
            error=f"{type(exc).__name__}: {exc}",
        )
    return SweepRow(
        eta=eta,
        alpha_opt=alpha_opt,
        G=res.G,
        I_ab=res.I_ab,
        chi_total=res.chi_total,
        ps_boundary=res.ps_boundary,
        ps_fraction=res.ps_fraction,
    )


def sweep(spec: SweepSpec, workers: int = 1):
    """One independently optimized SweepRow per eta, in input order.

    Rows are pure and independent, so they may be evaluated in parallel
    processes; the ordered collection keeps the output deterministic
    regardless of completion order.
    """
    if workers <= 1:
        return [_sweep_row(eta, spec) for eta in spec.eta_values]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_row, spec.eta_values, repeat(spec)))
