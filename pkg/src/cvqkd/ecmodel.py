"""Error-correction efficiency models f(e).

A real reconciliation protocol leaks f(e) * H2(e) bits per corrected bit,
with f >= 1 and f = 1 only at the Shannon limit. Three model kinds:

  ideal   f(e) = 1
  linear  f(e) = intercept + slope * e
  table   piecewise-linear interpolation of (e, f) points, flat beyond
          the endpoints

The benchmark efficiencies of the Cascade protocol at four error rates are
built in; `cascade_linear_fit` is the least-squares line through them,
used unclamped over e in [0, 1/2] (channels with large e are postselected
away in practice, and the low-e extrapolation stays above 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "CASCADE_POINTS",
    "ECModel",
    "cascade_linear_fit",
    "cascade_table",
    "load_table",
    "efficiency",
]

# Measured Cascade efficiency f at error rate e
CASCADE_POINTS = ((0.01, 1.16), (0.05, 1.16), (0.10, 1.22), (0.15, 1.32))

_KINDS = ("ideal", "linear", "table")


@dataclass(frozen=True)
class ECModel:
    """Immutable efficiency model; shareable across workers."""

    kind: str
    intercept: float = 0.0
    slope: float = 0.0
    points: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.kind == "linear":
            # a line's minimum over [0, 1/2] sits at an endpoint
            if min(self.intercept, self.intercept + 0.5 * self.slope) < 1.0:
                raise ValueError("linear efficiency dips below 1 on [0, 1/2]")
        if self.kind == "table":
            pts = tuple((float(e), float(f)) for e, f in self.points)
            if len(pts) < 2:
                raise ValueError("table needs at least two points")
            es = [p[0] for p in pts]
            if any(b <= a for a, b in zip(es, es[1:])):
                raise ValueError("table abscissae must be strictly increasing")
            if any(not 0.0 <= e <= 0.5 for e in es):
                raise ValueError("table abscissae must lie in [0, 1/2]")
            if any(f < 1.0 for _, f in pts):
                raise ValueError("table efficiencies must be >= 1")
            object.__setattr__(self, "points", pts)

    @staticmethod
    def ideal() -> "ECModel":
        """Shannon-limit reconciliation, f(e) = 1."""
        return ECModel(kind="ideal")

    @staticmethod
    def linear(intercept: float, slope: float) -> "ECModel":
        return ECModel(kind="linear", intercept=float(intercept), slope=float(slope))

    @staticmethod
    def table(points) -> "ECModel":
        return ECModel(kind="table", points=tuple(points))

    def efficiency(self, e):
        """f(e) for e in [0, 1/2]; scalar or array. Floored at 1 so no model
        can claim super-Shannon error correction."""
        arr = np.asarray(e, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 0.5) or not np.all(np.isfinite(arr)):
            raise ValueError("error rate must lie in [0, 1/2]")
        if self.kind == "ideal":
            f = np.ones_like(arr)
        elif self.kind == "linear":
            f = self.intercept + self.slope * arr
        else:
            es = np.array([p[0] for p in self.points])
            fs = np.array([p[1] for p in self.points])
            f = np.interp(arr, es, fs)  # flat extrapolation beyond endpoints
        f = np.maximum(f, 1.0)
        if arr.ndim == 0:
            return float(f)
        return f


def efficiency(model: ECModel, e):
    """Function form of ECModel.efficiency."""
    return model.efficiency(e)


def cascade_linear_fit() -> ECModel:
    """Ordinary least-squares line through the four Cascade benchmark points.

    With the built-in table the coefficients are exactly slope = 518/443
    and intercept = 4981/4430 (about 1.16930 and 1.12438); the line passes
    through the centroid (0.0775, 1.215) by construction.
    """
    x = np.array([p[0] for p in CASCADE_POINTS])
    y = np.array([p[1] for p in CASCADE_POINTS])
    xm = x.mean()
    ym = y.mean()
    slope = float(np.sum((x - xm) * (y - ym)) / np.sum((x - xm) ** 2))
    return ECModel.linear(intercept=ym - slope * xm, slope=slope)


def cascade_table() -> ECModel:
    """Table model over the four Cascade benchmark points."""
    return ECModel.table(CASCADE_POINTS)


def load_table(path) -> ECModel:
    """Read a table model from a two-column text file.

    One `e f` pair per line, '#' starts a comment, blank lines ignored;
    abscissae must be strictly increasing.
    """
    points = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"{path}:{lineno}: expected two columns, got {raw!r}")
        try:
            points.append((float(fields[0]), float(fields[1])))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return ECModel.table(points)
