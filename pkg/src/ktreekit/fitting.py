"""Distribution-law estimation for integer histograms.

Three laws: single power law (discrete MLE with the xmin-0.5 continuity
correction, plus log-log OLS, reported side by side with MLE primary),
a two-regime piecewise power law chosen by exhaustive breakpoint scan,
and the geometric ratio of an exponential-law histogram.

All fits operate on proportions, so scaling every count by a constant
changes nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph_core import Histogram


@dataclass(frozen=True)
class PowerLawFit:
    """Single power-law fit over [xmin, xmax]."""

    alpha_mle: float   # primary estimate
    alpha_ols: float   # |slope| of log-log proportions
    r2: float          # of the OLS line
    sse: float         # OLS residual sum of squares (log-log)
    xmin: int
    xmax: int
    n_samples: int     # histogram mass in range
    n_values: int      # distinct values in range


@dataclass(frozen=True)
class Regime:
    """One fitted piece over the half-open value range [lo, hi)."""

    lo: int
    hi: int
    alpha: float
    r2: float
    sse: float


@dataclass(frozen=True)
class RegimeFit:
    """Two-regime piecewise fit plus the single-regime baseline."""

    regimes: tuple[Regime, Regime]
    breakpoint: int
    method: str
    sse: float         # combined two-regime residual
    single_sse: float  # one line over the same points
    single_alpha: float
    sst: float         # total variation of the log proportions

    @property
    def sse_improvement(self) -> float:
        """Relative residual reduction: 1 - sse/single_sse."""
        if self.single_sse == 0:
            return 0.0
        return 1.0 - self.sse / self.single_sse

    @property
    def r2_gain(self) -> float:
        """Explained-variance gain of the split, (single - two) / total.

        The relative reduction always looks large on noisy tails (two
        free lines soak up scatter), so spurious-break screening uses
        this normalized gain instead.
        """
        if self.sst == 0:
            return 0.0
        return (self.single_sse - self.sse) / self.sst


def _range_points(h: Histogram, xmin: int | None, xmax: int | None):
    vals, cnts, props = h.arrays()
    lo = int(vals[0]) if xmin is None else xmin
    hi = int(vals[-1]) if xmax is None else xmax
    mask = (vals >= lo) & (vals <= hi)
    return vals[mask], cnts[mask], props[mask], lo, hi


def _ols_line(lx: np.ndarray, ly: np.ndarray):
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    sse = float(resid @ resid)
    centered = ly - ly.mean()
    sst = float(centered @ centered)
    r2 = 1.0 - sse / sst if sst > 0 else 1.0
    return float(slope), sse, sst, r2


def fit_power_law(h: Histogram, xmin: int | None = None,
                  xmax: int | None = None) -> PowerLawFit:
    """Fit proportion ~ value^-alpha over [xmin, xmax].

    Requires at least 5 distinct in-range values. The MLE is the
    discrete estimator 1 + N / sum(count * ln(value / (xmin - 0.5)));
    the OLS estimate is the slope magnitude of log proportion against
    log value (zero-count values simply don't appear as points).
    """
    vals, cnts, props, lo, hi = _range_points(h, xmin, xmax)
    if len(vals) < 5:
        raise ValueError(
            f"need at least 5 distinct values in [{lo}, {hi}], "
            f"got {len(vals)}")
    if lo <= 0:
        raise ValueError(f"xmin must be positive, got {lo}")
    n = int(cnts.sum())
    log_term = float(cnts @ np.log(vals / (lo - 0.5)))
    alpha_mle = 1.0 + n / log_term
    slope, sse, _, r2 = _ols_line(np.log(vals.astype(float)),
                                  np.log(props))
    return PowerLawFit(alpha_mle=alpha_mle, alpha_ols=-slope, r2=r2,
                       sse=sse, xmin=lo, xmax=hi, n_samples=n,
                       n_values=len(vals))


def fit_two_regime(h: Histogram, xmin: int | None = None,
                   xmax: int | None = None,
                   min_values_per_side: int = 5) -> RegimeFit:
    """Piecewise power law with one breakpoint.

    Scans every observed value b that leaves min_values_per_side
    distinct values on each side, OLS-fits log-log proportions on
    [lo, b) and [b, hi], and keeps the b with the smallest combined
    residual. The single-line residual over the same points is kept for
    comparison. Requires at least 12 distinct in-range values.
    """
    vals, cnts, props, lo, hi = _range_points(h, xmin, xmax)
    if len(vals) < 12:
        raise ValueError(
            f"need at least 12 distinct values in [{lo}, {hi}], "
            f"got {len(vals)}")
    if vals[0] <= 0:
        raise ValueError("log-log fitting needs positive values; "
                         "pass xmin >= 1")
    lx = np.log(vals.astype(float))
    ly = np.log(props)
    single_slope, single_sse, sst, _ = _ols_line(lx, ly)

    best = None
    for bi in range(min_values_per_side, len(vals) - min_values_per_side + 1):
        s1, e1, _, r1 = _ols_line(lx[:bi], ly[:bi])
        s2, e2, _, r2 = _ols_line(lx[bi:], ly[bi:])
        if best is None or e1 + e2 < best[0]:
            best = (e1 + e2, bi, s1, r1, e1, s2, r2, e2)
    sse2, bi, s1, r1, e1, s2, r2, e2 = best
    brk = int(vals[bi])
    regimes = (
        Regime(lo=lo, hi=brk, alpha=-s1, r2=r1, sse=e1),
        Regime(lo=brk, hi=hi + 1, alpha=-s2, r2=r2, sse=e2),
    )
    return RegimeFit(regimes=regimes, breakpoint=brk, method="ols",
                     sse=sse2, single_sse=single_sse,
                     single_alpha=-single_slope, sst=sst)


def geometric_ratio(h: Histogram, dmin: int | None = None,
                    dmax: int | None = None) -> float:
    """Geometric mean of count(d+1)/count(d) over d = dmin..dmax-1.

    Every value in dmin..dmax must be present. An exponential law
    r^d yields exactly r.
    """
    vals = h.values()
    if not vals:
        raise ValueError("empty histogram")
    lo = vals[0] if dmin is None else dmin
    hi = vals[-1] if dmax is None else dmax
    if hi <= lo:
        raise ValueError(f"need dmax > dmin, got [{lo}, {hi}]")
    missing = [d for d in range(lo, hi + 1) if d not in h.counts]
    if missing:
        raise ValueError(
            f"values missing from histogram in [{lo}, {hi}]: "
            f"{missing[:5]}")
    logsum = sum(
        math.log(h.counts[d + 1] / h.counts[d]) for d in range(lo, hi)
    )
    return math.exp(logsum / (hi - lo))


def write_fit_csv(path, fits: list[PowerLawFit]) -> None:
    """Fit report rows: regime_lo,regime_hi,alpha_mle,alpha_ols,r2,sse."""
    with open(path, "w") as f:
        f.write("regime_lo,regime_hi,alpha_mle,alpha_ols,r2,sse\n")
        for p in fits:
            f.write(f"{p.xmin},{p.xmax},{p.alpha_mle!r},{p.alpha_ols!r},"
                    f"{p.r2!r},{p.sse!r}\n")


def two_regime_report(h: Histogram, fit: RegimeFit) -> list[PowerLawFit]:
    """Per-regime PowerLawFit rows (adds the MLE alpha per side) for the
    fit-report CSV."""
    out = []
    for reg in fit.regimes:
        out.append(fit_power_law(h, xmin=reg.lo, xmax=reg.hi - 1))
    return out


def write_geometric_csv(path, dmin: int, dmax: int, ratio: float) -> None:
    with open(path, "w") as f:
        f.write("dmin,dmax,ratio\n")
        f.write(f"{dmin},{dmax},{ratio!r}\n")
