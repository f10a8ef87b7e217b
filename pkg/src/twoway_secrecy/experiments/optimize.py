"""Search for the ESSR-maximising time-switching ratio."""
from __future__ import annotations

import logging
import math
import warnings
from typing import Callable, NamedTuple

import numpy as np

from ..analytics import essr_lower_bound
from ..montecarlo import DEFAULT_SAMPLES, estimate_essr
from ..params import MeanGains, SystemParams
from .sweeps import is_unimodal

log = logging.getLogger(__name__)

ALPHA_LO = 0.01
ALPHA_HI = 0.99
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class AlphaOptimum(NamedTuple):
    alpha: float
    essr: float
    fallback: bool
    evaluations: int


class _NotUnimodal(Exception):
    pass


def essr_objective(p: SystemParams, g: MeanGains, method: str = "closed_form",
                   mc_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                   n_streams: int = 1) -> Callable[[float], float]:
    """ESSR as a function of alpha; the Monte Carlo variant reuses one seed (common random numbers)."""
    if method == "closed_form":
        return lambda a: essr_lower_bound(p.with_(alpha=a), g).r_lb
    if method == "monte_carlo":
        return lambda a: estimate_essr(p.with_(alpha=a), g, mc_samples, seed,
                                       n_streams=n_streams).mean
    raise ValueError(f"method must be 'closed_form' or 'monte_carlo', got {method!r}")


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, tolerance: float,
                       f_lo: float | None = None, f_hi: float | None = None) -> tuple[float, float, int]:
    """Maximise a unimodal ``f`` on ``[lo, hi]``.

    Raises ``_NotUnimodal`` when an interior probe falls below both bracket
    ends, which cannot happen for a unimodal function.
    """
    evals = 0

    def call(x: float) -> float:
        nonlocal evals
        evals += 1
        return f(x)

    a, b = lo, hi
    fa = call(a) if f_lo is None else f_lo
    fb = call(b) if f_hi is None else f_hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = call(c), call(d)
    while b - a > tolerance:
        if min(fc, fd) < min(fa, fb):
            raise _NotUnimodal
        if fc >= fd:
            b, fb = d, fd
            d, fd = c, fc
            c = b - _INV_PHI * (b - a)
            fc = call(c)
        else:
            a, fa = c, fc
            c, fc = d, fd
            d = a + _INV_PHI * (b - a)
            fd = call(d)
    best = max(((fa, a), (fc, c), (fd, d), (fb, b)))
    return best[1], best[0], evals


def grid_scan(f: Callable[[float], float], lo: float = ALPHA_LO, hi: float = ALPHA_HI,
              step: float = 0.01) -> tuple[float, float, int]:
    grid = np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)
    values = [f(float(a)) for a in grid]
    k = int(np.argmax(values))
    return float(grid[k]), float(values[k]), len(grid)


def optimize_alpha(p: SystemParams, g: MeanGains, method: str = "closed_form",
                   tolerance: float = 1e-4, mc_samples: int = DEFAULT_SAMPLES, seed: int = 0,
                   n_streams: int = 1, probe_points: int = 21) -> AlphaOptimum:
    """Golden-section search for alpha on ``[0.01, 0.99]``.

    A coarse probe grid brackets the peak first. If the probes are not
    single-peaked (flat runs allowed), or the search sees a bracket violation, the
    result comes from a 0.01-step grid scan instead and a warning is issued.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be > 0")
    f = essr_objective(p, g, method, mc_samples, seed, n_streams)

    probes = np.linspace(ALPHA_LO, ALPHA_HI, probe_points)
    values = [f(float(a)) for a in probes]
    k = int(np.argmax(values))
    if is_unimodal(values, strict=False):
        try:
            a, v, n = golden_section_max(f, float(probes[k - 1]), float(probes[k + 1]),
                                         tolerance, values[k - 1], values[k + 1])
            return AlphaOptimum(a, v, False, probe_points + n)
        except _NotUnimodal:
            pass
    msg = "ESSR samples are not unimodal in alpha; falling back to a grid scan"
    warnings.warn(msg, RuntimeWarning, stacklevel=2)
    log.warning(msg)
    a, v, n = grid_scan(f)
    return AlphaOptimum(a, v, True, probe_points + n)
