"""Pure numpy implementations of the Monte Carlo block kernels.

Signatures mirror ``_kernels.pyx`` exactly; :mod:`twoway_secrecy.kernels`
picks one of the two at import time.
"""
from __future__ import annotations

import numpy as np

from .channel import FadingRealization
from .params import SystemParams
from .protocol import secrecy_rate


def rate_stats(x, y, z, w, u, p_s1, p_s2, eta_r, eta_j, alpha, n0,
               theta_r, theta_j, jamming, high_snr):
    """Block sums for the ESSR estimators.

    Returns ``(sum_r, sumsq_r, sum_r_ok, sumsq_r_ok, n_out_r, n_out_j, n_ok)``
    where ``_ok`` restricts to blocks in which no harvesting node is in
    power outage.
    """
    p = SystemParams(p_s1, p_s2, eta_r, eta_j, alpha, n0, theta_r, theta_j,
                     bool(jamming), bool(high_snr))
    r = np.asarray(secrecy_rate(p, FadingRealization(x, y, z, w, u)).r_sec)
    out_r = p_s1 * x + p_s2 * y < theta_r
    out_j = p_s1 * z + p_s2 * w < theta_j
    ok = ~out_r
    if jamming:
        ok &= ~out_j
    r_ok = r[ok]
    return (float(r.sum()), float(np.dot(r, r)), float(r_ok.sum()), float(np.dot(r_ok, r_ok)),
            int(out_r.sum()), int(out_j.sum()), int(ok.sum()))


def inverse_sum_stats(x, y, p_s1, p_s2):
    """Sums of ``1/(p_s1 x + p_s2 y)`` over blocks with a nonzero denominator."""
    s = p_s1 * x + p_s2 * y
    h = 1.0 / s[s > 0]
    return float(h.sum()), float(np.dot(h, h)), int(h.size)
