"""Per-block physics of the three-phase time-switching protocol.

All functions accept scalar gains or equally shaped numpy arrays in a
:class:`FadingRealization`, and return matching shapes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import FadingRealization
from .params import SystemParams

LN2 = math.log(2.0)


def _out(a):
    a = np.asarray(a, dtype=float)
    return a[()] if a.ndim == 0 else a


@dataclass(frozen=True)
class PhasePowers:
    p_r: float | np.ndarray
    p_j: float | np.ndarray
    e_hr: float | np.ndarray
    e_hj: float | np.ndarray
    p_tr: float | np.ndarray
    p_tj: float | np.ndarray


@dataclass(frozen=True)
class RatePoint:
    """SINR/SNRs and rates (bits/s/Hz) of one realization."""

    gamma_r: float | np.ndarray
    gamma_s1: float | np.ndarray
    gamma_s2: float | np.ndarray
    i_s1: float | np.ndarray
    i_s2: float | np.ndarray
    i_r: float | np.ndarray
    r_sec: float | np.ndarray


def received_powers(p: SystemParams, f: FadingRealization):
    p_r = p.p_s1 * np.asarray(f.x, dtype=float) + p.p_s2 * np.asarray(f.y, dtype=float)
    p_j = p.p_s1 * np.asarray(f.z, dtype=float) + p.p_s2 * np.asarray(f.w, dtype=float)
    return p_r, p_j


def phase_powers(p: SystemParams, f: FadingRealization) -> PhasePowers:
    p_r, p_j = received_powers(p, f)
    e_hr = p.eta_r * p.alpha * p_r
    e_hj = p.eta_j * p.alpha * p_j
    # harvested energy spent over the (1 - alpha)/2 broadcast or jamming slot
    p_tr = 2.0 * e_hr / (1.0 - p.alpha)
    p_tj = 2.0 * e_hj / (1.0 - p.alpha) if p.jamming else np.zeros_like(p_j)
    return PhasePowers(_out(p_r), _out(p_j), _out(e_hr), _out(e_hj), _out(p_tr), _out(p_tj))


def _jammer_tx(p: SystemParams, p_j):
    if not p.jamming:
        return np.zeros_like(p_j)
    return 2.0 * p.eta_j * p.alpha * p_j / (1.0 - p.alpha)


def relay_sinr(p: SystemParams, f: FadingRealization):
    """SINR of the superimposed source signals at the relay, jamming as interference."""
    p_r, p_j = received_powers(p, f)
    p_tj = _jammer_tx(p, p_j)
    return _out(p_r / (p_tj * np.asarray(f.u, dtype=float) + p.n0))


def amplification_factor(p: SystemParams, f: FadingRealization):
    """Relay scaling that spends exactly the harvested transmit power."""
    pw = phase_powers(p, f)
    denom = pw.p_r + pw.p_tj * np.asarray(f.u, dtype=float) + p.n0
    return _out(np.sqrt(pw.p_tr / denom))


def source_snrs(p: SystemParams, f: FadingRealization):
    """End-to-end SNRs ``(gamma_s1, gamma_s2)`` after self-interference and jamming cancellation.

    A block with ``x = y = 0`` has nothing to forward; both SNRs are 0 there.
    """
    x = np.asarray(f.x, dtype=float)
    y = np.asarray(f.y, dtype=float)
    u = np.asarray(f.u, dtype=float)
    p_r, p_j = received_powers(p, f)
    p_tj = _jammer_tx(p, p_j)
    a = p.alpha
    k = 2.0 * p.eta_r * a
    dark = p_r <= 0
    p_r_safe = np.where(dark, 1.0, p_r)
    # a near-zero P_R may overflow these terms to inf, which correctly drives the SNR to 0
    with np.errstate(over="ignore"):
        common = p.n0 * p_tj * u * (1.0 - a) / p_r_safe + p.n0 * (1.0 - a)
        if not p.high_snr:
            common = common + p.n0 * p.n0 * (1.0 - a) / p_r_safe
    g_s2 = k * p.p_s1 * x * y / (k * y * p.n0 + common)
    g_s1 = k * p.p_s2 * y * x / (k * x * p.n0 + common)
    g_s1 = np.where(dark, 0.0, g_s1)
    g_s2 = np.where(dark, 0.0, g_s2)
    return _out(g_s1), _out(g_s2)


def secrecy_rate(p: SystemParams, f: FadingRealization) -> RatePoint:
    """Instantaneous secrecy sum rate, clamped at zero per realization."""
    g_r = np.asarray(relay_sinr(p, f))
    g_s1, g_s2 = (np.asarray(g) for g in source_snrs(p, f))
    pre = 0.5 * (1.0 - p.alpha) / LN2
    i_s1 = pre * np.log1p(g_s1)
    i_s2 = pre * np.log1p(g_s2)
    i_r = pre * np.log1p(g_r)
    r_sec = np.maximum(i_s1 + i_s2 - i_r, 0.0)
    return RatePoint(*(_out(v) for v in (g_r, g_s1, g_s2, i_s1, i_s2, i_r, r_sec)))
