"""Closed forms: power outage probabilities, E{1/(P_S1 X + P_S2 Y)} and the ESSR lower bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import nearly_equal
from .params import MeanGains, SystemParams

LN2 = math.log(2.0)


@dataclass(frozen=True)
class OutageInputs:
    """Rates ``m_x = 1/(P_1 mu_1)``, ``m_y = 1/(P_2 mu_2)`` and threshold ``theta`` in watts."""

    m_x: float
    m_y: float
    theta: float

    def __post_init__(self) -> None:
        if not (self.m_x > 0 and self.m_y > 0):
            raise ValueError("m_x and m_y must be > 0")
        if not self.theta >= 0:
            raise ValueError("theta must be >= 0")

    @classmethod
    def from_means(cls, p1: float, mu1: float, p2: float, mu2: float, theta: float) -> "OutageInputs":
        return cls(1.0 / (p1 * mu1), 1.0 / (p2 * mu2), theta)


@dataclass(frozen=True)
class LowerBoundReport:
    t1: float
    t2: float
    t3: float
    e_h: float
    p_por: float
    p_poj: float
    r_lb: float


def _exp_tail(t: float) -> float:
    """``exp(-t) - 1 + t``, accurate for small ``t``."""
    if t < 1e-2:
        # alternating series; terms up to t**7 leave < 1e-19 relative error
        term, total = t * t / 2.0, 0.0
        for k in range(3, 9):
            total += term
            term *= -t / k
        return total
    return math.expm1(-t) + t


def lower_incomplete_gamma_2(x: float) -> float:
    """Regularised lower incomplete gamma with shape 2: ``1 - exp(-x) (1 + x)``."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if math.isinf(x):
        return 1.0
    if x < 1e-2:
        # sum_k (-1)^k x^(k+2) / (k! (k+2)), avoids 1 - (1 - x^2/2) cancellation
        total, fact = 0.0, 1.0
        for k in range(9):
            if k:
                fact *= k
            total += (-1) ** k * x ** (k + 2) / (fact * (k + 2))
        return total
    return -math.expm1(-x) - x * math.exp(-x)


def power_outage(inp: OutageInputs) -> float:
    """P(X + Y < theta) for independent exponentials with rates ``m_x`` and ``m_y``."""
    theta = inp.theta
    if theta == 0:
        return 0.0
    a = 1.0 / inp.m_x  # P_1 mu_1
    b = 1.0 / inp.m_y  # P_2 mu_2
    if nearly_equal(a, b):
        return lower_incomplete_gamma_2(theta / (0.5 * (a + b)))
    # 1 - b/(b-a) e^{-theta/b} + a/(b-a) e^{-theta/a}, regrouped so the leading
    # "1 - theta/..." terms cancel analytically instead of numerically
    p = (a * _exp_tail(theta / a) - b * _exp_tail(theta / b)) / (b - a)
    return min(max(p, 0.0), 1.0)


def relay_outage(p: SystemParams, g: MeanGains) -> float:
    return power_outage(OutageInputs.from_means(p.p_s1, g.mu_s1r, p.p_s2, g.mu_s2r, p.theta_r))


def jammer_outage(p: SystemParams, g: MeanGains) -> float:
    return power_outage(OutageInputs.from_means(p.p_s1, g.mu_s1j, p.p_s2, g.mu_s2j, p.theta_j))


def expected_inverse_sum(mu_r: float, mu_s: float) -> float:
    """E{1/(R + S)} for independent exponentials with means ``mu_r`` and ``mu_s``."""
    if not (mu_r > 0 and mu_s > 0):
        raise ValueError("means must be > 0")
    if nearly_equal(mu_r, mu_s):
        return 2.0 / (mu_r + mu_s)
    # ln(mu_r/mu_s)/(mu_r - mu_s) via log1p so near-equal means stay accurate
    d = mu_r - mu_s
    return math.log1p(d / mu_s) / d


def essr_lower_bound(p: SystemParams, g: MeanGains, e_h: float | None = None) -> LowerBoundReport:
    """Closed-form ESSR approximation; WoFJ is the ``eta_j -> 0`` limit without the jammer outage factor.

    ``e_h`` replaces the closed-form E{H}, e.g. with a simulated value.
    """
    a = p.alpha
    n0 = p.n0
    eta_j = p.eta_j if p.jamming else 0.0
    k = 2.0 * p.eta_r * a

    if e_h is None:
        e_h = expected_inverse_sum(p.p_s1 * g.mu_s1r, p.p_s2 * g.mu_s2r)
    jam_rx = p.p_s1 * g.mu_s1j + p.p_s2 * g.mu_s2j
    leak = 2.0 * n0 * eta_j * a * g.mu_rj * jam_rx * e_h

    t1 = math.log1p(k * p.p_s1 * g.mu_s2r * g.mu_s1r / (k * g.mu_s2r * n0 + n0 * (1 - a) + leak))
    t2 = math.log1p(k * p.p_s2 * g.mu_s2r * g.mu_s1r / (k * g.mu_s1r * n0 + n0 * (1 - a) + leak))
    t3 = math.log1p((p.p_s1 * g.mu_s1r + p.p_s2 * g.mu_s2r)
                    / (2.0 * eta_j * a / (1 - a) * jam_rx * g.mu_rj + n0))

    p_por = relay_outage(p, g)
    p_poj = jammer_outage(p, g) if p.jamming else 0.0
    r_lb = (1 - p_poj) * (1 - p_por) * (1 - a) / (2 * LN2) * max(t1 + t2 - t3, 0.0)
    return LowerBoundReport(t1, t2, t3, e_h, p_por, p_poj, r_lb)
