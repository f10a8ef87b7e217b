"""Cross-checks of every closed form against its simulation or quadrature oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from ..analytics import (
    essr_lower_bound,
    expected_inverse_sum,
    jammer_outage,
    relay_outage,
)
from ..channel import gain_pdf, inverse_sum_pdf, sum_pdf
from ..montecarlo import estimate_essr, estimate_expected_inverse_sum, estimate_outage
from ..params import MeanGains, SystemParams

MIN_SAMPLES = 10**4
Z_LIMIT = 4.0
PDF_TOL = 1e-6


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    reference: float
    detail: str = ""
    informational: bool = False

    def line(self) -> str:
        tag = "INFO" if self.informational else ("PASS" if self.passed else "FAIL")
        return f"[{tag}] {self.name}: value={self.value:.10g} reference={self.reference:.10g} {self.detail}".rstrip()


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def _outage_check(name: str, closed: float, est, n: int) -> Check:
    # binomial error under the closed-form hypothesis, so a 0/1 probability still has a scale
    se = math.sqrt(closed * (1.0 - closed) / n)
    diff = abs(est.mean - closed)
    ok = diff <= Z_LIMIT * se
    return Check(name, ok, est.mean, closed, f"|diff|={diff:.3g} limit={Z_LIMIT * se:.3g}")


def _integral_half_line(f) -> float:
    val, _ = integrate.quad(f, 0.0, np.inf, limit=500, epsabs=1e-13, epsrel=1e-12)
    return val


def inverse_sum_mass(mu_r: float, mu_s: float) -> float:
    """Total mass of the inverse-sum density, integrated in ``t = 1/h``."""
    return _integral_half_line(lambda t: inverse_sum_pdf(1.0 / t, mu_r, mu_s) / (t * t) if t > 0 else 0.0)


def validate(p: SystemParams, g: MeanGains, n: int = 10**6, seed: int = 0,
             n_streams: int = 1) -> ValidationReport:
    p.validate()  # reject corrupted parameters before any sampling
    if n < MIN_SAMPLES:
        raise ValueError(f"validation needs n >= {MIN_SAMPLES}")
    report = ValidationReport()
    add = report.checks.append

    add(_outage_check("relay_outage", relay_outage(p, g),
                      estimate_outage(p, g, "relay", n, seed, n_streams), n))
    if p.jamming:
        add(_outage_check("jammer_outage", jammer_outage(p, g),
                          estimate_outage(p, g, "jammer", n, seed + 1, n_streams), n))

    mu_r, mu_s = p.p_s1 * g.mu_s1r, p.p_s2 * g.mu_s2r
    e_closed = expected_inverse_sum(mu_r, mu_s)
    e_mc = estimate_expected_inverse_sum(p, g, n, seed + 2, n_streams)
    z = abs(e_mc.z_score(e_closed))
    add(Check("expected_inverse_sum", z <= Z_LIMIT, e_mc.mean, e_closed,
              f"z={z:.3g} limit={Z_LIMIT}"))

    masses = {
        "pdf_gain": _integral_half_line(lambda x: gain_pdf(x, g.mu_s1r)),
        "pdf_sum": _integral_half_line(lambda s: sum_pdf(s, 1.0 / mu_r, 1.0 / mu_s)),
        "pdf_inverse_sum": inverse_sum_mass(mu_r, mu_s),
    }
    for name, mass in masses.items():
        add(Check(name, abs(mass - 1.0) < PDF_TOL, mass, 1.0, f"tol={PDF_TOL:g}"))

    # the bound's T-terms with E{H} swapped for its simulated value: same value within MC error
    lb = essr_lower_bound(p, g)
    lb_hi = essr_lower_bound(p, g, e_mc.mean + Z_LIMIT * e_mc.std_err).r_lb
    lb_lo = essr_lower_bound(p, g, max(e_mc.mean - Z_LIMIT * e_mc.std_err, 0.0)).r_lb
    lo, hi = min(lb_lo, lb_hi), max(lb_lo, lb_hi)
    add(Check("lower_bound_eh_substitution", lo - 1e-12 <= lb.r_lb <= hi + 1e-12, lb.r_lb,
              essr_lower_bound(p, g, e_mc.mean).r_lb, f"interval=[{lo:.6g}, {hi:.6g}]"))

    mc = estimate_essr(p, g, n, seed + 3, n_streams)
    gap = (lb.r_lb - mc.mean) / mc.mean if mc.mean > 0 else math.nan
    add(Check("lower_bound_vs_mc_gap", True, lb.r_lb, mc.mean,
              f"relative_gap={gap:.4g} mc_std_err={mc.std_err:.3g}", informational=True))
    return report

