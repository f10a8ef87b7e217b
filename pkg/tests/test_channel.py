import math

import numpy as np
import pytest
from scipy import integrate, stats

from twoway_secrecy.channel import (
    RngStream,
    gain_pdf,
    inverse_sum_pdf,
    sample_fading,
    sample_fading_block,
    sum_pdf,
)
from twoway_secrecy.params import MeanGains


def _quad(f, a=0.0, b=np.inf):
    return integrate.quad(f, a, b, limit=500, epsabs=1e-13, epsrel=1e-12)[0]


def test_sample_fading_replay_is_identical():
    g = MeanGains(1, 2, 3, 4, 5)
    a = [sample_fading(g, RngStream(7, 3)) for _ in range(1)]
    r1, r2 = RngStream(7, 3), RngStream(7, 3)
    seq1 = [sample_fading(g, r1) for _ in range(5)]
    seq2 = [sample_fading(g, r2) for _ in range(5)]
    assert seq1 == seq2
    assert a[0] == seq1[0]
    assert seq1[0] != seq1[1]


def test_distinct_streams_differ():
    g = MeanGains(1, 1, 1, 1, 1)
    a = sample_fading_block(g, RngStream(1, 0), 100)
    b = sample_fading_block(g, RngStream(1, 1), 100)
    assert not np.array_equal(a.x, b.x)


def test_sample_means_law_of_large_numbers():
    mu = 0.37
    n = 10**6
    f = sample_fading_block(MeanGains(mu, mu, mu, mu, mu), RngStream(11), n)
    for field in (f.x, f.y, f.z, f.w, f.u):
        # exponential: sd == mean
        assert abs(field.mean() - mu) < 5 * mu / math.sqrt(n)
        assert field.min() >= 0


def test_scaled_mean_scales_samples():
    c = 3.5
    a = sample_fading_block(MeanGains(1, 1, 1, 1, 1), RngStream(5, 0), 20000).x
    b = sample_fading_block(MeanGains(c, c, c, c, c), RngStream(5, 1), 20000).x
    res = stats.ks_2samp(a, b / c)
    assert res.pvalue > 0.01


def test_gain_pdf_values():
    assert gain_pdf(0.0, 1.0) == 1.0
    assert gain_pdf(2.0, 2.0) == pytest.approx(math.exp(-1) / 2, rel=1e-15)
    assert gain_pdf(-1.0, 1.0) == 0.0


@pytest.mark.parametrize("mu", [1e-3, 0.05, 1.0, 40.0])
def test_gain_pdf_normalised(mu):
    assert _quad(lambda x: gain_pdf(x, mu)) == pytest.approx(1.0, abs=1e-9)


def test_sum_pdf_at_origin():
    assert sum_pdf(0.0, 1.0, 1.0) == 0.0
    assert sum_pdf(0.0, 1.0, 3.0) == 0.0


def test_sum_pdf_equal_rates_value():
    assert sum_pdf(1.0, 1.0, 1.0) == pytest.approx(math.exp(-1), rel=1e-15)


def test_sum_pdf_equal_rates_matches_histogram():
    rng = np.random.default_rng(3)
    s = rng.exponential(1.0, 10**6) + rng.exponential(1.0, 10**6)
    # density estimate on [0.95, 1.05]: mass / width
    est = np.mean((s > 0.95) & (s < 1.05)) / 0.1
    assert est == pytest.approx(math.exp(-1), abs=0.01)


@pytest.mark.parametrize("mx,my", [(1.0, 1.0), (1.0, 2.0), (5.0, 0.3), (0.02, 0.05)])
def test_sum_pdf_normalised(mx, my):
    assert _quad(lambda s: sum_pdf(s, mx, my)) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("s", [0.01, 0.5, 1.0, 4.0])
def test_sum_pdf_branch_continuity(s):
    m = 1.7
    a = sum_pdf(s, m, m * (1 + 1e-6))
    b = sum_pdf(s, m, m)
    assert abs(a - b) <= 1e-4 * b


def test_sum_pdf_ks_against_samples():
    mx, my = 2.0, 0.5
    rng = np.random.default_rng(21)
    s = rng.exponential(1 / mx, 10**5) + rng.exponential(1 / my, 10**5)

    def cdf(v):
        return np.array([_quad(lambda t: sum_pdf(t, mx, my), 0.0, x) for x in np.atleast_1d(v)])

    # KS against the cdf obtained by integrating the density
    grid = np.linspace(0, np.quantile(s, 0.9999), 400)
    cdf_grid = cdf(grid)
    emp = np.searchsorted(np.sort(s), grid, side="right") / s.size
    d = np.max(np.abs(emp - cdf_grid))
    assert d < 1.63 / math.sqrt(s.size)  # 1% critical value


def _inverse_mass(mu_r, mu_s, **kw):
    return _quad(lambda t: inverse_sum_pdf(1.0 / t, mu_r, mu_s, **kw) / (t * t) if t > 0 else 0.0)


@pytest.mark.parametrize("mu_r,mu_s", [(2.0, 1.0), (0.5, 0.513), (10.0, 0.1)])
def test_inverse_sum_pdf_normalised_unequal(mu_r, mu_s):
    assert _inverse_mass(mu_r, mu_s) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("mu", [0.5, 2.0, 7.0])
def test_inverse_sum_pdf_equal_means_corrected(mu):
    assert _inverse_mass(mu, mu) == pytest.approx(1.0, abs=1e-6)


def test_inverse_sum_pdf_printed_form_not_normalised():
    # published equal-means density integrates to +inf (log divergence at h -> inf)
    mass = integrate.quad(lambda h: inverse_sum_pdf(h, 2.0, 2.0, printed=True), 0, 1e6, limit=500)[0]
    assert mass > 2.0


def test_inverse_sum_pdf_rejects_nonpositive_h():
    assert inverse_sum_pdf(0.0, 1.0, 2.0) == 0.0
    assert inverse_sum_pdf(-1.0, 1.0, 1.0) == 0.0


def test_inverse_sum_pdf_chi_square():
    mu_r, mu_s = 2.0, 1.0
    rng = np.random.default_rng(8)
    n = 10**6
    h = 1.0 / (rng.exponential(mu_r, n) + rng.exponential(mu_s, n))
    edges = np.quantile(h, np.linspace(0, 1, 41))
    edges[0], edges[-1] = 0.0, np.inf
    counts, _ = np.histogram(h, edges)
    probs = np.array([_quad(lambda x: inverse_sum_pdf(x, mu_r, mu_s), a, b)
                      for a, b in zip(edges[:-1], edges[1:])])
    res = stats.chisquare(counts, probs / probs.sum() * n)
    assert res.pvalue > 0.01


def test_densities_nonnegative():
    s = np.linspace(0, 50, 2001)
    assert np.all(sum_pdf(s, 3.0, 0.1) >= 0)
    assert np.all(sum_pdf(s, 0.1, 3.0) >= 0)
    assert np.all(inverse_sum_pdf(s, 0.3, 4.0) >= 0)
    assert np.all(gain_pdf(s - 1, 2.0) >= 0)
