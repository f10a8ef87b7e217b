import numpy as np
import pytest

from twoway_secrecy import _fallback, kernels
from twoway_secrecy.montecarlo import estimate_essr, estimate_expected_inverse_sum
from twoway_secrecy.params import SystemParams, Topology, mean_gains

needs_cython = pytest.mark.skipif("cython" not in kernels.available_backends(),
                                  reason="compiled kernel not built")


def _draw(n, seed, dark=0):
    rng = np.random.default_rng(seed)
    x, y, z, w, u = rng.exponential(0.05, (5, n))
    if dark:
        x[:dark] = 0.0
        y[:dark] = 0.0
    return x, y, z, w, u


def _args(p):
    return (p.p_s1, p.p_s2, p.eta_r, p.eta_j, p.alpha, p.n0, p.theta_r, p.theta_j,
            p.jamming, p.high_snr)


def test_backend_selection():
    assert kernels.BACKEND in kernels.available_backends()
    assert kernels.get_backend("python") is _fallback


@needs_cython
@pytest.mark.parametrize("p", [
    SystemParams(),
    SystemParams(jamming=False),
    SystemParams(high_snr=True, alpha=0.7),
    SystemParams(theta_r=5e-2, theta_j=1e-1),
    SystemParams(p_s1=0.3, p_s2=70.0, eta_r=1.0, eta_j=0.2, n0=1e-2),
])
def test_rate_stats_agree(p):
    cy = kernels.get_backend("cython")
    x, y, z, w, u = _draw(50_000, 1, dark=10)
    a = cy.rate_stats(x, y, z, w, u, *_args(p))
    b = _fallback.rate_stats(x, y, z, w, u, *_args(p))
    assert a[4:] == b[4:]
    np.testing.assert_allclose(a[:4], b[:4], rtol=1e-12)


@needs_cython
def test_inverse_sum_stats_agree():
    cy = kernels.get_backend("cython")
    x, y, *_ = _draw(40_000, 2, dark=5)
    a = cy.inverse_sum_stats(x, y, 10.0, 3.0)
    b = _fallback.inverse_sum_stats(x, y, 10.0, 3.0)
    assert a[2] == b[2] == 40_000 - 5
    np.testing.assert_allclose(a[:2], b[:2], rtol=1e-12)


@needs_cython
def test_end_to_end_backends_agree():
    g = mean_gains(Topology())
    p = SystemParams()
    a = estimate_essr(p, g, 100_000, seed=3, backend="cython")
    b = estimate_essr(p, g, 100_000, seed=3, backend="python")
    assert a.mean == pytest.approx(b.mean, rel=1e-12)
    c = estimate_expected_inverse_sum(p, g, 100_000, seed=3, backend="cython")
    d = estimate_expected_inverse_sum(p, g, 100_000, seed=3, backend="python")
    assert c.mean == pytest.approx(d.mean, rel=1e-12)
