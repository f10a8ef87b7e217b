# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Monte Carlo block kernels; same contract as ``_fallback``."""

from libc.math cimport log, M_LN2


def rate_stats(const double[::1] x, const double[::1] y, const double[::1] z,
               const double[::1] w, const double[::1] u,
               double p_s1, double p_s2, double eta_r, double eta_j, double alpha,
               double n0, double theta_r, double theta_j, bint jamming, bint high_snr):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef double pre = 0.5 * (1.0 - alpha) / M_LN2
    cdef double k = 2.0 * eta_r * alpha
    cdef double cj = 2.0 * eta_j * alpha / (1.0 - alpha) if jamming else 0.0
    cdef double p_r, p_j, p_tj, g_r, g_s1, g_s2, common, r, ratio
    cdef double sum_r = 0.0, sumsq_r = 0.0, sum_ok = 0.0, sumsq_ok = 0.0
    cdef long n_out_r = 0, n_out_j = 0, n_ok = 0
    cdef bint out_r, out_j

    if y.shape[0] != n or z.shape[0] != n or w.shape[0] != n or u.shape[0] != n:
        raise ValueError("gain arrays must have equal length")

    with nogil:
        for i in range(n):
            p_r = p_s1 * x[i] + p_s2 * y[i]
            p_j = p_s1 * z[i] + p_s2 * w[i]
            p_tj = cj * p_j
            g_r = p_r / (p_tj * u[i] + n0)
            if p_r > 0.0:
                common = n0 * p_tj * u[i] * (1.0 - alpha) / p_r + n0 * (1.0 - alpha)
                if not high_snr:
                    common = common + n0 * n0 * (1.0 - alpha) / p_r
                g_s2 = k * p_s1 * x[i] * y[i] / (k * y[i] * n0 + common)
                g_s1 = k * p_s2 * y[i] * x[i] / (k * x[i] * n0 + common)
            else:
                g_s1 = 0.0
                g_s2 = 0.0
            # one log of the rate ratio; the clamp is decided without it
            ratio = (1.0 + g_s1) * (1.0 + g_s2) / (1.0 + g_r)
            r = pre * log(ratio) if ratio > 1.0 else 0.0
            sum_r += r
            sumsq_r += r * r
            out_r = p_r < theta_r
            out_j = p_j < theta_j
            if out_r:
                n_out_r += 1
            if out_j:
                n_out_j += 1
            if not out_r and not (jamming and out_j):
                n_ok += 1
                sum_ok += r
                sumsq_ok += r * r
    return sum_r, sumsq_r, sum_ok, sumsq_ok, n_out_r, n_out_j, n_ok


def inverse_sum_stats(const double[::1] x, const double[::1] y, double p_s1, double p_s2):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef double s, h
    cdef double total = 0.0, total_sq = 0.0
    cdef long count = 0
    if y.shape[0] != n:
        raise ValueError("gain arrays must have equal length")
    with nogil:
        for i in range(n):
            s = p_s1 * x[i] + p_s2 * y[i]
            if s > 0.0:
                h = 1.0 / s
                total += h
                total_sq += h * h
                count += 1
    return total, total_sq, count
