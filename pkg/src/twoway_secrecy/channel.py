"""Rayleigh block fading: counter-based sampling of the five power gains and their densities."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import MeanGains

# Relative gap below which two exponential means are treated as equal. The
# unequal-means formulas cancel catastrophically close to equality.
EQUAL_TOL = 1e-9

_U64 = (1 << 64) - 1


def nearly_equal(a: float, b: float, tol: float = EQUAL_TOL) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b))


@dataclass(frozen=True)
class FadingRealization:
    """Power gains of one block: X=|h_S1R|², Y=|h_S2R|², Z=|h_S1J|², W=|h_S2J|², U=|h_RJ|².

    Fields may also hold equally shaped numpy arrays (one entry per block),
    which is how the Monte Carlo engine uses it.
    """

    x: float | np.ndarray
    y: float | np.ndarray
    z: float | np.ndarray
    w: float | np.ndarray
    u: float | np.ndarray

    def swapped(self) -> "FadingRealization":
        return FadingRealization(self.y, self.x, self.w, self.z, self.u)


class RngStream:
    """Philox counter-based stream keyed by ``(seed, stream_id)``.

    The key fully determines the sequence, so distinct ``stream_id`` values
    give independent substreams and a replay of the same key is bit-identical.
    """

    __slots__ = ("seed", "stream_id", "_gen")

    def __init__(self, seed: int, stream_id: int = 0) -> None:
        self.seed = int(seed) & _U64
        self.stream_id = int(stream_id) & _U64
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def sample_fading(means: MeanGains, rng: RngStream) -> FadingRealization:
    """Draw one realization of the five independent exponential gains."""
    e = rng.generator.standard_exponential(5)
    m = means.as_tuple()
    return FadingRealization(*(float(m[k] * e[k]) for k in range(5)))


def sample_fading_block(means: MeanGains, rng: RngStream, n: int) -> FadingRealization:
    """Draw ``n`` realizations at once; each field is a float64 array of length ``n``."""
    e = rng.generator.standard_exponential((5, n))
    m = np.asarray(means.as_tuple())[:, None]
    g = e * m
    return FadingRealization(g[0], g[1], g[2], g[3], g[4])


def gain_pdf(g, mu):
    """Exponential density of a channel power gain with mean ``mu``."""
    g = np.asarray(g, dtype=float)
    out = np.where(g >= 0, np.exp(-np.abs(g) / mu) / mu, 0.0)
    return out[()] if out.ndim == 0 else out


def sum_pdf(s, m_x: float, m_y: float):
    """Density of ``X + Y`` for independent exponentials with rates ``m_x`` and ``m_y``."""
    s = np.asarray(s, dtype=float)
    sp = np.where(s > 0, s, 0.0)
    if nearly_equal(m_x, m_y):
        m = 0.5 * (m_x + m_y)
        out = m * m * sp * np.exp(-m * sp)
    else:
        # |e^{-m_y s} - e^{-m_x s}| with the slower exponential factored out;
        # expm1 keeps precision for small s
        lo, gap = min(m_x, m_y), abs(m_x - m_y)
        diff = np.exp(-lo * sp) * -np.expm1(-gap * sp)
        out = m_x * m_y / gap * diff
    out = np.where(s > 0, out, 0.0)
    return out[()] if out.ndim == 0 else out


def inverse_sum_pdf(h, mu_r: float, mu_s: float, printed: bool = False):
    """Density of ``H = 1/(R + S)`` where ``R``, ``S`` are exponential with means ``mu_r``, ``mu_s``.

    For equal means the correct density is ``exp(-1/(h mu)) / (h**3 mu**2)``.
    ``printed=True`` returns the published ``exp(-1/(h mu)) / (h mu**2)`` form
    instead; it does not integrate to one and is kept only for auditing.
    """
    h = np.asarray(h, dtype=float)
    pos = h > 0
    hp = np.where(pos, h, 1.0)
    if nearly_equal(mu_r, mu_s):
        mu = 0.5 * (mu_r + mu_s)
        power = 1 if printed else 3
        out = np.exp(-1.0 / (hp * mu)) / (hp ** power * mu * mu)
    else:
        # |exp(-1/(h mu_s)) - exp(-1/(h mu_r))| with the larger exponential factored out
        big, small = max(mu_r, mu_s), min(mu_r, mu_s)
        diff = np.exp(-1.0 / (hp * big)) * -np.expm1(-(1.0 / small - 1.0 / big) / hp)
        out = diff / (hp * hp * (big - small))
    out = np.where(pos, out, 0.0)
    return out[()] if out.ndim == 0 else out
