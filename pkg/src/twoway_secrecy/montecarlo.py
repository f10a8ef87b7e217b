"""Monte Carlo oracle for the ESSR, the power outage probabilities and E{H}.

Samples are generated in fixed-size blocks. Block ``k`` always draws from
``RngStream(seed, k)``, so the ``i``-th realization depends only on the seed
and ``i``. Workers take contiguous runs of blocks and the per-block sums are
reduced in block order, which makes every estimate independent of
``n_streams``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

import numpy as np

from . import analytics, kernels
from .channel import RngStream, sample_fading_block
from .params import MeanGains, SystemParams

DEFAULT_SAMPLES = 10**6
DEFAULT_BLOCK = 1 << 16

OUTAGE_MODES = ("closed_form", "empirical", "conditional")

T = TypeVar("T")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_err: float
    n: int
    seed: int
    n_streams: int = 1

    def z_score(self, reference: float) -> float:
        """Signed distance to ``reference`` in standard errors (inf if the error is 0 and they differ)."""
        diff = self.mean - reference
        if self.std_err == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.std_err


def _block_layout(n: int, block_size: int) -> list[tuple[int, int]]:
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    count = -(-n // block_size)
    return [(k, min(block_size, n - k * block_size)) for k in range(count)]


def run_blocks(fn: Callable[[int, int], T], n: int, n_streams: int = 1,
               block_size: int = DEFAULT_BLOCK) -> list[T]:
    """Evaluate ``fn(block_index, block_len)`` over all blocks; results in block order."""
    layout = _block_layout(n, block_size)
    n_streams = max(1, min(int(n_streams), len(layout)))
    if n_streams == 1:
        return [fn(k, m) for k, m in layout]
    chunks = np.array_split(np.arange(len(layout)), n_streams)

    def work(idx: Sequence[int]) -> list[T]:
        return [fn(*layout[i]) for i in idx]

    with ThreadPoolExecutor(max_workers=n_streams) as pool:
        parts = list(pool.map(work, chunks))
    return [r for part in parts for r in part]


def _mean_and_err(total: float, total_sq: float, n: int) -> tuple[float, float]:
    mean = total / n
    if n < 2:
        return mean, 0.0
    var = max(total_sq - n * mean * mean, 0.0) / (n - 1)
    return mean, math.sqrt(var / n)


def estimate_essr(p: SystemParams, g: MeanGains, n: int = DEFAULT_SAMPLES, seed: int = 0,
                  n_streams: int = 1, outage: str = "closed_form",
                  block_size: int = DEFAULT_BLOCK, backend: str | None = None) -> McEstimate:
    """Ergodic secrecy sum rate in bits/s/Hz.

    ``outage`` selects how power outage enters:

    * ``closed_form``: closed-form outage prefactor times the unconditional
      mean of the clamped rate (the default).
    * ``empirical``: same structure, prefactor from outage frequencies in the
      same samples.
    * ``conditional``: mean of the rate with outage blocks contributing zero.
    """
    if outage not in OUTAGE_MODES:
        raise ValueError(f"outage must be one of {OUTAGE_MODES}, got {outage!r}")
    kern = kernels.get_backend(backend)

    def block(k: int, m: int):
        f = sample_fading_block(g, RngStream(seed, k), m)
        return kern.rate_stats(f.x, f.y, f.z, f.w, f.u, p.p_s1, p.p_s2, p.eta_r, p.eta_j,
                               p.alpha, p.n0, p.theta_r, p.theta_j, p.jamming, p.high_snr)

    parts = run_blocks(block, n, n_streams, block_size)
    tot = [0.0, 0.0, 0.0, 0.0]
    n_out_r = n_out_j = 0
    for s, sq, s_ok, sq_ok, o_r, o_j, _ in parts:
        tot[0] += s
        tot[1] += sq
        tot[2] += s_ok
        tot[3] += sq_ok
        n_out_r += o_r
        n_out_j += o_j

    if outage == "conditional":
        mean, err = _mean_and_err(tot[2], tot[3], n)
    else:
        if outage == "closed_form":
            q_r = analytics.relay_outage(p, g)
            q_j = analytics.jammer_outage(p, g) if p.jamming else 0.0
        else:
            q_r = n_out_r / n
            q_j = n_out_j / n if p.jamming else 0.0
        pre = (1.0 - q_r) * (1.0 - q_j)
        mean, err = _mean_and_err(tot[0], tot[1], n)
        mean, err = pre * mean, pre * err
    return McEstimate(mean, err, n, seed, n_streams)


def estimate_outage(p: SystemParams, g: MeanGains, target: str = "relay", n: int = DEFAULT_SAMPLES,
                    seed: int = 0, n_streams: int = 1,
                    block_size: int = DEFAULT_BLOCK) -> McEstimate:
    """Empirical frequency of the received harvesting power falling below threshold."""
    if target == "relay":
        theta = p.theta_r
        pick = lambda f: p.p_s1 * f.x + p.p_s2 * f.y  # noqa: E731
    elif target == "jammer":
        theta = p.theta_j
        pick = lambda f: p.p_s1 * f.z + p.p_s2 * f.w  # noqa: E731
    else:
        raise ValueError(f"target must be 'relay' or 'jammer', got {target!r}")

    def block(k: int, m: int) -> int:
        f = sample_fading_block(g, RngStream(seed, k), m)
        return int(np.count_nonzero(pick(f) < theta))

    hits = sum(run_blocks(block, n, n_streams, block_size))
    q = hits / n
    return McEstimate(q, math.sqrt(q * (1.0 - q) / n), n, seed, n_streams)


def estimate_expected_inverse_sum(p: SystemParams, g: MeanGains, n: int = DEFAULT_SAMPLES,
                                  seed: int = 0, n_streams: int = 1,
                                  block_size: int = DEFAULT_BLOCK,
                                  backend: str | None = None) -> McEstimate:
    """Sample mean of ``1/(P_S1 X + P_S2 Y)``.

    Realizations with ``X = Y = 0`` are discarded (a probability-zero event),
    so the reported ``n`` counts only the samples that entered the mean.
    """
    kern = kernels.get_backend(backend)

    def block(k: int, m: int):
        f = sample_fading_block(g, RngStream(seed, k), m)
        return kern.inverse_sum_stats(f.x, f.y, p.p_s1, p.p_s2)

    total = total_sq = 0.0
    count = 0
    for s, sq, c in run_blocks(block, n, n_streams, block_size):
        total += s
        total_sq += sq
        count += c
    if count == 0:
        raise RuntimeError("every sampled realization had X = Y = 0")
    mean, err = _mean_and_err(total, total_sq, count)
    return McEstimate(mean, err, count, seed, n_streams)
