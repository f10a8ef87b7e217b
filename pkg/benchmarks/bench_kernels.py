"""Compare the compiled and numpy kernels, alone and inside the full estimator.

    python3 benchmarks/bench_kernels.py [--samples N] [--repeat R]
"""
from __future__ import annotations

import argparse
import timeit

from twoway_secrecy import kernels
from twoway_secrecy.channel import RngStream, sample_fading_block
from twoway_secrecy.montecarlo import DEFAULT_BLOCK, estimate_essr
from twoway_secrecy.params import SystemParams, default_scenario


def best_of(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--streams", type=int, default=1)
    args = ap.parse_args()

    scen = default_scenario()
    p, g = scen.params, scen.gains
    f = sample_fading_block(g, RngStream(0, 0), DEFAULT_BLOCK)
    kargs = (p.p_s1, p.p_s2, p.eta_r, p.eta_j, p.alpha, p.n0, p.theta_r, p.theta_j,
             p.jamming, p.high_snr)

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (import-time default: {kernels.BACKEND})")
    print(f"{'stage':<28}{'backend':<10}{'seconds':>12}{'Msamples/s':>12}")
    results = {}
    for name in backends:
        kern = kernels.get_backend(name)
        t = best_of(lambda: kern.rate_stats(f.x, f.y, f.z, f.w, f.u, *kargs), args.repeat)
        results[("kernel", name)] = t
        print(f"{'kernel (1 block)':<28}{name:<10}{t:>12.5f}{DEFAULT_BLOCK / t / 1e6:>12.1f}")
    for name in backends:
        t = best_of(lambda: estimate_essr(p, g, args.samples, seed=1, n_streams=args.streams,
                                          backend=name), args.repeat)
        results[("essr", name)] = t
        print(f"{f'estimate_essr (n={args.samples})':<28}{name:<10}{t:>12.4f}{args.samples / t / 1e6:>12.1f}")
    if "cython" in backends:
        for stage in ("kernel", "essr"):
            print(f"speed-up {stage}: {results[(stage, 'python')] / results[(stage, 'cython')]:.2f}x")
    sanity = SystemParams()
    a = estimate_essr(sanity, g, 10**5, seed=2, backend=backends[0]).mean
    b = estimate_essr(sanity, g, 10**5, seed=2, backend="python").mean
    print(f"backend agreement on a 1e5-sample estimate: |diff| = {abs(a - b):.3g}")


if __name__ == "__main__":
    main()
