"""Parameter sweeps over the TS ratio, the transmit SNR and the node spacing."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from ..analytics import essr_lower_bound
from ..montecarlo import DEFAULT_SAMPLES, estimate_essr
from ..params import MeanGains, Scenario, SystemParams, Topology, mean_gains

SCENARIOS = ("wfj", "wofj")
METHODS = ("closed_form", "monte_carlo")
VARIABLES = ("alpha", "snr_db", "distance_m")

# alpha co-sweep grid for distance sweeps
DEFAULT_ALPHA_GRID = tuple(np.round(np.arange(0.05, 0.951, 0.05), 10))


class SweepRangeError(ValueError):
    """Sweep range outside the admissible domain of its variable."""


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    scenarios: tuple[str, ...] = SCENARIOS
    methods: tuple[str, ...] = ("closed_form",)
    mc_samples: int = DEFAULT_SAMPLES
    seed: int = 0
    n_streams: int = 1
    outage: str = "closed_form"
    workers: int = 1

    def __post_init__(self) -> None:
        if self.variable not in VARIABLES:
            raise SweepRangeError(f"variable must be one of {VARIABLES}")
        if not self.start < self.stop:
            raise SweepRangeError(f"start ({self.start}) must be below stop ({self.stop})")
        if self.steps < 2:
            raise SweepRangeError("steps must be >= 2")
        if not self.scenarios or set(self.scenarios) - set(SCENARIOS):
            raise SweepRangeError(f"scenarios must be a non-empty subset of {SCENARIOS}")
        if not self.methods or set(self.methods) - set(METHODS):
            raise SweepRangeError(f"methods must be a non-empty subset of {METHODS}")
        if self.mc_samples < 1:
            raise SweepRangeError("mc_samples must be >= 1")
        if self.variable == "alpha" and not (0.0 < self.start and self.stop < 1.0):
            raise SweepRangeError("alpha sweep must stay strictly inside (0, 1)")
        if self.variable == "distance_m" and self.start <= 0:
            raise SweepRangeError("distances must be > 0")

    def grid(self) -> np.ndarray:
        # rounding strips linspace noise such as 0.27499999999999997
        return np.round(np.linspace(self.start, self.stop, self.steps), 12)


@dataclass
class SweepRow:
    """One grid point: ESSR per (scenario, method); std_err only for Monte Carlo entries."""

    variable: str
    value: float
    essr: dict[tuple[str, str], float] = field(default_factory=dict)
    std_err: dict[tuple[str, str], float] = field(default_factory=dict)
    fixed: dict[str, float] = field(default_factory=dict)

    def label(self) -> str:
        if not self.fixed:
            return self.variable
        tags = ",".join(f"{k}={v:g}" for k, v in self.fixed.items())
        return f"{self.variable}@{tags}"

    def records(self) -> Iterator[dict]:
        for (scenario, method), value in self.essr.items():
            yield {
                "variable": self.label(),
                "value": self.value,
                "scenario": scenario,
                "method": method,
                "essr_bps_hz": value,
                "std_err": self.std_err.get((scenario, method)),
                **self.fixed,
            }


def scenario_params(base: SystemParams, scenario: str) -> SystemParams:
    return base.with_(jamming=(scenario == "wfj"))


def evaluate_point(p: SystemParams, g: MeanGains, spec: SweepSpec,
                   scenarios: Iterable[str] | None = None):
    """ESSR for every requested (scenario, method) at one parameter point."""
    essr: dict[tuple[str, str], float] = {}
    err: dict[tuple[str, str], float] = {}
    for scenario in scenarios or spec.scenarios:
        ps = scenario_params(p, scenario)
        for method in spec.methods:
            if method == "closed_form":
                essr[(scenario, method)] = essr_lower_bound(ps, g).r_lb
            else:
                # same seed at every grid point: common random numbers
                est = estimate_essr(ps, g, spec.mc_samples, spec.seed,
                                    n_streams=spec.n_streams, outage=spec.outage)
                essr[(scenario, method)] = est.mean
                err[(scenario, method)] = est.std_err
    return essr, err


def _map_ordered(fn, items, workers: int) -> list:
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def sweep_alpha(spec: SweepSpec, base: Scenario) -> list[SweepRow]:
    if spec.variable != "alpha":
        raise SweepRangeError("sweep_alpha needs variable='alpha'")
    g = base.gains

    def point(a: float) -> SweepRow:
        essr, err = evaluate_point(base.params.with_(alpha=float(a)), g, spec)
        return SweepRow("alpha", float(a), essr, err)

    return _map_ordered(point, spec.grid(), spec.workers)


def snr_params(base: SystemParams, snr_db: float) -> SystemParams:
    """Equal source powers ``P_S1 = P_S2 = N_0 * 10**(snr_db/10)`` with ``N_0`` fixed."""
    p = base.n0 * 10.0 ** (snr_db / 10.0)
    return base.with_(p_s1=p, p_s2=p)


def sweep_snr(spec: SweepSpec, base: Scenario) -> list[SweepRow]:
    if spec.variable != "snr_db":
        raise SweepRangeError("sweep_snr needs variable='snr_db'")
    g = base.gains

    def point(s: float) -> SweepRow:
        essr, err = evaluate_point(snr_params(base.params, float(s)), g, spec)
        return SweepRow("snr_db", float(s), essr, err)

    return _map_ordered(point, spec.grid(), spec.workers)


def sweep_distance(spec: SweepSpec, base: Scenario, rj_ratio: float = 0.5,
                   alpha_grid: Iterable[float] | None = DEFAULT_ALPHA_GRID) -> list[SweepRow]:
    """Source links at ``d``, relay-jammer link at ``rj_ratio * d``.

    With an ``alpha_grid`` each distance yields one ESSR-versus-alpha curve
    (rows keyed by alpha, tagged with the distance); with ``alpha_grid=None``
    the base alpha is kept and rows are keyed by distance.
    """
    if spec.variable != "distance_m":
        raise SweepRangeError("sweep_distance needs variable='distance_m'")
    if rj_ratio <= 0:
        raise SweepRangeError("rj_ratio must be > 0")
    alphas = None if alpha_grid is None else [float(a) for a in alpha_grid]
    if alphas is not None and any(not 0.0 < a < 1.0 for a in alphas):
        raise SweepRangeError("alpha grid must stay strictly inside (0, 1)")
    rho = base.topology.rho

    def point(item) -> SweepRow:
        d, a = item
        g = mean_gains(Topology.uniform(d, rj_ratio, rho))
        if a is None:
            essr, err = evaluate_point(base.params, g, spec)
            return SweepRow("distance_m", d, essr, err)
        essr, err = evaluate_point(base.params.with_(alpha=a), g, spec)
        return SweepRow("alpha", a, essr, err, fixed={"distance_m": d})

    items = [(float(d), a) for d in spec.grid() for a in (alphas or [None])]
    return _map_ordered(point, items, spec.workers)


def curve(rows: list[SweepRow], scenario: str, method: str,
          distance: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Extract ``(x, essr)`` arrays for one scenario/method (and optionally one distance)."""
    sel = [r for r in rows
           if (scenario, method) in r.essr
           and (distance is None or r.fixed.get("distance_m") == distance)]
    return (np.array([r.value for r in sel]),
            np.array([r.essr[(scenario, method)] for r in sel]))


def is_unimodal(values: Iterable[float], strict: bool = True) -> bool:
    """True when the sequence rises to a single interior peak and then falls.

    ``strict=False`` tolerates flat stretches (e.g. a run of clamped zeros)
    but still rejects a constant sequence.
    """
    v = np.asarray(list(values), dtype=float)
    if v.size < 3:
        return False
    k = int(np.argmax(v))
    if k == 0 or k == v.size - 1:
        return False
    d = np.diff(v)
    if strict:
        return bool(np.all(d[:k] > 0) and np.all(d[k:] < 0))
    return bool(np.all(d[:k] >= 0) and np.all(d[k:] <= 0) and v[k] > v[0] and v[k] > v[-1])
