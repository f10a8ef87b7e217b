"""System parameters, topology and the unit conversions at the configuration boundary.

Everything inside the package works in linear watts. Decibel quantities only
appear in configuration keys, which carry an explicit ``_dbw`` / ``_dbm``
suffix.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping


class ConfigError(ValueError):
    """Raised for invalid parameters or malformed configuration files."""


def db_to_linear(value_db: float) -> float:
    """Convert a decibel ratio to a linear ratio."""
    if not math.isfinite(value_db):
        raise ConfigError(f"decibel value must be finite, got {value_db!r}")
    return 10.0 ** (value_db / 10.0)


def dbw_to_watts(value_dbw: float) -> float:
    return db_to_linear(value_dbw)


def dbm_to_watts(value_dbm: float) -> float:
    return db_to_linear(value_dbm - 30.0)


def watts_to_dbw(watts: float) -> float:
    return 10.0 * math.log10(watts)


def watts_to_dbm(watts: float) -> float:
    return 10.0 * math.log10(watts) + 30.0


def _check_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ConfigError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Powers in watts, efficiencies and TS ratio dimensionless, T normalised to 1.

    ``theta_j`` defaults to ``theta_r``. ``jamming`` selects WFJ (True) or
    WoFJ (False); ``high_snr`` drops the noise-product term of the end-to-end
    SNRs.
    """

    p_s1: float = 10.0
    p_s2: float = 10.0
    eta_r: float = 0.7
    eta_j: float = 0.7
    alpha: float = 0.38
    n0: float = 1e-4
    theta_r: float = 1e-3
    theta_j: float | None = None
    jamming: bool = True
    high_snr: bool = False

    def __post_init__(self) -> None:
        if self.theta_j is None:
            object.__setattr__(self, "theta_j", self.theta_r)
        self.validate()

    def validate(self) -> None:
        for name in ("p_s1", "p_s2", "n0"):
            _check_positive(name, getattr(self, name))
        for name in ("eta_r", "eta_j"):
            v = getattr(self, name)
            # eta == 1 is accepted as the lossless limit
            if not (0.0 < v <= 1.0):
                raise ConfigError(f"{name} must lie in (0, 1], got {v!r}")
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        for name in ("theta_r", "theta_j"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ConfigError(f"{name} must be finite and >= 0, got {v!r}")

    def with_(self, **changes: Any) -> "SystemParams":
        """Copy with fields replaced; ``theta_j`` keeps tracking ``theta_r`` unless set."""
        if "theta_r" in changes and "theta_j" not in changes and self.theta_j == self.theta_r:
            changes["theta_j"] = changes["theta_r"]
        return replace(self, **changes)

    def swapped(self) -> "SystemParams":
        """Exchange the roles of the two sources."""
        return replace(self, p_s1=self.p_s2, p_s2=self.p_s1)


@dataclass(frozen=True)
class Topology:
    """Link distances in metres and the path-loss exponent."""

    d_s1r: float = 3.0
    d_s2r: float = 3.0
    d_s1j: float = 3.0
    d_s2j: float = 3.0
    d_rj: float = 1.5
    rho: float = 2.7

    def __post_init__(self) -> None:
        for name in ("d_s1r", "d_s2r", "d_s1j", "d_s2j", "d_rj", "rho"):
            _check_positive(name, getattr(self, name))

    @classmethod
    def uniform(cls, d: float, rj_ratio: float = 0.5, rho: float = 2.7) -> "Topology":
        """All source links at ``d``; relay-jammer link at ``rj_ratio * d``."""
        return cls(d, d, d, d, rj_ratio * d, rho)


@dataclass(frozen=True)
class MeanGains:
    """Means of the five exponential channel power gains.

    ``mu_rj`` serves both directions of the reciprocal relay-jammer link.
    """

    mu_s1r: float
    mu_s2r: float
    mu_s1j: float
    mu_s2j: float
    mu_rj: float

    def __post_init__(self) -> None:
        for name in ("mu_s1r", "mu_s2r", "mu_s1j", "mu_s2j", "mu_rj"):
            _check_positive(name, getattr(self, name))

    def swapped(self) -> "MeanGains":
        return MeanGains(self.mu_s2r, self.mu_s1r, self.mu_s2j, self.mu_s1j, self.mu_rj)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.mu_s1r, self.mu_s2r, self.mu_s1j, self.mu_s2j, self.mu_rj)


def mean_gains(top: Topology) -> MeanGains:
    """Path-loss-only means ``d ** -rho`` for every link."""
    return MeanGains(
        top.d_s1r ** -top.rho,
        top.d_s2r ** -top.rho,
        top.d_s1j ** -top.rho,
        top.d_s2j ** -top.rho,
        top.d_rj ** -top.rho,
    )


# ---------------------------------------------------------------------------
# configuration file

CONFIG_DEFAULTS: dict[str, Any] = {
    "p_s1_dbw": 10.0,
    "p_s2_dbw": 10.0,
    "eta_r": 0.7,
    "eta_j": 0.7,
    "alpha": 0.38,
    "n0_dbm": -10.0,
    "theta_r_dbm": 0.0,
    "theta_j_dbm": None,
    "jamming": True,
    "high_snr": False,
    "d_s1r_m": 3.0,
    "d_s2r_m": 3.0,
    "d_s1j_m": 3.0,
    "d_s2j_m": 3.0,
    "d_rj_m": 1.5,
    "rho": 2.7,
}

_BOOL_KEYS = {"jamming", "high_snr"}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_bool(text: str | bool) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise ConfigError(f"expected true/false, got {text!r}")


def _coerce(key: str, raw: Any) -> Any:
    if raw is None:
        return None
    if key in _BOOL_KEYS:
        return parse_bool(raw)
    if isinstance(raw, str) and raw.strip().lower() in {"", "none"}:
        return None
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: value must be finite, got {raw!r}")
    return value


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Parse a flat ``key = value`` file (``#`` / ``;`` comments, no sections)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    if parser.sections() != ["config"]:
        raise ConfigError(f"{path}: sections are not allowed in the flat key = value format")
    values = dict(parser["config"])
    unknown = sorted(set(values) - set(CONFIG_DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {', '.join(unknown)}")
    return {k: _coerce(k, v) for k, v in values.items()}


@dataclass(frozen=True)
class Scenario:
    """Resolved configuration: physical parameters, topology and the raw echo."""

    params: SystemParams
    topology: Topology
    raw: Mapping[str, Any] = field(default_factory=dict)

    @property
    def gains(self) -> MeanGains:
        return mean_gains(self.topology)


def resolve_config(path: str | Path | None = None,
                   overrides: Mapping[str, Any] | None = None) -> Scenario:
    """Defaults, then the config file, then explicit overrides (``None`` means unset)."""
    raw = dict(CONFIG_DEFAULTS)
    if path is not None:
        raw.update(read_config_file(path))
    for key, value in (overrides or {}).items():
        if key not in CONFIG_DEFAULTS:
            raise ConfigError(f"unknown configuration key {key!r}")
        if value is not None:
            raw[key] = _coerce(key, value)

    theta_r = dbm_to_watts(raw["theta_r_dbm"])
    theta_j = theta_r if raw["theta_j_dbm"] is None else dbm_to_watts(raw["theta_j_dbm"])
    params = SystemParams(
        p_s1=dbw_to_watts(raw["p_s1_dbw"]),
        p_s2=dbw_to_watts(raw["p_s2_dbw"]),
        eta_r=raw["eta_r"],
        eta_j=raw["eta_j"],
        alpha=raw["alpha"],
        n0=dbm_to_watts(raw["n0_dbm"]),
        theta_r=theta_r,
        theta_j=theta_j,
        jamming=raw["jamming"],
        high_snr=raw["high_snr"],
    )
    topology = Topology(raw["d_s1r_m"], raw["d_s2r_m"], raw["d_s1j_m"],
                        raw["d_s2j_m"], raw["d_rj_m"], raw["rho"])
    return Scenario(params, topology, raw)


def default_scenario() -> Scenario:
    return resolve_config()


def params_as_dict(p: SystemParams) -> dict[str, Any]:
    return asdict(p)
