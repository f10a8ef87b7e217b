"""Secrecy analytics and Monte Carlo simulation for a wireless-powered two-way
untrusted amplify-and-forward relay assisted by a friendly jammer."""

from .analytics import (
    LowerBoundReport,
    OutageInputs,
    essr_lower_bound,
    expected_inverse_sum,
    jammer_outage,
    lower_incomplete_gamma_2,
    power_outage,
    relay_outage,
)
from .channel import (
    FadingRealization,
    RngStream,
    gain_pdf,
    inverse_sum_pdf,
    sample_fading,
    sample_fading_block,
    sum_pdf,
)
from .kernels import BACKEND
from .montecarlo import (
    McEstimate,
    estimate_essr,
    estimate_expected_inverse_sum,
    estimate_outage,
)
from .params import (
    ConfigError,
    MeanGains,
    Scenario,
    SystemParams,
    Topology,
    db_to_linear,
    dbm_to_watts,
    dbw_to_watts,
    default_scenario,
    mean_gains,
    resolve_config,
)
from .protocol import (
    PhasePowers,
    RatePoint,
    amplification_factor,
    phase_powers,
    relay_sinr,
    secrecy_rate,
    source_snrs,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConfigError",
    "FadingRealization",
    "LowerBoundReport",
    "McEstimate",
    "MeanGains",
    "OutageInputs",
    "PhasePowers",
    "RatePoint",
    "RngStream",
    "Scenario",
    "SystemParams",
    "Topology",
    "amplification_factor",
    "db_to_linear",
    "dbm_to_watts",
    "dbw_to_watts",
    "default_scenario",
    "essr_lower_bound",
    "estimate_essr",
    "estimate_expected_inverse_sum",
    "estimate_outage",
    "expected_inverse_sum",
    "gain_pdf",
    "inverse_sum_pdf",
    "jammer_outage",
    "lower_incomplete_gamma_2",
    "mean_gains",
    "phase_powers",
    "power_outage",
    "relay_outage",
    "relay_sinr",
    "resolve_config",
    "sample_fading",
    "sample_fading_block",
    "secrecy_rate",
    "source_snrs",
    "sum_pdf",
]
