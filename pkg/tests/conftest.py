import pytest

from twoway_secrecy.channel import FadingRealization
from twoway_secrecy.params import SystemParams, default_scenario


@pytest.fixture
def defaults():
    return default_scenario()


@pytest.fixture
def unit_params():
    """P = eta = N_0 = 1 W, alpha = 0.5, jamming on, exact SNR."""
    return SystemParams(p_s1=1.0, p_s2=1.0, eta_r=1.0, eta_j=1.0, alpha=0.5, n0=1.0,
                        theta_r=0.0, jamming=True, high_snr=False)


@pytest.fixture
def unit_gains():
    return FadingRealization(1.0, 1.0, 1.0, 1.0, 1.0)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one summary line per acceptance criterion for the terminal report."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
