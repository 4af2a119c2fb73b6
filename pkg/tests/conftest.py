import pytest

from blockprimes import acceptance

CHECKS = pytest.StashKey[dict]()


def pytest_addoption(parser):
    parser.addoption("--profile", choices=acceptance.PROFILES, default="quick",
                     help="acceptance profile: quick (desk scale) or paper (adds the 1e8 count)")


def pytest_configure(config):
    config.stash[CHECKS] = {}


@pytest.fixture
def profile(request):
    return request.config.getoption("--profile")


@pytest.fixture
def record_checks(request):
    store = request.config.stash[CHECKS]

    def record(criterion, checks):
        store[criterion] = checks

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash[CHECKS]
    if not store:
        return
    terminalreporter.section(f"acceptance criteria ({config.getoption('--profile')} profile)")
    checks = [c for i in sorted(store) for c in store[i]]
    for line in acceptance.summary_lines(checks):
        terminalreporter.write_line(line)
