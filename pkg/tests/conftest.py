import numpy as np
import pytest

from qherglotz._jacobi import eigvalsh_c

# acceptance tests append their [PASS] lines here; failures are added by the
# hook below so every criterion shows one verdict line in the summary
scoreboard: list[str] = []


@pytest.fixture(scope="session", autouse=True)
def _warm_eigensolver():
    # first call compiles the jitted sweep; keep that out of timed tests
    eigvalsh_c(np.array([[2.0, 1j], [-1j, 2.0]], dtype=np.complex128))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if (rep.when == "call" and rep.failed
            and "test_acceptance" in item.nodeid):
        reason = call.excinfo.exconly() if call.excinfo else "failed"
        reason = " ".join(reason.split())
        scoreboard.append(f"[FAIL] {item.name}: {reason[:160]}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if scoreboard:
        terminalreporter.section("acceptance scoreboard")
        for line in scoreboard:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20260817)
