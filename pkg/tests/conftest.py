from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden() -> Path:
    return GOLDEN


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _ACCEPTANCE.append((props["criterion"], report.passed, props.get("seconds")))


_ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, seconds in sorted(_ACCEPTANCE):
        took = "" if seconds is None else f" ({seconds:.3f} s)"
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {name}{took}")
