from contextlib import contextmanager

import pytest

_RESULTS = {}


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion as PASS or FAIL."""

    @contextmanager
    def record(number, title):
        try:
            yield
        except BaseException as exc:
            _RESULTS[number] = f"criterion {number:2d}: FAIL  {title} ({type(exc).__name__}: {exc})"
            print(_RESULTS[number])
            raise
        _RESULTS[number] = f"criterion {number:2d}: PASS  {title}"
        print(_RESULTS[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[number].splitlines()[0])
