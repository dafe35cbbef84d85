import pytest

from landau_entropy import ModelParams

_ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    """Store a one-line pass/fail verdict for the acceptance summary."""

    def record(key, ok, detail):
        _ACCEPTANCE[key] = (bool(ok), detail)
        return ok

    return record


@pytest.fixture
def unit_params():
    """Natural units with the Hermitian limit and no guiding-centre shift."""
    return ModelParams(omega=1.0, theta=0.0, p_y=0.0)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: (int(k.split()[0].rstrip("abc")), k)):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
