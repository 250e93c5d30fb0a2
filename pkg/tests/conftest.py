import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")

_ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE.append


@pytest.fixture(scope="session")
def sl2_cs():
    from bvbicomplex.chern_simons import build_cs_context
    from bvbicomplex.lie_algebra import load_algebra

    return build_cs_context(load_algebra("sl2"), max_jet_order=2)


@pytest.fixture(scope="session")
def so3_cs():
    from bvbicomplex.chern_simons import build_cs_context
    from bvbicomplex.lie_algebra import load_algebra

    return build_cs_context(load_algebra("so3"), max_jet_order=2)


@pytest.fixture(scope="session")
def ab1_cs():
    from bvbicomplex.chern_simons import build_cs_context
    from bvbicomplex.lie_algebra import load_algebra

    return build_cs_context(load_algebra("abelian1"), max_jet_order=2)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for out in sorted(_ACCEPTANCE, key=lambda o: o.number):
        terminalreporter.write_line(out.line())
        for line in out.info:
            terminalreporter.write_line(f"    note: {line}")
