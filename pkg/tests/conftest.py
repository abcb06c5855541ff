from pathlib import Path

import pytest

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from quivrep import ar_quiver, load_algebra

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_path(name):
    return CORPUS / name


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def expected():
    with (CORPUS / "auslander_a3_expected.toml").open("rb") as fh:
        return tomllib.load(fh)


@pytest.fixture(scope="session")
def aus():
    return load_algebra(CORPUS / "auslander_a3.alg")


@pytest.fixture(scope="session")
def aus_ar(aus):
    return ar_quiver(aus)


@pytest.fixture(scope="session")
def aus_M(aus, aus_ar):
    from quivrep import generate_by_tau_orbit
    return generate_by_tau_orbit(aus, 2, aus_ar)


@pytest.fixture(scope="session")
def small():
    """The small algebras from the corpus with their AR quivers."""
    out = {}
    for name in ("a2", "a3", "one_loop", "a3_rad2", "a4_rad2"):
        A = load_algebra(CORPUS / f"{name}.alg")
        out[name] = (A, ar_quiver(A))
    return out


_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
