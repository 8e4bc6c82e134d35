import random

import pytest

from z2annot import fixtures
from z2annot.complex import betti

_acceptance_results: list[tuple[str, str]] = []


def random_complexes(count, seed, *, min_g=0, max_g=None, min_vertices=4, max_vertices=10, **kwargs):
    """Deterministic stream of random connected complexes with ``min_g <= g <= max_g``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = fixtures.random_complex(
            rng,
            n_vertices=rng.randint(min_vertices, max_vertices),
            edge_prob=rng.uniform(0.3, 0.7),
            tri_prob=rng.uniform(0.1, 0.6),
            **kwargs,
        )
        g = betti(k, 1)
        if g < min_g or (max_g is not None and g > max_g):
            continue
        out.append(k)
    return out


@pytest.fixture
def disk():
    return fixtures.two_holed_disk()


@pytest.fixture
def torus7():
    return fixtures.seven_vertex_torus()


@pytest.fixture
def annulus6():
    return fixtures.annulus(6)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
