import random

import pytest

from frobx.acceptance import fermat, nodal_cubic, plane, quadric_cone
from frobx.poly import Polynomial
from frobx.ring import Ring


@pytest.fixture
def fermat2():
    return fermat(2)


@pytest.fixture
def cone101():
    return quadric_cone(101)


@pytest.fixture
def cone5():
    return quadric_cone(5)


@pytest.fixture
def plane3():
    return plane(3)


@pytest.fixture
def nodal():
    return nodal_cubic()


def random_poly(ring: Ring, rng: random.Random, max_deg=3, nterms=4, homogeneous_degree=None):
    terms = {}
    for _ in range(nterms):
        if homogeneous_degree is None:
            exps = tuple(rng.randrange(max_deg + 1) for _ in range(ring.nvars))
        else:
            cuts = sorted(rng.randrange(homogeneous_degree + 1) for _ in range(ring.nvars - 1))
            bounds = [0] + cuts + [homogeneous_degree]
            exps = tuple(bounds[i + 1] - bounds[i] for i in range(ring.nvars))
        terms[exps] = rng.randrange(1, ring.p)
    return Polynomial.from_terms(ring, terms.items())


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines):
        terminalreporter.write_line(line)
    passed = sum(" PASS " in ln for ln in lines)
    terminalreporter.write_line(f"{passed}/{len(lines)} criteria passed")
