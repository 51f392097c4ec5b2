import random

import pytest

from necklace.quiver import (ExtData, canonical_potential, phi_from_ext, shifted_alphabet,
                             single_vertex_quiver, validate_quiver)


@pytest.fixture(scope="session")
def sa1():
    return shifted_alphabet(single_vertex_quiver(1))


@pytest.fixture(scope="session")
def A1(sa1):
    return sa1.alphabet


@pytest.fixture(scope="session")
def W1(sa1):
    return canonical_potential(sa1)


@pytest.fixture(scope="session")
def sa2():
    return shifted_alphabet(single_vertex_quiver(2))


def random_symmetric_quiver(rng: random.Random, max_vertices: int = 4, max_arrows: int = 8):
    """A valid symmetric quiver with even loop counts, built pair by pair."""
    nv = rng.randint(1, max_vertices)
    m = [[0] * nv for _ in range(nv)]
    budget = rng.randint(0, max_arrows // 2)
    for _ in range(budget):
        i, j = rng.randrange(nv), rng.randrange(nv)
        if i == j:
            m[i][i] += 2
        else:
            m[i][j] += 1
            m[j][i] += 1
    q = phi_from_ext(ExtData.from_matrix(m))
    # shuffle declaration order and pair orientation to exercise validation
    raw = q.to_json()
    rng.shuffle(raw["arrows"])
    raw["involution"] = [p if rng.random() < 0.5 else p[::-1] for p in raw["involution"]]
    return validate_quiver(raw)


# acceptance criterion number -> result line, filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
