import random
from itertools import combinations_with_replacement

import pytest

from equichain.grid import Monomial
from equichain.ideals import MonomialIdeal


def random_monomial(rng, c, width, max_deg=4, min_deg=1):
    acc = {}
    for _ in range(rng.randint(min_deg, max_deg)):
        v = (rng.randint(1, c), rng.randint(1, width))
        acc[v] = acc.get(v, 0) + 1
    return Monomial(acc)


def random_ideal(rng, c, width, max_gens=4, max_deg=4):
    return MonomialIdeal(c, width, [random_monomial(rng, c, width, max_deg) for _ in range(rng.randint(1, max_gens))])


def brute_hilbert_prefix(J, D):
    """Count standard monomials of K[X_width]/J degree by degree."""
    variables = [(r, j) for r in range(1, J.c + 1) for j in range(1, J.width + 1)]
    out = []
    for k in range(D + 1):
        count = 0
        for combo in combinations_with_replacement(variables, k):
            acc = {}
            for v in combo:
                acc[v] = acc.get(v, 0) + 1
            if not J.contains(Monomial(acc)):
                count += 1
        out.append(count)
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
