import random

import pytest

from majorant_lab.polys import IntPoly, build_factored_system

CORPUS_SEED = 0xC0FFEE


def random_primitive_polys(count: int, max_degree: int = 4,
                           seed: int = CORPUS_SEED) -> list[IntPoly]:
    """Deterministic corpus of primitive polynomials, degrees 1..max_degree."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(1, max_degree)
        coeffs = [rng.randint(-9, 9) for _ in range(d + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = rng.choice([1, 2, 3, -1])
        poly = IntPoly.from_coeffs(coeffs)
        if poly.degree < 1:
            continue
        out.append(poly.primitive_part())
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_primitive_polys(200)


@pytest.fixture(scope="session")
def small_corpus():
    return random_primitive_polys(40, seed=CORPUS_SEED + 1)


@pytest.fixture(scope="session")
def pair_system():
    return build_factored_system(["0,1", "2,1"])


@pytest.fixture(scope="session")
def quad_system():
    return build_factored_system(["1,0,1"])


@pytest.fixture(scope="session")
def triple_system():
    return build_factored_system(["0,1", "1,1", "3,1"])
