import random

import pytest

from polyevac.configspace import Configuration


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_config(n: int, k: int, rng: random.Random) -> Configuration:
    rho = list(range(1, n + 1))
    rng.shuffle(rho)
    s = [rng.randrange(k + 1) for _ in range(n)]
    if all(a == 0 for a in s):
        s[rng.randrange(n)] = 1
    return Configuration(n, k, tuple(rho), tuple(s))
