import random

import pytest

from matchless import Family


def random_family(rng: random.Random, n: int, max_members: int) -> Family:
    count = rng.randint(0, max_members)
    masks = {rng.randrange(1 << n) for _ in range(count)}
    return Family.of(n, masks)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
