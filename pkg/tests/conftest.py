import random

import pytest
from hypothesis import HealthCheck, settings

from terncwc.core import Codeword, TernaryCode

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def random_codeword(rng: random.Random, n: int, w: int) -> Codeword:
    """Uniform-ish weight-w word: pick the type 1^a 2^b, then the support."""
    choices = [(w - 2 * b, b) for b in range(w // 2 + 1) if (w - 2 * b) + b <= n]
    a, b = rng.choice(choices)
    supp = rng.sample(range(n), a + b)
    return Codeword.from_parts(n, ones=supp[:a], twos=supp[a:])


def random_code(rng: random.Random, n: int, w: int, size: int) -> TernaryCode:
    return TernaryCode(n, tuple(random_codeword(rng, n, w) for _ in range(size)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0DE)
