import numpy as np
import pytest

from mergecode import canonicalize


@pytest.fixture
def four_symbol_source():
    """Binary source (8/15, 4/15, 2/15, 1/15): breakpoints at 1/16, 1/4, 17/32."""
    return canonicalize([8 / 15, 4 / 15, 2 / 15, 1 / 15], 2)


@pytest.fixture
def eight_symbol_source():
    """Binary source with counts (9,5,4,2,2,2,1,1)/26, given smallest-first."""
    return canonicalize(
        [1 / 26, 1 / 26, 2 / 26, 2 / 26, 2 / 26, 4 / 26, 5 / 26, 9 / 26], 2
    )


def random_source(rng: np.random.Generator, n: int, radix: int = 2):
    """Strictly positive random distribution on n symbols."""
    return canonicalize(rng.dirichlet(np.ones(n)), radix)
