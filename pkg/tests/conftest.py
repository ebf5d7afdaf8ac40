import pytest

from cayley_chroma.oracle import SandwichConfig

# bounds cheap enough to run on hundreds of matrices
SMALL = SandwichConfig(radii=(1, 2, 3), moduli=tuple(range(2, 9)), budget_nodes=20_000, ball_cap=3000, quotient_cap=5000)


@pytest.fixture
def small_config():
    return SMALL
