import pytest

from chainfft.combinat import ChainKind
from chainfft.reps import DEFAULT_Q, adapted_rep


@pytest.fixture(scope="session")
def rep_cache():
    """Session-shared adapted representations (the Brauer builds are costly)."""

    def get(kind: ChainKind, n: int, q=DEFAULT_Q):
        return adapted_rep(kind, n, q)

    return get
