import pytest

from surpkit.datasets import toy_graph, toy_truth
from surpkit.exhaustive import best_partitions, best_surprise_partitions
from surpkit.metrics import modularity


@pytest.fixture(scope="session")
def toy():
    return toy_graph()


@pytest.fixture(scope="session")
def truth():
    return toy_truth()


@pytest.fixture(scope="session")
def toy_surprise_oracle(toy):
    """Exhaustive surprise maximum of the toy graph: (value, maximizers)."""
    return best_surprise_partitions(toy)


@pytest.fixture(scope="session")
def toy_modularity_oracle(toy):
    """Exhaustive modularity maximum of the toy graph: (value, maximizers)."""
    return best_partitions(toy, modularity)
