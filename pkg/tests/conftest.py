import pytest

from distpareto.verify import connected_graph_classes


@pytest.fixture(scope="session")
def classes_by_order():
    """One representative per isomorphism class of connected graphs, n = 2..6."""
    return {n: connected_graph_classes(n) for n in range(2, 7)}
