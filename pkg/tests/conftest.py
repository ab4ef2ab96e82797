import numpy as np
import pytest

from misalign_consensus import new_undirected

# Five-agent topology used throughout: agent 1 connected to everyone,
# plus edges 2-3, 3-5, 4-5 (1-indexed), written 0-indexed here.
FIVE_AGENT_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 4), (3, 4)]


@pytest.fixture
def path2():
    return new_undirected(2, [(0, 1)])


@pytest.fixture
def k3():
    return new_undirected(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def five_agents():
    return new_undirected(5, FIVE_AGENT_EDGES)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
