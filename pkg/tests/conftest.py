import pytest

from keeptree.families import (
    complete_bipartite,
    cycle,
    grid,
    hypercube,
    path_graph,
    petersen,
    star,
)
from keeptree.graphs import Graph, Tree


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture
def k44():
    return complete_bipartite(4, 4)


@pytest.fixture
def k4():
    return Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def star6():
    # K_{1,5}: center 0, five leaves
    return star(6)


@pytest.fixture
def pete():
    return petersen()


@pytest.fixture
def q3():
    return hypercube(3)


@pytest.fixture
def grid33():
    return grid(3, 3)


@pytest.fixture
def two_triangles():
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def path_tree(m: int) -> Tree:
    return Tree(path_graph(m))


def star_tree(m: int) -> Tree:
    return Tree(star(m))


@pytest.fixture
def tree_k2():
    return path_tree(2)


@pytest.fixture
def tree_p3():
    return path_tree(3)


@pytest.fixture
def tree_p4():
    return path_tree(4)


@pytest.fixture
def tree_single():
    return Tree(Graph(1))
