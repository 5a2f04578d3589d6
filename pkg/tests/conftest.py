"""Shared fixtures: the small-graph corpus used by the property suites."""

import pytest

from packcol import (
    build_graph,
    cartesian_product,
    circular_ladder,
    corona,
    cycle,
    h_graph,
    path,
    window,
)


def complete_graph(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def small_corpus():
    """Named graphs with 1..12 vertices, connected and not, for oracle and
    property sweeps."""
    graphs = []
    for n in range(1, 7):
        graphs.append((f"path{n}", path(n)))
    for n in range(3, 13):
        graphs.append((f"cycle{n}", cycle(n)))
    for n in range(3, 7):
        graphs.append((f"cl{n}", circular_ladder(n)))
    graphs.append(("p2xp2", cartesian_product(path(2), path(2))))
    graphs.append(("p2xp3", cartesian_product(path(2), path(3))))
    graphs.append(("p2xp4", cartesian_product(path(2), path(4))))
    graphs.append(("p3xp3", cartesian_product(path(3), path(3))))
    for n in range(3, 7):
        graphs.append((f"corona_c{n}", corona(cycle(n))))
    graphs.append(("h2", h_graph(2)))
    graphs.append(("window_1_2", window(1, 2, range(4))))
    graphs.append(("k4", complete_graph(4)))
    graphs.append(("star5", build_graph(5, [(0, i) for i in range(1, 5)])))
    graphs.append(("two_paths", build_graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])))
    return graphs


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()
