"""Distance matrix, packing validity, power graphs, and the text format."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packcol import (
    INFINITY,
    Colouring,
    all_pairs_distances,
    build_graph,
    circular_ladder,
    cycle,
    diameter,
    graph_content_hash,
    induced_subgraph,
    is_packing_colouring,
    parse_graph_text,
    path,
    power_graph,
    write_graph_text,
)
from conftest import complete_graph


@pytest.mark.parametrize(
    "g, want",
    [
        (cycle(8), 4),
        (path(5), 4),
        (circular_ladder(4), 3),
        (circular_ladder(3), 2),
    ],
    ids=["c8", "p5", "cl4", "cl3"],
)
def test_diameter_examples(g, want):
    assert diameter(g) == want


def test_diameter_disconnected_is_infinite():
    g = build_graph(4, [(0, 1), (2, 3)])
    assert diameter(g) == INFINITY
    dm = all_pairs_distances(g)
    assert dm.d(0, 2) == INFINITY
    assert dm.d(0, 1) == 1


@st.composite
def random_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=10))
    if n == 1:
        return build_graph(1, [])
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return build_graph(n, edges)


def floyd_warshall(g):
    n = g.n
    d = [[0 if i == j else INFINITY for j in range(n)] for i in range(n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for m in range(n):
        for i in range(n):
            via = d[i][m]
            if via == INFINITY:
                continue
            for j in range(n):
                alt = via + d[m][j]
                if alt < d[i][j]:
                    d[i][j] = alt
    return d


@settings(max_examples=150, deadline=None)
@given(random_graphs())
def test_bfs_matches_floyd_warshall(g):
    dm = all_pairs_distances(g)
    ref = floyd_warshall(g)
    for u in range(g.n):
        assert list(dm.rows[u]) == ref[u]


def test_packing_validity_examples():
    dm = all_pairs_distances(cycle(8))
    assert is_packing_colouring(dm, Colouring((1, 2, 1, 3, 1, 2, 1, 4), 4)).valid
    # two 2s at distance 2 break the packing condition
    bad = is_packing_colouring(all_pairs_distances(cycle(4)), Colouring((1, 2, 1, 2), 2))
    assert not bad.valid
    assert bad.violation == (1, 3, 2)


def test_validity_stable_under_larger_budget():
    colours = (1, 2, 1, 3, 1, 2, 1, 4)
    dm = all_pairs_distances(cycle(8))
    for k in range(4, 9):
        assert is_packing_colouring(dm, Colouring(colours, k)).valid


def test_violation_reports_lowest_pair():
    # (0,1), (2,4) and (3,5) all violate; the lexicographically first wins
    dm = all_pairs_distances(cycle(6))
    report = is_packing_colouring(dm, Colouring((1, 1, 2, 3, 2, 3), 3))
    assert report.violation == (0, 1, 1)


def test_partial_colouring_skips_unassigned():
    dm = all_pairs_distances(cycle(6))
    assert is_packing_colouring(dm, Colouring((1, 0, 0, 2, 0, 0), 2)).valid
    assert not is_packing_colouring(dm, Colouring((1, 1, 0, 0, 0, 0), 2)).valid


def test_colouring_rejects_out_of_range_entries():
    with pytest.raises(ValueError):
        Colouring((0, 3), 2)
    with pytest.raises(ValueError):
        Colouring((-1, 1), 2)
    with pytest.raises(ValueError):
        Colouring((1,), -1)


@pytest.mark.parametrize(
    "g",
    [cycle(5), path(6), circular_ladder(3), complete_graph(4)],
    ids=["c5", "p6", "cl3", "k4"],
)
def test_packing_iff_independent_in_power_graph(g):
    dm = all_pairs_distances(g)
    for i in range(1, 5):
        gp = power_graph(g, i)
        pedges = {frozenset(e) for e in gp.edges()}
        for size in range(g.n + 1):
            for subset in itertools.combinations(range(g.n), size):
                is_packing = all(
                    dm.d(u, v) > i for u, v in itertools.combinations(subset, 2)
                )
                independent = all(
                    frozenset((u, v)) not in pedges
                    for u, v in itertools.combinations(subset, 2)
                )
                assert is_packing == independent


def test_power_graph_examples():
    c6 = cycle(6)
    assert power_graph(c6, 1).adjacency == c6.adjacency
    sq = power_graph(c6, 2)
    assert all(sq.degree(v) == 4 for v in range(6))
    with pytest.raises(ValueError):
        power_graph(c6, 0)


def test_induced_subgraph_mapping():
    g = circular_ladder(5)
    sub, old_to_new = induced_subgraph(g, [0, 1, 2, 5, 6, 7])
    assert sub.n == 6
    # kept edges: the path 0-1-2, the rungs 0-5, 1-6, 2-7, the path 5-6-7
    assert sub.m == 7
    assert old_to_new == {0: 0, 1: 1, 2: 2, 5: 3, 6: 4, 7: 5}
    assert sub.labels == (("u", 0), ("u", 1), ("u", 2), ("v", 0), ("v", 1), ("v", 2))
    with pytest.raises(ValueError):
        induced_subgraph(g, [])
    with pytest.raises(ValueError):
        induced_subgraph(g, [99])


def test_build_graph_rejects_malformed_input():
    with pytest.raises(ValueError):
        build_graph(0, [])
    with pytest.raises(ValueError):
        build_graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        build_graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        build_graph(2, [(0, 2)])
    with pytest.raises(ValueError):
        build_graph(2, [], labels=("a",))


def test_text_round_trip_is_bit_exact(corpus):
    for _name, g in corpus:
        text = write_graph_text(g, comments=("made for the round trip",))
        g2, comments = parse_graph_text(text)
        assert g2.adjacency == g.adjacency
        assert comments == ("made for the round trip",)
        assert write_graph_text(g2, comments) == text


def test_parse_rejects_malformed_text():
    with pytest.raises(ValueError, match="missing p header"):
        parse_graph_text("c only a comment\n")
    with pytest.raises(ValueError, match="edge before p header"):
        parse_graph_text("c hi\ne 0 1\n")
    with pytest.raises(ValueError, match="duplicate p header"):
        parse_graph_text("p 2 1\np 2 1\ne 0 1\n")
    with pytest.raises(ValueError, match="declares 2 edges"):
        parse_graph_text("p 3 2\ne 0 1\n")
    with pytest.raises(ValueError, match="unknown record"):
        parse_graph_text("p 2 1\nq 0 1\n")
    with pytest.raises(ValueError, match="malformed"):
        parse_graph_text("p 2\n")


def test_content_hash_binds_edges_only():
    a = circular_ladder(3)
    b = build_graph(a.n, a.edges())
    assert graph_content_hash(a) == graph_content_hash(b)
    assert graph_content_hash(a) != graph_content_hash(circular_ladder(4))
