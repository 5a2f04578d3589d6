"""Family constructors: sizes, regularity, labels, and documented subgraph maps."""

import pytest

from packcol import (
    INFINITY,
    all_pairs_distances,
    cartesian_product,
    chi_rho,
    circular_ladder,
    corona,
    cycle,
    diameter,
    gen_h_graph,
    graph_x,
    h_graph,
    path,
    window,
)


def is_regular(g, d):
    return all(g.degree(v) == d for v in range(g.n))


def test_path_and_cycle_examples():
    p1 = path(1)
    assert (p1.n, p1.m) == (1, 0)
    k3 = cycle(3)
    assert k3.adjacency == ((1, 2), (0, 2), (0, 1))
    c6 = cycle(6)
    assert c6.m == 6 and is_regular(c6, 2)
    with pytest.raises(ValueError):
        path(0)
    with pytest.raises(ValueError):
        cycle(2)


def test_product_of_two_edges_is_a_four_cycle():
    g = cartesian_product(path(2), path(2))
    assert (g.n, g.m) == (4, 4)
    assert is_regular(g, 2)
    assert diameter(g) == 2


def test_product_ladder_value():
    g = cartesian_product(path(2), path(3))
    assert (g.n, g.m) == (6, 7)
    assert chi_rho(g).value == 4


def test_product_of_cycle_and_edge_is_the_circular_ladder():
    prod = cartesian_product(cycle(7), path(2))
    cl = circular_ladder(7)
    # product id for (i, j) is 2i+j; ladder ids are u_i = i, v_i = 7+i
    relabel = {}
    for i in range(7):
        relabel[2 * i] = i
        relabel[2 * i + 1] = 7 + i
    mapped = {tuple(sorted((relabel[u], relabel[v]))) for u, v in prod.edges()}
    assert mapped == set(cl.edges())


def test_circular_ladder_shape():
    g = circular_ladder(7)
    assert (g.n, g.m) == (14, 21)
    assert is_regular(g, 3)
    assert g.labels[0] == ("u", 0)
    assert g.labels[7] == ("v", 0)
    dm = all_pairs_distances(g)
    assert dm.d(0, 10) == 4  # u_0 to v_3
    with pytest.raises(ValueError):
        circular_ladder(2)


@pytest.mark.parametrize("n", range(3, 11))
def test_corona_of_cycle_sits_inside_the_ladder(n):
    # pendant i has id n+i, landing exactly on the ladder's v_i rung partner
    cor = corona(cycle(n))
    assert set(cor.edges()) <= set(circular_ladder(n).edges())


def test_corona_shape():
    g = corona(cycle(3))
    assert (g.n, g.m) == (6, 6)
    assert g.adjacency[3] == (0,)
    assert g.labels[0] == ("base", 0)
    assert g.labels[3] == ("pendant", 0)


def test_corona_values():
    assert chi_rho(corona(cycle(4))).value == 4
    assert chi_rho(corona(cycle(5))).value == 5


def test_h_graph_shape():
    g = h_graph(4)
    assert (g.n, g.m) == (24, 36)
    assert is_regular(g, 3)
    # middle row carries rungs only between column pairs (2i, 2i+1)
    width = 8
    assert width + 1 in g.adjacency[width + 0]
    assert width + 2 not in g.adjacency[width + 1]
    with pytest.raises(ValueError):
        h_graph(1)


def test_h_graph_even_value():
    assert chi_rho(h_graph(2)).value == 5


@pytest.mark.parametrize("r", [2, 3])
def test_corona_of_c6_sits_inside_the_h_graph(r):
    # the 6-cycle u_1 v_1 w_1 w_2 v_2 u_2 plus one private neighbour each
    width = 2 * r
    u = lambda i: i
    v = lambda i: width + i
    w = lambda i: 2 * width + i
    base = [u(1), v(1), w(1), w(2), v(2), u(2)]
    pendants = [u(0), v(0), w(0), w(3), v(3), u(3)]
    cor = corona(cycle(6))
    mapping = {i: base[i] for i in range(6)}
    mapping.update({6 + i: pendants[i] for i in range(6)})
    h = set(h_graph(r).edges())
    for a, b in cor.edges():
        assert tuple(sorted((mapping[a], mapping[b]))) in h


def test_gen_h_graph_shape():
    g = gen_h_graph(3, 4)
    assert g.n == 40
    assert is_regular(g, 3)
    assert g.labels[0] == ("u", 0, 0)
    with pytest.raises(ValueError):
        gen_h_graph(0, 4)
    with pytest.raises(ValueError):
        gen_h_graph(3, 1)


@pytest.mark.parametrize("r", [2, 3])
def test_one_level_gen_h_graph_is_the_h_graph(r):
    # canonical numberings coincide level-for-row, so adjacency is identical
    assert gen_h_graph(1, r).adjacency == h_graph(r).adjacency


def test_two_level_gen_h_graph_order():
    assert gen_h_graph(2, 2).n == 16


def test_graph_x_shape():
    g = graph_x()
    assert (g.n, g.m) == (18, 21)
    assert g.degree(0) == 1
    assert g.degree(1) == 2
    assert g.degree(2) == 3
    assert g.degree(9) == 1
    rungs = {(i, 9 + i) for i in (2, 3, 4, 5, 6)}
    present = set(g.edges())
    assert rungs <= present
    assert (0, 9) not in present and (8, 17) not in present


@pytest.mark.parametrize("n", [9, 10, 11])
def test_graph_x_sits_inside_large_ladders(n):
    g = graph_x()
    ladder = set(circular_ladder(n).edges())
    for a, b in g.edges():
        u = a if a < 9 else n + (a - 9)
        v = b if b < 9 else n + (b - 9)
        assert tuple(sorted((u, v))) in ladder


def test_window_shapes():
    assert window(2, 4, range(6)).n == 24
    assert window(5, 5, range(6)).n == 42


def test_window_with_all_columns_misses_only_the_wrap_edges():
    g = gen_h_graph(2, 3)
    w = window(2, 3, range(6))
    assert w.n == g.n
    assert w.m == g.m - 2
    assert set(w.edges()) < set(g.edges())


def test_window_rejects_bad_columns():
    with pytest.raises(ValueError):
        window(2, 3, [])
    with pytest.raises(ValueError):
        window(2, 3, [4, 5, 6])
    with pytest.raises(ValueError):
        window(2, 3, [0, 2])
    with pytest.raises(ValueError):
        window(0, 3, [0])


def test_constructors_are_deterministic():
    for a, b in [
        (circular_ladder(7), circular_ladder(7)),
        (gen_h_graph(3, 4), gen_h_graph(3, 4)),
        (window(2, 4, range(6)), window(2, 4, range(6))),
    ]:
        assert a.adjacency == b.adjacency
        assert a.labels == b.labels


@pytest.mark.parametrize("n", range(3, 13))
def test_ladder_sizes_and_regularity(n):
    g = circular_ladder(n)
    assert (g.n, g.m) == (2 * n, 3 * n)
    assert is_regular(g, 3)
    assert diameter(g) != INFINITY


@pytest.mark.parametrize("r", range(2, 9))
def test_h_graph_sizes_and_regularity(r):
    g = h_graph(r)
    assert (g.n, g.m) == (6 * r, 9 * r)
    assert is_regular(g, 3)
    assert diameter(g) != INFINITY


@pytest.mark.parametrize("l", range(1, 7))
@pytest.mark.parametrize("r", range(2, 7))
def test_gen_h_graph_sizes_and_regularity(l, r):
    g = gen_h_graph(l, r)
    assert (g.n, g.m) == (2 * r * (l + 2), 3 * r * (l + 2))
    assert is_regular(g, 3)
    assert diameter(g) != INFINITY


def test_subgraph_values_never_exceed_supergraph_values():
    # each documented embedding pairs with the solver's exact values
    for n in range(3, 7):
        assert chi_rho(corona(cycle(n))).value <= chi_rho(circular_ladder(n)).value
    assert chi_rho(corona(cycle(6))).value <= chi_rho(h_graph(2)).value
    x_value = chi_rho(graph_x()).value
    assert x_value == 5
    assert x_value <= chi_rho(circular_ladder(9)).value
