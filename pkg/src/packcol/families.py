"""Deterministic constructors for the cubic graph families and auxiliary graphs.

Canonical vertex numbering:
  * circular_ladder(n): u_0..u_{n-1} then v_0..v_{n-1}
  * h_graph(r): u-row, then v-row, then w-row (each 0..2r-1)
  * gen_h_graph(l, r): level-major, level 0 (a full cycle) first
  * graph_x(): u_0..u_8 then v_0..v_8
Labels record the role and indices so certificates and subgraph maps stay
readable.
"""

from __future__ import annotations

from .graphs import Graph, build_graph

__all__ = [
    "path",
    "cycle",
    "cartesian_product",
    "circular_ladder",
    "corona",
    "h_graph",
    "gen_h_graph",
    "graph_x",
    "window",
]


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)]
    return build_graph(n, edges, labels=tuple(range(n)), family_tag=f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return build_graph(n, edges, labels=tuple(range(n)), family_tag=f"C{n}")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: (u,u') ~ (v,v') iff u=v and u'v' in E(h), or u'=v' and uv in E(g).

    Vertex (i, j) gets id i*|V(h)| + j; labels are the coordinate pairs.
    """
    nh = h.n
    edges = []
    for a, b in g.edges():
        for j in range(nh):
            edges.append((a * nh + j, b * nh + j))
    for c, d in h.edges():
        for i in range(g.n):
            edges.append((i * nh + c, i * nh + d))
    glab = g.labels if g.labels is not None else tuple(range(g.n))
    hlab = h.labels if h.labels is not None else tuple(range(nh))
    labels = tuple((glab[i], hlab[j]) for i in range(g.n) for j in range(nh))
    tag = None
    if g.family_tag and h.family_tag:
        tag = f"product({g.family_tag},{h.family_tag})"
    return build_graph(g.n * nh, edges, labels=labels, family_tag=tag)


def circular_ladder(n: int) -> Graph:
    """CL_n: two n-cycles u and v joined by the rungs u_i v_i. 2n vertices, 3n edges."""
    if n < 3:
        raise ValueError(f"circular ladder needs n >= 3, got {n}")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges.append((i, j))            # u-cycle
        edges.append((n + i, n + j))    # v-cycle
        edges.append((i, n + i))        # rung
    labels = tuple(("u", i) for i in range(n)) + tuple(("v", i) for i in range(n))
    return build_graph(2 * n, edges, labels=labels, family_tag=f"CL({n})")


def corona(g: Graph) -> Graph:
    """g with one pendant neighbour added to every vertex; pendant of i gets id n+i."""
    n = g.n
    edges = list(g.edges())
    edges.extend((i, n + i) for i in range(n))
    labels = tuple(("base", i) for i in range(n)) + tuple(
        ("pendant", i) for i in range(n)
    )
    tag = f"corona({g.family_tag})" if g.family_tag else "corona"
    return build_graph(2 * n, edges, labels=labels, family_tag=tag)


def h_graph(r: int) -> Graph:
    """H(r): top and bottom 2r-cycles (u, w) joined through a middle row v.

    Every column has the vertical edges u_i v_i and v_i w_i; the middle row
    carries rungs v_{2i} v_{2i+1} only. 6r vertices, 9r edges, 3-regular.
    """
    if r < 2:
        raise ValueError(f"H-graph needs r >= 2, got {r}")
    width = 2 * r
    u0, v0, w0 = 0, width, 2 * width
    edges = []
    for i in range(width):
        j = (i + 1) % width
        edges.append((u0 + i, u0 + j))
        edges.append((w0 + i, w0 + j))
        edges.append((u0 + i, v0 + i))
        edges.append((v0 + i, w0 + i))
    for i in range(r):
        edges.append((v0 + 2 * i, v0 + 2 * i + 1))
    labels = (
        tuple(("u", i) for i in range(width))
        + tuple(("v", i) for i in range(width))
        + tuple(("w", i) for i in range(width))
    )
    return build_graph(6 * r, edges, labels=labels, family_tag=f"H({r})")


def gen_h_graph(l: int, r: int) -> Graph:
    """H^l(r): levels 0..l+1 of width 2r; full cycles at levels 0 and l+1,
    rungs u^i_{2j} u^i_{2j+1} on every interior level, vertical edges between
    consecutive levels. 2r(l+2) vertices, 3r(l+2) edges, 3-regular; H^1(r) = H(r).
    """
    if l < 1:
        raise ValueError(f"generalised H-graph needs l >= 1, got {l}")
    if r < 2:
        raise ValueError(f"generalised H-graph needs r >= 2, got {r}")
    width = 2 * r
    levels = l + 2

    def vid(level: int, col: int) -> int:
        return level * width + col

    edges = []
    for level in (0, levels - 1):
        for j in range(width):
            edges.append((vid(level, j), vid(level, (j + 1) % width)))
    for level in range(1, levels - 1):
        for j in range(r):
            edges.append((vid(level, 2 * j), vid(level, 2 * j + 1)))
    for level in range(levels - 1):
        for j in range(width):
            edges.append((vid(level, j), vid(level + 1, j)))
    labels = tuple(
        ("u", level, j) for level in range(levels) for j in range(width)
    )
    return build_graph(
        width * levels, edges, labels=labels, family_tag=f"H^{l}({r})"
    )


def graph_x() -> Graph:
    """The 18-vertex auxiliary graph X: two 9-vertex paths joined by rungs at columns 2..6."""
    edges = []
    for i in range(8):
        edges.append((i, i + 1))          # u-path
        edges.append((9 + i, 9 + i + 1))  # v-path
    for i in (2, 3, 4, 5, 6):
        edges.append((i, 9 + i))
    labels = tuple(("u", i) for i in range(9)) + tuple(("v", i) for i in range(9))
    return build_graph(18, edges, labels=labels, family_tag="X")


def window(l: int, r: int, cols) -> Graph:
    """Contiguous-column slice of gen_h_graph(l, r), never wrapping the cycle.

    Keeps all l+2 levels over the given columns; horizontal edges at levels 0
    and l+1 only between consecutive kept columns, interior rungs only when
    both rung columns are kept. With all columns this is gen_h_graph minus the
    two wrap edges.
    """
    if l < 1 or r < 2:
        raise ValueError(f"window needs l >= 1 and r >= 2, got ({l},{r})")
    kept = sorted(set(cols))
    width = 2 * r
    if not kept:
        raise ValueError("window needs at least one column")
    if kept[0] < 0 or kept[-1] >= width:
        raise ValueError(f"columns must lie in 0..{width - 1}, got {kept}")
    if kept != list(range(kept[0], kept[-1] + 1)):
        raise ValueError(f"columns must be contiguous, got {kept}")
    ncols = len(kept)
    levels = l + 2
    col_pos = {c: t for t, c in enumerate(kept)}

    def vid(level: int, col: int) -> int:
        return level * ncols + col_pos[col]

    edges = []
    for level in (0, levels - 1):
        for t in range(ncols - 1):
            edges.append((vid(level, kept[t]), vid(level, kept[t + 1])))
    for level in range(1, levels - 1):
        for j in range(r):
            a, b = 2 * j, 2 * j + 1
            if a in col_pos and b in col_pos:
                edges.append((vid(level, a), vid(level, b)))
    for level in range(levels - 1):
        for c in kept:
            edges.append((vid(level, c), vid(level + 1, c)))
    labels = tuple(
        ("u", level, c) for level in range(levels) for c in kept
    )
    tag = f"window({l},{r},{kept[0]}..{kept[-1]})"
    return build_graph(ncols * levels, edges, labels=labels, family_tag=tag)
