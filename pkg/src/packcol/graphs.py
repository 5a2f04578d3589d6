"""Core graph machinery: adjacency, BFS distances, power graphs, packing-colouring validity.

Vertices are always 0..n-1. Distances are exact unweighted shortest-path
lengths; INFINITY marks unreachable pairs and compares greater than every
colour, so colour reuse across components is always allowed.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from math import inf as INFINITY

__all__ = [
    "INFINITY",
    "Graph",
    "DistanceMatrix",
    "Colouring",
    "ValidityReport",
    "build_graph",
    "all_pairs_distances",
    "power_graph",
    "induced_subgraph",
    "is_packing_colouring",
    "diameter",
    "parse_graph_text",
    "write_graph_text",
    "graph_content_hash",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted neighbour tuples.

    labels, when present, is a length-n tuple of structured per-vertex labels
    (family role and indices); family_tag is a short provenance string like
    "CL(7)".
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple | None = None
    family_tag: str | None = None

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, sorted."""
        out = []
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        return out

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def label_of(self, v: int):
        return self.labels[v] if self.labels is not None else None


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs shortest-path distances; rows[u][v] is d(u, v) or INFINITY."""

    n: int
    rows: tuple[tuple[float, ...], ...]

    def d(self, u: int, v: int) -> float:
        return self.rows[u][v]


@dataclass(frozen=True)
class Colouring:
    """Total or partial colour assignment; 0 means unassigned, colours are 1..k."""

    colours: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"colour budget k={self.k} must be nonnegative")
        for v, c in enumerate(self.colours):
            if not 0 <= c <= self.k:
                raise ValueError(f"vertex {v} has colour {c} outside 0..{self.k}")

    @property
    def n(self) -> int:
        return len(self.colours)

    def colour_class(self, i: int) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colours) if c == i)

    def max_colour_used(self) -> int:
        return max(self.colours, default=0)

    def is_total(self) -> bool:
        return all(c != 0 for c in self.colours)


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violation: tuple[int, int, int] | None = None


def build_graph(
    n: int,
    edges,
    labels: tuple | None = None,
    family_tag: str | None = None,
) -> Graph:
    """Validate and build a Graph from an edge list.

    Raises ValueError on out-of-range ids, self-loops, or duplicate edges
    (in either orientation).
    """
    if n < 1:
        raise ValueError(f"graph needs at least one vertex, got n={n}")
    if labels is not None and len(labels) != n:
        raise ValueError("labels length must equal n")
    seen: set[tuple[int, int]] = set()
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
        nbrs[u].append(v)
        nbrs[v].append(u)
    adjacency = tuple(tuple(sorted(lst)) for lst in nbrs)
    return Graph(n=n, adjacency=adjacency, labels=labels, family_tag=family_tag)


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """BFS from every vertex; unreachable pairs get INFINITY."""
    n = g.n
    adjacency = g.adjacency
    rows = []
    for s in range(n):
        dist: list[int] = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            du1 = dist[u] + 1
            for w in adjacency[u]:
                if dist[w] < 0:
                    dist[w] = du1
                    q.append(w)
        rows.append(tuple(x if x >= 0 else INFINITY for x in dist))
    return DistanceMatrix(n=n, rows=tuple(rows))


def power_graph(g: Graph, i: int) -> Graph:
    """Same vertices; uv is an edge iff 1 <= d_g(u,v) <= i."""
    if i < 1:
        raise ValueError(f"power radius must be >= 1, got {i}")
    dm = all_pairs_distances(g)
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if dm.rows[u][v] <= i
    ]
    tag = f"{g.family_tag}^{i}" if g.family_tag else None
    return build_graph(g.n, edges, labels=g.labels, family_tag=tag)


def induced_subgraph(g: Graph, keep) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by `keep`, relabelled 0..|keep|-1 in sorted old-id order.

    Returns the subgraph and the old-id -> new-id mapping; labels are carried
    through the mapping.
    """
    kept = sorted(set(keep))
    if not kept:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    for v in kept:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph of order {g.n}")
    old_to_new = {old: new for new, old in enumerate(kept)}
    edges = []
    for u in kept:
        for v in g.adjacency[u]:
            if u < v and v in old_to_new:
                edges.append((old_to_new[u], old_to_new[v]))
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[old] for old in kept)
    sub = build_graph(len(kept), edges, labels=labels, family_tag=None)
    return sub, old_to_new


def is_packing_colouring(dm: DistanceMatrix, c: Colouring) -> ValidityReport:
    """Check that same-coloured vertices are far enough apart.

    Two vertices with colour i must lie at distance > i. Unassigned vertices
    (colour 0) are skipped, so partial colourings are checkable. The first
    violation in lowest-(u, v) lexicographic order is reported.
    """
    if c.n != dm.n:
        raise ValueError(f"colouring length {c.n} does not match matrix size {dm.n}")
    colours = c.colours
    rows = dm.rows
    n = dm.n
    for u in range(n):
        cu = colours[u]
        if cu == 0:
            continue
        row = rows[u]
        for v in range(u + 1, n):
            if colours[v] == cu and row[v] <= cu:
                return ValidityReport(valid=False, violation=(u, v, cu))
    return ValidityReport(valid=True)


def diameter(g: Graph):
    """Largest distance between two vertices; INFINITY if g is disconnected."""
    dm = all_pairs_distances(g)
    worst = 0
    for row in dm.rows:
        for x in row:
            if x == INFINITY:
                return INFINITY
            if x > worst:
                worst = x
    return worst


def parse_graph_text(text: str) -> tuple[Graph, tuple[str, ...]]:
    """Parse the graph text format: `c` comments, one `p <n> <m>` header, `e <u> <v>` lines."""
    comments: list[str] = []
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise ValueError(f"line {lineno}: duplicate p header")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            header = (int(parts[1]), int(parts[2]))
        elif parts[0] == "e":
            if header is None:
                raise ValueError(f"line {lineno}: edge before p header")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed edge {line!r}")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: unknown record {line!r}")
    if header is None:
        raise ValueError("missing p header")
    n, m = header
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges, found {len(edges)}")
    return build_graph(n, edges), tuple(comments)


def write_graph_text(g: Graph, comments=()) -> str:
    """Canonical text for a graph: comments, header, then edges sorted (u < v)."""
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p {g.n} {g.m}")
    for u, v in g.edges():
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def graph_content_hash(g: Graph) -> str:
    """SHA-256 over the canonical comment-free text; binds certificates to exact edge lists."""
    return hashlib.sha256(write_graph_text(g).encode("ascii")).hexdigest()
