"""Exact maximum i-packing sizes (rho_i) and the counting lower bound on the
packing chromatic number.

An i-packing is a set of vertices pairwise at distance >= i+1, i.e. an
independent set of the i-th power graph. rho_i is computed exactly by
branch-and-bound over bitmask vertex sets.

Note: the counting bound implemented here (smallest k with
rho_1 + ... + rho_k >= |V|) does not reproduce the refined hand arguments
that mix colour budgets ("if colour 1 is used six times, colour 2 fits at
most twice"); exact lower bounds of that strength come from exhaustive UNSAT
search in the solver module instead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .graphs import Graph, power_graph

__all__ = [
    "PackingOutcome",
    "RhoTable",
    "PackingTimeout",
    "max_i_packing",
    "rho_table",
    "prop1_lower_bound",
]


class PackingTimeout(Exception):
    """Raised when a bound computation cannot finish inside its budget."""


@dataclass(frozen=True)
class PackingOutcome:
    """Result of one rho_i computation; proven=False means the budget ran out
    and size is only the best packing found (a lower bound on rho_i)."""

    i: int
    size: int
    witness: tuple[int, ...]
    proven: bool
    nodes: int
    millis: int


@dataclass(frozen=True)
class RhoTable:
    graph_tag: str | None
    k: int
    rho: tuple[int, ...]
    witnesses: tuple[tuple[int, ...], ...]
    proven: tuple[bool, ...]

    def all_proven(self) -> bool:
        return all(self.proven)


def _greedy_independent_set(adj: list[int], n: int) -> list[int]:
    """Repeatedly take a minimum-degree vertex; fast initial bound."""
    alive = (1 << n) - 1
    chosen = []
    while alive:
        best_v, best_deg = -1, n + 1
        m = alive
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            deg = (adj[v] & alive).bit_count()
            if deg < best_deg:
                best_v, best_deg = v, deg
        chosen.append(best_v)
        alive &= ~(adj[best_v] | (1 << best_v))
    return chosen


def _clique_cover_bound(adj: list[int], cand: int) -> int:
    """Greedy partition of cand into cliques; an independent set meets each
    clique at most once, so the clique count bounds the MIS size."""
    cliques: list[int] = []
    m = cand
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        av = adj[v]
        for idx, cmask in enumerate(cliques):
            if cmask & ~av == 0:
                cliques[idx] = cmask | (1 << v)
                break
        else:
            cliques.append(1 << v)
    return len(cliques)


def max_i_packing(g: Graph, i: int, budget=None) -> PackingOutcome:
    """Exact rho_i(g) with a witness packing.

    budget is a solver.Budget (or None for unlimited). On exhaustion the best
    packing found so far is returned with proven=False.
    """
    if i < 1:
        raise ValueError(f"packing index must be >= 1, got {i}")
    t0 = time.monotonic()
    pg = power_graph(g, i)
    n = pg.n
    adj = [0] * n
    for u, v in pg.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    max_nodes = budget.max_nodes if budget is not None else None
    deadline = None
    if budget is not None and budget.max_millis is not None:
        deadline = t0 + budget.max_millis / 1000.0

    best = _greedy_independent_set(adj, n)
    best_size = len(best)
    best_mask = 0
    for v in best:
        best_mask |= 1 << v

    nodes = 0
    timed_out = False

    def search(cand: int, cur_size: int, cur_mask: int) -> None:
        nonlocal best_size, best_mask, nodes, timed_out
        if timed_out:
            return
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            timed_out = True
            return
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            timed_out = True
            return
        if cand == 0:
            if cur_size > best_size:
                best_size, best_mask = cur_size, cur_mask
            return
        if cur_size + _clique_cover_bound(adj, cand) <= best_size:
            return
        # branch on the highest-degree candidate, lowest id on ties
        pick, pick_deg = -1, -1
        m = cand
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            deg = (adj[v] & cand).bit_count()
            if deg > pick_deg:
                pick, pick_deg = v, deg
        bit = 1 << pick
        search(cand & ~(adj[pick] | bit), cur_size + 1, cur_mask | bit)
        search(cand & ~bit, cur_size, cur_mask)

    search((1 << n) - 1, 0, 0)
    millis = int(round((time.monotonic() - t0) * 1000))
    witness = tuple(v for v in range(n) if (best_mask >> v) & 1)
    return PackingOutcome(
        i=i,
        size=best_size,
        witness=witness,
        proven=not timed_out,
        nodes=nodes,
        millis=millis,
    )


def rho_table(g: Graph, k: int, budget=None) -> RhoTable:
    """rho_1..rho_k for g; per-entry budget, TIMEOUT flagged per entry."""
    if k < 1:
        raise ValueError(f"rho table needs k >= 1, got {k}")
    outs = [max_i_packing(g, i, budget) for i in range(1, k + 1)]
    return RhoTable(
        graph_tag=g.family_tag,
        k=k,
        rho=tuple(o.size for o in outs),
        witnesses=tuple(o.witness for o in outs),
        proven=tuple(o.proven for o in outs),
    )


def prop1_lower_bound(g: Graph, budget=None) -> int:
    """Smallest k with rho_1 + ... + rho_k >= |V(g)|; a lower bound on the
    packing chromatic number. Raises PackingTimeout if a needed rho_i cannot
    be proven within budget (an unproven value could overstate the bound).
    """
    n = g.n
    total = 0
    i = 0
    while total < n:
        i += 1
        out = max_i_packing(g, i, budget)
        if not out.proven:
            raise PackingTimeout(f"rho_{i} not proven within budget")
        total += out.size
        if out.size == 1 and total < n:
            # all later rho values are 1 as well; finish arithmetically
            return i + (n - total)
    return i
