"""Exact packing k-colourability decision with constraint injection.

The search is a depth-first assignment over a static vertex order (decreasing
eccentricity, then decreasing degree, then vertex id), trying colours in
ascending order. Colour c is admissible at v iff no already-coloured vertex w
has the same colour with d(v,w) <= c; this is maintained as one "blocked"
vertex bitmask per colour, updated in O(1) from precomputed distance balls.
After every placement a dead-end sweep prunes branches in which some
uncoloured vertex has no admissible colour left — that removes only
extension-free subtrees, so exhaustiveness is preserved. UNSAT is reported
only after full exhaustion; running out of budget is a distinct TIMEOUT.

Node counts are the number of vertex placements attempted and are
reproducible bit-for-bit for identical inputs in single-threaded mode.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graphs import (
    Colouring,
    Graph,
    all_pairs_distances,
    is_packing_colouring,
)
from .packings import PackingTimeout, prop1_lower_bound

__all__ = [
    "SAT",
    "UNSAT",
    "TIMEOUT",
    "NONE",
    "Budget",
    "ConstraintSet",
    "SolveOutcome",
    "ChiRhoOutcome",
    "decide",
    "chi_rho",
    "brute_force_decide",
    "find_colouring_violating",
    "default_thread_count",
]

SAT = "SAT"
UNSAT = "UNSAT"
TIMEOUT = "TIMEOUT"
NONE = "NONE"

THREADS_ENV_VAR = "PACKCOL_THREADS"


def default_thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(value, 1)


@dataclass(frozen=True)
class Budget:
    """Search caps; None means unlimited. Both unlimited is legal."""

    max_nodes: int | None = None
    max_millis: int | None = None

    def as_dict(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_millis": self.max_millis}


@dataclass(frozen=True)
class ConstraintSet:
    """Constraints injected into the search.

    fixed: vertex -> colour preassignments.
    forbidden: vertex -> set of colours that vertex must not take.
    edge_require_one: edges on which at least one endpoint must get colour 1.
    """

    fixed: tuple[tuple[int, int], ...] = ()
    forbidden: tuple[tuple[int, tuple[int, ...]], ...] = ()
    edge_require_one: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def make(fixed=None, forbidden=None, edge_require_one=None) -> "ConstraintSet":
        fx = tuple(sorted((fixed or {}).items()))
        fb = tuple(
            sorted((v, tuple(sorted(set(cs)))) for v, cs in (forbidden or {}).items())
        )
        er = tuple(
            sorted(tuple(sorted(e)) for e in (edge_require_one or ()))
        )
        return ConstraintSet(fixed=fx, forbidden=fb, edge_require_one=er)

    def is_empty(self) -> bool:
        return not (self.fixed or self.forbidden or self.edge_require_one)

    def validate(self, g: Graph, k: int) -> None:
        forb = dict(self.forbidden)
        for v, c in self.fixed:
            if not 0 <= v < g.n:
                raise ValueError(f"fixed vertex {v} out of range")
            if not 1 <= c <= k:
                raise ValueError(f"fixed colour {c} at vertex {v} outside 1..{k}")
            if c in forb.get(v, ()):
                raise ValueError(f"vertex {v}: colour {c} both fixed and forbidden")
        for v, cs in self.forbidden:
            if not 0 <= v < g.n:
                raise ValueError(f"forbidden vertex {v} out of range")
            for c in cs:
                if not 1 <= c <= k:
                    raise ValueError(
                        f"forbidden colour {c} at vertex {v} outside 1..{k}"
                    )
        if self.edge_require_one:
            edge_set = {tuple(sorted(e)) for e in _graph_edges(g)}
            for e in self.edge_require_one:
                if tuple(sorted(e)) not in edge_set:
                    raise ValueError(f"edge_require_one edge {e} not in graph")

    def check(self, c: Colouring) -> bool:
        """True iff the (total) colouring satisfies every constraint."""
        cols = c.colours
        for v, col in self.fixed:
            if cols[v] != col:
                return False
        for v, cs in self.forbidden:
            if cols[v] in cs:
                return False
        for u, v in self.edge_require_one:
            if cols[u] != 1 and cols[v] != 1:
                return False
        return True


def _graph_edges(g: Graph):
    for u, nbrs in enumerate(g.adjacency):
        for v in nbrs:
            if u < v:
                yield (u, v)


EMPTY_CS = ConstraintSet()


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    witness: Colouring | None
    nodes: int
    millis: int
    budget_used: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ChiRhoOutcome:
    """chi_rho result: value with a SAT certificate at k=value and an
    exhaustive UNSAT record at k=value-1 (None only when value == 1).
    On TIMEOUT, value is None and bracket holds the proven [lo, hi] range
    (hi is None when no SAT was found)."""

    status: str
    value: int | None
    sat: SolveOutcome | None
    unsat: SolveOutcome | None
    lower_bound_start: int
    bracket: tuple[int, int | None] | None
    nodes: int
    millis: int


def _static_order(g: Graph, dm_rows, mode: str) -> list[int]:
    n = g.n
    if mode == "natural":
        return list(range(n))
    if mode != "eccentricity":
        raise ValueError(f"unknown order mode {mode!r}")
    ecc = []
    for v in range(n):
        ecc.append(max(dm_rows[v]))
    return sorted(range(n), key=lambda v: (-ecc[v], -len(g.adjacency[v]), v))


class _Infeasible(Exception):
    """Constraint preprocessing found a contradiction (UNSAT with 0 nodes)."""


class _Searcher:
    """One prepared search instance over (g, k, cs)."""

    def __init__(self, g: Graph, k: int, cs: ConstraintSet, order: str = "eccentricity",
                 front: tuple[int, ...] = ()):
        if k < 1:
            raise ValueError(f"colour budget must be >= 1, got {k}")
        cs.validate(g, k)
        self.g = g
        self.k = k
        self.cs = cs
        n = g.n
        self.n = n
        dm = all_pairs_distances(g)
        self.dm = dm
        rows = dm.rows
        self.full_mask = (1 << n) - 1

        # balls[c][v]: vertices within distance c of v, excluding v itself
        balls = [None] * (k + 1)
        for c in range(1, k + 1):
            bc = []
            for v in range(n):
                row = rows[v]
                m = 0
                for u in range(n):
                    if u != v and row[u] <= c:
                        m |= 1 << u
                bc.append(m)
            balls[c] = bc
        self.balls = balls

        # allowed[c]: vertices whose constraint domain still contains colour c
        allowed = [0] + [self.full_mask] * k
        fixed = dict(cs.fixed)
        for v, cset in cs.forbidden:
            for c in cset:
                allowed[c] &= ~(1 << v)
        for v, c0 in fixed.items():
            for c in range(1, k + 1):
                if c != c0:
                    allowed[c] &= ~(1 << v)

        req: list[tuple[int, ...]] = [()] * n
        if cs.edge_require_one:
            tmp: list[list[int]] = [[] for _ in range(n)]
            for u, v in cs.edge_require_one:
                tmp[u].append(v)
                tmp[v].append(u)
            req = [tuple(sorted(x)) for x in tmp]
        self.req = req

        colours = [0] * n
        blocked = [0] * (k + 1)
        assigned = 0
        self.init_feasible = True
        try:
            for v in sorted(fixed):
                c = fixed[v]
                if (blocked[c] >> v) & 1 or not (allowed[c] >> v) & 1:
                    raise _Infeasible
                colours[v] = c
                assigned |= 1 << v
                blocked[c] |= balls[c][v]
                if c != 1:
                    for u in req[v]:
                        cu = colours[u]
                        if cu == 0:
                            if u in fixed and fixed[u] != 1:
                                raise _Infeasible
                            for cc in range(2, k + 1):
                                allowed[cc] &= ~(1 << u)
                        elif cu != 1:
                            raise _Infeasible
        except _Infeasible:
            self.init_feasible = False

        self.allowed0 = allowed
        self.blocked0 = blocked
        self.colours0 = colours
        self.assigned0 = assigned

        order_full = _static_order(g, rows, order)
        front_set = set(front)
        head = [v for v in order_full if v in front_set and v not in fixed]
        tail = [v for v in order_full if v not in front_set and v not in fixed]
        self.order = head + tail
        self.front_len = len(head)

    def first_branch_colours(self) -> list[int]:
        """Admissible colours at the first order vertex (for parallel splitting)."""
        if not self.init_feasible or not self.order:
            return []
        v = self.order[0]
        return [
            c
            for c in range(1, self.k + 1)
            if (self.allowed0[c] >> v) & 1 and not (self.blocked0[c] >> v) & 1
        ]

    def run(self, budget: Budget | None, check_depth: int | None = None,
            check=None) -> SolveOutcome:
        """DFS to the first accepted leaf.

        check, when given, is called with the colour list once check_depth
        vertices of the order are placed (and at leaves when check_depth is
        None); returning True prunes the subtree (the sought object cannot
        live below), returning False lets the search continue. A leaf that is
        not pruned is returned as SAT.
        """
        t0 = time.monotonic()
        bd = (budget or Budget()).as_dict()
        if not self.init_feasible:
            return SolveOutcome(UNSAT, None, 0, _ms(t0), bd)

        k = self.k
        order = self.order
        nvars = len(order)
        balls = self.balls
        req = self.req
        colours = list(self.colours0)
        allowed = list(self.allowed0)
        blocked = list(self.blocked0)
        uncoloured = self.full_mask & ~self.assigned0
        full = self.full_mask

        max_nodes = budget.max_nodes if budget else None
        deadline = None
        if budget and budget.max_millis is not None:
            deadline = t0 + budget.max_millis / 1000.0

        if check_depth is None:
            leaf_check = check
            mid_depth = -1
        else:
            leaf_check = None
            mid_depth = check_depth

        if nvars == 0:
            # everything fixed; the preassignment is the candidate
            if mid_depth == 0 and check is not None and check(colours):
                return SolveOutcome(UNSAT, None, 0, _ms(t0), bd)
            if leaf_check is not None and leaf_check(colours):
                return SolveOutcome(UNSAT, None, 0, _ms(t0), bd)
            return SolveOutcome(SAT, Colouring(tuple(colours), k), 0, _ms(t0), bd)

        if mid_depth == 0:
            # every predicate input is preassigned, so its value is already
            # decided: True blocks all completions, False accepts any
            if check(colours):
                return SolveOutcome(UNSAT, None, 0, _ms(t0), bd)
            mid_depth = -1

        tried = [0] * (nvars + 1)
        sblocked = [0] * nvars
        srestores: list[list | None] = [None] * nvars
        nodes = 0
        depth = 0

        while True:
            if depth == nvars:
                if leaf_check is not None and leaf_check(colours):
                    depth -= 1  # reject this leaf, keep searching
                else:
                    return SolveOutcome(
                        SAT, Colouring(tuple(colours), k), nodes, _ms(t0), bd
                    )

            v = order[depth]
            vbit = 1 << v
            c = tried[depth]
            if c:
                blocked[c] = sblocked[depth]
                colours[v] = 0
                uncoloured |= vbit
                rest = srestores[depth]
                if rest:
                    for cc, old in reversed(rest):
                        allowed[cc] = old
                    srestores[depth] = None

            placed = False
            c += 1
            while c <= k:
                if (allowed[c] >> v) & 1 and not (blocked[c] >> v) & 1:
                    restores = None
                    conflict = False
                    if c != 1 and req[v]:
                        for u in req[v]:
                            if colours[u] not in (0, 1):
                                conflict = True
                                break
                    if not conflict:
                        nodes += 1
                        if max_nodes is not None and nodes > max_nodes:
                            return SolveOutcome(TIMEOUT, None, nodes - 1, _ms(t0), bd)
                        if (
                            deadline is not None
                            and nodes & 2047 == 0
                            and time.monotonic() > deadline
                        ):
                            return SolveOutcome(TIMEOUT, None, nodes, _ms(t0), bd)
                        sblocked[depth] = blocked[c]
                        blocked[c] |= balls[c][v]
                        colours[v] = c
                        uncoloured &= ~vbit
                        if c != 1 and req[v]:
                            for u in req[v]:
                                if colours[u] == 0:
                                    ubit_inv = ~(1 << u)
                                    for cc in range(2, k + 1):
                                        old = allowed[cc]
                                        if old & ~ubit_inv:
                                            allowed[cc] = old & ubit_inv
                                            if restores is None:
                                                restores = []
                                            restores.append((cc, old))
                        tried[depth] = c
                        srestores[depth] = restores

                        avail = 0
                        for cc in range(1, k + 1):
                            avail |= allowed[cc] & ~blocked[cc]
                        if uncoloured & ~avail & full:
                            blocked[c] = sblocked[depth]
                            colours[v] = 0
                            uncoloured |= vbit
                            if restores:
                                for cc, old in reversed(restores):
                                    allowed[cc] = old
                            srestores[depth] = None
                            c += 1
                            continue

                        depth += 1
                        tried[depth] = 0
                        placed = True
                        if depth == mid_depth and check(colours):
                            # conclusion already holds on the checked prefix;
                            # nothing below can violate it
                            depth -= 1
                        break
                c += 1

            if not placed:
                tried[depth] = 0
                depth -= 1
                if depth < 0:
                    return SolveOutcome(UNSAT, None, nodes, _ms(t0), bd)


def _ms(t0: float) -> int:
    return int(round((time.monotonic() - t0) * 1000))


def decide(
    g: Graph,
    k: int,
    cs: ConstraintSet | None = None,
    budget: Budget | None = None,
    order: str = "eccentricity",
    threads: int | None = None,
) -> SolveOutcome:
    """SAT iff a packing k-colouring of g extending cs exists.

    Deterministic (including node counts) for threads=1. threads > 1 splits
    the first branching vertex's colours across worker processes; the status
    is independent of the worker count, node totals and wall time are not.
    """
    cs = cs or EMPTY_CS
    if threads is None:
        threads = default_thread_count()
    searcher = _Searcher(g, k, cs, order=order)
    if threads > 1 and searcher.init_feasible and len(searcher.order) > 1:
        return _decide_parallel(g, k, cs, budget, order, threads, searcher)
    out = searcher.run(budget)
    if out.status == SAT:
        _assert_witness(searcher, out.witness, cs)
    return out


def _assert_witness(searcher: _Searcher, witness: Colouring, cs: ConstraintSet) -> None:
    report = is_packing_colouring(searcher.dm, witness)
    if not report.valid or not cs.check(witness):
        raise RuntimeError(
            f"internal error: SAT witness failed revalidation ({report.violation})"
        )


def _parallel_task(args):
    g, k, cs, budget, order, colour, v0 = args
    fixed = dict(cs.fixed)
    fixed[v0] = colour
    sub = ConstraintSet.make(
        fixed=fixed,
        forbidden=dict(cs.forbidden),
        edge_require_one=cs.edge_require_one,
    )
    out = _Searcher(g, k, sub, order=order).run(budget)
    return colour, out


def _decide_parallel(g, k, cs, budget, order, threads, searcher) -> SolveOutcome:
    t0 = time.monotonic()
    v0 = searcher.order[0]
    branches = searcher.first_branch_colours()
    bd = (budget or Budget()).as_dict()
    if not branches:
        return SolveOutcome(UNSAT, None, 0, _ms(t0), bd)
    tasks = [(g, k, cs, budget, order, c, v0) for c in branches]
    results: dict[int, SolveOutcome] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for colour, out in pool.map(_parallel_task, tasks):
            results[colour] = out
    nodes = sum(o.nodes for o in results.values()) + 1
    for colour in sorted(results):
        if results[colour].status == SAT:
            witness = results[colour].witness
            _assert_witness(searcher, witness, cs)
            return SolveOutcome(SAT, witness, nodes, _ms(t0), bd)
    if any(o.status == TIMEOUT for o in results.values()):
        return SolveOutcome(TIMEOUT, None, nodes, _ms(t0), bd)
    return SolveOutcome(UNSAT, None, nodes, _ms(t0), bd)


def chi_rho(
    g: Graph,
    budget: Budget | None = None,
    threads: int | None = None,
) -> ChiRhoOutcome:
    """Exact packing chromatic number with both certificates.

    Starts at max(counting lower bound, 1) and raises k until SAT; the
    returned record always includes an exhaustive UNSAT outcome at value-1
    (found during the climb, or computed after the fact when the first k
    probed was already SAT). Any TIMEOUT yields status TIMEOUT with the
    proven bracket.
    """
    t0 = time.monotonic()
    try:
        lb = max(prop1_lower_bound(g, budget), 1)
    except PackingTimeout:
        lb = 1
    total_nodes = 0
    unsat: SolveOutcome | None = None
    k = lb
    while True:
        out = decide(g, k, budget=budget, threads=threads)
        total_nodes += out.nodes
        if out.status == TIMEOUT:
            return ChiRhoOutcome(
                status=TIMEOUT,
                value=None,
                sat=None,
                unsat=unsat,
                lower_bound_start=lb,
                bracket=(k, None),
                nodes=total_nodes,
                millis=_ms(t0),
            )
        if out.status == SAT:
            value = k
            sat = out
            break
        unsat = out
        k += 1
    if unsat is None and value > 1:
        below = decide(g, value - 1, budget=budget, threads=threads)
        total_nodes += below.nodes
        if below.status == TIMEOUT:
            return ChiRhoOutcome(
                status=TIMEOUT,
                value=None,
                sat=sat,
                unsat=None,
                lower_bound_start=lb,
                bracket=(lb, value),
                nodes=total_nodes,
                millis=_ms(t0),
            )
        if below.status == SAT:
            raise RuntimeError(
                "internal error: counting lower bound exceeded the true value"
            )
        unsat = below
    return ChiRhoOutcome(
        status="OK",
        value=value,
        sat=sat,
        unsat=unsat,
        lower_bound_start=lb,
        bracket=None,
        nodes=total_nodes,
        millis=_ms(t0),
    )


def brute_force_decide(g: Graph, k: int) -> str:
    """Independent oracle: plain DFS in vertex-id order, colours ascending,
    validity checked incrementally against the distance matrix. No ordering
    heuristics, no propagation. Only for graphs with at most 14 vertices.
    """
    if g.n > 14:
        raise ValueError(f"brute force limited to 14 vertices, got {g.n}")
    if k < 1:
        raise ValueError(f"colour budget must be >= 1, got {k}")
    n = g.n
    rows = all_pairs_distances(g).rows
    colours = [0] * n

    def bt(v: int) -> bool:
        if v == n:
            return True
        row = rows[v]
        for c in range(1, k + 1):
            ok = True
            for w in range(v):
                if colours[w] == c and row[w] <= c:
                    ok = False
                    break
            if ok:
                colours[v] = c
                if bt(v + 1):
                    return True
                colours[v] = 0
        return False

    return SAT if bt(0) else UNSAT


def find_colouring_violating(
    g: Graph,
    k: int,
    cs: ConstraintSet | None,
    predicate,
    budget: Budget | None = None,
    support=None,
    order: str = "eccentricity",
) -> SolveOutcome:
    """Search for a complete packing k-colouring satisfying cs on which
    predicate(colours) is False.

    Returns SAT with the first such witness, NONE when every cs-satisfying
    colouring satisfies the predicate (exhaustive), or TIMEOUT. predicate
    receives the colour list indexed by vertex id. When support is given it
    must contain every vertex the predicate reads: those vertices are placed
    first and the predicate is consulted as soon as they are all coloured,
    pruning subtrees where it already holds.
    """
    cs = cs or EMPTY_CS
    front = tuple(sorted(set(support))) if support is not None else ()
    searcher = _Searcher(g, k, cs, order=order, front=front)
    if support is not None:
        out = searcher.run(budget, check_depth=searcher.front_len, check=predicate)
    else:
        out = searcher.run(budget, check=predicate)
    if out.status == SAT:
        _assert_witness(searcher, out.witness, cs)
        if predicate(list(out.witness.colours)):
            raise RuntimeError(
                "internal error: returned witness does not violate the predicate"
            )
        return out
    if out.status == UNSAT:
        return SolveOutcome(NONE, None, out.nodes, out.millis, out.budget_used)
    return out
