"""Command-line front end with JSON output.

Subcommands: generate, decide, chi, rho, verify, pattern, claims, table.
Machine output is line-delimited JSON on stdout; --pretty switches to
indented JSON (and an aligned text table for `table`). Exit codes: 0 for
success (a completed decision counts whether SAT or UNSAT), 1 for a
verification failure or counterexample, 2 for usage errors, 3 when a budget
ran out. Nothing here is randomized; reruns with the same inputs produce
the same results.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .claims import (
    all_interior_rungs,
    boundary_vertices,
    check_appendixB,
    check_lemma6_hgraph,
    check_lemma7,
    check_lemma_graphX,
    check_level0_no45,
    level0_pairs,
)
from .families import (
    circular_ladder,
    corona,
    cycle,
    gen_h_graph,
    graph_x,
    h_graph,
    window,
)
from .graphs import (
    Colouring,
    Graph,
    all_pairs_distances,
    graph_content_hash,
    is_packing_colouring,
    parse_graph_text,
    write_graph_text,
)
from .packings import PackingTimeout, prop1_lower_bound, rho_table
from .patterns import (
    FAMILY_PARAMS,
    RegistryError,
    claimed_k,
    load_registry,
    verify_case,
)
from .solver import (
    Budget,
    ConstraintSet,
    SAT,
    TIMEOUT,
    UNSAT,
    chi_rho,
    decide,
    default_thread_count,
)

CERT_SCHEMA = "packcol-certificate/1"
CHI_SCHEMA = "packcol-chi/1"
RHO_SCHEMA = "packcol-rho/1"
VERIFY_SCHEMA = "packcol-verify/1"
PATTERN_SCHEMA = "packcol-pattern-report/1"
CLAIM_SCHEMA = "packcol-claim-report/1"
ROW_SCHEMA = "packcol-theorem-row/1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3

DEFAULT_TABLE_BUDGET_MILLIS = 60000


def _emit(obj: dict, pretty: bool) -> None:
    print(json.dumps(obj, indent=2 if pretty else None))


def _parse_range(text: str, what: str) -> list[int]:
    """Parse 'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{what} must be an integer or a..b range, got {text!r}"
        ) from None


def _parse_vertex_colour(text: str) -> tuple[int, int]:
    try:
        v_s, c_s = text.split("=", 1)
        return int(v_s), int(c_s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected VERTEX=COLOUR, got {text!r}"
        ) from None


def _parse_edge(text: str) -> tuple[int, int]:
    try:
        u_s, v_s = text.split(",", 1)
        return int(u_s), int(v_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected U,V, got {text!r}") from None


FAMILIES = ("CL", "H", "GENH", "X", "CORONA", "WINDOW")


def _build_family(parser: argparse.ArgumentParser, args) -> tuple[Graph, dict]:
    """Build the requested family graph and its certificate descriptor."""
    fam = args.family
    need = {
        "CL": ("n",), "H": ("r",), "GENH": ("l", "r"),
        "X": (), "CORONA": ("n",), "WINDOW": ("l", "r", "cols"),
    }[fam]
    for name in need:
        if getattr(args, name, None) is None:
            parser.error(f"family {fam} needs --{name}")
    for name in ("n", "r", "l", "cols"):
        if name not in need and getattr(args, name, None) is not None:
            parser.error(f"family {fam} does not take --{name}")
    try:
        if fam == "CL":
            g, params = circular_ladder(args.n), {"n": args.n}
        elif fam == "H":
            g, params = h_graph(args.r), {"r": args.r}
        elif fam == "GENH":
            g, params = gen_h_graph(args.l, args.r), {"l": args.l, "r": args.r}
        elif fam == "X":
            g, params = graph_x(), {}
        elif fam == "CORONA":
            g, params = corona(cycle(args.n)), {"n": args.n}
        else:
            cols = _parse_range(args.cols, "--cols")
            g = window(args.l, args.r, cols)
            params = {"l": args.l, "r": args.r, "cols": args.cols}
    except ValueError as exc:
        parser.error(str(exc))
    desc = {
        "family": fam,
        "params": params,
        "n": g.n,
        "m": g.m,
        "content_hash": graph_content_hash(g),
    }
    return g, desc


def _graph_from_args(parser: argparse.ArgumentParser, args) -> tuple[Graph, dict]:
    if getattr(args, "file", None):
        if args.family is not None:
            parser.error("--family and --file are mutually exclusive")
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            parser.error(f"cannot read {args.file}: {exc}")
        try:
            g, _comments = parse_graph_text(text)
        except ValueError as exc:
            parser.error(f"{args.file}: {exc}")
        desc = {
            "file": args.file,
            "n": g.n,
            "m": g.m,
            "content_hash": graph_content_hash(g),
        }
        return g, desc
    if args.family is None:
        parser.error("one of --family or --file is required")
    return _build_family(parser, args)


def _budget_from_args(args) -> Budget | None:
    nodes = getattr(args, "max_nodes", None)
    millis = getattr(args, "max_millis", None)
    if nodes is None and millis is None:
        return None
    return Budget(max_nodes=nodes, max_millis=millis)


def _is_top_label(lab) -> bool:
    if not isinstance(lab, tuple) or not lab:
        return False
    if len(lab) == 3:
        return lab[1] == 0
    return lab[0] == "u"


def _keyword_edges(g: Graph, word: str) -> list[tuple[int, int]]:
    """Edges named by structural role: the top cycle, or the rung edges."""
    if word == "all":
        return g.edges()
    labels = g.labels
    if labels is None or not all(isinstance(l, tuple) and l for l in labels):
        raise ValueError(
            f"{word!r} needs family labels; give explicit U,V edges instead"
        )
    chosen = []
    if word == "top-cycle":
        chosen = [
            e for e in g.edges()
            if _is_top_label(labels[e[0]]) and _is_top_label(labels[e[1]])
        ]
    elif word == "rungs":
        levelled = all(len(l) == 3 for l in labels)
        roles = {l[0] for l in labels}
        for u, v in g.edges():
            lu, lv = labels[u], labels[v]
            if levelled:
                top = max(l[1] for l in labels)
                if lu[1] == lv[1] and 0 < lu[1] < top:
                    chosen.append((u, v))
            elif "w" in roles:
                if lu[0] == "v" and lv[0] == "v":
                    chosen.append((u, v))
            else:
                if {lu[0], lv[0]} == {"u", "v"} and lu[1:] == lv[1:]:
                    chosen.append((u, v))
    if not chosen:
        raise ValueError(f"this graph has no {word} edges")
    return chosen


def _constraints_from_args(parser, args, g: Graph, k: int) -> ConstraintSet:
    fixed: dict[int, int] = {}
    for v, c in args.fix or ():
        if v in fixed and fixed[v] != c:
            parser.error(f"vertex {v} fixed to both {fixed[v]} and {c}")
        fixed[v] = c
    forbidden: dict[int, set[int]] = {}
    for v, c in args.forbid or ():
        forbidden.setdefault(v, set()).add(c)
    edges: list[tuple[int, int]] = []
    for spec in args.edge_require_one or ():
        if spec in ("all", "top-cycle", "rungs"):
            try:
                edges.extend(_keyword_edges(g, spec))
            except ValueError as exc:
                parser.error(str(exc))
        else:
            try:
                edges.append(_parse_edge(spec))
            except argparse.ArgumentTypeError as exc:
                parser.error(str(exc))
    cs = ConstraintSet.make(fixed=fixed, forbidden=forbidden, edge_require_one=edges)
    try:
        cs.validate(g, k)
    except ValueError as exc:
        parser.error(str(exc))
    return cs


def _cs_json(cs: ConstraintSet) -> dict | None:
    if cs.is_empty():
        return None
    return {
        "fixed": {str(v): c for v, c in cs.fixed},
        "forbidden": {str(v): list(cols) for v, cols in cs.forbidden},
        "edge_require_one": [list(e) for e in cs.edge_require_one],
    }


def _cs_from_json(raw) -> ConstraintSet:
    if not raw:
        return ConstraintSet()
    return ConstraintSet.make(
        fixed={int(v): c for v, c in raw.get("fixed", {}).items()},
        forbidden={int(v): tuple(cols) for v, cols in raw.get("forbidden", {}).items()},
        edge_require_one=[tuple(e) for e in raw.get("edge_require_one", [])],
    )


def _certificate(graph_desc, k, cs, out, threads) -> dict:
    return {
        "schema": CERT_SCHEMA,
        "tool_version": __version__,
        "graph": graph_desc,
        "k": k,
        "constraints": _cs_json(cs),
        "status": out.status,
        "colouring": list(out.witness.colours) if out.witness else None,
        "stats": {"nodes": out.nodes, "millis": out.millis, "threads": threads},
        "check": None,
    }


def _revalidate_into(cert: dict, g: Graph, cs: ConstraintSet) -> None:
    """Independent pass over a SAT certificate's colouring; refuses to leave
    check unset on SAT."""
    if cert["status"] != SAT:
        return
    colouring = Colouring(tuple(cert["colouring"]), cert["k"])
    report = is_packing_colouring(all_pairs_distances(g), colouring)
    if not report.valid or not cs.check(colouring):
        raise RuntimeError(
            f"SAT witness failed independent revalidation: {report.violation}"
        )
    cert["check"] = "revalidated"


def cmd_generate(parser, args) -> int:
    g, desc = _build_family(parser, args)
    tags = " ".join(f"{k}={v}" for k, v in desc["params"].items())
    header = f"family={desc['family']}" + (f" {tags}" if tags else "")
    text = write_graph_text(g, comments=(header,))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_decide(parser, args) -> int:
    g, desc = _graph_from_args(parser, args)
    cs = _constraints_from_args(parser, args, g, args.k)
    threads = args.threads if args.threads is not None else default_thread_count()
    out = decide(g, args.k, cs, _budget_from_args(args), order=args.order,
                 threads=threads)
    cert = _certificate(desc, args.k, cs, out, threads)
    _revalidate_into(cert, g, cs)
    _emit(cert, args.pretty)
    if args.cert:
        Path(args.cert).write_text(json.dumps(cert, indent=2) + "\n")
    return EXIT_TIMEOUT if out.status == TIMEOUT else EXIT_OK


def cmd_chi(parser, args) -> int:
    g, desc = _graph_from_args(parser, args)
    threads = args.threads if args.threads is not None else default_thread_count()
    res = chi_rho(g, _budget_from_args(args), threads=threads)
    if res.status == "OK":
        sat_k, unsat_k = res.value, res.value - 1
    else:
        sat_k = res.bracket[1] if res.bracket else None
        unsat_k = res.bracket[0] - 1 if res.bracket else None
    obj = {
        "schema": CHI_SCHEMA,
        "tool_version": __version__,
        "graph": desc,
        "status": res.status,
        "value": res.value,
        "lower_bound_start": res.lower_bound_start,
        "bracket": list(res.bracket) if res.bracket else None,
        "nodes": res.nodes,
        "millis": res.millis,
        "sat": None,
        "unsat": None,
    }
    empty = ConstraintSet()
    if res.sat is not None:
        cert = _certificate(desc, sat_k, empty, res.sat, threads)
        _revalidate_into(cert, g, empty)
        obj["sat"] = cert
    if res.unsat is not None:
        obj["unsat"] = _certificate(desc, unsat_k, empty, res.unsat, threads)
    _emit(obj, args.pretty)
    return EXIT_OK if res.status == "OK" else EXIT_TIMEOUT


def cmd_rho(parser, args) -> int:
    g, desc = _graph_from_args(parser, args)
    table = rho_table(g, args.max_i, _budget_from_args(args))
    obj = {
        "schema": RHO_SCHEMA,
        "tool_version": __version__,
        "graph": desc,
        "k": table.k,
        "rho": list(table.rho),
        "proven": list(table.proven),
        "witnesses": [list(w) for w in table.witnesses],
        "all_proven": table.all_proven(),
    }
    _emit(obj, args.pretty)
    return EXIT_OK if table.all_proven() else EXIT_TIMEOUT


def _rebuild_cert_graph(desc: dict) -> Graph:
    if "family" in desc:
        fam, params = desc["family"], desc["params"]
        if fam == "CL":
            return circular_ladder(params["n"])
        if fam == "H":
            return h_graph(params["r"])
        if fam == "GENH":
            return gen_h_graph(params["l"], params["r"])
        if fam == "X":
            return graph_x()
        if fam == "CORONA":
            return corona(cycle(params["n"]))
        if fam == "WINDOW":
            cols = _parse_range(params["cols"], "cols")
            return window(params["l"], params["r"], cols)
        raise ValueError(f"unknown family {fam!r}")
    g, _comments = parse_graph_text(Path(desc["file"]).read_text())
    return g


def _verify_certificate(data: dict, recompute: bool, budget) -> tuple[bool, str | None, dict]:
    extra: dict = {}
    try:
        g = _rebuild_cert_graph(data["graph"])
    except (OSError, ValueError, KeyError) as exc:
        return False, f"cannot rebuild graph: {exc}", extra
    desc = data["graph"]
    if graph_content_hash(g) != desc.get("content_hash"):
        return False, "content hash mismatch", extra
    if g.n != desc.get("n") or g.m != desc.get("m"):
        return False, "vertex or edge count mismatch", extra
    try:
        cs = _cs_from_json(data.get("constraints"))
        cs.validate(g, data["k"])
    except (ValueError, KeyError) as exc:
        return False, f"bad constraints: {exc}", extra
    status = data.get("status")
    if status == SAT:
        raw = data.get("colouring")
        if not isinstance(raw, list) or len(raw) != g.n:
            return False, "SAT certificate without a full colouring", extra
        try:
            colouring = Colouring(tuple(raw), data["k"])
        except ValueError as exc:
            return False, f"bad colouring: {exc}", extra
        if not colouring.is_total():
            return False, "colouring is not total", extra
        report = is_packing_colouring(all_pairs_distances(g), colouring)
        if not report.valid:
            return False, f"colouring violates packing at {report.violation}", extra
        if not cs.check(colouring):
            return False, "colouring violates the stored constraints", extra
        return True, None, extra
    if status == UNSAT:
        if recompute:
            out = decide(g, data["k"], cs, budget)
            extra["recomputed_status"] = out.status
            extra["recomputed_nodes"] = out.nodes
            if out.status == SAT:
                return False, "recomputation found a colouring", extra
        return True, None, extra
    if status == TIMEOUT:
        return True, None, extra
    return False, f"unknown status {status!r}", extra


def cmd_verify(parser, args) -> int:
    try:
        data = json.loads(Path(args.cert).read_text())
    except OSError as exc:
        parser.error(f"cannot read {args.cert}: {exc}")
    except json.JSONDecodeError as exc:
        parser.error(f"{args.cert}: not valid JSON: {exc}")
    budget = _budget_from_args(args)
    schema = data.get("schema")
    if schema == CERT_SCHEMA:
        valid, reason, extra = _verify_certificate(data, args.recompute, budget)
    elif schema == CHI_SCHEMA:
        valid, reason, extra = True, None, {}
        sat, unsat = data.get("sat"), data.get("unsat")
        if data.get("status") == "OK":
            if sat is None or sat.get("status") != SAT:
                valid, reason = False, "chi record without a SAT certificate"
            elif data.get("value", 0) > 1 and (
                unsat is None or unsat.get("status") != UNSAT
                or unsat.get("k") != data["value"] - 1
            ):
                valid, reason = False, "chi record without the UNSAT certificate at value-1"
        for name, cert in (("sat", sat), ("unsat", unsat)):
            if valid and cert is not None:
                ok, why, sub = _verify_certificate(cert, args.recompute, budget)
                extra.update({f"{name}_{k}": v for k, v in sub.items()})
                if not ok:
                    valid, reason = False, f"{name} certificate: {why}"
    else:
        parser.error(f"{args.cert}: unknown schema {schema!r}")
    obj = {
        "schema": VERIFY_SCHEMA,
        "tool_version": __version__,
        "certificate": args.cert,
        "status": "VALID" if valid else "INVALID",
        "reason": reason,
        **extra,
    }
    _emit(obj, args.pretty)
    return EXIT_OK if valid else EXIT_FAIL


def _pattern_params(parser, args, family: str) -> dict:
    params = {}
    for name in FAMILY_PARAMS[family]:
        value = getattr(args, name, None)
        if value is None:
            parser.error(f"family {family} needs --{name}")
        params[name] = value
    return params


def cmd_pattern(parser, args) -> int:
    try:
        registry = load_registry(args.registry)
    except (OSError, RegistryError) as exc:
        parser.error(f"registry: {exc}")
    if args.family not in FAMILY_PARAMS:
        parser.error(f"pattern families are {sorted(FAMILY_PARAMS)}, got {args.family}")
    if args.action == "verify":
        params = _pattern_params(parser, args, args.family)
        try:
            report = verify_case(args.family, params, registry)
        except LookupError as exc:
            _emit({"schema": PATTERN_SCHEMA, "family": args.family,
                   "params": params, "error": str(exc)}, args.pretty)
            return EXIT_FAIL
        claimed = claimed_k(args.family, params)
        obj = {
            "schema": PATTERN_SCHEMA,
            "family": report.family,
            "params": dict(report.params),
            "case": report.case_name,
            "k": report.k_used,
            "claimed": claimed,
            "valid": report.valid,
            "violation": list(report.violation) if report.violation else None,
        }
        _emit(obj, args.pretty)
        ok = report.valid and report.k_used == claimed
        return EXIT_OK if ok else EXIT_FAIL
    ranges = {}
    for name in FAMILY_PARAMS[args.family]:
        value = getattr(args, name + "_range", None)
        if value is None:
            parser.error(f"sweep over {args.family} needs --{name} A..B")
        ranges[name] = value
    combos = [{}]
    for name in FAMILY_PARAMS[args.family]:
        combos = [dict(c, **{name: v}) for c in combos for v in ranges[name]]
    bad = 0
    for params in combos:
        try:
            report = verify_case(args.family, params, registry)
        except LookupError as exc:
            _emit({"schema": PATTERN_SCHEMA, "family": args.family,
                   "params": params, "error": str(exc)}, args.pretty)
            bad += 1
            break
        claimed = claimed_k(args.family, params)
        ok = report.valid and report.k_used == claimed
        _emit({
            "schema": PATTERN_SCHEMA,
            "family": report.family,
            "params": dict(report.params),
            "case": report.case_name,
            "k": report.k_used,
            "claimed": claimed,
            "valid": report.valid,
            "violation": list(report.violation) if report.violation else None,
        }, args.pretty)
        if not ok:
            bad += 1
            break
    return EXIT_FAIL if bad else EXIT_OK


CLAIM_NAMES = ("lemma3", "lemma6", "lemma7", "appendixB", "lemma11")


def cmd_claims(parser, args) -> int:
    budget = _budget_from_args(args)
    name = args.name
    if name == "lemma3":
        if args.l is not None or args.r is not None:
            parser.error("lemma3 takes no --l or --r")
        report = check_lemma_graphX(budget)
    elif name == "lemma6":
        if args.l is not None:
            parser.error("lemma6 takes no --l")
        report = check_lemma6_hgraph(args.r if args.r is not None else 4, budget)
    else:
        l = args.l if args.l is not None else 3
        r = args.r if args.r is not None else 4
        try:
            if name == "lemma7":
                rungs = all_interior_rungs(l, r) if args.all_edges else None
                report = check_lemma7(l, r, budget, rungs=rungs)
            elif name == "appendixB":
                pairs = level0_pairs(l, r) if args.all_edges else None
                report = check_appendixB(l, r, budget, pairs=pairs)
            else:
                vertices = boundary_vertices(l, r) if args.all_edges else None
                report = check_level0_no45(l, r, budget, vertices=vertices)
        except ValueError as exc:
            parser.error(str(exc))
    obj = {"schema": CLAIM_SCHEMA, "tool_version": __version__}
    obj.update(report.as_dict())
    _emit(obj, args.pretty)
    if report.status == "VERIFIED":
        return EXIT_OK
    if report.status == TIMEOUT:
        return EXIT_TIMEOUT
    return EXIT_FAIL


def _lower_bound(g, claimed, budget, threads) -> tuple[dict, bool, bool]:
    """Machine lower bound for one table row.

    Returns (bound record, contradiction, budget_limited). The bound is the
    exhaustive UNSAT decision at claimed-1 when it fits the budget, else the
    counting bound, else SKIPPED.
    """
    out = decide(g, claimed - 1, budget=budget, threads=threads)
    if out.status == UNSAT:
        return (
            {"value": claimed, "source": "unsat-certificate", "k": claimed - 1,
             "nodes": out.nodes, "millis": out.millis},
            False,
            False,
        )
    if out.status == SAT:
        return (
            {"value": None, "source": "sat-certificate",
             "note": f"k={claimed - 1} is satisfiable, contradicting the claim"},
            True,
            False,
        )
    try:
        lb = prop1_lower_bound(g, budget)
    except PackingTimeout:
        return (
            {"value": None, "source": "SKIPPED",
             "reason": "decision and counting bound both exceeded the budget"},
            False,
            True,
        )
    return (
        {"value": lb, "source": "prop1",
         "note": f"k={claimed - 1} decision exceeded the budget"},
        lb > claimed,
        lb < claimed,
    )


def _pattern_upper(family, params, registry) -> dict | None:
    try:
        report = verify_case(family, params, registry)
    except LookupError:
        return None
    if not report.valid:
        return {"value": None, "source": "pattern-invalid",
                "case": report.case_name,
                "violation": list(report.violation)}
    return {"value": report.k_used, "source": "pattern", "case": report.case_name}


def _table_row(theorem: int, family: str, params: dict, claimed, upper, lower,
               agreement: bool, notes: list[str]) -> dict:
    return {
        "schema": ROW_SCHEMA,
        "theorem": theorem,
        "family": family,
        "params": params,
        "claimed": claimed,
        "upper": upper,
        "lower": lower,
        "agreement": agreement,
        "notes": notes,
    }


def _point_row(theorem, family, params, g, claimed, upper, budget, threads):
    """Row for a single-value claim; returns (row, contradiction, limited)."""
    notes = []
    contradiction = False
    limited = False
    if upper is None:
        notes.append("no pattern entry applies")
        limited = True
    elif upper["value"] is None:
        contradiction = True
    elif upper["value"] != claimed:
        contradiction = True
        notes.append("pattern k differs from the claimed value")
    lower, lower_contra, lower_limited = _lower_bound(g, claimed, budget, threads)
    contradiction = contradiction or lower_contra
    limited = limited or lower_limited
    agreement = (
        upper is not None
        and upper["value"] == claimed
        and lower["value"] == claimed
    )
    row = _table_row(theorem, family, params, claimed, upper, lower,
                     agreement, notes)
    return row, contradiction, limited


def _theorem3_rows(ns, budget, threads):
    for n in ns:
        claimed = 4 if n in (3, 4) else 5
        g = corona(cycle(n))
        notes = []
        contradiction = False
        limited = False
        out = decide(g, claimed, budget=budget, threads=threads)
        if out.status == SAT:
            upper = {"value": claimed, "source": "sat-certificate",
                     "nodes": out.nodes, "millis": out.millis}
        elif out.status == UNSAT:
            upper = {"value": None, "source": "unsat-at-claimed",
                     "note": f"k={claimed} is unsatisfiable, contradicting the claim"}
            contradiction = True
        else:
            upper = {"value": None, "source": "SKIPPED",
                     "reason": "decision exceeded the budget"}
            limited = True
        lower, lower_contra, lower_limited = _lower_bound(g, claimed, budget, threads)
        contradiction = contradiction or lower_contra
        limited = limited or lower_limited
        agreement = (
            upper["value"] == claimed and lower["value"] == claimed
        )
        yield (
            _table_row(3, "CORONA", {"n": n}, claimed, upper, lower,
                       agreement, notes),
            contradiction,
            limited,
        )


def _theorem5_odd_row(r, g, upper, budget, threads):
    claimed = {"min": 6, "max": 7}
    notes = []
    contradiction = False
    limited = False
    out5 = decide(g, 5, budget=budget, threads=threads)
    if out5.status == SAT:
        lower = {"value": None, "source": "sat-certificate",
                 "note": "k=5 is satisfiable, contradicting the claimed bracket"}
        contradiction = True
    elif out5.status == TIMEOUT:
        try:
            lb = prop1_lower_bound(g, budget)
            lower = {"value": lb, "source": "prop1",
                     "note": "k=5 decision exceeded the budget"}
        except PackingTimeout:
            lower = {"value": None, "source": "SKIPPED",
                     "reason": "decision and counting bound both exceeded the budget"}
        limited = True
    else:
        lower = {"value": 6, "source": "unsat-certificate", "k": 5,
                 "nodes": out5.nodes, "millis": out5.millis}
        out6 = decide(g, 6, budget=budget, threads=threads)
        if out6.status == UNSAT:
            lower = {"value": 7, "source": "unsat-certificate", "k": 6,
                     "nodes": out5.nodes + out6.nodes,
                     "millis": out5.millis + out6.millis}
        elif out6.status == SAT:
            upper = {"value": 6, "source": "sat-certificate",
                     "nodes": out6.nodes, "millis": out6.millis}
        else:
            notes.append("k=6 decision exceeded the budget; "
                         "exact value unresolved inside the claimed bracket")
    upper_val = upper["value"] if upper else None
    lower_val = lower["value"]
    agreement = (
        not contradiction
        and upper_val is not None
        and lower_val is not None
        and lower_val >= claimed["min"]
        and upper_val <= claimed["max"]
        and lower_val <= upper_val
    )
    if upper_val is None:
        limited = True
    row = _table_row(5, "H", {"r": r}, claimed, upper, lower, agreement, notes)
    return row, contradiction, limited


def _table_rows(parser, args, registry):
    theorem = args.theorem
    threads = args.threads if args.threads is not None else default_thread_count()
    budget = _budget_from_args(args)
    if budget is None:
        budget = Budget(max_millis=DEFAULT_TABLE_BUDGET_MILLIS)

    def rng(text, default, what):
        if text is None:
            text = default
        try:
            return _parse_range(text, what)
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))

    if theorem == 3:
        if args.r is not None or args.l is not None:
            parser.error("theorem 3 ranges over --n only")
        yield from _theorem3_rows(rng(args.n, "3..10", "--n"), budget, threads)
        return
    if theorem == 4:
        if args.r is not None or args.l is not None:
            parser.error("theorem 4 ranges over --n only")
        for n in rng(args.n, "3..16", "--n"):
            params = {"n": n}
            upper = _pattern_upper("CL", params, registry)
            yield _point_row(4, "CL", params, circular_ladder(n),
                             claimed_k("CL", params), upper, budget, threads)
        return
    if theorem == 5:
        if args.n is not None or args.l is not None:
            parser.error("theorem 5 ranges over --r only")
        for r in rng(args.r, "2..6", "--r"):
            params = {"r": r}
            g = h_graph(r)
            upper = _pattern_upper("H", params, registry)
            if r % 2 == 0:
                yield _point_row(5, "H", params, g, 5, upper, budget, threads)
            else:
                yield _theorem5_odd_row(r, g, upper, budget, threads)
        return
    if args.n is not None:
        parser.error(f"theorem {theorem} ranges over --l/--r only")
    if theorem == 6:
        ls = rng(args.l, "3..6", "--l")
        rs = rng(args.r, "2..5", "--r")
        ls = [l for l in ls if l >= 3 and l != 5]
        if not ls:
            parser.error("theorem 6 covers l >= 3 with l != 5")
        for l in ls:
            for r in rs:
                params = {"l": l, "r": r}
                upper = _pattern_upper("GENH", params, registry)
                yield _point_row(6, "GENH", params, gen_h_graph(l, r),
                                 claimed_k("GENH", params), upper, budget, threads)
        return
    fixed_l = {7: 2, 8: 5}[theorem]
    if args.l is not None:
        parser.error(f"theorem {theorem} is the l={fixed_l} case; it takes no --l")
    default_r = {7: "2..5", 8: "2..4"}[theorem]
    for r in rng(args.r, default_r, "--r"):
        params = {"l": fixed_l, "r": r}
        upper = _pattern_upper("GENH", params, registry)
        yield _point_row(theorem, "GENH", params, gen_h_graph(fixed_l, r),
                         claimed_k("GENH", params), upper, budget, threads)


def _format_claimed(claimed) -> str:
    if isinstance(claimed, dict):
        return f"{claimed['min']}..{claimed['max']}"
    return str(claimed)


def _format_bound(bound) -> str:
    if bound is None:
        return "-"
    value = bound.get("value")
    source = bound.get("source", "?")
    return f"{value if value is not None else '-'} ({source})"


def cmd_table(parser, args) -> int:
    try:
        registry = load_registry(args.registry)
    except (OSError, RegistryError) as exc:
        parser.error(f"registry: {exc}")
    any_contradiction = False
    any_limited = False
    pretty_rows = []
    for row, contradiction, limited in _table_rows(parser, args, registry):
        any_contradiction = any_contradiction or contradiction
        any_limited = any_limited or limited
        if args.pretty:
            pretty_rows.append(row)
        else:
            _emit(row, False)
    if args.pretty:
        headers = ("params", "claimed", "upper", "lower", "agreement")
        cells = [
            (
                ", ".join(f"{k}={v}" for k, v in row["params"].items()),
                _format_claimed(row["claimed"]),
                _format_bound(row["upper"]),
                _format_bound(row["lower"]),
                "yes" if row["agreement"] else "NO",
            )
            for row in pretty_rows
        ]
        widths = [
            max(len(headers[i]), *(len(c[i]) for c in cells)) if cells else len(headers[i])
            for i in range(len(headers))
        ]
        print("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)))
        for c in cells:
            print("  ".join(c[i].ljust(widths[i]) for i in range(len(headers))))
    if any_contradiction:
        return EXIT_FAIL
    if any_limited:
        return EXIT_TIMEOUT
    return EXIT_OK


def _add_graph_args(p: argparse.ArgumentParser, with_file: bool = True) -> None:
    p.add_argument("--family", choices=FAMILIES, help="graph family")
    p.add_argument("--n", type=int, help="cycle length (CL, CORONA)")
    p.add_argument("--r", type=int, help="half cycle width (H, GENH, WINDOW)")
    p.add_argument("--l", type=int, help="interior level count (GENH, WINDOW)")
    p.add_argument("--cols", help="column range A..B (WINDOW)")
    if with_file:
        p.add_argument("--file", help="read the graph from a text file instead")


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=int, help="stop after this many search nodes")
    p.add_argument("--max-millis", type=int, help="stop after this much wall time")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packcol",
        description="Exact packing-colouring toolkit: generators, solver, "
                    "bounds, pattern certificates, claims, theorem tables.",
    )
    parser.add_argument("--version", action="version", version=f"packcol {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a family graph as text")
    _add_graph_args(p, with_file=False)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("decide", help="decide one packing k-colouring instance")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True, help="colour budget")
    p.add_argument("--fix", action="append", type=_parse_vertex_colour,
                   metavar="V=C", help="preassign colour C to vertex V")
    p.add_argument("--forbid", action="append", type=_parse_vertex_colour,
                   metavar="V=C", help="forbid colour C at vertex V")
    p.add_argument("--edge-require-one", action="append", metavar="EDGES",
                   help="require colour 1 on an endpoint of the named edges: "
                        "all, top-cycle, rungs, or an explicit pair U,V")
    p.add_argument("--order", choices=("eccentricity", "natural"),
                   default="eccentricity", help="variable order")
    p.add_argument("--threads", type=int, help="worker processes")
    _add_budget_args(p)
    p.add_argument("--cert", help="also write the certificate to this file")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("chi", help="exact packing chromatic number")
    _add_graph_args(p)
    p.add_argument("--threads", type=int, help="worker processes")
    _add_budget_args(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("rho", help="maximum i-packing sizes rho_1..rho_k")
    _add_graph_args(p)
    p.add_argument("--max-i", type=int, required=True, help="largest i")
    _add_budget_args(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("verify", help="revalidate a stored certificate file")
    p.add_argument("--cert", required=True, help="certificate or chi record file")
    p.add_argument("--recompute", action="store_true",
                   help="re-run UNSAT decisions instead of trusting the record")
    _add_budget_args(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pattern", help="verify periodic colouring patterns")
    p.add_argument("action", choices=("verify", "sweep"))
    p.add_argument("--family", required=True, help="CL, H, or GENH")
    p.add_argument("--n", type=lambda s: _one_or_range(s, "n"), default=None,
                   help="n value (verify) or A..B range (sweep)")
    p.add_argument("--r", type=lambda s: _one_or_range(s, "r"), default=None,
                   help="r value (verify) or A..B range (sweep)")
    p.add_argument("--l", type=lambda s: _one_or_range(s, "l"), default=None,
                   help="l value (verify) or A..B range (sweep)")
    p.add_argument("--registry", help="registry JSON path (default: bundled)")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_dispatch_pattern)

    p = sub.add_parser("claims", help="run an executable structural claim")
    p.add_argument("action", choices=("run",))
    p.add_argument("--name", required=True, choices=CLAIM_NAMES)
    p.add_argument("--l", type=int, help="interior level count")
    p.add_argument("--r", type=int, help="half cycle width")
    p.add_argument("--all-edges", action="store_true",
                   help="check every symmetric position, not a representative")
    _add_budget_args(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("table", help="reproduce a theorem's value table")
    p.add_argument("--theorem", type=int, required=True, choices=(3, 4, 5, 6, 7, 8))
    p.add_argument("--n", help="n range A..B")
    p.add_argument("--r", help="r range A..B")
    p.add_argument("--l", help="l range A..B")
    p.add_argument("--threads", type=int, help="worker processes")
    _add_budget_args(p)
    p.add_argument("--registry", help="registry JSON path (default: bundled)")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_table)

    return parser


class _OneOrRange:
    """Marker holding either a single int or a list of ints."""

    def __init__(self, single, many):
        self.single = single
        self.many = many


def _one_or_range(text: str, what: str) -> _OneOrRange:
    values = _parse_range(text, f"--{what}")
    single = values[0] if len(values) == 1 else None
    return _OneOrRange(single, values)


def _dispatch_pattern(parser, args) -> int:
    """Unpack the one-or-range pattern params into verify/sweep shapes."""
    for name in ("n", "r", "l"):
        holder = getattr(args, name)
        if holder is None:
            setattr(args, name + "_range", None)
            continue
        setattr(args, name + "_range", holder.many)
        if args.action == "verify" and holder.single is None:
            parser.error(f"pattern verify takes a single --{name}, not a range")
        setattr(args, name, holder.single)
    return cmd_pattern(parser, args)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
