"""Periodic colouring patterns: registry loading, instantiation, verification.

A registry entry describes a colour grid for one parameter case of a family
(CL, H, or GENH). Grids assemble as rows = row_prefix + row_repeat x count +
row_suffix, and each row as prefix + repeat x count + suffix, with repeat
counts given by restricted linear formulas ((param - sub) / div). Assembly is
plain concatenation; validity on the actual cyclic graph is established by
is_packing_colouring on every instantiation, so a transcription mistake can
never be silently accepted.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

from .families import circular_ladder, gen_h_graph, h_graph
from .graphs import Colouring, Graph, all_pairs_distances, is_packing_colouring

__all__ = [
    "REGISTRY_SCHEMA",
    "REGISTRY_ENV_VAR",
    "RegistryError",
    "Formula",
    "Condition",
    "RowSpec",
    "PatternSpec",
    "VerifyReport",
    "default_registry_path",
    "load_registry",
    "find_entry",
    "instantiate",
    "verify_case",
    "sweep",
    "claimed_k",
]

REGISTRY_SCHEMA = "packcol-registry/1"
REGISTRY_ENV_VAR = "PACKCOL_REGISTRY"

FAMILY_PARAMS = {"CL": ("n",), "H": ("r",), "GENH": ("l", "r")}
FAMILY_ROWS = {"CL": 2, "H": 3}  # GENH row count depends on l
ALLOWED_DIVS = (1, 2, 3, 4, 6)


class RegistryError(ValueError):
    """Schema violation or overlapping applicability in a registry file."""


@dataclass(frozen=True)
class Formula:
    """(value(param) - sub) / div, required to be a non-negative integer."""

    param: str
    sub: int
    div: int

    def count(self, params: dict, where: str) -> int:
        value = params[self.param]
        num = value - self.sub
        if num < 0 or num % self.div:
            raise RegistryError(
                f"{where}: ({self.param}={value} - {self.sub})/{self.div} "
                "is not a non-negative integer"
            )
        return num // self.div


@dataclass(frozen=True)
class Condition:
    """min <= value <= max (max None = unbounded), value == res (mod m)."""

    min: int
    max: int | None = None
    mod: tuple[int, int] | None = None

    def matches(self, value: int) -> bool:
        if value < self.min:
            return False
        if self.max is not None and value > self.max:
            return False
        if self.mod is not None:
            m, res = self.mod
            if value % m != res:
                return False
        return True


@dataclass(frozen=True)
class RowSpec:
    prefix: tuple[int, ...]
    repeat: tuple[int, ...]
    suffix: tuple[int, ...]

    def build(self, col_count: int) -> list[int]:
        return list(self.prefix) + list(self.repeat) * col_count + list(self.suffix)


@dataclass(frozen=True)
class PatternSpec:
    family: str
    case_name: str
    k: int
    applicability: tuple[tuple[str, Condition], ...]
    col_repeats: Formula | None
    row_repeats: Formula | None
    row_prefix: tuple[RowSpec, ...]
    row_repeat: tuple[RowSpec, ...]
    row_suffix: tuple[RowSpec, ...]

    def applies(self, params: dict) -> bool:
        return all(c.matches(params[p]) for p, c in self.applicability)


@dataclass(frozen=True)
class VerifyReport:
    family: str
    params: tuple[tuple[str, int], ...]
    case_name: str
    k_used: int
    valid: bool
    violation: tuple[int, int, int] | None


def default_registry_path() -> Path:
    env = os.environ.get(REGISTRY_ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "registry.json"


def _parse_formula(raw, where: str) -> Formula:
    if not isinstance(raw, dict):
        raise RegistryError(f"{where}: formula must be an object")
    extra = set(raw) - {"param", "sub", "div"}
    if extra:
        raise RegistryError(f"{where}: unknown formula keys {sorted(extra)}")
    param, sub, div = raw.get("param"), raw.get("sub"), raw.get("div")
    if param not in ("n", "r", "l"):
        raise RegistryError(f"{where}: formula param must be n, r, or l")
    if not isinstance(sub, int) or isinstance(sub, bool):
        raise RegistryError(f"{where}: formula sub must be an integer")
    if div not in ALLOWED_DIVS:
        raise RegistryError(f"{where}: formula div must be one of {ALLOWED_DIVS}")
    return Formula(param, sub, div)


def _parse_condition(raw, where: str) -> Condition:
    if not isinstance(raw, dict):
        raise RegistryError(f"{where}: condition must be an object")
    extra = set(raw) - {"min", "max", "mod"}
    if extra:
        raise RegistryError(f"{where}: unknown condition keys {sorted(extra)}")
    mn = raw.get("min")
    if not isinstance(mn, int) or isinstance(mn, bool):
        raise RegistryError(f"{where}: condition needs an integer min")
    mx = raw.get("max")
    if mx is not None and (not isinstance(mx, int) or mx < mn):
        raise RegistryError(f"{where}: max must be an integer >= min")
    mod = None
    if raw.get("mod") is not None:
        pair = raw["mod"]
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, int) for x in pair)
                or pair[0] < 2 or not 0 <= pair[1] < pair[0]):
            raise RegistryError(f"{where}: mod must be [m, res] with 0 <= res < m")
        mod = (pair[0], pair[1])
    return Condition(mn, mx, mod)


def _parse_rowspec(raw, k: int, where: str) -> RowSpec:
    if not isinstance(raw, dict):
        raise RegistryError(f"{where}: row must be an object")
    extra = set(raw) - {"prefix", "repeat", "suffix"}
    if extra:
        raise RegistryError(f"{where}: unknown row keys {sorted(extra)}")
    parts = []
    for key in ("prefix", "repeat", "suffix"):
        block = raw.get(key, [])
        if not isinstance(block, list):
            raise RegistryError(f"{where}.{key}: must be a list of integers")
        for x in block:
            if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= k:
                raise RegistryError(
                    f"{where}.{key}: colour {x!r} outside 1..{k}"
                )
        parts.append(tuple(block))
    return RowSpec(*parts)


def _parse_entry(raw, idx: int) -> PatternSpec:
    where = f"entries[{idx}]"
    if not isinstance(raw, dict):
        raise RegistryError(f"{where}: entry must be an object")
    known = {"family", "case_name", "k", "applicability", "col_repeats",
             "row_repeats", "row_prefix", "row_repeat", "row_suffix"}
    extra = set(raw) - known
    if extra:
        raise RegistryError(f"{where}: unknown keys {sorted(extra)}")
    family = raw.get("family")
    if family not in FAMILY_PARAMS:
        raise RegistryError(f"{where}: family must be one of {sorted(FAMILY_PARAMS)}")
    case_name = raw.get("case_name")
    if not isinstance(case_name, str) or not case_name:
        raise RegistryError(f"{where}: case_name must be a non-empty string")
    k = raw.get("k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise RegistryError(f"{where}: k must be a positive integer")
    app_raw = raw.get("applicability")
    if not isinstance(app_raw, dict) or set(app_raw) != set(FAMILY_PARAMS[family]):
        raise RegistryError(
            f"{where}: applicability must have exactly the params "
            f"{list(FAMILY_PARAMS[family])}"
        )
    applicability = tuple(
        (p, _parse_condition(app_raw[p], f"{where}.applicability.{p}"))
        for p in FAMILY_PARAMS[family]
    )
    col_repeats = raw.get("col_repeats")
    if col_repeats is not None:
        col_repeats = _parse_formula(col_repeats, f"{where}.col_repeats")
    row_repeats = raw.get("row_repeats")
    if row_repeats is not None:
        row_repeats = _parse_formula(row_repeats, f"{where}.row_repeats")
    rows = {}
    for key in ("row_prefix", "row_repeat", "row_suffix"):
        block = raw.get(key, [])
        if not isinstance(block, list):
            raise RegistryError(f"{where}.{key}: must be a list of rows")
        rows[key] = tuple(
            _parse_rowspec(r, k, f"{where}.{key}[{i}]") for i, r in enumerate(block)
        )
    spec = PatternSpec(family, case_name, k, applicability, col_repeats,
                       row_repeats, rows["row_prefix"], rows["row_repeat"],
                       rows["row_suffix"])
    fixed_rows = FAMILY_ROWS.get(family)
    if fixed_rows is not None:
        if spec.row_repeat or spec.row_suffix or spec.row_repeats is not None:
            raise RegistryError(
                f"{where}: family {family} has a fixed row count; "
                "only row_prefix is allowed"
            )
        if len(spec.row_prefix) != fixed_rows:
            raise RegistryError(
                f"{where}: family {family} needs exactly {fixed_rows} rows, "
                f"got {len(spec.row_prefix)}"
            )
    if spec.row_repeat and spec.row_repeats is None:
        raise RegistryError(f"{where}: row_repeat present without row_repeats")
    if col_repeats is None:
        for key in ("row_prefix", "row_repeat", "row_suffix"):
            for i, r in enumerate(rows[key]):
                if r.repeat:
                    raise RegistryError(
                        f"{where}.{key}[{i}]: column repeat block present "
                        "without col_repeats"
                    )
    return spec


def _conditions_intersect(c1: Condition, c2: Condition) -> bool:
    lo = max(c1.min, c2.min)
    hi = None
    for c in (c1, c2):
        if c.max is not None:
            hi = c.max if hi is None else min(hi, c.max)
    m1, r1 = c1.mod or (1, 0)
    m2, r2 = c2.mod or (1, 0)
    lcm = m1 * m2 // math.gcd(m1, m2)
    common = [x for x in range(lcm) if x % m1 == r1 and x % m2 == r2]
    if not common:
        return False
    res = common[0]
    # smallest value >= lo in the combined progression
    first = res + lcm * max(0, -(-(lo - res) // lcm))
    if first < lo:
        first += lcm
    return hi is None or first <= hi


def _check_overlaps(entries: tuple[PatternSpec, ...]) -> None:
    by_family: dict[str, list[PatternSpec]] = {}
    for e in entries:
        by_family.setdefault(e.family, []).append(e)
    for family, group in by_family.items():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                da, db = dict(a.applicability), dict(b.applicability)
                if all(_conditions_intersect(da[p], db[p]) for p in da):
                    raise RegistryError(
                        f"overlapping applicability in family {family}: "
                        f"{a.case_name!r} and {b.case_name!r}"
                    )


def load_registry(path: str | Path | None = None) -> tuple[PatternSpec, ...]:
    p = Path(path) if path is not None else default_registry_path()
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError:
        raise RegistryError(f"registry file not found: {p}")
    except json.JSONDecodeError as exc:
        raise RegistryError(f"registry {p} is not valid JSON: {exc}")
    if not isinstance(doc, dict) or doc.get("schema") != REGISTRY_SCHEMA:
        raise RegistryError(
            f"registry {p} must declare schema {REGISTRY_SCHEMA!r}"
        )
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, list) or not raw_entries:
        raise RegistryError(f"registry {p}: entries must be a non-empty list")
    entries = tuple(_parse_entry(e, i) for i, e in enumerate(raw_entries))
    _check_overlaps(entries)
    return entries


_DEFAULT_CACHE: tuple[PatternSpec, ...] | None = None


def _registry_or_default(registry) -> tuple[PatternSpec, ...]:
    global _DEFAULT_CACHE
    if registry is not None:
        return registry
    if _DEFAULT_CACHE is None:
        _DEFAULT_CACHE = load_registry()
    return _DEFAULT_CACHE


def _check_params(family: str, params: dict) -> None:
    if family not in FAMILY_PARAMS:
        raise ValueError(f"unknown family {family!r}")
    expect = set(FAMILY_PARAMS[family])
    if set(params) != expect:
        raise ValueError(
            f"family {family} takes params {sorted(expect)}, got {sorted(params)}"
        )


def find_entry(family: str, params: dict, registry=None) -> PatternSpec:
    _check_params(family, params)
    matches = [e for e in _registry_or_default(registry)
               if e.family == family and e.applies(params)]
    if not matches:
        pretty = ", ".join(f"{p}={params[p]}" for p in sorted(params))
        raise LookupError(f"no registry entry applies to {family}({pretty})")
    if len(matches) > 1:
        names = [e.case_name for e in matches]
        raise RegistryError(f"multiple entries apply to {family} {params}: {names}")
    return matches[0]


def _family_graph(family: str, params: dict) -> Graph:
    if family == "CL":
        return circular_ladder(params["n"])
    if family == "H":
        return h_graph(params["r"])
    return gen_h_graph(params["l"], params["r"])


def instantiate(spec: PatternSpec, params: dict) -> tuple[Graph, Colouring]:
    """Assemble the grid for params and map it onto the family graph."""
    _check_params(spec.family, params)
    if not spec.applies(params):
        pretty = ", ".join(f"{p}={params[p]}" for p in sorted(params))
        raise ValueError(
            f"entry {spec.case_name!r} does not apply to {spec.family}({pretty})"
        )
    where = f"entry {spec.case_name!r}"
    col_count = spec.col_repeats.count(params, where) if spec.col_repeats else 0
    row_count = spec.row_repeats.count(params, where) if spec.row_repeats else 0
    rowspecs = (list(spec.row_prefix)
                + list(spec.row_repeat) * row_count
                + list(spec.row_suffix))
    rows = [rs.build(col_count) for rs in rowspecs]

    g = _family_graph(spec.family, params)
    if spec.family == "CL":
        width, nrows = params["n"], 2
    elif spec.family == "H":
        width, nrows = 2 * params["r"], 3
    else:
        width, nrows = 2 * params["r"], params["l"] + 2
    if len(rows) != nrows:
        raise RegistryError(
            f"{where}: assembled {len(rows)} rows, family needs {nrows}"
        )
    for i, r in enumerate(rows):
        if len(r) != width:
            raise RegistryError(
                f"{where}: row {i} has {len(r)} columns, family needs {width}"
            )
    colours = [0] * g.n
    for level, r in enumerate(rows):
        base = level * width
        for col, c in enumerate(r):
            colours[base + col] = c
    return g, Colouring(tuple(colours), spec.k)


def verify_case(family: str, params: dict, registry=None) -> VerifyReport:
    spec = find_entry(family, params, registry)
    g, colouring = instantiate(spec, params)
    report = is_packing_colouring(all_pairs_distances(g), colouring)
    return VerifyReport(
        family=family,
        params=tuple(sorted(params.items())),
        case_name=spec.case_name,
        k_used=spec.k,
        valid=report.valid,
        violation=report.violation,
    )


class SweepError(RuntimeError):
    def __init__(self, report: VerifyReport, reason: str = "invalid pattern row"):
        self.report = report
        pretty = ", ".join(f"{p}={v}" for p, v in report.params)
        super().__init__(
            f"{reason}: {report.family}({pretty}) "
            f"case {report.case_name!r} violation {report.violation}"
        )


def sweep(family: str, ranges: dict, registry=None) -> list[VerifyReport]:
    """Verify every parameter combination in the given ranges.

    ranges maps each family parameter to an iterable of values. Any invalid
    instantiation aborts the sweep with the violating report attached.
    """
    _check_params(family, {p: 0 for p in ranges})
    names = FAMILY_PARAMS[family]
    combos: list[dict] = [{}]
    for name in names:
        combos = [dict(c, **{name: v}) for c in combos for v in ranges[name]]
    out = []
    for params in combos:
        report = verify_case(family, params, registry)
        if not report.valid:
            raise SweepError(report)
        if report.k_used != claimed_k(family, params):
            raise SweepError(report, reason="pattern k differs from the claimed value")
        out.append(report)
    return out


def claimed_k(family: str, params: dict) -> int:
    """The exact value (or proven upper bound) asserted for these parameters."""
    _check_params(family, params)
    if family == "CL":
        n = params["n"]
        if n < 3:
            raise ValueError("CL needs n >= 3")
        if n in (7, 8, 9):
            return 7
        if n == 3 or (n % 2 == 0 and n not in (8, 14)):
            return 5
        return 6
    if family == "H":
        # odd r: the exact value is only bracketed; 7 is the pattern bound
        return 5 if params["r"] % 2 == 0 else 7
    l, r = params["l"], params["r"]
    if l == 2:
        return 7 if r in (2, 4, 7, 8, 11) else 6
    if l == 5:
        return 6
    if l == 1:
        return 5 if r % 2 == 0 else 7
    return 5 if r % 2 == 0 else 6
