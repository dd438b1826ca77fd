"""Fixture corpus for the rank 5, 6, 7 classification and the end-to-end harness.

The rows, the exchange graphs and the root lists live in ``nichols/data``.
Diagram labels in ``rows.toml`` are words over a formal root of unity ``z``:
``1``, ``-1``, ``z``, ``z^-1``, ``z^2``, ``-z`` and so on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from math import gcd
from typing import Iterable, Optional, Sequence

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from .braiding import GDDiagram, diagram_iso
from .cartan import DEFAULT_M_MAX
from .cartan_graph import (
    AdmitsAllReflectionsFailure,
    CartanGraph,
    PointBudgetExceeded,
    RootBudgetExceeded,
    build_graph,
    enumerate_roots,
    verify_axioms,
)
from .cyclotomic import Ambient, is_prime
from .neighborhoods import goodnei_exists
from .reflection import Root

ROW_IDS = (11, 12, 13, 14, 15, 17, 18, 19, 21)
APPENDIX_FILES = {"A": "appendix_a.txt", "B": "appendix_b.txt", "C": "appendix_c.txt"}


class BadParameter(ValueError):
    pass


class ParseError(ValueError):
    pass


def _data(name: str) -> str:
    return resources.files("nichols").joinpath("data", name).read_text(encoding="utf-8")


# ---------------------------------------------------------------- labels

_LABEL = re.compile(r"^(-)?(?:(1)|([zq])(?:\^(-?\d+))?)$")


def label_exponent(label: str, base_exp: int, N: int) -> int:
    """Exponent of a label such as ``-z^-1`` when ``z = zeta^base_exp`` in mu_N."""
    m = _LABEL.match(label.strip())
    if m is None:
        raise BadParameter(f"unreadable label {label!r}")
    sign, one, _, k = m.groups()
    e = 0 if one else base_exp * (int(k) if k else 1)
    if sign:
        if N % 2:
            raise BadParameter(f"label {label!r} needs -1, which is not in mu_{N}")
        e += N // 2
    return e % N


@dataclass(frozen=True)
class ParametricDiagram:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, str], ...]  # 0-based endpoints

    def instantiate(self, ambient: Ambient, base_exp: int) -> GDDiagram:
        N = ambient.N
        return GDDiagram.from_labels(
            [ambient(label_exponent(v, base_exp, N)) for v in self.vertices],
            [(i, j, ambient(label_exponent(x, base_exp, N))) for i, j, x in self.edges],
        )


@dataclass(frozen=True)
class ParametricRow:
    row_id: int
    theta: int
    diagrams: tuple[ParametricDiagram, ...]
    zeta_order: int
    char_excluded: int

    def __post_init__(self) -> None:
        if any(len(d.vertices) != self.theta for d in self.diagrams):
            raise ValueError(f"row {self.row_id}: diagrams of mixed rank")
        if self.zeta_order not in (3, 4, 5):
            raise ValueError(f"row {self.row_id}: unexpected zeta order {self.zeta_order}")

    def default_ambient_order(self) -> int:
        n = self.zeta_order
        return n if n % 2 == 0 else 2 * n


def load_rows() -> dict[int, ParametricRow]:
    raw = tomllib.loads(_data("rows.toml"))
    rows = {}
    for r in raw["row"]:
        diagrams = tuple(
            ParametricDiagram(
                tuple(d["vertices"]), tuple((i - 1, j - 1, x) for i, j, x in d["edges"])
            )
            for d in sorted(r["diagram"], key=lambda d: d["index"])
        )
        rows[r["id"]] = ParametricRow(r["id"], r["theta"], diagrams, r["zeta_order"], r["char_excluded"])
    return rows


def smallest_admissible_prime(row: ParametricRow, N: Optional[int] = None) -> int:
    N = N or row.default_ambient_order()
    p = 2
    while p == row.char_excluded or gcd(N, p) != 1:
        p += 1
        while not is_prime(p):
            p += 1
    return p


def instantiate_row(
    row: ParametricRow, p: int, zeta_exp: Optional[int] = None, N: Optional[int] = None
) -> list[GDDiagram]:
    """Substitute ``zeta = (primitive N-th root)^zeta_exp`` into every diagram of the row."""
    N = N or row.default_ambient_order()
    if zeta_exp is None:
        zeta_exp = N // row.zeta_order
    if p == row.char_excluded:
        raise BadParameter(f"row {row.row_id} excludes characteristic {p}")
    try:
        ambient = Ambient(N, p)
    except ValueError as exc:
        raise BadParameter(str(exc)) from exc
    if p == 0:
        raise BadParameter("the rows are stated for positive characteristic")
    if ambient(zeta_exp).order() != row.zeta_order:
        raise BadParameter(
            f"zeta^{zeta_exp} has order {ambient(zeta_exp).order()} in mu_{N}, "
            f"row {row.row_id} needs {row.zeta_order}"
        )
    return [d.instantiate(ambient, zeta_exp) for d in row.diagrams]


# ---------------------------------------------------------------- root notation

_TERM = re.compile(r"(\d)(?:\^\{(\d+)\})?")


def parse_root_notation(s: str, theta: int) -> Root:
    """``"1^{2}234"`` -> ``(2, 1, 1, 1, 0)`` for theta = 5."""
    s = s.strip()
    if not s:
        raise ParseError("empty root token")
    v = [0] * theta
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None:
            raise ParseError(f"malformed root token {s!r} at position {pos}")
        d = int(m.group(1))
        if not 1 <= d <= theta:
            raise ParseError(f"simple root {d} out of range 1..{theta} in {s!r}")
        if v[d - 1]:
            raise ParseError(f"simple root {d} repeated in {s!r}")
        k = int(m.group(2)) if m.group(2) is not None else 1
        if k < 1:
            raise ParseError(f"coefficient must be positive in {s!r}")
        v[d - 1] = k
        pos = m.end()
    return tuple(v)


def emit_root(v: Sequence[int]) -> str:
    if len(v) > 9:
        raise ValueError("single-digit notation only covers rank <= 9")
    if any(c < 0 for c in v) or not any(v):
        raise ValueError(f"{tuple(v)} is not a positive root")
    return "".join(f"{k + 1}" + (f"^{{{c}}}" if c > 1 else "") for k, c in enumerate(v) if c)


@dataclass(frozen=True)
class RootList:
    label: str
    theta: int
    roots: tuple[Root, ...]
    tokens: tuple[str, ...]

    @property
    def count(self) -> int:
        return len(self.roots)


_HEADER = re.compile(r"^Nr\. (\d+) with (\d+) positive roots:$")


def parse_appendix(text: str, letter: str) -> list[RootList]:
    theta = None
    out: list[RootList] = []
    current: Optional[tuple[str, int, list[str]]] = None

    def close() -> None:
        if current is None:
            return
        label, count, toks = current
        roots = tuple(parse_root_notation(t, theta) for t in toks)
        if len(roots) != count:
            raise ValueError(f"{label}: header says {count} roots, found {len(roots)}")
        if len(set(roots)) != len(roots):
            raise ValueError(f"{label}: repeated root")
        out.append(RootList(label, theta, roots, tuple(toks)))

    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"# rank (\d+)", line)
            if m:
                theta = int(m.group(1))
            continue
        m = _HEADER.match(line)
        if m:
            close()
            current = (f"{letter}.Nr{m.group(1)}", int(m.group(2)), [])
            continue
        if current is None or theta is None:
            raise ValueError(f"root tokens before any header: {line!r}")
        current[2].extend(t.strip() for t in line.split(",") if t.strip())
    close()
    return out


def load_appendix() -> dict[str, RootList]:
    lists: dict[str, RootList] = {}
    for letter, name in APPENDIX_FILES.items():
        for rl in parse_appendix(_data(name), letter):
            lists[rl.label] = rl
    return lists


def _signature(roots: Iterable[Root], k: int) -> tuple[int, ...]:
    return tuple(sorted(v[k] for v in roots))


def root_set_permutations(
    roots: Iterable[Root], target: Iterable[Root], theta: int, first_only: bool = False
) -> list[tuple[int, ...]]:
    """Permutations rho with ``{v relabeled by rho} == target``.

    A root ``v`` relabeled by rho has coefficient ``v[k]`` at position ``rho[k]``.
    """
    have = list(roots)
    want = set(target)
    if len(have) != len(want) or len(set(have)) != len(have):
        return []
    sig_have = [_signature(have, k) for k in range(theta)]
    sig_want = [_signature(want, k) for k in range(theta)]
    out = []
    for rho in permutations(range(theta)):
        if any(sig_have[k] != sig_want[rho[k]] for k in range(theta)):
            continue
        ok = True
        for v in have:
            w = [0] * theta
            for k in range(theta):
                w[rho[k]] = v[k]
            if tuple(w) not in want:
                ok = False
                break
        if ok:
            out.append(rho)
            if first_only:
                break
    return out


# ---------------------------------------------------------------- exchange graphs of the table


@dataclass(frozen=True)
class ExchangeFixture:
    row_id: int
    nodes: tuple[tuple[str, int], ...]  # (tau word or "", 1-based diagram index)
    edges: tuple[tuple[int, int, tuple[int, ...]], ...]  # node ids, 1-based labels


def load_exchange_fixtures() -> dict[int, ExchangeFixture]:
    raw = tomllib.loads(_data("exchange_graphs.toml"))
    return {
        g["row"]: ExchangeFixture(
            g["row"],
            tuple((t, k) for t, k in g["nodes"]),
            tuple((u, v, tuple(ls)) for u, v, ls in g["edges"]),
        )
        for g in raw["graph"]
    }


def point_classes(g: CartanGraph, diagrams: Sequence[GDDiagram]) -> list[Optional[int]]:
    """For every point, the 0-based index of the row diagram it is isomorphic to."""
    out = []
    for p in g.points:
        out.append(next((k for k, d in enumerate(diagrams) if diagram_iso(p.diagram, d) is not None), None))
    return out


def match_exchange_structure(
    g: CartanGraph, classes: Sequence[Optional[int]], fx: ExchangeFixture
) -> Optional[tuple[tuple[int, ...], dict[int, int]]]:
    """Find a label permutation and a node-to-point bijection identifying the graphs.

    Nodes must go to points of the same diagram class; table edge label ``l``
    must be the reflection ``rho[l - 1]``; loops are absent from the table.
    """
    theta = g.theta
    n = len(fx.nodes)
    if n != len(g.points):
        return None
    node_class = [k - 1 for _, k in fx.nodes]
    nbr: dict[tuple[int, int], set[int]] = {}
    for u, v, ls in fx.edges:
        for l in ls:
            nbr.setdefault((u, l), set()).add(v)
            nbr.setdefault((v, l), set()).add(u)
    for rho in permutations(range(theta)):
        label_of = {rho[l - 1]: l for l in range(1, theta + 1)}
        assign: dict[int, int] = {}
        used: set[int] = set()

        def fits(node: int, x: int) -> bool:
            if classes[x] != node_class[node]:
                return False
            for i in range(theta):
                y = g.r(x, i)
                ends = nbr.get((node, label_of[i]), set())
                if y == x:
                    if ends:
                        return False
                    continue
                if len(ends) != 1:
                    return False
                m = next(iter(ends))
                if m in assign and assign[m] != y:
                    return False
            return True

        def extend(node: int) -> bool:
            if node == n:
                return True
            for x in range(n):
                if x not in used and fits(node, x):
                    assign[node] = x
                    used.add(x)
                    if extend(node + 1):
                        return True
                    del assign[node]
                    used.discard(x)
            return False

        if extend(0):
            return rho, dict(assign)
    return None


# ---------------------------------------------------------------- impossible chains


@dataclass(frozen=True)
class ImpossibleFamily:
    rank: int
    name: str
    condition: str
    chain: tuple[str, ...]

    def admissible(self, q_order: int, p: int) -> bool:
        if q_order < 2 or not is_prime(p) or gcd(p, q_order) != 1:
            return False
        if self.condition == "q_not_minus_one":
            return q_order != 2 and p != 2
        if self.condition == "q_not_order_3":
            return q_order != 3 and p != 3
        if self.condition == "q_order_4":
            return q_order == 4 and p != 2
        raise ValueError(f"unknown condition {self.condition!r}")

    def instantiate(self, q_order: int, p: int) -> GDDiagram:
        if not self.admissible(q_order, p):
            raise BadParameter(f"{self.rank}{self.name}: q of order {q_order}, p={p} not admissible")
        N = q_order if q_order % 2 == 0 else 2 * q_order
        amb = Ambient(N, p)
        base = N // q_order
        c = self.chain
        th = self.rank
        return GDDiagram.from_labels(
            [amb(label_exponent(c[2 * i], base, N)) for i in range(th)],
            [(i, i + 1, amb(label_exponent(c[2 * i + 1], base, N))) for i in range(th - 1)],
        )


def load_impossible_families() -> list[ImpossibleFamily]:
    raw = tomllib.loads(_data("impossible.toml"))
    out = []
    for f in raw["family"]:
        fam = ImpossibleFamily(f["rank"], f["name"], f["condition"], tuple(f["chain"]))
        if len(fam.chain) != 2 * fam.rank - 1:
            raise ValueError(f"family {fam.rank}{fam.name}: chain of wrong length")
        out.append(fam)
    return out


# ---------------------------------------------------------------- verification


@dataclass
class VerificationReport:
    row_id: int
    p: int
    N: int
    zeta_exp: int
    checks: dict[str, bool] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)
    points: Optional[int] = None
    positive_roots: Optional[int] = None
    missing_diagrams: list[int] = field(default_factory=list)
    unclassified_points: list[int] = field(default_factory=list)
    appendix_label: Optional[str] = None
    appendix_point: Optional[int] = None
    appendix_permutation: Optional[tuple[int, ...]] = None
    base_point_match: Optional[str] = None
    table_nodes: Optional[int] = None
    exchange_permutation: Optional[tuple[int, ...]] = None
    witness_point: Optional[int] = None
    witness: Optional[str] = None
    axioms: Optional[str] = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def to_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items()}
        for k in ("appendix_permutation", "exchange_permutation"):
            if d[k] is not None:
                d[k] = "".join(str(x + 1) for x in d[k])
        d["passed"] = self.passed
        return d

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"row {self.row_id}: {status} (p={self.p}, N={self.N}, zeta=zeta_{self.N}^{self.zeta_exp})"]
        lines.append(f"  points: {self.points}  positive roots: {self.positive_roots}")
        if self.appendix_label:
            perm = "".join(str(x + 1) for x in self.appendix_permutation or ())
            lines.append(f"  appendix: {self.appendix_label} at P{self.appendix_point} via {perm}")
        lines.append(f"  base point appendix match: {self.base_point_match or 'none'}")
        if self.witness:
            lines.append(f"  good neighborhood: P{self.witness_point} {self.witness}")
        if self.axioms:
            lines.append(f"  axioms: {self.axioms}")
        for name, ok in self.checks.items():
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
        for e in self.errors:
            lines.append(f"  error: {e}")
        return "\n".join(lines)


CHECKS = (
    "graph finite",
    "diagram classes",
    "appendix match",
    "root count",
    "exchange vertices",
    "exchange structure",
    "good neighborhood",
    "axioms",
)


def verify_row(
    row: ParametricRow,
    p: Optional[int] = None,
    *,
    max_points: Optional[int] = None,
    max_roots: Optional[int] = None,
    appendix: Optional[dict[str, RootList]] = None,
    exchange: Optional[dict[int, ExchangeFixture]] = None,
    m_max: int = DEFAULT_M_MAX,
) -> VerificationReport:
    """Build the row's graph from its first diagram and run every sub-check.

    Failures are recorded in the report, never raised (apart from
    ``BadParameter`` for an excluded characteristic).
    """
    N = row.default_ambient_order()
    p = p if p is not None else smallest_admissible_prime(row, N)
    zeta_exp = N // row.zeta_order
    diagrams = instantiate_row(row, p, zeta_exp, N)
    appendix = appendix if appendix is not None else load_appendix()
    exchange = exchange if exchange is not None else load_exchange_fixtures()
    rep = VerificationReport(row.row_id, p, N, zeta_exp)
    for name in CHECKS:
        rep.checks[name] = False

    try:
        g = build_graph(diagrams[0], max_points=max_points, m_max=m_max)
    except (AdmitsAllReflectionsFailure, PointBudgetExceeded) as exc:
        rep.errors.append(f"graph: {exc}")
        return rep
    rep.checks["graph finite"] = True
    rep.points = len(g.points)

    classes = point_classes(g, diagrams)
    rep.unclassified_points = [x for x, c in enumerate(classes) if c is None]
    rep.missing_diagrams = [k + 1 for k in range(len(diagrams)) if k not in classes]
    rep.checks["diagram classes"] = not rep.unclassified_points and not rep.missing_diagrams

    fx = exchange.get(row.row_id)
    if fx is not None:
        rep.table_nodes = len(fx.nodes)
        rep.checks["exchange vertices"] = rep.table_nodes == rep.points
        if rep.checks["diagram classes"]:
            found = match_exchange_structure(g, classes, fx)
            if found is not None:
                rep.exchange_permutation = found[0]
                rep.checks["exchange structure"] = True
    else:
        rep.errors.append(f"no exchange-graph fixture for row {row.row_id}")

    try:
        rs = enumerate_roots(g, max_roots)
    except RootBudgetExceeded as exc:
        rep.errors.append(f"roots: {exc}")
        return rep
    rep.positive_roots = len(rs.roots[0]) // 2

    candidates = [rl for rl in appendix.values() if rl.theta == g.theta]
    matched: dict[str, tuple[int, tuple[int, ...]]] = {}
    for pt in g.points:
        pos = rs.positive(pt.id)
        for rl in candidates:
            if rl.count != len(pos):
                continue
            perms = root_set_permutations(pos, rl.roots, g.theta, first_only=True)
            if perms:
                matched.setdefault(rl.label, (pt.id, perms[0]))
                if pt.id == g.base and rep.base_point_match is None:
                    rep.base_point_match = rl.label
    if len(matched) == 1:
        ((label, (x, rho)),) = matched.items()
        rep.appendix_label, rep.appendix_point, rep.appendix_permutation = label, x, rho
        rep.checks["appendix match"] = True
        rep.checks["root count"] = appendix[label].count == rep.positive_roots
    elif len(matched) > 1:
        rep.errors.append(f"several appendix lists match: {sorted(matched)}")
    else:
        rep.errors.append("no point matches an appendix list")

    hit = goodnei_exists(g)
    if hit is not None:
        rep.witness_point, w = hit
        rep.witness = w.describe()
        rep.checks["good neighborhood"] = True

    ax = verify_axioms(g, rs)
    rep.axioms = ax.summary()
    rep.checks["axioms"] = ax.passed
    return rep


@dataclass
class FullReport:
    reports: list[VerificationReport]
    coverage: dict[str, list[int]]

    @property
    def uncovered(self) -> list[str]:
        return [k for k, rows in self.coverage.items() if not rows]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports) and not self.uncovered


def verify_all(p: Optional[int] = None, rows: Optional[Iterable[int]] = None, **kwargs) -> FullReport:
    """Verify the rows in order and record which appendix lists some row matched."""
    table = load_rows()
    appendix = kwargs.pop("appendix", None) or load_appendix()
    ids = list(rows) if rows is not None else list(ROW_IDS)
    reports = []
    for r in ids:
        try:
            reports.append(verify_row(table[r], p, appendix=appendix, **kwargs))
        except BadParameter as exc:
            row = table[r]
            N = row.default_ambient_order()
            rep = VerificationReport(r, p if p is not None else 0, N, N // row.zeta_order)
            rep.checks["parameters"] = False
            rep.errors.append(f"BadParameter: {exc}")
            reports.append(rep)
    coverage: dict[str, list[int]] = {label: [] for label in appendix}
    for rep in reports:
        if rep.appendix_label:
            coverage[rep.appendix_label].append(rep.row_id)
    return FullReport(reports, coverage)
