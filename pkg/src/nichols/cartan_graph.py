"""The semi-Cartan graph attached to a diagram, its real roots and axioms."""
from __future__ import annotations

import hashlib
import logging
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .braiding import GDDiagram, is_indecomposable
from .cartan import DEFAULT_M_MAX, CartanMatrix, NotIFinite, cartan_matrix, cartan_row
from .reflection import Root, reflect_diagram, s_map

log = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 10000
DEFAULT_MAX_ROOTS = 10000


class AdmitsAllReflectionsFailure(ArithmeticError):
    def __init__(self, point: int, err: NotIFinite):
        self.point = point
        self.i = err.i
        super().__init__(f"point P{point}: {err}")


class PointBudgetExceeded(RuntimeError):
    pass


class RootBudgetExceeded(RuntimeError):
    pass


def budget_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


@dataclass(frozen=True)
class Point:
    id: int
    diagram: GDDiagram
    cartan: CartanMatrix


@dataclass
class CartanGraph:
    points: list[Point]
    edge: dict[tuple[int, int], int]
    base: int = 0

    @property
    def theta(self) -> int:
        return self.points[0].diagram.theta

    def r(self, x: int, i: int) -> int:
        return self.edge[(x, i)]

    def walk(self, x: int, word: Iterable[int]) -> int:
        """``r_{i_1} ... r_{i_k}(X)`` for ``word = (i_1, ..., i_k)``: rightmost acts first."""
        for i in reversed(list(word)):
            x = self.edge[(x, i)]
        return x

    def neighbors(self, x: int) -> list[int]:
        return [self.edge[(x, i)] for i in range(self.theta)]

    def cartan_at(self, x: int) -> CartanMatrix:
        return self.points[x].cartan


class LocalCartanGraph:
    """Points around a seed, reflected on demand.

    Unlike ``build_graph`` this never needs the whole graph to be finite or
    every point to admit all reflections: ``cartan_at`` and ``r`` raise
    ``NotIFinite`` only for the point and direction actually requested.
    """

    def __init__(self, d0: GDDiagram, max_points: int | None = None, m_max: int = DEFAULT_M_MAX):
        if max_points is None:
            max_points = budget_from_env("NICHOLS_BUDGET_POINTS", DEFAULT_MAX_POINTS)
        self.max_points = max_points
        self.m_max = m_max
        self.diagrams: list[GDDiagram] = [d0]
        self._index: dict[GDDiagram, int] = {d0: 0}
        self._rows: dict[tuple[int, int], tuple[int, ...] | NotIFinite] = {}
        self.edge: dict[tuple[int, int], int] = {}
        self.base = 0

    @property
    def theta(self) -> int:
        return self.diagrams[0].theta

    def _row(self, x: int, i: int) -> tuple[int, ...]:
        key = (x, i)
        if key not in self._rows:
            try:
                self._rows[key] = cartan_row(self.diagrams[x], i, self.m_max)
            except NotIFinite as err:
                self._rows[key] = err
        row = self._rows[key]
        if isinstance(row, NotIFinite):
            raise row
        return row

    def cartan_at(self, x: int) -> CartanMatrix:
        return CartanMatrix(tuple(self._row(x, i) for i in range(self.theta)))

    def r(self, x: int, i: int) -> int:
        y = self.edge.get((x, i))
        if y is None:
            d = reflect_diagram(self.diagrams[x], i, a_row=self._row(x, i))
            y = self._index.get(d)
            if y is None:
                if len(self.diagrams) >= self.max_points:
                    raise PointBudgetExceeded(f"more than {self.max_points} points")
                y = len(self.diagrams)
                self._index[d] = y
                self.diagrams.append(d)
            self.edge[(x, i)] = y
            self.edge[(y, i)] = x
        return y

    def walk(self, x: int, word: Iterable[int]) -> int:
        for i in reversed(list(word)):
            x = self.r(x, i)
        return x

    def ball(self, radius: int) -> list[int]:
        """Points at distance at most ``radius`` from the seed, in BFS order.

        Directions in which a point is not i-finite are skipped.
        """
        seen = [0]
        frontier = [0]
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for i in range(self.theta):
                    try:
                        y = self.r(x, i)
                    except NotIFinite:
                        continue
                    if y not in seen:
                        seen.append(y)
                        nxt.append(y)
            frontier = nxt
        return seen


def build_graph(
    d0: GDDiagram, max_points: int | None = None, m_max: int = DEFAULT_M_MAX
) -> CartanGraph:
    """Close ``d0`` under all reflections, breadth first.

    Points are distinct diagrams (literal label equality, no relabeling).
    """
    if max_points is None:
        max_points = budget_from_env("NICHOLS_BUDGET_POINTS", DEFAULT_MAX_POINTS)
    if not is_indecomposable(d0):
        log.warning("seed diagram is decomposable")
    theta = d0.theta
    index: dict[GDDiagram, int] = {d0: 0}
    diagrams = [d0]
    cartans: list[CartanMatrix] = []
    edge: dict[tuple[int, int], int] = {}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        d = diagrams[x]
        try:
            a = cartan_matrix(d, m_max)
        except NotIFinite as err:
            raise AdmitsAllReflectionsFailure(x, err) from err
        cartans.append(a)
        assert len(cartans) == x + 1
        for i in range(theta):
            y_diag = reflect_diagram(d, i, a_row=a.a[i])
            y = index.get(y_diag)
            if y is None:
                if len(diagrams) >= max_points:
                    raise PointBudgetExceeded(f"more than {max_points} points")
                y = len(diagrams)
                index[y_diag] = y
                diagrams.append(y_diag)
                queue.append(y)
            edge[(x, i)] = y
    points = [Point(k, diagrams[k], cartans[k]) for k in range(len(diagrams))]
    return CartanGraph(points, edge)


def simple_root(theta: int, i: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(theta))


def neg(v: Root) -> Root:
    return tuple(-x for x in v)


def height(v: Root) -> int:
    return sum(v)


@dataclass
class RootSystemData:
    roots: list[frozenset[Root]]

    def positive(self, x: int) -> list[Root]:
        return sort_roots(v for v in self.roots[x] if all(c >= 0 for c in v))

    def m(self, x: int, i: int, j: int) -> int:
        """Number of roots at X in N_0 alpha_i + N_0 alpha_j."""
        return sum(
            1
            for v in self.roots[x]
            if v[i] >= 0 and v[j] >= 0 and all(c == 0 for k, c in enumerate(v) if k not in (i, j))
        )


def sort_roots(roots: Iterable[Root]) -> list[Root]:
    """Height ascending, then coefficient vectors in decreasing lexicographic order."""
    return sorted(roots, key=lambda v: (height(v), tuple(-c for c in v)))


def enumerate_roots(g: CartanGraph, max_roots: int | None = None) -> RootSystemData:
    """Real roots at every point: fixpoint of pushing roots along every edge."""
    if max_roots is None:
        max_roots = budget_from_env("NICHOLS_BUDGET_ROOTS", DEFAULT_MAX_ROOTS)
    theta = g.theta
    seeds = [simple_root(theta, i) for i in range(theta)]
    roots: list[set[Root]] = [set(seeds) | {neg(v) for v in seeds} for _ in g.points]
    pending: list[set[Root]] = [set(r) for r in roots]
    queue = deque(range(len(g.points)))
    queued = set(queue)
    while queue:
        x = queue.popleft()
        queued.discard(x)
        new, pending[x] = pending[x], set()
        a = g.points[x].cartan
        for i in range(theta):
            y = g.edge[(x, i)]
            for v in new:
                w = s_map(a, i, v)
                if w not in roots[y]:
                    roots[y].add(w)
                    pending[y].add(w)
                    if len(roots[y]) > 2 * max_roots:
                        raise RootBudgetExceeded(f"more than {max_roots} positive roots at P{y}")
            if pending[y] and y not in queued:
                queue.append(y)
                queued.add(y)
    return RootSystemData([frozenset(r) for r in roots])


@dataclass
class AxiomReport:
    results: dict[str, list[str]] = field(default_factory=dict)

    def record(self, name: str, violation: Optional[str] = None) -> None:
        self.results.setdefault(name, [])
        if violation is not None:
            self.results[name].append(violation)

    @property
    def passed(self) -> bool:
        return all(not v for v in self.results.values())

    def failures(self) -> dict[str, list[str]]:
        return {k: v for k, v in self.results.items() if v}

    def summary(self) -> str:
        return "; ".join(f"{k}: {'ok' if not v else len(v)}" for k, v in self.results.items())


AXIOMS = (
    "reflection involution",
    "cartan row preserved",
    "indecomposable",
    "positive or negative",
    "simple multiples",
    "reflection maps roots",
    "coxeter relation",
    "root strings",
    "positive root count",
)


def verify_axioms(g: CartanGraph, rs: RootSystemData) -> AxiomReport:
    """Check the Cartan-graph and root-system axioms; failures become report entries."""
    rep = AxiomReport()
    for name in AXIOMS:
        rep.record(name)
    theta = g.theta
    counts = set()
    for pt in g.points:
        x = pt.id
        delta = rs.roots[x]
        a = pt.cartan
        if not a.is_indecomposable():
            rep.record("indecomposable", f"P{x}")
        for i in range(theta):
            y = g.r(x, i)
            if g.r(y, i) != x:
                rep.record("reflection involution", f"r_{i + 1} at P{x}")
            if g.points[y].cartan.a[i] != a.a[i]:
                rep.record("cartan row preserved", f"row {i + 1} at P{x}")
            image = frozenset(s_map(a, i, v) for v in delta)
            if image != rs.roots[y]:
                rep.record("reflection maps roots", f"s_{i + 1} from P{x} to P{y}")
        for v in delta:
            if not (all(c >= 0 for c in v) or all(c <= 0 for c in v)):
                rep.record("positive or negative", f"{v} at P{x}")
        for i in range(theta):
            mult = {v for v in delta if all(c == 0 for k, c in enumerate(v) if k != i)}
            e = simple_root(theta, i)
            if mult != {e, neg(e)}:
                rep.record("simple multiples", f"alpha_{i + 1} at P{x}: {sorted(mult)}")
        bound = max(max(abs(c) for c in v) for v in delta) + 1
        for i in range(theta):
            for j in range(theta):
                if i == j:
                    continue
                m = rs.m(x, i, j)
                y = x
                for _ in range(m):
                    y = g.r(g.r(y, j), i)
                if y != x:
                    rep.record("coxeter relation", f"(r_{i + 1} r_{j + 1})^{m} at P{x}")
                for k in range(-bound, bound + 1):
                    v = list(simple_root(theta, j))
                    v[i] += k
                    if (tuple(v) in delta) != (0 <= k <= -a.a[i][j]):
                        rep.record("root strings", f"alpha_{j + 1}+{k}alpha_{i + 1} at P{x}")
        counts.add(len(delta) // 2)
    if len(counts) != 1:
        rep.record("positive root count", f"counts {sorted(counts)}")
    return rep


@dataclass
class ExchangeGraph:
    vertices: list[int]
    edges: dict[tuple[int, int], tuple[int, ...]]

    def labels(self, x: int, y: int) -> tuple[int, ...]:
        return self.edges.get((min(x, y), max(x, y)), ())


def exchange_graph(g: CartanGraph) -> ExchangeGraph:
    edges: dict[tuple[int, int], list[int]] = {}
    for (x, i), y in sorted(g.edge.items()):
        if x < y:
            edges.setdefault((x, y), []).append(i)
    return ExchangeGraph([p.id for p in g.points], {k: tuple(v) for k, v in sorted(edges.items())})


def diagram_hash(d: GDDiagram) -> str:
    payload = repr((d.ambient.N, d.ambient.p, d.key())).encode()
    return hashlib.sha256(payload).hexdigest()[:10]


def to_dot(g: CartanGraph, ex: ExchangeGraph | None = None) -> str:
    ex = ex or exchange_graph(g)
    lines = ["graph exchange {"]
    for p in g.points:
        lines.append(f'  P{p.id} [label="P{p.id} {diagram_hash(p.diagram)}"];')
    for (x, y), labs in ex.edges.items():
        lab = ",".join(str(i + 1) for i in labs)
        lines.append(f'  P{x} -- P{y} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
