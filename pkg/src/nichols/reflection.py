"""Reflections of diagrams, braiding matrices and of Z^theta.

``reflect_diagram`` works on diagram labels only, by the case analysis for
the labels of ``R_i(M)``: each pair is classified by which of the three
mutually exhaustive situations holds at vertex i (``q_ij q_ji = q_ii^a_ij``,
``q_ii`` primitive of order ``1 - a_ij``, or ``q_ii = 1``), every applicable
formula is evaluated, and the results must agree.

``reflect_matrix`` transports the bicharacter along ``s_i`` entrywise and is
kept independent of the case analysis so the two can be checked against each
other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braiding import BraidingMatrix, GDDiagram, diagram_of
from .cartan import DEFAULT_M_MAX, CartanMatrix, cartan_row
from .cyclotomic import RootOfUnity

Root = tuple[int, ...]


class CaseGap(ArithmeticError):
    """No case of the label formulas applies (or applicable cases disagree)."""


@dataclass(frozen=True)
class ReflectionMap:
    """The linear map ``s_i`` of a point, given by row i of its Cartan matrix."""

    i: int
    a_row: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.a_row[self.i] != 2:
            raise ValueError("pivot entry of a Cartan row must be 2")

    def __call__(self, v: Sequence[int]) -> Root:
        out = list(v)
        out[self.i] = v[self.i] - sum(a * x for a, x in zip(self.a_row, v))
        return tuple(out)


def s_map(a: CartanMatrix, i: int, v: Sequence[int]) -> Root:
    """Image of ``v`` under ``s_i alpha_j = alpha_j - a_ij alpha_i``."""
    return ReflectionMap(i, a.a[i])(v)


def _agree(values: list[RootOfUnity], what: str) -> RootOfUnity:
    if not values:
        raise CaseGap(f"no case applies to {what}")
    if any(v != values[0] for v in values[1:]):
        raise CaseGap(f"applicable cases disagree for {what}: {values}")
    return values[0]


def reflect_diagram(
    d: GDDiagram, i: int, m_max: int = DEFAULT_M_MAX, a_row: Sequence[int] | None = None
) -> GDDiagram:
    """Diagram of ``R_i(M)`` computed from the diagram of ``M``."""
    a = tuple(a_row) if a_row is not None else cartan_row(d, i, m_max)
    theta = d.theta
    q = d.vertex[i]
    b = d.edge[i]

    # Which situations hold for the pair (i, j); at least one always does.
    def cartan_type(j: int) -> bool:
        return b[j] == q ** a[j]

    def primitive(j: int) -> bool:
        return q.is_primitive(1 - a[j])

    q_is_one = q.is_one()

    vertex = list(d.vertex)
    edge = [list(r) for r in d.edge]
    for j in range(theta):
        if j == i:
            continue
        vals: list[RootOfUnity] = []
        evals: list[RootOfUnity] = []
        if cartan_type(j):
            vals.append(d.vertex[j])
            evals.append(b[j])
        if primitive(j):
            vals.append(q * d.vertex[j] * b[j] ** (-a[j]))
            evals.append(q**2 * b[j].inv())
        if q_is_one:
            vals.append(d.vertex[j] * b[j] ** (-a[j]))
            evals.append(b[j].inv())
        vertex[j] = _agree(vals, f"vertex {j + 1} reflected at {i + 1}")
        edge[i][j] = edge[j][i] = _agree(evals, f"edge {i + 1}-{j + 1} reflected at {i + 1}")

    adjacent = [j for j in range(theta) if j != i and not b[j].is_one()]
    for x, j in enumerate(adjacent):
        for k in adjacent[x + 1 :]:
            bjk = d.edge[j][k]
            vals = []
            if cartan_type(j) and cartan_type(k):
                vals.append(bjk)
            if cartan_type(j) and primitive(k):
                vals.append(bjk * (b[k] * q.inv()) ** (-a[j]))
            if cartan_type(k) and primitive(j):
                vals.append(bjk * (b[j] * q.inv()) ** (-a[k]))
            if q_is_one:
                vals.append(bjk * b[j] ** (-a[k]) * b[k] ** (-a[j]))
            if primitive(j) and primitive(k):
                vals.append(bjk * q**2 * (b[j] * b[k]) ** (-a[j]))
            edge[j][k] = edge[k][j] = _agree(vals, f"edge {j + 1}-{k + 1} reflected at {i + 1}")
    # pairs with at most one endpoint adjacent to i keep their label
    return GDDiagram(tuple(vertex), tuple(tuple(r) for r in edge))


def _bichar(m: BraidingMatrix, x: Sequence[int], y: Sequence[int]) -> RootOfUnity:
    out = m.ambient.one
    for r, xr in enumerate(x):
        if xr:
            for s, ys in enumerate(y):
                if ys:
                    out = out * m.q[r][s] ** (xr * ys)
    return out


def reflect_matrix(m: BraidingMatrix, i: int, m_max: int = DEFAULT_M_MAX) -> BraidingMatrix:
    """Braiding matrix of ``R_i(M)`` with respect to the reflected basis.

    ``q'_jk = q_jk q_ik^(-a_ij) q_ji^(-a_ik) q_ii^(a_ij a_ik)``, i.e. the
    bicharacter evaluated on ``s_i alpha_j`` and ``s_i alpha_k``.
    """
    a = cartan_row(diagram_of(m), i, m_max)
    theta = m.theta
    images = []
    for j in range(theta):
        v = [0] * theta
        v[j] += 1
        v[i] -= a[j]
        images.append(v)
    return BraidingMatrix(
        tuple(tuple(_bichar(m, images[j], images[k]) for k in range(theta)) for j in range(theta))
    )


def reflect_matrix_entrywise(m: BraidingMatrix, i: int, a: Sequence[int]) -> BraidingMatrix:
    """Same map written with the closed entry formula (used as a cross-check)."""
    q = m.q
    theta = m.theta
    return BraidingMatrix(
        tuple(
            tuple(
                q[j][k] * q[i][k] ** (-a[j]) * q[j][i] ** (-a[k]) * q[i][i] ** (a[j] * a[k])
                for k in range(theta)
            )
            for j in range(theta)
        )
    )

