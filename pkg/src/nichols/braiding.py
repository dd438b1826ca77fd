"""Braiding matrices of diagonal type and generalized Dynkin diagrams."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .cyclotomic import Ambient, RootOfUnity

# A relabeling of {0..theta-1}: ``sigma[i]`` is the new index of vertex i.
Permutation = tuple[int, ...]


class SizeMismatch(ValueError):
    pass


def _common_ambient(values: Sequence[RootOfUnity]) -> Ambient:
    ambients = {v.ambient for v in values}
    if len(ambients) != 1:
        raise ValueError(f"entries must share one ambient, got {ambients}")
    return ambients.pop()


@dataclass(frozen=True)
class BraidingMatrix:
    q: tuple[tuple[RootOfUnity, ...], ...]

    def __post_init__(self) -> None:
        theta = len(self.q)
        if theta < 1 or any(len(row) != theta for row in self.q):
            raise ValueError("braiding matrix must be square with rank >= 1")
        _common_ambient([x for row in self.q for x in row])

    @classmethod
    def from_exponents(cls, exps: Sequence[Sequence[int]], ambient: Ambient) -> "BraidingMatrix":
        return cls(tuple(tuple(ambient(e) for e in row) for row in exps))

    @property
    def theta(self) -> int:
        return len(self.q)

    @property
    def ambient(self) -> Ambient:
        return self.q[0][0].ambient

    def exponents(self) -> list[list[int]]:
        return [[x.exp for x in row] for row in self.q]


@dataclass(frozen=True)
class GDDiagram:
    """Vertex labels ``q_ii`` and symmetric edge labels ``q_ij q_ji``.

    ``edge`` is a full symmetric matrix whose diagonal is fixed to 1; an edge
    is present iff its label differs from 1.
    """

    vertex: tuple[RootOfUnity, ...]
    edge: tuple[tuple[RootOfUnity, ...], ...]

    def __post_init__(self) -> None:
        theta = len(self.vertex)
        if theta < 1 or len(self.edge) != theta or any(len(r) != theta for r in self.edge):
            raise ValueError("diagram shape mismatch")
        amb = _common_ambient(list(self.vertex) + [x for r in self.edge for x in r])
        for i in range(theta):
            if not self.edge[i][i].is_one():
                raise ValueError("edge matrix diagonal must be 1")
            for j in range(i + 1, theta):
                if self.edge[i][j] != self.edge[j][i]:
                    raise ValueError(f"edge labels ({i},{j}) not symmetric")
        object.__setattr__(self, "_ambient", amb)

    @classmethod
    def from_labels(
        cls,
        vertex: Sequence[RootOfUnity],
        edges: dict[tuple[int, int], RootOfUnity] | Sequence[tuple[int, int, RootOfUnity]],
    ) -> "GDDiagram":
        """Build from vertex labels and 0-based edges ``(i, j) -> label``."""
        theta = len(vertex)
        amb = vertex[0].ambient
        mat = [[amb.one] * theta for _ in range(theta)]
        items = edges.items() if isinstance(edges, dict) else (((i, j), x) for i, j, x in edges)
        for (i, j), x in items:
            if i == j:
                raise ValueError("self-loops are not edges")
            mat[i][j] = mat[j][i] = x
        return cls(tuple(vertex), tuple(tuple(r) for r in mat))

    @classmethod
    def from_exponents(
        cls, vertex: Sequence[int], edges: Sequence[tuple[int, int, int]], ambient: Ambient
    ) -> "GDDiagram":
        return cls.from_labels(
            [ambient(v) for v in vertex], [(i, j, ambient(e)) for i, j, e in edges]
        )

    @property
    def theta(self) -> int:
        return len(self.vertex)

    @property
    def ambient(self) -> Ambient:
        return self._ambient  # type: ignore[attr-defined]

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and not self.edge[i][j].is_one()

    def edges(self) -> Iterator[tuple[int, int, RootOfUnity]]:
        """Present edges ``(i, j, label)`` with ``i < j``."""
        for i in range(self.theta):
            for j in range(i + 1, self.theta):
                if self.has_edge(i, j):
                    yield i, j, self.edge[i][j]

    def key(self) -> tuple:
        """Hashable exponent signature; equal keys iff equal diagrams."""
        return (
            tuple(v.exp for v in self.vertex),
            tuple(self.edge[i][j].exp for i in range(self.theta) for j in range(i + 1, self.theta)),
        )

    def __repr__(self) -> str:
        v = ",".join(str(x.exp) for x in self.vertex)
        e = " ".join(f"{i + 1}-{j + 1}:{x.exp}" for i, j, x in self.edges())
        return f"GDDiagram(N={self.ambient.N}, p={self.ambient.p}; v=[{v}]; {e})"


def diagram_of(m: BraidingMatrix) -> GDDiagram:
    theta = m.theta
    edge = tuple(
        tuple(m.ambient.one if i == j else m.q[i][j] * m.q[j][i] for j in range(theta))
        for i in range(theta)
    )
    return GDDiagram(tuple(m.q[i][i] for i in range(theta)), edge)


def _adjacency(d: GDDiagram) -> list[list[int]]:
    return [[j for j in range(d.theta) if d.has_edge(i, j)] for i in range(d.theta)]


def is_connected(adj: Sequence[Sequence[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(adj)


def is_indecomposable(m: BraidingMatrix | GDDiagram) -> bool:
    d = diagram_of(m) if isinstance(m, BraidingMatrix) else m
    return is_connected(_adjacency(d))


def check_permutation(sigma: Sequence[int], theta: int) -> Permutation:
    if len(sigma) != theta:
        raise SizeMismatch(f"permutation of size {len(sigma)} on rank {theta}")
    if sorted(sigma) != list(range(theta)):
        raise ValueError(f"not a permutation: {sigma}")
    return tuple(sigma)


def perm_from_word(word: str) -> Permutation:
    """1-based one-line notation, e.g. ``"12435"`` -> ``(0, 1, 3, 2, 4)``."""
    sigma = tuple(int(c) - 1 for c in word)
    return check_permutation(sigma, len(sigma))


def perm_to_word(sigma: Permutation) -> str:
    return "".join(str(k + 1) for k in sigma)


def compose(tau: Permutation, sigma: Permutation) -> Permutation:
    """``tau o sigma``: first apply sigma, then tau."""
    return tuple(tau[s] for s in sigma)


def invert(sigma: Permutation) -> Permutation:
    out = [0] * len(sigma)
    for i, s in enumerate(sigma):
        out[s] = i
    return tuple(out)


def apply_permutation(d: GDDiagram, sigma: Sequence[int]) -> GDDiagram:
    """Relabel so that old vertex ``i`` becomes vertex ``sigma[i]``."""
    sigma = check_permutation(sigma, d.theta)
    src = invert(sigma)
    vertex = tuple(d.vertex[src[k]] for k in range(d.theta))
    edge = tuple(tuple(d.edge[src[k]][src[l]] for l in range(d.theta)) for k in range(d.theta))
    return GDDiagram(vertex, edge)


def diagrams_equal(d1: GDDiagram, d2: GDDiagram) -> bool:
    return d1 == d2


def _invariant(d: GDDiagram, i: int) -> tuple:
    return (d.vertex[i].exp, tuple(sorted(d.edge[i][j].exp for j in range(d.theta) if j != i)))


def diagram_iso(d1: GDDiagram, d2: GDDiagram) -> Optional[Permutation]:
    """A relabeling ``sigma`` with ``apply_permutation(d1, sigma) == d2``, or None.

    Scans permutations in lexicographic order, restricted to those mapping
    each vertex to one with the same local invariant, so the returned
    witness is the lexicographically smallest.
    """
    if d1.theta != d2.theta or d1.ambient != d2.ambient:
        return None
    theta = d1.theta
    inv1 = [_invariant(d1, i) for i in range(theta)]
    inv2 = [_invariant(d2, i) for i in range(theta)]
    if sorted(inv1) != sorted(inv2):
        return None
    sigma = [0] * theta
    used = [False] * theta

    def extend(i: int) -> bool:
        if i == theta:
            return True
        for k in range(theta):
            if used[k] or inv1[i] != inv2[k]:
                continue
            if any(d1.edge[i][j] != d2.edge[k][sigma[j]] for j in range(i)):
                continue
            sigma[i] = k
            used[k] = True
            if extend(i + 1):
                return True
            used[k] = False
        return False

    return tuple(sigma) if extend(0) else None


def all_permutations(theta: int) -> Iterator[Permutation]:
    return permutations(range(theta))
