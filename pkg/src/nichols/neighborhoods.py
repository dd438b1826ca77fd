"""Detectors for good A_5, A_6 and A_7 neighborhoods.

Conditions are written with 1-based indices after a relabeling ``sigma`` of
the simple roots.  A composite entry such as ``a_15`` at ``r_2 r_3 r_4(X)``
is read off the point reached by applying ``r_4`` first, then ``r_3``, then
``r_2``; all such points already exist in the built graph.  The parameters
``a, b, c, d, e`` range over the non-negative integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional, Union

from .braiding import Permutation, invert
from .cartan import NotIFinite, type_a
from .cartan_graph import CartanGraph, LocalCartanGraph

Graph = Union[CartanGraph, LocalCartanGraph]


class RankMismatch(ValueError):
    pass


VARIANT_PARAMS = {
    "A5a": (1, 1, 0, 0, 1),
    "A5b": (0, 0, 1, 1, 2),
    "A5c": (0, 0, 1, 1, 1),
    "A6a": (0,),
    "A6b": (1,),
    "A7": (),
}


@dataclass(frozen=True)
class NeighborhoodWitness:
    sigma: Permutation
    variant: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if VARIANT_PARAMS[self.variant] != self.params:
            raise ValueError(f"parameters {self.params} inconsistent with {self.variant}")

    def describe(self) -> str:
        sigma = "".join(str(k + 1) for k in self.sigma)
        params = ",".join(map(str, self.params)) or "-"
        return f"sigma={sigma} variant={self.variant} params=({params})"


class _ChainBroken(Exception):
    """A required reflection or Cartan matrix does not exist."""


class _View:
    """Cartan data around X seen through a relabeling; new index k is old ``src[k-1]``."""

    def __init__(self, g: Graph, x: int, sigma: Permutation):
        self.g = g
        self.x = x
        self.src = invert(sigma)
        self._points: dict[tuple[int, ...], int] = {}

    def point(self, word: tuple[int, ...]) -> int:
        y = self._points.get(word)
        if y is None:
            try:
                y = self.g.walk(self.x, [self.src[i - 1] for i in word])
            except (NotIFinite, KeyError) as exc:
                raise _ChainBroken from exc
            self._points[word] = y
        return y

    def cartan(self, word: tuple[int, ...]):
        try:
            return self.g.cartan_at(self.point(word)).a
        except NotIFinite as exc:
            raise _ChainBroken from exc

    def a(self, word: tuple[int, ...], k: int, l: int) -> int:
        return self.cartan(word)[self.src[k - 1]][self.src[l - 1]]

    def matrix_is(self, word: tuple[int, ...], template: list[list[int]]) -> bool:
        a = self.cartan(word)
        src = self.src
        n = len(template)
        return all(a[src[k]][src[l]] == template[k][l] for k in range(n) for l in range(n))


def _template(theta: int, changes: dict[tuple[int, int], int]) -> list[list[int]]:
    m = [list(r) for r in type_a(theta).a]
    for (k, l), v in changes.items():
        m[k - 1][l - 1] = v
    return m


def _check_rank(g: Graph, theta: int) -> None:
    if g.theta != theta:
        raise RankMismatch(f"detector for rank {theta} applied to rank {g.theta}")


def _a5_at(v: _View) -> Optional[tuple[str, tuple[int, ...]]]:
    a5 = _template(5, {})
    for word in ((), (1,), (2,)):
        if not v.matrix_is(word, a5):
            return None
    a, b = -v.a((3,), 2, 4), -v.a((3,), 4, 2)
    c, d = -v.a((4,), 3, 5), -v.a((4,), 5, 3)
    e = -v.a((5,), 4, 3)
    if not v.matrix_is((3,), _template(5, {(2, 4): -a, (4, 2): -b})):
        return None
    if not v.matrix_is((4,), _template(5, {(3, 5): -c, (5, 3): -d})):
        return None
    if not v.matrix_is((5,), _template(5, {(4, 3): -e})):
        return None
    if v.a((2, 3, 4), 1, 5) != 0 or v.a((3, 2, 1), 4, 5) == -3:
        return None
    params = (a, b, c, d, e)
    if params == VARIANT_PARAMS["A5a"]:
        if (v.a((2, 3), 4, 1), v.a((2, 3), 4, 5)) == (0, -1) and (
            v.a((4, 5), 3, 2),
            v.a((2, 1), 3, 4),
        ) != (-2, -2):
            return "A5a", params
    elif params == VARIANT_PARAMS["A5b"]:
        if v.a((3, 4), 2, 5) in (0, -1) and (
            v.a((3, 2, 1), 4, 5),
            v.a((3, 2), 4, 5),
        ) != (-2, -2):
            return "A5b", params
    elif params == VARIANT_PARAMS["A5c"]:
        if (v.a((3, 4), 5, 2), v.a((5, 4), 3, 2)) == (-1, -1):
            return "A5c", params
    return None


def _a6_at(v: _View) -> Optional[tuple[str, tuple[int, ...]]]:
    a6 = _template(6, {})
    for word in ((), (1,), (2,), (3,), (6,)):
        if not v.matrix_is(word, a6):
            return None
    if not v.matrix_is((4,), _template(6, {(3, 5): -1, (5, 3): -1})):
        return None
    a = -v.a((5,), 4, 6)
    if not v.matrix_is((5,), _template(6, {(4, 6): -a, (6, 4): -a})):
        return None
    if v.a((5, 4), 3, 6) != 0 or v.a((3, 4), 2, 5) != 0:
        return None
    if a == 0:
        if (
            v.a((5, 4), 3, 2) == -1
            and v.a((5, 6), 4, 3) == -1
            and (v.a((3, 2, 1), 4, 5), v.a((3, 2), 4, 5)) != (-2, -2)
        ):
            return "A6a", (0,)
    elif a == 1:
        if v.a((3, 2), 4, 5) == -1 and v.a((3, 2, 1), 4, 5) == -1:
            return "A6b", (1,)
    return None


def _a7_at(v: _View) -> Optional[tuple[str, tuple[int, ...]]]:
    a7 = _template(7, {})
    for word in ((), (1,), (2,), (4,), (5,), (6,), (7,)):
        if not v.matrix_is(word, a7):
            return None
    if not v.matrix_is((3,), _template(7, {(2, 4): -1, (4, 2): -1})):
        return None
    if (v.a((4, 3), 2, 5), v.a((4, 3), 2, 1)) != (0, -1):
        return None
    if v.a((2, 3), 4, 5) != -1 or v.a((2, 1), 3, 4) != -1:
        return None
    for word in ((4, 5), (4, 5, 6), (4, 5, 6, 7)):
        if v.a(word, 3, 2) != -1:
            return None
    return "A7", ()


_DETECTORS = {5: _a5_at, 6: _a6_at, 7: _a7_at}


def _try(detect, view: _View) -> Optional[tuple[str, tuple[int, ...]]]:
    try:
        return detect(view)
    except _ChainBroken:
        return None


def _witnesses(g: Graph, x: int, theta: int) -> Iterator[NeighborhoodWitness]:
    _check_rank(g, theta)
    detect = _DETECTORS[theta]
    target = type_a(theta).a
    try:
        a = g.cartan_at(x).a
    except NotIFinite:
        return
    for sigma in permutations(range(theta)):
        src = invert(sigma)
        # every variant requires A^X = A_theta; test it before building any chains
        if any(a[src[k]][src[l]] != target[k][l] for k in range(theta) for l in range(theta)):
            continue
        hit = _try(detect, _View(g, x, sigma))
        if hit is not None:
            yield NeighborhoodWitness(sigma, *hit)


def _scan(g: Graph, x: int, theta: int) -> Optional[NeighborhoodWitness]:
    return next(_witnesses(g, x, theta), None)


def good_A5(g: Graph, x: int) -> Optional[NeighborhoodWitness]:
    return _scan(g, x, 5)


def good_A6(g: Graph, x: int) -> Optional[NeighborhoodWitness]:
    return _scan(g, x, 6)


def good_A7(g: Graph, x: int) -> Optional[NeighborhoodWitness]:
    return _scan(g, x, 7)


def good_neighborhood(g: Graph, x: int) -> Optional[NeighborhoodWitness]:
    if g.theta not in _DETECTORS:
        raise RankMismatch(f"good neighborhoods are defined for rank 5, 6, 7, not {g.theta}")
    return _scan(g, x, g.theta)


def all_witnesses(g: Graph, x: int) -> list[NeighborhoodWitness]:
    """Every relabeling under which X has a good neighborhood."""
    if g.theta not in _DETECTORS:
        raise RankMismatch(f"good neighborhoods are defined for rank 5, 6, 7, not {g.theta}")
    return list(_witnesses(g, x, g.theta))


def goodnei_exists(g: CartanGraph) -> Optional[tuple[int, NeighborhoodWitness]]:
    """First point in BFS order carrying a good A_theta neighborhood."""
    for p in g.points:
        w = good_neighborhood(g, p.id)
        if w is not None:
            return p.id, w
    return None
