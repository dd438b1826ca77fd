"""Generalized Cartan matrices read off a diagram via the q-integer criterion."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braiding import GDDiagram, Permutation
from .cyclotomic import q_integer_is_zero

DEFAULT_M_MAX = 1000


class NotIFinite(ArithmeticError):
    """No admissible m exists for the pair (i, j) within the search bound."""

    def __init__(self, i: int, j: int | None = None, m_max: int | None = None):
        self.i = i
        self.j = j
        msg = f"diagram is not {i + 1}-finite"
        if j is not None:
            msg += f" (no bound for ad(x_{i + 1})^m(x_{j + 1}) up to m={m_max})"
        super().__init__(msg)


class InvalidCartan(ValueError):
    pass


@dataclass(frozen=True)
class CartanMatrix:
    a: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        theta = len(self.a)
        for i in range(theta):
            if len(self.a[i]) != theta:
                raise InvalidCartan("Cartan matrix must be square")
            if self.a[i][i] != 2:
                raise InvalidCartan(f"diagonal entry {i + 1} is {self.a[i][i]}, expected 2")
            for j in range(theta):
                if i != j and self.a[i][j] > 0:
                    raise InvalidCartan(f"positive off-diagonal entry at ({i + 1},{j + 1})")
                if self.a[i][j] == 0 and self.a[j][i] != 0:
                    raise InvalidCartan(f"a_{i + 1}{j + 1} = 0 but a_{j + 1}{i + 1} != 0")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "CartanMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def theta(self) -> int:
        return len(self.a)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.a[ij[0]][ij[1]]

    def relabel(self, sigma: Permutation) -> "CartanMatrix":
        """Matrix of the relabeled point: new entry (k, l) is old (sigma^-1 k, sigma^-1 l)."""
        src = [0] * len(sigma)
        for i, s in enumerate(sigma):
            src[s] = i
        n = self.theta
        return CartanMatrix(tuple(tuple(self.a[src[k]][src[l]] for l in range(n)) for k in range(n)))

    def is_indecomposable(self) -> bool:
        from .braiding import is_connected

        n = self.theta
        return is_connected([[j for j in range(n) if j != i and self.a[i][j] != 0] for i in range(n)])

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.a)


def cartan_entry(d: GDDiagram, i: int, j: int, m_max: int = DEFAULT_M_MAX) -> int:
    """``a_ij``: minus the smallest m >= 0 with (m+1)_q (q^m b - 1) = 0.

    Here ``q = q_ii`` and ``b = q_ij q_ji``.
    """
    if i == j:
        return 2
    q = d.vertex[i]
    b = d.edge[i][j]
    for m in range(m_max + 1):
        if q_integer_is_zero(m + 1, q) or (q**m * b).is_one():
            return -m
    raise NotIFinite(i, j, m_max)


def cartan_row(d: GDDiagram, i: int, m_max: int = DEFAULT_M_MAX) -> tuple[int, ...]:
    return tuple(cartan_entry(d, i, j, m_max) for j in range(d.theta))


def cartan_matrix(d: GDDiagram, m_max: int = DEFAULT_M_MAX) -> CartanMatrix:
    rows = tuple(cartan_row(d, i, m_max) for i in range(d.theta))
    try:
        return CartanMatrix(rows)
    except InvalidCartan as exc:  # the q-integer criterion always yields a valid matrix
        raise InvalidCartan(f"internal error for {d}: {exc}") from exc


def type_a(theta: int) -> CartanMatrix:
    return CartanMatrix(
        tuple(
            tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(theta))
            for i in range(theta)
        )
    )
