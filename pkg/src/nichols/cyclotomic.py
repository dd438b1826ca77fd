"""Roots of unity in a field of characteristic p, stored as exponents.

Every root of unity is a power of one fixed primitive N-th root ``zeta``.
Products, inverses and powers are exponent arithmetic mod N; the only
additive statement ever needed, vanishing of the q-integer
``(n)_q = 1 + q + ... + q^(n-1)``, reduces to an order/divisibility test.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class AmbientMismatch(ValueError):
    """Raised when combining roots of unity from different ambients."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Ambient:
    """The cyclic group mu_N inside a field of characteristic ``p`` (0 allowed)."""

    N: int
    p: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"ambient order must be positive, got N={self.N}")
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"characteristic must be 0 or prime, got p={self.p}")
        if self.p and gcd(self.N, self.p) != 1:
            raise ValueError(
                f"no primitive {self.N}-th root of unity in characteristic {self.p}"
            )

    def __call__(self, exp: int) -> "RootOfUnity":
        return RootOfUnity(exp % self.N, self)

    @property
    def one(self) -> "RootOfUnity":
        return RootOfUnity(0, self)

    @property
    def zeta(self) -> "RootOfUnity":
        return RootOfUnity(1 % self.N, self)

    @property
    def minus_one(self) -> "RootOfUnity":
        if self.N % 2:
            raise ValueError(f"-1 is not in mu_{self.N}")
        return RootOfUnity(self.N // 2, self)

    def elements(self) -> list["RootOfUnity"]:
        return [RootOfUnity(e, self) for e in range(self.N)]

    def primitive(self, m: int) -> list["RootOfUnity"]:
        """All elements of exact order ``m`` (empty when m does not divide N)."""
        return [x for x in self.elements() if x.order() == m]


@dataclass(frozen=True)
class RootOfUnity:
    exp: int
    ambient: Ambient

    def __post_init__(self) -> None:
        if not 0 <= self.exp < self.ambient.N:
            object.__setattr__(self, "exp", self.exp % self.ambient.N)

    def _check(self, other: "RootOfUnity") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        self._check(other)
        return RootOfUnity((self.exp + other.exp) % self.ambient.N, self.ambient)

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return self * other.inv()

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity((k * self.exp) % self.ambient.N, self.ambient)

    def inv(self) -> "RootOfUnity":
        return RootOfUnity(-self.exp % self.ambient.N, self.ambient)

    def is_one(self) -> bool:
        return self.exp == 0

    def order(self) -> int:
        return self.ambient.N // gcd(self.ambient.N, self.exp)

    def is_primitive(self, m: int) -> bool:
        """Membership in the set of primitive m-th roots of unity."""
        return self.order() == m

    def __repr__(self) -> str:
        return f"zeta^{self.exp} in mu_{self.ambient.N} (p={self.ambient.p})"


def mul(a: RootOfUnity, b: RootOfUnity) -> RootOfUnity:
    return a * b


def inv(a: RootOfUnity) -> RootOfUnity:
    return a.inv()


def power(a: RootOfUnity, k: int) -> RootOfUnity:
    return a**k


def order(a: RootOfUnity) -> int:
    return a.order()


def is_primitive(a: RootOfUnity, m: int) -> bool:
    return a.is_primitive(m)


def q_integer_is_zero(n: int, q: RootOfUnity) -> bool:
    """Whether ``(n)_q`` vanishes in the field.

    For ``q != 1`` this is ``q^n == 1``; for ``q == 1`` it is ``p | n`` with
    ``p > 0``.  ``n == 0`` is never queried by the Cartan criterion and is
    reported as nonzero.
    """
    if n < 0:
        raise ValueError("q-integers are defined for n >= 0")
    if n == 0:
        return False
    if q.is_one():
        p = q.ambient.p
        return p > 0 and n % p == 0
    return (q**n).is_one()
