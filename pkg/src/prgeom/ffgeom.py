"""Arithmetic and quadratic geometry over prime fields F_p."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np


def is_prime(p: int) -> bool:
    """Deterministic trial-division primality test."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or self.p < 3 or not is_prime(int(self.p)):
            raise ValueError(f"modulus must be an odd prime, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    def __call__(self, value: int) -> int:
        return int(value) % self.p

    def point(self, *coords: int) -> FieldPoint:
        return FieldPoint(self, tuple(coords))

    def points(self, dim: int):
        """All points of F_p^dim in lexicographic order (vertex index order)."""
        for coords in product(range(self.p), repeat=dim):
            yield FieldPoint(self, coords)

    def is_square(self, a: int) -> bool:
        a %= self.p
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def primitive_root(self) -> int:
        return primitive_root(self.p)


@dataclass(frozen=True)
class FieldPoint:
    field: PrimeField
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise ValueError("a field point needs at least one coordinate")
        object.__setattr__(self, "coords", tuple(int(c) % self.field.p for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self) -> int:
        """Lexicographic index of the point inside F_p^dim."""
        idx = 0
        for c in self.coords:
            idx = idx * self.field.p + c
        return idx

    @classmethod
    def from_index(cls, field: PrimeField, dim: int, index: int) -> FieldPoint:
        coords = []
        for _ in range(dim):
            index, r = divmod(index, field.p)
            coords.append(r)
        return cls(field, tuple(reversed(coords)))


def _check_compatible(x: FieldPoint, y: FieldPoint) -> None:
    if x.field.p != y.field.p:
        raise ValueError(f"modulus mismatch: {x.field.p} vs {y.field.p}")
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")


def quadratic_distance(x: FieldPoint, y: FieldPoint) -> int:
    """sum_i (x_i - y_i)^2 mod p."""
    _check_compatible(x, y)
    return sum((a - b) * (a - b) for a, b in zip(x.coords, y.coords)) % x.field.p


def dot(x: FieldPoint, y: FieldPoint) -> int:
    _check_compatible(x, y)
    return sum(a * b for a, b in zip(x.coords, y.coords)) % x.field.p


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of F_p^*, found by exhaustive order testing."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("unreachable: every prime field has a primitive root")


@dataclass(frozen=True)
class Subgroup:
    p: int
    elements: tuple[int, ...]

    @property
    def symmetric(self) -> bool:
        """True iff -1 lies in the subgroup, i.e. A = -A."""
        return (self.p - 1) in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return int(a) % self.p in self.elements


def multiplicative_subgroup(field: PrimeField | int, order: int) -> Subgroup:
    """The unique subgroup of F_p^* with `order` elements."""
    p = field.p if isinstance(field, PrimeField) else PrimeField(field).p
    if order < 1 or (p - 1) % order:
        raise ValueError(f"subgroup order {order} does not divide p-1 = {p - 1}")
    g = pow(primitive_root(p), (p - 1) // order, p)
    elems, x = set(), 1
    for _ in range(order):
        elems.add(x)
        x = x * g % p
    return Subgroup(p, tuple(sorted(elems)))


def point_array(p: int, dim: int) -> np.ndarray:
    """Coordinates of F_p^dim as an (p**dim, dim) int64 array in lexicographic order."""
    grids = np.indices((p,) * dim).reshape(dim, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)
