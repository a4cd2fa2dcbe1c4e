"""Grading groups, cyclic-product carriers and the canonical element order.

Everything here is immutable.  Degrees and carrier elements are plain
tuples of ints so they hash, compare and pickle without ceremony; the
group/carrier objects know how to reduce, combine and order them.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

Degree = tuple
Element = tuple

DEFAULT_BOUND = 10


class StructureError(ValueError):
    """Raised when objects from different structures are combined."""


class PreconditionError(ValueError):
    """Raised when an operation's documented precondition is violated."""


class UnsupportedModeError(ValueError):
    """Raised for operations that need finite carriers but got an infinite one."""


def _reduce(orders: Sequence[int], coords: Iterable[int]) -> tuple:
    return tuple(c % d if d else c for d, c in zip(orders, coords))


def coordinate_key(order: int, value: int):
    # unbounded coordinates: small |x| first, + before -
    if order:
        return (value,)
    return (abs(value), value < 0)


def box_values(order: int, bound: int) -> list[int]:
    if order:
        return list(range(order))
    out = [0]
    for v in range(1, bound + 1):
        out.extend((v, -v))
    return out


@dataclass(frozen=True)
class GradingGroup:
    """Abelian group Z_{d_1} x ... x Z_{d_k}, written additively (d_i = 0 means Z)."""

    cyclic_orders: tuple

    def __init__(self, cyclic_orders: Iterable[int]):
        orders = tuple(int(d) for d in cyclic_orders)
        if any(d < 0 or d == 1 for d in orders):
            raise ValueError(f"cyclic orders must be 0 or >= 2, got {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def identity(self) -> Degree:
        return (0,) * len(self.cyclic_orders)

    def degree(self, coords) -> Degree:
        if isinstance(coords, int):
            coords = (coords,)
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.cyclic_orders):
            raise StructureError(
                f"degree {coords} has {len(coords)} coordinates, group has "
                f"{len(self.cyclic_orders)} factors")
        return _reduce(self.cyclic_orders, coords)

    def _check(self, g: Degree) -> None:
        if len(g) != len(self.cyclic_orders):
            raise StructureError(f"degree {g} does not belong to {self}")

    def combine(self, g: Degree, h: Degree) -> Degree:
        self._check(g)
        self._check(h)
        return _reduce(self.cyclic_orders, (a + b for a, b in zip(g, h)))

    def invert(self, g: Degree) -> Degree:
        self._check(g)
        return _reduce(self.cyclic_orders, (-a for a in g))

    def sort_key(self, g: Degree):
        return tuple(coordinate_key(d, v) for d, v in zip(self.cyclic_orders, g))

    def __str__(self):
        parts = [f"Z_{d}" if d else "Z" for d in self.cyclic_orders]
        return " x ".join(parts) or "trivial"


def deg_combine(group: GradingGroup, g: Degree, h: Degree) -> Degree:
    return group.combine(g, h)


def deg_invert(group: GradingGroup, g: Degree) -> Degree:
    return group.invert(g)


@dataclass(frozen=True)
class Carrier:
    """Additive group Z_{d_1} x ... x Z_{d_k}; d_i = 0 marks an unbounded coordinate."""

    orders: tuple

    def __init__(self, orders: Iterable[int]):
        orders = tuple(int(d) for d in orders)
        if any(d < 0 or d == 1 for d in orders):
            raise ValueError(f"carrier orders must be 0 or >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def is_finite(self) -> bool:
        return all(self.orders)

    @property
    def size(self) -> int | None:
        if not self.is_finite:
            return None
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def element(self, coords) -> Element:
        if isinstance(coords, int):
            coords = (coords,)
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise StructureError(f"{coords} is not an element of {self}")
        return _reduce(self.orders, coords)

    def reduce(self, coords) -> Element:
        return _reduce(self.orders, coords)

    def unit_vector(self, i: int) -> Element:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def add(self, x: Element, y: Element) -> Element:
        return _reduce(self.orders, (a + b for a, b in zip(x, y)))

    def neg(self, x: Element) -> Element:
        return _reduce(self.orders, (-a for a in x))

    def scale(self, n: int, x: Element) -> Element:
        return _reduce(self.orders, (n * a for a in x))

    def sort_key(self, x: Element):
        return tuple(coordinate_key(d, v) for d, v in zip(self.orders, x))

    def in_box(self, x: Element, bound: int) -> bool:
        return all(d or abs(v) <= bound for d, v in zip(self.orders, x))

    def enumerate(self, bound: int = DEFAULT_BOUND) -> list[Element]:
        if bound < 1:
            raise ValueError("enumeration bound must be >= 1")
        axes = [sorted(box_values(d, bound), key=lambda v, d=d: coordinate_key(d, v))
                for d in self.orders]
        # itertools.product is lexicographic in coordinate index, which is the canonical order
        return list(product(*axes))

    def __str__(self):
        parts = [f"Z_{d}" if d else "Z" for d in self.orders]
        return " x ".join(parts) or "0"


def enumerate_carrier(carrier: Carrier, bound: int = DEFAULT_BOUND) -> list[Element]:
    return carrier.enumerate(bound)


def canonical_compare(carrier: Carrier, x: Element, y: Element) -> int:
    """Three-way comparison in the canonical order: -1, 0 or 1."""
    if len(x) != carrier.rank or len(y) != carrier.rank:
        raise StructureError(f"{x} and {y} are not both elements of {carrier}")
    kx, ky = carrier.sort_key(x), carrier.sort_key(y)
    return (kx > ky) - (kx < ky)


def parse_element(text: str) -> Element:
    """Parse '6', '-2', '(0,1)' or '[0, 1]' into a coordinate tuple."""
    s = text.strip().strip("()[]")
    if not s:
        return ()
    return tuple(int(p) for p in s.split(","))


def format_element(x) -> str:
    if isinstance(x, tuple) and len(x) == 1 and isinstance(x[0], int):
        return str(x[0])
    if isinstance(x, tuple) and all(isinstance(v, int) for v in x):
        return "(" + ",".join(str(v) for v in x) + ")"
    return str(x)
