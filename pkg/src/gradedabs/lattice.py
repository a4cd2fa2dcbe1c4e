"""Subgroups of Z_{d_1} x ... x Z_{d_k} as integer lattices.

A subgroup is stored as the lattice of its integer lifts, which always
contains the relation vectors d_i * e_i.  Membership, intersection and
preimages are then exact row reductions, so submodules of infinite
carriers never have to be enumerated.
"""
from __future__ import annotations

from typing import Iterable, Sequence


def _echelon(rows: list[list[int]], ncols: int) -> list[list[int]]:
    rows = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(ncols):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            pivot = active[0]
            nxt = [pivot]
            for r in active[1:]:
                q = r[col] // pivot[col]
                r = [a - q * b for a, b in zip(r, pivot)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if active:
            pivot = active[0]
            if pivot[col] < 0:
                pivot = [-a for a in pivot]
            basis.append(pivot)
        rows = rest
    return basis


class Lattice:
    """Integer lattice L with relations(orders) <= L <= Z^k."""

    __slots__ = ("orders", "basis")

    def __init__(self, orders: Sequence[int], generators: Iterable[Sequence[int]] = ()):
        self.orders = tuple(orders)
        k = len(self.orders)
        rows = [list(g) for g in generators]
        rows += [[d if j == i else 0 for j in range(k)] for i, d in enumerate(self.orders) if d]
        self.basis = [tuple(r) for r in _echelon(rows, k)]

    def _residue(self, v: Sequence[int]) -> list[int] | None:
        v = list(v)
        for row in self.basis:
            col = next(i for i, a in enumerate(row) if a)
            if v[col] % row[col]:
                return None
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        r = self._residue(v)
        return r is not None and not any(r)

    def __le__(self, other: "Lattice") -> bool:
        return all(row in other for row in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.orders == other.orders and self <= other and other <= self

    def __hash__(self):
        return hash(self.orders)

    def intersect(self, other: "Lattice") -> "Lattice":
        k = len(self.orders)
        rows = [list(b) + list(b) for b in self.basis]
        rows += [list(b) + [0] * k for b in other.basis]
        ech = _echelon(rows, 2 * k)
        return Lattice(self.orders, [r[k:] for r in ech if not any(r[:k])])

    def preimage(self, source_orders: Sequence[int], images: Sequence[Sequence[int]]) -> "Lattice":
        """{x in Z^n : sum x_j * images[j] in self}, as a lattice on the source coordinates."""
        n = len(source_orders)
        k = len(self.orders)
        rows = [list(img) + [1 if j == i else 0 for j in range(n)] for i, img in enumerate(images)]
        rows += [list(b) + [0] * n for b in self.basis]
        ech = _echelon(rows, k + n)
        return Lattice(source_orders, [r[k:] for r in ech if not any(r[:k])])

    def __repr__(self):
        return f"Lattice({self.orders}, {self.basis})"
