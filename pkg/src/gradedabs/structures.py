"""Graded rings, graded modules and their graded submodules.

Two kinds of structure share one duck-typed interface:

* ``PresentedRing`` / ``PresentedModule`` live on a cyclic-product carrier
  and multiply through structure constants on the standard generators.  They
  may have unbounded (Z) coordinates; such structures are in *bounded mode*
  and every quantifier over their elements runs over the box [-B, B].
* ``ExplicitRing`` / ``ExplicitModule`` are finite tables over arbitrary
  hashable labels.  Localization produces these.

Submodules of finite structures are stored as element sets.  Submodules of
bounded-mode structures are stored as integer lattices, so membership and
equality stay exact even though enumeration is box-limited.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Iterable, Mapping, Sequence

from .core import (
    DEFAULT_BOUND,
    Carrier,
    Degree,
    Element,
    GradingGroup,
    PreconditionError,
    StructureError,
    UnsupportedModeError,
    box_values,
    coordinate_key,
)
from .lattice import Lattice


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    BOUNDED_HOLDS = "BoundedHolds"
    FAILS = "Fails"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class CheckOutcome:
    verdict: Verdict
    witness: Any = None
    counterexample: Any = None
    bound: int | None = None
    reason: str | None = None
    details: Mapping = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict in (Verdict.HOLDS, Verdict.BOUNDED_HOLDS)

    @property
    def fails(self) -> bool:
        return self.verdict is Verdict.FAILS

    @property
    def not_applicable(self) -> bool:
        return self.verdict is Verdict.NOT_APPLICABLE


def holds(bounded: bool, bound: int, witness=None, **details) -> CheckOutcome:
    if bounded:
        return CheckOutcome(Verdict.BOUNDED_HOLDS, witness=witness, bound=bound, details=details)
    return CheckOutcome(Verdict.HOLDS, witness=witness, details=details)


def fails(counterexample, reason: str | None = None, bound: int | None = None, **details) -> CheckOutcome:
    return CheckOutcome(Verdict.FAILS, counterexample=counterexample, reason=reason,
                        bound=bound, details=details)


def not_applicable(reason: str) -> CheckOutcome:
    return CheckOutcome(Verdict.NOT_APPLICABLE, reason=reason)


# ---------------------------------------------------------------------------
# grading bookkeeping shared by rings and modules


class _Grading:
    """Degree -> component subgroup, plus the machinery to decompose elements."""

    def __init__(self, group: GradingGroup, carrier: Carrier, components: Mapping):
        self.group = group
        self.carrier = carrier
        gens = {}
        for deg, gs in components.items():
            deg = group.degree(deg)
            gens.setdefault(deg, [])
            gens[deg].extend(carrier.element(g) for g in gs)
        self.generators = {d: tuple(v) for d, v in gens.items()}
        self.coordinate_degree = self._coordinate_alignment()
        if self.coordinate_degree is None and not carrier.is_finite:
            raise UnsupportedModeError(
                "gradings of infinite carriers must assign each coordinate to one degree")

    def _coordinate_alignment(self):
        owner = {}
        for deg, gs in self.generators.items():
            for g in gs:
                support = [i for i, v in enumerate(g) if v]
                if len(support) != 1 or g[support[0]] != 1 or support[0] in owner:
                    return None
                owner[support[0]] = deg
        if len(owner) != self.carrier.rank:
            return None
        return tuple(owner[i] for i in range(self.carrier.rank))

    @cached_property
    def degrees(self) -> list:
        return sorted(self.generators, key=self.group.sort_key)

    @cached_property
    def _component_sets(self) -> dict:
        return {d: frozenset(additive_closure(self.carrier, gs)) for d, gs in self.generators.items()}

    def contains(self, deg, x) -> bool:
        if self.coordinate_degree is not None:
            return all(v == 0 or self.coordinate_degree[i] == deg for i, v in enumerate(x))
        comp = self._component_sets.get(deg)
        return comp is not None and x in comp

    def members(self, deg, bound: int) -> list:
        if deg not in self.generators:
            return [self.carrier.zero]
        if self.coordinate_degree is not None:
            axes = []
            for i, d in enumerate(self.carrier.orders):
                if self.coordinate_degree[i] == deg:
                    axes.append(sorted(box_values(d, bound), key=lambda v, d=d: coordinate_key(d, v)))
                else:
                    axes.append([0])
            return list(product(*axes))
        return sorted(self._component_sets[deg], key=self.carrier.sort_key)

    def lattice(self, deg) -> Lattice:
        """Component as a lattice (coordinate-aligned gradings only)."""
        gens = self.generators.get(deg, ())
        return Lattice(self.carrier.orders, gens)

    @cached_property
    def _decomposition_table(self) -> dict:
        degs = self.degrees
        table: dict = {}
        comps = [sorted(self._component_sets[d], key=self.carrier.sort_key) for d in degs]
        for parts in product(*comps):
            total = self.carrier.zero
            for p in parts:
                total = self.carrier.add(total, p)
            table.setdefault(total, []).append(parts)
        return table

    def direct_sum_defect(self):
        """First carrier element without a unique decomposition, or None."""
        if self.coordinate_degree is not None:
            return None
        return _first_defect(self.carrier.enumerate(), self._decomposition_table)

    def decompose(self, x) -> dict:
        if self.coordinate_degree is not None:
            parts: dict = {}
            for i, v in enumerate(x):
                if v:
                    deg = self.coordinate_degree[i]
                    cur = list(parts.get(deg, self.carrier.zero))
                    cur[i] = v
                    parts[deg] = tuple(cur)
            return {d: parts[d] for d in sorted(parts, key=self.group.sort_key)}
        options = self._decomposition_table.get(x)
        if not options or len(options) != 1:
            raise StructureError(f"{x} has no unique homogeneous decomposition")
        return {d: p for d, p in zip(self.degrees, options[0]) if any(p)}


def additive_closure(carrier: Carrier, gens: Iterable[Element]) -> set:
    """Subgroup of a finite carrier generated by ``gens``."""
    seen = {carrier.zero}
    frontier = [carrier.zero]
    gens = [g for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = carrier.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _normalize_grading(group: GradingGroup, carrier: Carrier, grading) -> dict:
    """Accept 'trivial', a per-coordinate degree list, or a degree -> generators map."""
    if grading is None or grading == "trivial":
        return {group.identity: [carrier.unit_vector(i) for i in range(carrier.rank)]}
    if isinstance(grading, Mapping):
        return dict(grading)
    assignment = list(grading)
    if len(assignment) != carrier.rank:
        raise StructureError(
            f"component assignment has {len(assignment)} entries for {carrier.rank} coordinates")
    comps: dict = {}
    for i, deg in enumerate(assignment):
        comps.setdefault(group.degree(deg), []).append(carrier.unit_vector(i))
    return comps


# ---------------------------------------------------------------------------
# common element-level interface


class _GradedBase:
    group: GradingGroup
    name: str

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def homogeneous(self, bound: int = DEFAULT_BOUND) -> list:
        """h(.) including zero, canonical order (box-restricted in bounded mode)."""
        key = (bound,)
        cache = self.__dict__.setdefault("_homog_cache", {})
        if key not in cache:
            out = set()
            for d in self.degrees:
                out.update(self.component_members(d, bound))
            out.add(self.zero)
            cache[key] = sorted(out, key=self.sort_key)
        return cache[key]

    def homogeneous_by_degree(self, bound: int = DEFAULT_BOUND) -> list:
        return [(d, self.component_members(d, bound)) for d in self.degrees]

    def is_homogeneous(self, x) -> bool:
        return x == self.zero or any(self.in_component(d, x) for d in self.degrees)

    def degree_of(self, x):
        """Degree of a nonzero homogeneous element (None for zero)."""
        if x == self.zero:
            return None
        for d in self.degrees:
            if self.in_component(d, x):
                return d
        raise PreconditionError(f"{x} is not homogeneous")

    def box_elements(self, bound: int = DEFAULT_BOUND) -> list:
        return self.elements(bound)


class _PresentedBase(_GradedBase):
    carrier: Carrier
    grading: _Grading

    @property
    def is_finite(self) -> bool:
        return self.carrier.is_finite

    @property
    def zero(self):
        return self.carrier.zero

    def add(self, x, y):
        return self.carrier.add(x, y)

    def neg(self, x):
        return self.carrier.neg(x)

    def sort_key(self, x):
        return self.carrier.sort_key(x)

    def elements(self, bound: int = DEFAULT_BOUND) -> list:
        cache = self.__dict__.setdefault("_elements_cache", {})
        key = None if self.is_finite else bound
        if key not in cache:
            cache[key] = self.carrier.enumerate(bound)
        return cache[key]

    @property
    def degrees(self) -> list:
        return self.grading.degrees

    def in_component(self, deg, x) -> bool:
        return self.grading.contains(deg, x)

    def component_members(self, deg, bound: int = DEFAULT_BOUND) -> list:
        return self.grading.members(deg, bound)

    def decompose(self, x) -> dict:
        return self.grading.decompose(x)

    def element(self, coords):
        return self.carrier.element(coords)


def _bilinear(carrier: Carrier, x, y, constants) -> Element:
    acc = [0] * carrier.rank
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = constants[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, v in enumerate(row[j]):
                if v:
                    acc[k] += c * v
    return carrier.reduce(acc)


def _check_well_defined(left: Carrier, right: Carrier, target: Carrier, constants, what: str):
    for i, di in enumerate(left.orders):
        for j, dj in enumerate(right.orders):
            img = constants[i][j]
            for d in (di, dj):
                if d and any(target.scale(d, img)):
                    raise StructureError(
                        f"{what} ill-defined: generator pair ({i},{j}) has image {img} "
                        f"not killed by order {d}")


class PresentedRing(_PresentedBase):
    """Commutative ring on a cyclic-product carrier via structure constants."""

    def __init__(self, carrier: Carrier, constants, one, group: GradingGroup, grading=None,
                 name: str = "R"):
        self.carrier = carrier
        self.group = group
        self.name = name
        n = carrier.rank
        self.constants = tuple(tuple(carrier.element(constants[i][j]) for j in range(n))
                               for i in range(n))
        _check_well_defined(carrier, carrier, carrier, self.constants, "multiplication")
        self.one = carrier.element(one)
        self.grading = _Grading(group, carrier, _normalize_grading(group, carrier, grading))
        self._mul_cache: dict = {}

    def mul(self, x, y):
        if not self.is_finite:
            return _bilinear(self.carrier, x, y, self.constants)
        key = (x, y)
        r = self._mul_cache.get(key)
        if r is None:
            r = _bilinear(self.carrier, x, y, self.constants)
            self._mul_cache[key] = r
        return r

    def power(self, x, n: int):
        out = self.one
        for _ in range(n):
            out = self.mul(out, x)
        return out

    @property
    def standard_generators(self) -> list:
        return [self.carrier.unit_vector(i) for i in range(self.carrier.rank)]

    def __repr__(self):
        return f"<PresentedRing {self.name} on {self.carrier}>"


class PresentedModule(_PresentedBase):
    """Module over a PresentedRing on its own cyclic-product carrier."""

    def __init__(self, ring: PresentedRing, carrier: Carrier, action, grading=None,
                 name: str = "M"):
        self.ring = ring
        self.carrier = carrier
        self.group = ring.group
        self.name = name
        self.action = tuple(tuple(carrier.element(action[i][j]) for j in range(carrier.rank))
                            for i in range(ring.carrier.rank))
        _check_well_defined(ring.carrier, carrier, carrier, self.action, "scalar action")
        self.grading = _Grading(ring.group, carrier, _normalize_grading(ring.group, carrier, grading))
        self._act_cache: dict = {}

    @property
    def is_finite(self) -> bool:
        return self.carrier.is_finite

    @property
    def scalars_finite(self) -> bool:
        return self.ring.is_finite

    def act(self, r, m):
        if not (self.is_finite and self.ring.is_finite):
            return _bilinear_action(self.ring.carrier, self.carrier, r, m, self.action)
        key = (r, m)
        out = self._act_cache.get(key)
        if out is None:
            out = _bilinear_action(self.ring.carrier, self.carrier, r, m, self.action)
            self._act_cache[key] = out
        return out

    @property
    def standard_generators(self) -> list:
        return [self.carrier.unit_vector(i) for i in range(self.carrier.rank)]

    def __repr__(self):
        return f"<PresentedModule {self.name} on {self.carrier} over {self.ring.name}>"


def _bilinear_action(rc: Carrier, mc: Carrier, r, m, action) -> Element:
    acc = [0] * mc.rank
    for i, ri in enumerate(r):
        if not ri:
            continue
        row = action[i]
        for j, mj in enumerate(m):
            if not mj:
                continue
            c = ri * mj
            for k, v in enumerate(row[j]):
                if v:
                    acc[k] += c * v
    return mc.reduce(acc)


class ExplicitRing(_GradedBase):
    """Finite graded ring given by operation tables over hashable labels."""

    is_finite = True

    def __init__(self, elements: Sequence, add_table: Mapping, mul_table: Mapping, zero, one,
                 components: Mapping, group: GradingGroup, name: str = "R"):
        self._elements = list(elements)
        self._index = {x: i for i, x in enumerate(self._elements)}
        self._add = add_table
        self._mul = mul_table
        self.zero = zero
        self.one = one
        self.group = group
        self.name = name
        self._neg = {}
        for x in self._elements:
            for y in self._elements:
                if add_table[x, y] == zero:
                    self._neg[x] = y
                    break
        self.components = {group.degree(d): frozenset(c) | {zero} for d, c in components.items()}

    def add(self, x, y):
        return self._add[x, y]

    def neg(self, x):
        return self._neg[x]

    def mul(self, x, y):
        return self._mul[x, y]

    def power(self, x, n: int):
        out = self.one
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def sort_key(self, x):
        return self._index[x]

    def elements(self, bound: int = DEFAULT_BOUND) -> list:
        return self._elements

    @cached_property
    def degrees(self) -> list:
        return sorted(self.components, key=self.group.sort_key)

    def in_component(self, deg, x) -> bool:
        return x in self.components.get(deg, ())

    def component_members(self, deg, bound: int = DEFAULT_BOUND) -> list:
        return sorted(self.components.get(deg, {self.zero}), key=self.sort_key)

    @cached_property
    def _decomposition_table(self) -> dict:
        return _explicit_decomposition(self)

    def decompose(self, x) -> dict:
        options = self._decomposition_table.get(x)
        if not options or len(options) != 1:
            raise StructureError(f"{x} has no unique homogeneous decomposition")
        return {d: p for d, p in zip(self.degrees, options[0]) if p != self.zero}

    def direct_sum_defect(self):
        return _first_defect(self._elements, self._decomposition_table)

    def __repr__(self):
        return f"<ExplicitRing {self.name} with {len(self._elements)} elements>"


class ExplicitModule(_GradedBase):
    """Finite graded module over an ExplicitRing (or any finite ring) by tables."""

    is_finite = True

    def __init__(self, ring, elements: Sequence, add_table: Mapping, act_table: Mapping, zero,
                 components: Mapping, name: str = "M"):
        self.ring = ring
        self.group = ring.group
        self._elements = list(elements)
        self._index = {x: i for i, x in enumerate(self._elements)}
        self._add = add_table
        self._act = act_table
        self.zero = zero
        self.name = name
        self._neg = {}
        for x in self._elements:
            for y in self._elements:
                if add_table[x, y] == zero:
                    self._neg[x] = y
                    break
        self.components = {self.group.degree(d): frozenset(c) | {zero} for d, c in components.items()}

    scalars_finite = True

    def add(self, x, y):
        return self._add[x, y]

    def neg(self, x):
        return self._neg[x]

    def act(self, r, m):
        return self._act[r, m]

    def sort_key(self, x):
        return self._index[x]

    def elements(self, bound: int = DEFAULT_BOUND) -> list:
        return self._elements

    @cached_property
    def degrees(self) -> list:
        return sorted(self.components, key=self.group.sort_key)

    def in_component(self, deg, x) -> bool:
        return x in self.components.get(deg, ())

    def component_members(self, deg, bound: int = DEFAULT_BOUND) -> list:
        return sorted(self.components.get(deg, {self.zero}), key=self.sort_key)

    @cached_property
    def _decomposition_table(self) -> dict:
        return _explicit_decomposition(self)

    def decompose(self, x) -> dict:
        options = self._decomposition_table.get(x)
        if not options or len(options) != 1:
            raise StructureError(f"{x} has no unique homogeneous decomposition")
        return {d: p for d, p in zip(self.degrees, options[0]) if p != self.zero}

    def direct_sum_defect(self):
        return _first_defect(self._elements, self._decomposition_table)

    def __repr__(self):
        return f"<ExplicitModule {self.name} with {len(self._elements)} elements>"


def _first_defect(elements, table):
    """Missing decompositions are reported before non-unique ones."""
    missing = next((x for x in elements if x not in table), None)
    if missing is not None:
        return missing, 0
    return next(((x, len(table[x])) for x in elements if len(table[x]) > 1), None)


def _explicit_decomposition(S) -> dict:
    comps = [S.component_members(d) for d in S.degrees]
    table: dict = {}
    for parts in product(*comps):
        total = S.zero
        for p in parts:
            total = S.add(total, p)
        table.setdefault(total, []).append(parts)
    return table


def _direct_sum_defect(S):
    if isinstance(S, _PresentedBase):
        return S.grading.direct_sum_defect()
    return S.direct_sum_defect()


# ---------------------------------------------------------------------------
# constructors


def modular(n: int, group: GradingGroup | None = None, grading=None, name: str | None = None):
    """Z_n, trivially graded unless told otherwise."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    group = group or GradingGroup([2])
    return PresentedRing(Carrier([n]), [[(1,)]], (1,), group, grading, name or f"Z_{n}")


def integers(group: GradingGroup | None = None, grading=None, name: str = "Z"):
    """The integers (bounded mode)."""
    group = group or GradingGroup([0])
    return PresentedRing(Carrier([0]), [[(1,)]], (1,), group, grading, name)


def group_algebra(base: int, group: GradingGroup, name: str | None = None):
    """Z_base[G] for finite G, graded by G with R_g = Z_base * g."""
    if not all(group.cyclic_orders):
        raise UnsupportedModeError("group algebras need a finite grading group")
    degs = sorted(product(*[range(d) for d in group.cyclic_orders]), key=group.sort_key)
    index = {g: i for i, g in enumerate(degs)}
    k = len(degs)
    carrier = Carrier([base] * k)
    consts = [[carrier.unit_vector(index[group.combine(g, h)]) for h in degs] for g in degs]
    one = carrier.unit_vector(index[group.identity])
    grading = {g: [carrier.unit_vector(i)] for g, i in index.items()}
    base_name = f"Z_{base}" if base else "Z"
    return PresentedRing(carrier, consts, one, group, grading,
                         name or f"{base_name}[{group}]")


def product_ring(factors: Sequence[PresentedRing], grading=None, name: str | None = None):
    """Direct product of presented rings (block-diagonal structure constants)."""
    if not factors:
        raise ValueError("product of zero rings")
    group = factors[0].group
    if any(f.group != group for f in factors):
        raise StructureError("product factors must share a grading group")
    orders = [d for f in factors for d in f.carrier.orders]
    carrier = Carrier(orders)
    n = carrier.rank
    consts = [[carrier.zero for _ in range(n)] for _ in range(n)]
    offset = 0
    one = []
    for f in factors:
        r = f.carrier.rank
        for i in range(r):
            for j in range(r):
                vec = [0] * n
                vec[offset:offset + r] = f.constants[i][j]
                consts[offset + i][offset + j] = tuple(vec)
        one.extend(f.one)
        offset += r
    if grading is None:
        grading = [d for f in factors for d in (f.grading.coordinate_degree or
                                                 _raise_unaligned(f))]
    return PresentedRing(carrier, consts, one, group, grading,
                         name or " x ".join(f.name for f in factors))


def _raise_unaligned(f):
    raise StructureError(f"cannot inherit non-coordinate grading of {f.name}; pass grading")


def table_ring(orders: Sequence[int], constants, one, group: GradingGroup, grading=None,
               name: str = "R"):
    return PresentedRing(Carrier(orders), constants, one, group, grading, name)


def ring_as_module(R):
    """R viewed as a module over itself (cached, so identity is stable)."""
    cached = R.__dict__.get("_as_module")
    if cached is not None:
        return cached
    if isinstance(R, PresentedRing):
        M = PresentedModule(R, R.carrier, R.constants, dict(R.grading.generators), name=R.name)
    else:
        elems = R.elements()
        M = ExplicitModule(R, elems, R._add, R._mul, R.zero, R.components, name=R.name)
    R.__dict__["_as_module"] = M
    return M


def cyclic_product(R: PresentedRing, orders: Sequence[int], grading=None, name: str = "M"):
    """Z_{k_1} x ... x Z_{k_m} with r acting as the integer it represents."""
    if R.carrier.rank != 1 or R.one != (1,):
        raise PreconditionError("integer-like action needs a cyclic ring generated by 1")
    carrier = Carrier(orders)
    action = [[carrier.unit_vector(j) for j in range(carrier.rank)]]
    return PresentedModule(R, carrier, action, grading, name)


def table_module(R: PresentedRing, orders: Sequence[int], action, grading=None, name: str = "M"):
    return PresentedModule(R, Carrier(orders), action, grading, name)


# ---------------------------------------------------------------------------
# validators


def _first(iterable):
    for x in iterable:
        return x
    return None


def validate_graded_ring(R, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    elems = R.elements(bound)
    bounded = not R.is_finite

    def inside(x):
        return R.is_finite or R.carrier.in_box(x, bound)

    defect = _direct_sum_defect(R)
    if defect is not None:
        return fails(defect[0], reason="no-unique-decomposition", count=defect[1])
    if not R.in_component(R.group.identity, R.one):
        return fails(R.one, reason="one-not-in-identity-component")
    for (g, Rg), (h, Rh) in product(R.homogeneous_by_degree(bound), repeat=2):
        target = R.group.combine(g, h)
        for x in Rg:
            for y in Rh:
                z = R.mul(x, y)
                if z != R.zero and not R.in_component(target, z):
                    return fails((x, y), reason="component-product-escapes")
    for x in elems:
        if R.mul(R.one, x) != x:
            return fails((R.one, x), reason="identity")
        for y in elems:
            xy = R.mul(x, y)
            if xy != R.mul(y, x):
                return fails((x, y), reason="commutativity")
    # associativity / distributivity are cubic; run them on the box
    for x in elems:
        for y in elems:
            xy = R.mul(x, y)
            for z in elems:
                if R.mul(xy, z) != R.mul(x, R.mul(y, z)):
                    return fails((x, y, z), reason="associativity")
                if R.mul(x, R.add(y, z)) != R.add(xy, R.mul(x, z)):
                    return fails((x, y, z), reason="distributivity")
    return holds(bounded, bound)


def validate_graded_module(M, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    R = M.ring
    relems = R.elements(bound)
    melems = M.elements(bound)
    bounded = not (M.is_finite and R.is_finite)
    defect = _direct_sum_defect(M)
    if defect is not None:
        return fails(defect[0], reason="no-unique-decomposition", count=defect[1])
    for (g, Rg), (h, Mh) in product(R.homogeneous_by_degree(bound),
                                    M.homogeneous_by_degree(bound)):
        target = M.group.combine(g, h)
        for r in Rg:
            for m in Mh:
                rm = M.act(r, m)
                if rm != M.zero and not M.in_component(target, rm):
                    return fails((r, m), reason="component-action-escapes")
    for m in melems:
        if M.act(R.one, m) != m:
            return fails((R.one, m), reason="identity")
    for r in relems:
        for s in relems:
            rs = R.mul(r, s)
            rps = R.add(r, s)
            for m in melems:
                sm = M.act(s, m)
                if M.act(rs, m) != M.act(r, sm):
                    return fails((r, s, m), reason="associativity")
                if M.act(rps, m) != M.add(M.act(r, m), sm):
                    return fails((r, s, m), reason="distributivity")
    if not isinstance(M, PresentedModule):
        # presented actions are bilinear by construction
        for r in relems:
            for m in melems:
                rm = M.act(r, m)
                for n in melems:
                    if M.act(r, M.add(m, n)) != M.add(rm, M.act(r, n)):
                        return fails((r, m, n), reason="distributivity")
    return holds(bounded, bound)


def homogeneous_components(x, M) -> dict:
    return M.decompose(x)


# ---------------------------------------------------------------------------
# submodules


class GradedSubmodule:
    """A submodule: element set for finite parents, integer lattice otherwise."""

    __slots__ = ("parent", "elements", "lattice", "name")

    def __init__(self, parent, elements=None, lattice: Lattice | None = None, name: str = ""):
        self.parent = parent
        self.elements = frozenset(elements) if elements is not None else None
        self.lattice = lattice
        self.name = name
        if (self.elements is None) == (lattice is None):
            raise ValueError("submodule needs exactly one of elements / lattice")

    @property
    def bounded(self) -> bool:
        return self.elements is None

    def __contains__(self, x) -> bool:
        if self.elements is not None:
            return x in self.elements
        return x in self.lattice

    def members(self, bound: int = DEFAULT_BOUND) -> list:
        if self.elements is not None:
            return sorted(self.elements, key=self.parent.sort_key)
        return [x for x in self.parent.elements(bound) if x in self.lattice]

    def __len__(self):
        if self.elements is None:
            raise UnsupportedModeError("bounded-mode submodule has no finite size")
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GradedSubmodule):
            return NotImplemented
        if other.parent is not self.parent:
            return False
        if self.elements is not None:
            return self.elements == other.elements
        return self.lattice == other.lattice

    def __hash__(self):
        if self.elements is not None:
            return hash(self.elements)
        return hash(id(self.parent))

    def __le__(self, other: "GradedSubmodule") -> bool:
        _same_parent(self, other)
        if self.elements is not None:
            return self.elements <= other.elements
        return self.lattice <= other.lattice

    def is_whole(self) -> bool:
        M = self.parent
        if self.elements is not None:
            return len(self.elements) == len(M.elements())
        return all(g in self.lattice for g in M.standard_generators)

    def is_zero(self) -> bool:
        if self.elements is not None:
            return len(self.elements) == 1
        return all(not any(self.parent.carrier.reduce(b)) for b in self.lattice.basis)

    def key(self):
        """Hashable identity used for caching and fingerprints."""
        if self.elements is not None:
            return tuple(sorted(self.elements, key=self.parent.sort_key))
        return tuple(self.lattice.basis)

    def describe(self, bound: int = DEFAULT_BOUND) -> list:
        return self.members(bound)

    def __repr__(self):
        label = self.name or "C"
        if self.elements is not None:
            return f"<GradedSubmodule {label} |{len(self.elements)}| of {self.parent.name}>"
        return f"<GradedSubmodule {label} lattice {self.lattice.basis} of {self.parent.name}>"


def _same_parent(a: GradedSubmodule, b: GradedSubmodule):
    if a.parent is not b.parent:
        raise StructureError("submodules live in different modules")


def _ring_generators(R) -> list:
    if isinstance(R, PresentedRing):
        return R.standard_generators
    return R.elements()


def _from_elements(M, elements, name="") -> GradedSubmodule:
    return GradedSubmodule(M, frozenset(elements), name=name)


def _span_finite(M, gens) -> set:
    """R-span of gens in a finite module: additive closure of R * gens."""
    R = M.ring
    seeds = {M.act(r, g) for g in gens for r in R.elements()}
    seeds.discard(M.zero)
    seen = {M.zero}
    frontier = [M.zero]
    seeds = sorted(seeds, key=M.sort_key)
    while frontier:
        nxt = []
        for x in frontier:
            for g in seeds:
                y = M.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def generate_submodule(gens: Sequence, M, name: str = "", check_homogeneous: bool = True) -> GradedSubmodule:
    """Smallest submodule containing ``gens``."""
    gens = list(gens)
    if check_homogeneous:
        for g in gens:
            if not M.is_homogeneous(g):
                raise PreconditionError(f"generator {g} is not homogeneous")
    if M.is_finite:
        return _from_elements(M, _span_finite(M, gens), name)
    rows = [M.act(e, g) for g in gens for e in M.ring.standard_generators]
    return GradedSubmodule(M, lattice=Lattice(M.carrier.orders, rows), name=name)


def submodule_from_elements(elements: Iterable, M, name: str = "") -> GradedSubmodule:
    """Wrap an explicit element set; it must already be closed."""
    if not M.is_finite:
        raise UnsupportedModeError("explicit element lists need a finite module")
    elems = frozenset(elements) | {M.zero}
    for x in elems:
        for y in elems:
            if M.add(x, y) not in elems:
                raise StructureError(f"{sorted(elems, key=M.sort_key)} is not closed under addition")
        for r in M.ring.elements():
            if M.act(r, x) not in elems:
                raise StructureError(f"element list is not closed under the action ({r}*{x})")
    return _from_elements(M, elems, name)


def zero_submodule(M, name: str = "0") -> GradedSubmodule:
    return generate_submodule([], M, name)


def whole_module(M, name: str = "M") -> GradedSubmodule:
    if M.is_finite:
        return _from_elements(M, M.elements(), name)
    return GradedSubmodule(M, lattice=Lattice(M.carrier.orders, M.standard_generators), name=name)


def is_graded_submodule(C: GradedSubmodule, M=None, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    M = M or C.parent
    if C.parent is not M:
        raise StructureError("submodule does not belong to this module")
    if C.elements is not None:
        for x in C.members():
            for d, part in M.decompose(x).items():
                if part not in C:
                    return fails(x, reason="component-escapes", degree=d, component=part)
        return holds(False, bound)
    # decomposition is additive, so the lattice basis decides
    for b in C.lattice.basis:
        x = M.carrier.reduce(b)
        for d, part in M.decompose(x).items():
            if part not in C:
                witness = _first(y for y in C.members(bound)
                                 if any(p not in C for p in M.decompose(y).values()))
                return fails(witness if witness is not None else x, reason="component-escapes")
    return holds(False, bound)


def intersect(C1: GradedSubmodule, C2: GradedSubmodule, name: str = "") -> GradedSubmodule:
    _same_parent(C1, C2)
    if C1.elements is not None:
        return _from_elements(C1.parent, C1.elements & C2.elements, name)
    return GradedSubmodule(C1.parent, lattice=C1.lattice.intersect(C2.lattice), name=name)


def submodule_sum(C1: GradedSubmodule, C2: GradedSubmodule, name: str = "") -> GradedSubmodule:
    _same_parent(C1, C2)
    M = C1.parent
    if C1.elements is not None:
        out = {M.add(x, y) for x in C1.elements for y in C2.elements}
        return _from_elements(M, out, name)
    return GradedSubmodule(M, lattice=Lattice(M.carrier.orders, C1.lattice.basis + C2.lattice.basis),
                           name=name)


def _ideal_from_lattice(R, lattice, name="") -> GradedSubmodule:
    return GradedSubmodule(ring_as_module(R), lattice=lattice, name=name)


def colon_ring(C: GradedSubmodule, N: GradedSubmodule | None = None, name: str = "") -> GradedSubmodule:
    """(C :_R N) = {r : r N <= C}; N defaults to the whole module."""
    M = C.parent
    R = M.ring
    RM = ring_as_module(R)
    if N is not None:
        _same_parent(C, N)
    if M.is_finite and R.is_finite:
        gens = module_generators(M) if N is None else _additive_basis(M, N.members())
        return _from_elements(RM, [r for r in R.elements()
                                   if all(M.act(r, m) in C for m in gens)], name)
    if C.elements is not None:
        # finite module over an infinite ring: membership is still decidable per element
        lat_C = Lattice(M.carrier.orders, C.elements)
    else:
        lat_C = C.lattice
    if N is None:
        vectors = M.standard_generators
    elif N.lattice is not None:
        vectors = [M.carrier.reduce(b) for b in N.lattice.basis]
    else:
        vectors = list(N.elements)
    lat = Lattice(R.carrier.orders, R.standard_generators)
    for v in vectors:
        images = [M.act(e, v) for e in R.standard_generators]
        lat = lat.intersect(lat_C.preimage(R.carrier.orders, images))
    return _ideal_from_lattice(R, lat, name)


def in_colon_ring(r, C: GradedSubmodule) -> bool:
    """r in (C :_R M), decided on the module's standard generators."""
    M = C.parent
    return all(M.act(r, m) in C for m in module_generators(M))


def _additive_basis(M, elements) -> list:
    """A small additive generating set of a finite subgroup given by its elements."""
    elements = list(elements)
    if isinstance(M, PresentedModule) and M.is_finite and len(elements) == len(M.elements()):
        return M.standard_generators
    span = {M.zero}
    basis = []
    for x in sorted(elements, key=M.sort_key):
        if x in span:
            continue
        basis.append(x)
        multiples = [M.zero]
        y = x
        while y != M.zero:
            multiples.append(y)
            y = M.add(y, x)
        span = {M.add(s, k) for s in span for k in multiples}
    return basis


def module_generators(M) -> list:
    """Additive generators of the whole module (standard generators when presented)."""
    if isinstance(M, PresentedModule):
        return M.standard_generators
    cached = M.__dict__.get("_module_generators")
    if cached is None:
        cached = _additive_basis(M, M.elements())
        M.__dict__["_module_generators"] = cached
    return cached


def colon_module(C: GradedSubmodule, divisor, name: str = "") -> GradedSubmodule:
    """(C :_M divisor) for a ring element or an ideal (submodule of ring_as_module)."""
    M = C.parent
    if isinstance(divisor, GradedSubmodule):
        if divisor.elements is not None:
            scalars = _additive_basis(divisor.parent, divisor.members())
        else:
            scalars = [divisor.parent.carrier.reduce(b) for b in divisor.lattice.basis]
        out = whole_module(M, name)
        for s in scalars:
            out = intersect(out, colon_module(C, s), name)
        return out
    r = divisor
    if M.is_finite:
        return _from_elements(M, [m for m in M.elements() if M.act(r, m) in C], name)
    images = [M.act(r, f) for f in M.standard_generators]
    return GradedSubmodule(M, lattice=C.lattice.preimage(M.carrier.orders, images), name=name)


def ideal_component(I: GradedSubmodule, g) -> list:
    """I_g = I intersected with R_g (box-limited listing in bounded mode)."""
    RM = I.parent
    g = RM.group.degree(g)
    return [x for x in RM.component_members(g) if x in I]


def component_generators(C: GradedSubmodule, g, bound: int = DEFAULT_BOUND) -> list:
    """Additive generators of C intersected with the degree-g component."""
    M = C.parent
    if C.elements is not None:
        return _additive_basis(M, [x for x in M.component_members(g) if x in C])
    lat = C.lattice.intersect(M.grading.lattice(g))
    gens = [M.carrier.reduce(b) for b in lat.basis]
    return [x for x in gens if any(x)]


# ---------------------------------------------------------------------------
# homomorphisms


class GradedHomomorphism:
    """Additive, action-preserving map given by images of the source's standard generators."""

    def __init__(self, source: PresentedModule, target: PresentedModule, images, name: str = "f"):
        if source.ring is not target.ring:
            raise StructureError("homomorphism between modules over different rings")
        self.source = source
        self.target = target
        self.name = name
        self.images = tuple(target.carrier.element(v) for v in images)
        if len(self.images) != source.carrier.rank:
            raise StructureError("need one image per source generator")
        self._cache: dict = {}

    def __call__(self, x):
        out = self._cache.get(x)
        if out is None:
            acc = [0] * self.target.carrier.rank
            for xi, img in zip(x, self.images):
                for k, v in enumerate(img):
                    acc[k] += xi * v
            out = self.target.carrier.reduce(acc)
            if self.source.is_finite:
                self._cache[x] = out
        return out

    def is_surjective(self) -> bool:
        img = hom_image(self, whole_module(self.source))
        return img.is_whole()

    def __repr__(self):
        return f"<GradedHomomorphism {self.name}: {self.source.name} -> {self.target.name}>"


def validate_homomorphism(f: GradedHomomorphism, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    S, T = f.source, f.target
    for j, d in enumerate(S.carrier.orders):
        if d and any(T.carrier.scale(d, f.images[j])):
            return fails(S.carrier.unit_vector(j), reason="not-well-defined")
    for e in S.ring.standard_generators:
        for m in S.standard_generators:
            if f(S.act(e, m)) != T.act(e, f(m)):
                return fails((e, m), reason="not-action-preserving")
    for g, Mg in S.homogeneous_by_degree(bound):
        for m in Mg:
            y = f(m)
            if y != T.zero and not T.in_component(g, y):
                return fails(m, reason="degree-not-preserved", degree=g)
    return holds(not (S.is_finite and S.ring.is_finite), bound)


def hom_image(f: GradedHomomorphism, C: GradedSubmodule, name: str = "") -> GradedSubmodule:
    if C.parent is not f.source:
        raise StructureError("submodule is not in the homomorphism's source")
    T = f.target
    if C.elements is not None and T.is_finite:
        return _from_elements(T, {f(x) for x in C.elements}, name)
    if C.elements is not None:
        rows = [f(x) for x in C.elements]
    else:
        rows = [f(f.source.carrier.reduce(b)) for b in C.lattice.basis]
    return GradedSubmodule(T, lattice=Lattice(T.carrier.orders, rows), name=name)


def hom_preimage(f: GradedHomomorphism, C: GradedSubmodule, name: str = "") -> GradedSubmodule:
    if C.parent is not f.target:
        raise StructureError("submodule is not in the homomorphism's target")
    S = f.source
    if S.is_finite:
        return _from_elements(S, [x for x in S.elements() if f(x) in C], name)
    lat_C = C.lattice if C.elements is None else Lattice(f.target.carrier.orders, C.elements)
    return GradedSubmodule(S, lattice=lat_C.preimage(S.carrier.orders, f.images), name=name)


def kernel(f: GradedHomomorphism, name: str = "ker") -> GradedSubmodule:
    return hom_preimage(f, zero_submodule(f.target), name)


# ---------------------------------------------------------------------------
# finite enumeration of submodule lattices


def all_submodules(M) -> list:
    """Every submodule of a finite module, canonical order (by size, then elements)."""
    if not M.is_finite:
        raise UnsupportedModeError("submodule enumeration needs a finite module")
    cache = M.__dict__.get("_all_submodules")
    if cache is not None:
        return cache
    cyclic = {}
    for x in M.elements():
        s = frozenset(_span_finite(M, [x]))
        cyclic.setdefault(s, None)
    found = set(cyclic)
    frontier = list(found)
    cyc = list(cyclic)
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyc:
                if c <= s:
                    continue
                t = frozenset(M.add(x, y) for x in s for y in c)
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt

    def order_key(s):
        return (len(s), sorted(M.sort_key(x) for x in s))

    out = [_from_elements(M, s) for s in sorted(found, key=order_key)]
    M.__dict__["_all_submodules"] = out
    return out


def all_graded_submodules(M) -> list:
    cache = M.__dict__.get("_all_graded_submodules")
    if cache is None:
        cache = [C for C in all_submodules(M) if is_graded_submodule(C).holds]
        M.__dict__["_all_graded_submodules"] = cache
    return cache
