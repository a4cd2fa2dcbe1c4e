"""Graded rings and modules of fractions over finite carriers.

Fractions x/a are pairs (x, a) with a in A; (x, a) ~ (y, b) iff c(bx - ay) = 0
for some c in A.  The classes are computed by a direct scan, labelled by
their canonically-least pair, and the induced operations are tabulated into
an ExplicitRing / ExplicitModule so every validator and predicate applies
to the result unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import UnsupportedModeError
from .predicates import MultiplicativeSet
from .structures import (
    CheckOutcome,
    ExplicitModule,
    ExplicitRing,
    GradedSubmodule,
    fails,
    holds,
)


@dataclass
class LocalizedStructure:
    base: object
    mult_set: MultiplicativeSet
    classes: dict                 # representative pair -> list of member pairs
    class_of: dict                # pair -> representative pair
    structure: object = None      # ExplicitRing or ExplicitModule on the representatives
    ring: "LocalizedStructure | None" = None
    _ops: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.classes)

    def fraction(self, x, a=None):
        R = self.mult_set.ring
        return self.class_of[(x, R.one if a is None else a)]

    def is_unit(self, cls) -> bool:
        S = self.structure
        return any(S.mul(cls, y) == S.one for y in S.elements())

    def check_well_defined(self) -> CheckOutcome:
        """Induced operations do not depend on the chosen representatives."""
        for name, (op, left, right) in self._ops.items():
            for P, p_members in left.classes.items():
                for Q, q_members in right.classes.items():
                    expect = self.class_of[op(P, Q)]
                    for p in p_members:
                        for q in q_members:
                            if self.class_of[op(p, q)] != expect:
                                return fails((p, q), reason=f"{name}-not-well-defined")
        return holds(False, 0)


def _partition(pairs, equivalent):
    reps: list = []
    classes: dict = {}
    class_of: dict = {}
    for p in pairs:
        for rep in reps:
            if equivalent(p, rep):
                classes[rep].append(p)
                class_of[p] = rep
                break
        else:
            reps.append(p)
            classes[p] = [p]
            class_of[p] = p
    return classes, class_of


def _grading(base, A, class_of):
    R = A.ring
    G = base.group
    comps: dict = {}
    for a in A:
        if a == R.zero:
            continue
        h = R.degree_of(a)
        for lam in base.degrees:
            g = G.combine(lam, G.invert(h))
            bucket = comps.setdefault(g, set())
            for x in base.component_members(lam):
                bucket.add(class_of[(x, a)])
    return comps


def localize_ring(R, A: MultiplicativeSet) -> LocalizedStructure:
    if not R.is_finite:
        raise UnsupportedModeError("localization needs a finite ring")
    if A.ring is not R:
        raise ValueError("multiplicative set belongs to a different ring")
    pairs = [(x, a) for x in R.elements() for a in A]

    def equivalent(p, q):
        (x, a), (y, b) = p, q
        d = R.sub(R.mul(b, x), R.mul(a, y))
        return any(R.mul(c, d) == R.zero for c in A)

    classes, class_of = _partition(pairs, equivalent)
    L = LocalizedStructure(R, A, classes, class_of)

    def add(p, q):
        (x, a), (y, b) = p, q
        return (R.add(R.mul(b, x), R.mul(a, y)), R.mul(a, b))

    def mul(p, q):
        (x, a), (y, b) = p, q
        return (R.mul(x, y), R.mul(a, b))

    reps = list(classes)
    add_t = {(P, Q): class_of[add(P, Q)] for P in reps for Q in reps}
    mul_t = {(P, Q): class_of[mul(P, Q)] for P in reps for Q in reps}
    zero = class_of[(R.zero, R.one)]
    one = class_of[(R.one, R.one)]
    L.structure = ExplicitRing(reps, add_t, mul_t, zero, one, _grading(R, A, class_of),
                               R.group, name=f"{A.name}^-1 {R.name}")
    L._ops = {"sum": (add, L, L), "product": (mul, L, L)}
    return L


def localize_module(M, A: MultiplicativeSet, ring: LocalizedStructure | None = None) -> LocalizedStructure:
    R = M.ring
    if not (M.is_finite and R.is_finite):
        raise UnsupportedModeError("localization needs a finite module over a finite ring")
    if ring is None:
        ring = localize_ring(R, A)
    pairs = [(m, a) for m in M.elements() for a in A]

    def equivalent(p, q):
        (m, a), (n, b) = p, q
        d = M.sub(M.act(b, m), M.act(a, n))
        return any(M.act(c, d) == M.zero for c in A)

    classes, class_of = _partition(pairs, equivalent)
    L = LocalizedStructure(M, A, classes, class_of, ring=ring)

    def add(p, q):
        (m, a), (n, b) = p, q
        return (M.add(M.act(b, m), M.act(a, n)), R.mul(a, b))

    def act(p, q):
        (r, a), (m, b) = p, q
        return (M.act(r, m), R.mul(a, b))

    reps = list(classes)
    rreps = list(ring.classes)
    add_t = {(P, Q): class_of[add(P, Q)] for P in reps for Q in reps}
    act_t = {(P, Q): class_of[act(P, Q)] for P in rreps for Q in reps}
    zero = class_of[(M.zero, R.one)]
    L.structure = ExplicitModule(ring.structure, reps, add_t, act_t, zero,
                                 _grading(M, A, class_of), name=f"{A.name}^-1 {M.name}")
    L._ops = {"sum": (add, L, L), "action": (act, ring, L)}
    return L


def localize_submodule(C: GradedSubmodule, A: MultiplicativeSet,
                       module: LocalizedStructure | None = None) -> GradedSubmodule:
    """A^-1 C: classes having a representative (c, a) with c in C."""
    M = C.parent
    if module is None:
        module = localize_module(M, A)
    members = {module.class_of[(c, a)] for c in C.members() for a in A}
    return GradedSubmodule(module.structure, frozenset(members), name=f"{A.name}^-1 {C.name}")


def saturation_cross_check(A: MultiplicativeSet, saturated: MultiplicativeSet,
                           ring: LocalizedStructure | None = None) -> CheckOutcome:
    """a in A* iff a/1 is a unit of A^-1 R, for every homogeneous a."""
    R = A.ring
    L = ring or localize_ring(R, A)
    for a in R.homogeneous():
        if (a in saturated) != L.is_unit(L.fraction(a)):
            return fails(a, reason="saturation-mismatch")
    return holds(False, 0)
