"""Multiplicative sets and the absorbing-type decision procedures.

Every predicate is a deterministic scan: homogeneous elements are visited in
canonical order, so the reported witness a is the canonically-first element
of A that works and a reported counterexample is the first violating tuple.
In bounded mode the scans run over the enumeration box and a passing result
is BoundedHolds; a Fails verdict always comes with a concrete tuple that can
be re-checked.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import DEFAULT_BOUND, Carrier, PreconditionError
from .structures import (
    CheckOutcome,
    GradedSubmodule,
    PresentedRing,
    all_graded_submodules,
    colon_module,
    colon_ring,
    component_generators,
    fails,
    generate_submodule,
    holds,
    in_colon_ring,
    not_applicable,
    ring_as_module,
    zero_submodule,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MultiplicativeSet:
    ring: object
    elements: tuple
    bounded: bool = False
    name: str = "A"

    @property
    def contains_zero(self) -> bool:
        return self.ring.zero in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_frozen")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_frozen", s)
        return s

    def __contains__(self, x) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __le__(self, other: "MultiplicativeSet") -> bool:
        return self._set <= other._set

    def __eq__(self, other):
        if not isinstance(other, MultiplicativeSet):
            return NotImplemented
        return self.ring is other.ring and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def key(self):
        return self.elements


def _make(R, elems: Iterable, bounded: bool, name: str, warn: bool = True) -> MultiplicativeSet:
    elems = sorted(set(elems), key=R.sort_key)
    A = MultiplicativeSet(R, tuple(elems), bounded, name)
    if warn and A.contains_zero:
        log.warning("multiplicative set %s contains 0; every predicate is NotApplicable", name)
    return A


def _in_domain(R, x, bound: int) -> bool:
    return R.is_finite or R.carrier.in_box(x, bound)


def mult_closure(gens: Sequence, R, bound: int = DEFAULT_BOUND, name: str = "A",
                 warn: bool = True) -> MultiplicativeSet:
    """Smallest multiplicatively closed set containing gens and 1 (box-truncated in bounded mode)."""
    for g in gens:
        if not R.is_homogeneous(g):
            raise PreconditionError(f"generator {g} is not homogeneous")
    found = {R.one, *gens}
    truncated = False
    frontier = list(found)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(found):
                z = R.mul(x, y)
                if z in found:
                    continue
                if not _in_domain(R, z, bound):
                    truncated = True
                    continue
                found.add(z)
                nxt.append(z)
        frontier = nxt
    return _make(R, found, truncated, name, warn)


def units(R, bound: int = DEFAULT_BOUND, name: str = "units") -> MultiplicativeSet:
    """Homogeneous units of R."""
    if isinstance(R, PresentedRing) and R.carrier == Carrier([0]) and R.one == (1,):
        # the integers: the unit group is exactly {1, -1}
        return _make(R, [(1,), (-1,)], False, name)
    elems = R.elements(bound)
    found = [x for x in R.homogeneous(bound) if any(R.mul(x, y) == R.one for y in elems)]
    return _make(R, found, not R.is_finite, name)


def nonzero_integers(R, bound: int = DEFAULT_BOUND, name: str = "A") -> MultiplicativeSet:
    """Z minus {0}, truncated to the box."""
    if not (isinstance(R, PresentedRing) and R.carrier == Carrier([0])):
        raise PreconditionError("nonzero_integers needs the ring of integers")
    return _make(R, [x for x in R.elements(bound) if x != R.zero], True, name)


def saturate(A: MultiplicativeSet, bound: int = DEFAULT_BOUND, name: str | None = None) -> MultiplicativeSet:
    """A* = homogeneous a with a/1 a unit of the ring of fractions.

    Decided by the defining search b*a*t = b*u over t in h(R) and u, b in A.
    """
    R = A.ring
    hR = R.homogeneous(bound)
    targets = {b: {R.mul(b, u) for u in A} for b in A}
    out = []
    for a in hR:
        if any(R.mul(R.mul(b, a), t) in targets[b] for b in A for t in hR):
            out.append(a)
    return _make(R, out, A.bounded or not R.is_finite, name or f"{A.name}*", warn=False)


# ---------------------------------------------------------------------------
# scanning helpers


def scalars_exact(M, bound: int) -> bool:
    """True when quantifying over the box's scalars is as good as all of h(R).

    For a finite module over the trivially graded integers every condition
    depends on scalars only modulo ann(M) = dZ, so the box is exhaustive once
    it covers every residue class.
    """
    R = M.ring
    if R.is_finite:
        return True
    if not M.is_finite or not isinstance(R, PresentedRing) or R.carrier != Carrier([0]):
        return False
    if R.degrees != [R.group.identity]:
        return False
    ann = colon_ring(zero_submodule(M))
    basis = ann.lattice.basis
    return bool(basis) and 0 < basis[0][0] <= 2 * bound + 1


class _Scan:
    """Cached membership tests for one submodule C."""

    def __init__(self, C: GradedSubmodule, bound: int):
        self.C = C
        self.M = C.parent
        self.R = self.M.ring
        self.bound = bound
        self.hR = self.R.homogeneous(bound)
        self.hM = self.M.homogeneous(bound)
        self.exact = self.M.is_finite and scalars_exact(self.M, bound)
        self._in_c: dict = {}
        self._in_colon: dict = {}

    def in_c(self, x) -> bool:
        v = self._in_c.get(x)
        if v is None:
            v = self._in_c[x] = x in self.C
        return v

    def in_colon(self, r) -> bool:
        v = self._in_colon.get(r)
        if v is None:
            v = self._in_colon[r] = in_colon_ring(r, self.C)
        return v

    def bounded(self, A: MultiplicativeSet | None = None) -> bool:
        return not self.exact or (A is not None and A.bounded)

    def meets(self, A: MultiplicativeSet):
        """First a in A lying in (C :_R M), or None."""
        return next((a for a in A if self.in_colon(a)), None)


_SCANS: dict = {}


def _scan(C: GradedSubmodule, bound: int) -> _Scan:
    key = (id(C), bound)
    s = _SCANS.get(key)
    if s is None or s.C is not C:
        if len(_SCANS) > 256:
            _SCANS.clear()
        s = _SCANS[key] = _Scan(C, bound)
    return s


def _absorbing_triples(sc: _Scan) -> list:
    """(r, s, rs, [m ...]) with r <= s canonically and r*s*m in C."""
    cached = sc.__dict__.get("_triples")
    if cached is not None:
        return cached
    R, M = sc.R, sc.M
    out = []
    hR = sc.hR
    for i, r in enumerate(hR):
        for s in hR[i:]:
            rs = R.mul(r, s)
            ms = [m for m in sc.hM if sc.in_c(M.act(rs, m))]
            if ms:
                out.append((r, s, rs, ms))
    sc.__dict__["_triples"] = out
    return out


def _violating_triple(sc: _Scan, a):
    """First (r, s, m) with rsm in C but none of a*rs, a*rm, a*sm absorbed (a=None means 1)."""
    R, M = sc.R, sc.M
    for r, s, rs, ms in _absorbing_triples(sc):
        if a is None:
            ar, as_, ars = r, s, rs
        else:
            ar, as_ = R.mul(a, r), R.mul(a, s)
            ars = R.mul(ar, s)
        if sc.in_colon(ars):
            continue
        for m in ms:
            if not sc.in_c(M.act(ar, m)) and not sc.in_c(M.act(as_, m)):
                return (r, s, m)
    return None


def _violating_pair(sc: _Scan, a):
    R, M = sc.R, sc.M
    for r in sc.hR:
        ar = r if a is None else R.mul(a, r)
        if sc.in_colon(ar):
            continue
        for m in sc.hM:
            if sc.in_c(M.act(r, m)):
                am = m if a is None else M.act(a, m)
                if not sc.in_c(am):
                    return (r, m)
    return None


# ---------------------------------------------------------------------------
# the predicates


def is_graded_prime(C: GradedSubmodule, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    sc = _scan(C, bound)
    if C.is_whole():
        return not_applicable("not-proper")
    bad = _violating_pair(sc, None)
    if bad is not None:
        return fails(bad, reason="prime-violation")
    return holds(sc.bounded(), bound)


def is_graded_2_absorbing(C: GradedSubmodule, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    sc = _scan(C, bound)
    if C.is_whole():
        return not_applicable("not-proper")
    bad = _violating_triple(sc, None)
    if bad is not None:
        return fails(bad, reason="2-absorbing-violation")
    return holds(sc.bounded(), bound)


def _relative(C, A, bound, violation) -> CheckOutcome:
    sc = _scan(C, bound)
    hit = sc.meets(A)
    if hit is not None:
        return not_applicable("colon-meets-A")
    per_a = []
    for a in A:
        bad = violation(sc, a)
        if bad is None:
            return holds(sc.bounded(A), bound, witness=a, rejected=tuple(per_a))
        per_a.append((a, bad))
    if not per_a:
        return fails(None, reason="empty-A")
    return fails(per_a[0][1], reason="no-fixed-witness", witness_tested=per_a[0][0],
                 per_witness=tuple(per_a))


def is_graded_A_prime(C: GradedSubmodule, A: MultiplicativeSet, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    return _relative(C, A, bound, _violating_pair)


def is_graded_A_2_absorbing(C: GradedSubmodule, A: MultiplicativeSet,
                            bound: int = DEFAULT_BOUND) -> CheckOutcome:
    return _relative(C, A, bound, _violating_triple)


def is_witness(a, C: GradedSubmodule, A: MultiplicativeSet, bound: int = DEFAULT_BOUND) -> CheckOutcome:
    """Does this particular a serve as the fixed element for every triple?"""
    if a not in A:
        raise PreconditionError(f"{a} is not in {A.name}")
    sc = _scan(C, bound)
    if sc.meets(A) is not None:
        return not_applicable("colon-meets-A")
    bad = _violating_triple(sc, a)
    if bad is not None:
        return fails(bad, reason="witness-violation", witness_tested=a)
    return holds(sc.bounded(A), bound, witness=a)


def triple_violates(C: GradedSubmodule, a, triple) -> bool:
    """Re-evaluate a reported (r, s, m): True iff it really breaks the condition for a."""
    M = C.parent
    R = M.ring
    r, s, m = triple
    a = R.one if a is None else a
    if M.act(R.mul(r, s), m) not in C:
        return False
    return (not in_colon_ring(R.mul(a, R.mul(r, s)), C)
            and M.act(R.mul(a, r), m) not in C
            and M.act(R.mul(a, s), m) not in C)


def pair_violates(C: GradedSubmodule, a, pair) -> bool:
    M = C.parent
    R = M.ring
    r, m = pair
    a = R.one if a is None else a
    return (M.act(r, m) in C and not in_colon_ring(R.mul(a, r), C)
            and M.act(a, m) not in C)


# ---------------------------------------------------------------------------
# equivalent characterizations


def _families(C: GradedSubmodule, bound: int):
    """Ideal and submodule families quantified over by the component-ideal condition.

    Returns (ideals, submodules, restricted) where restricted means the
    families are only the cyclic ones generated inside the box.
    """
    M = C.parent
    R = M.ring
    RM = ring_as_module(R)
    if R.is_finite:
        ideals, ideals_complete = all_graded_submodules(RM), True
    else:
        # over Z every ideal is principal; modulo ann(M) the box generators cover them
        ideals = [generate_submodule([r], RM) for r in R.homogeneous(bound)]
        ideals_complete = scalars_exact(M, bound)
    if M.is_finite:
        subs = all_graded_submodules(M)
    else:
        subs = [generate_submodule([m], M) for m in M.homogeneous(bound)]
    return ideals, subs, not (ideals_complete and M.is_finite)


def _component_combos(C: GradedSubmodule, bound: int, third=None):
    """Distinct (I_g, J_h, K_l) generator triples with I_g J_h K_l inside C."""
    M = C.parent
    R = M.ring
    ideals, subs, cyclic_only = _families(C, bound)
    if third is not None:
        subs = third
    icomp = []
    for I in ideals:
        for g in R.degrees:
            icomp.append(tuple(component_generators(I, g, bound)))
    kcomp = []
    for K in subs:
        for lam in K.parent.degrees:
            kcomp.append(tuple(component_generators(K, lam, bound)))
    icomp = list(dict.fromkeys(icomp))
    kcomp = list(dict.fromkeys(kcomp))
    combos = []
    for a_i, Ig in enumerate(icomp):
        for Jh in icomp[a_i:]:
            prods = [R.mul(x, y) for x in Ig for y in Jh]
            for Kl in kcomp:
                if all(M.act(p, k) in C for p in prods for k in Kl):
                    combos.append((Ig, Jh, Kl))
    return combos, cyclic_only


def check_component_ideal_condition(C: GradedSubmodule, A: MultiplicativeSet,
                                    bound: int = DEFAULT_BOUND) -> CheckOutcome:
    """Fixed a with a I_g K_l <= C, a J_h K_l <= C or a I_g J_h <= (C:_R M) whenever I_g J_h K_l <= C."""
    sc = _scan(C, bound)
    if sc.meets(A) is not None:
        return not_applicable("colon-meets-A")
    M, R = sc.M, sc.R
    combos, cyclic_only = _component_combos(C, bound)

    def first_bad(a):
        for Ig, Jh, Kl in combos:
            aI = [R.mul(a, x) for x in Ig]
            if all(sc.in_c(M.act(x, k)) for x in aI for k in Kl):
                continue
            aJ = [R.mul(a, y) for y in Jh]
            if all(sc.in_c(M.act(y, k)) for y in aJ for k in Kl):
                continue
            if all(sc.in_colon(R.mul(x, y)) for x in aI for y in Jh):
                continue
            return (Ig, Jh, Kl)
        return None

    tested = []
    for a in A:
        bad = first_bad(a)
        if bad is None:
            return holds(sc.bounded(A) or cyclic_only, bound, witness=a)
        tested.append((a, bad))
    return fails(tested[0][1] if tested else None, reason="component-condition",
                 witness_tested=tested[0][0] if tested else None)


def check_ideal_component_condition(P: GradedSubmodule, A: MultiplicativeSet,
                                    bound: int = DEFAULT_BOUND) -> CheckOutcome:
    """The ideal form: P a graded ideal, all three families graded ideals, target P itself."""
    RM = P.parent
    R = RM.ring
    if RM is not ring_as_module(R):
        raise PreconditionError("P must be an ideal (submodule of ring_as_module)")
    if any(a in P for a in A):
        return not_applicable("P-meets-A")
    ideals, _, cyclic_only = _families(P, bound)
    combos, _ = _component_combos(P, bound, third=ideals)

    def first_bad(a):
        for Ig, Jh, Ll in combos:
            aI = [R.mul(a, x) for x in Ig]
            if all(R.mul(x, z) in P for x in aI for z in Ll):
                continue
            aJ = [R.mul(a, y) for y in Jh]
            if all(R.mul(y, z) in P for y in aJ for z in Ll):
                continue
            if all(R.mul(x, y) in P for x in aI for y in Jh):
                continue
            return (Ig, Jh, Ll)
        return None

    tested = []
    for a in A:
        bad = first_bad(a)
        if bad is None:
            return holds(_scan(P, bound).bounded(A) or cyclic_only, bound, witness=a)
        tested.append((a, bad))
    return fails(tested[0][1] if tested else None, reason="ideal-component-condition")


class _ColonCache:
    def __init__(self, C):
        self.C = C
        self._d: dict = {}

    def __call__(self, x):
        v = self._d.get(x)
        if v is None:
            v = self._d[x] = colon_module(self.C, x)
        return v


def colon_characterization(C: GradedSubmodule, A: MultiplicativeSet,
                           bound: int = DEFAULT_BOUND) -> CheckOutcome:
    """Fixed a with (C:a^2rs) = (C:a^2r) or = (C:a^2s) or (C:a^3rs) = M for all homogeneous r, s."""
    sc = _scan(C, bound)
    if sc.meets(A) is not None:
        return not_applicable("colon-meets-A")
    R = sc.R
    colon = _ColonCache(C)
    hR = sc.hR
    tested = []
    for a in A:
        a2 = R.mul(a, a)
        a3 = R.mul(a2, a)
        bad = None
        for i, r in enumerate(hR):
            a2r = R.mul(a2, r)
            for s in hR[i:]:
                rs = R.mul(r, s)
                big = colon(R.mul(a2, rs))
                if big == colon(a2r) or big == colon(R.mul(a2, s)):
                    continue
                if colon(R.mul(a3, rs)).is_whole():
                    continue
                bad = (r, s)
                break
            if bad is not None:
                break
        if bad is None:
            return holds(sc.bounded(A), bound, witness=a, definition_witness=a3)
        tested.append((a, bad))
    return fails(tested[0][1] if tested else None, reason="colon-characterization",
                 witness_tested=tested[0][0] if tested else None)


def stabilization_check(C: GradedSubmodule, A: MultiplicativeSet, n_max: int = 8,
                        bound: int = DEFAULT_BOUND, witness=None) -> CheckOutcome:
    """(C:_M a^3) = (C:_M a^n) and (C:_R a^3 M) = (C:_R a^n M) for 3 <= n <= n_max."""
    base = is_graded_A_2_absorbing(C, A, bound)
    if not base.holds:
        raise PreconditionError("stabilization needs a graded A-2-absorbing submodule")
    a = base.witness if witness is None else witness
    R = C.parent.ring
    cube = colon_module(C, R.power(a, 3))
    cube_r = colon_ring(cube)
    for n in range(3, n_max + 1):
        cn = colon_module(C, R.power(a, n))
        if cn != cube:
            return fails((a, n), reason="module-colon-not-stable")
        if colon_ring(cn) != cube_r:
            return fails((a, n), reason="ring-colon-not-stable")
    return holds(_scan(C, bound).bounded(A) or not C.parent.is_finite, bound, witness=a, n_max=n_max)


def colon_quotient_2abs(C: GradedSubmodule, A: MultiplicativeSet,
                        bound: int = DEFAULT_BOUND) -> CheckOutcome:
    """Some a in A with (C :_M a) graded 2-absorbing."""
    sc = _scan(C, bound)
    if sc.meets(A) is not None:
        return not_applicable("colon-meets-A")
    tested = []
    for a in A:
        D = colon_module(C, a)
        res = is_graded_2_absorbing(D, bound)
        if res.holds:
            return holds(sc.bounded(A) or res.verdict.value == "BoundedHolds", bound, witness=a)
        tested.append((a, res.counterexample))
    return fails(tested[0][1] if tested else None, reason="colon-quotient",
                 witness_tested=tested[0][0] if tested else None)
