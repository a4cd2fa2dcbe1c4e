"""Deterministic enumeration of small (module, submodule, multiplicative set) instances.

A corpus description names families of rings; every ring is taken as a
module over itself and paired with all of its graded submodules and a list
of multiplicative sets (the closures of single homogeneous elements, {1} and
the unit group).  Instances sharing a module also share a Context holding
the data that cross-instance properties need.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .core import DEFAULT_BOUND, GradingGroup, format_element
from .predicates import MultiplicativeSet, mult_closure, units
from .spec_format import SpecError, StructureSpec, _int_list, _require, load_yaml
from .structures import (
    GradedHomomorphism,
    all_graded_submodules,
    cyclic_product,
    group_algebra,
    modular,
    ring_as_module,
)


@dataclass
class CorpusSpec:
    families: list = field(default_factory=list)
    max_carrier_size: int = 64
    max_mult_sets: int = 64
    bound: int = DEFAULT_BOUND

    def as_dict(self) -> dict:
        return {"families": self.families, "max_carrier_size": self.max_carrier_size,
                "max_mult_sets": self.max_mult_sets, "bound": self.bound}


@dataclass
class Context:
    """Per-module data shared by all instances on that module."""
    label: str
    module: object
    bound: int
    submodules: list
    mult_sets: list
    endomorphisms: list = field(default_factory=list)      # graded maps M -> M
    epimorphisms: list = field(default_factory=list)       # graded surjections out of M
    # explicit (f, C') pairs for the preimage property, C' in the target of f
    preimage_cases: list = field(default_factory=list)
    ring_module: bool = True


@dataclass
class Instance:
    index: int
    context: Context
    submodule: object
    mult_set: MultiplicativeSet

    @property
    def label(self) -> str:
        C, A = self.submodule, self.mult_set
        return f"{self.context.label} | C={C.name or describe(C)} | A={A.name}"


@dataclass
class Corpus:
    instances: list
    contexts: list
    skipped: dict
    fingerprint: str

    def __len__(self):
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)


def describe(C) -> str:
    if C.elements is not None:
        return "{" + ", ".join(format_element(x) for x in C.members()) + "}"
    return f"lattice{list(C.lattice.basis)}"


def parse_corpus(text: str) -> CorpusSpec:
    data = load_yaml(text)
    caps = data.get("caps") or {}
    spec = CorpusSpec(
        families=list(data.get("families") or []),
        max_carrier_size=caps.get("max_carrier_size", 64),
        max_mult_sets=caps.get("max_mult_sets", 64),
        bound=data.get("bound", DEFAULT_BOUND),
    )
    for name in ("max_carrier_size", "max_mult_sets", "bound"):
        value = getattr(spec, name)
        if not isinstance(value, int) or value < 1:
            raise SpecError(f"caps.{name}", "must be a positive integer")
    for i, fam in enumerate(spec.families):
        kind = _require(fam, "constructor", f"families[{i}]")
        if kind == "modular":
            _int_list(_require(fam, "moduli", f"families[{i}]"), f"families[{i}].moduli")
        elif kind == "group_algebra":
            _int_list(_require(fam, "bases", f"families[{i}]"), f"families[{i}].bases")
        else:
            raise SpecError(f"families[{i}].constructor", f"unsupported constructor {kind!r}")
    return spec


def read_corpus(path) -> CorpusSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh.read())


def _rings(spec: CorpusSpec):
    for fam in spec.families:
        group = GradingGroup(fam.get("grading_group", [2]))
        if fam["constructor"] == "modular":
            for n in _int_list(fam["moduli"], "moduli"):
                yield modular(n, group, fam.get("grading", "trivial"))
        else:
            for base in _int_list(fam["bases"], "bases"):
                yield group_algebra(base, group)


def standard_mult_sets(R, bound: int, cap: int | None = None):
    """{1}, closures of each homogeneous element, then the units; duplicates dropped.

    Returns (sets, number skipped because of the cap).
    """
    candidates = [mult_closure([], R, bound, name="{1}", warn=False)]
    for x in R.homogeneous(bound):
        if x == R.one:
            continue
        candidates.append(mult_closure([x], R, bound, name=f"<{format_element(x)}>", warn=False))
    candidates.append(units(R, bound))
    out, seen = [], set()
    for A in candidates:
        key = frozenset(A.elements)
        if key in seen:
            continue
        seen.add(key)
        out.append(A)
    if cap is not None and len(out) > cap:
        return out[:cap], len(out) - cap
    return out, 0


def _multiplication(M, c, name):
    images = [M.act(c, e) for e in M.standard_generators]
    return GradedHomomorphism(M, M, images, name)


def _homomorphisms(R, M):
    """Multiplication by degree-e scalars, plus projections Z_n -> Z_d."""
    endos, epis = [], []
    e = R.group.identity
    for c in R.homogeneous():
        if c == R.zero or not R.in_component(e, c):
            continue
        f = _multiplication(M, c, f"mul[{format_element(c)}]")
        endos.append(f)
        if f.is_surjective():
            epis.append(f)
    if R.carrier.rank == 1 and R.one == (1,) and R.degrees == [e]:
        n = R.carrier.orders[0]
        for d in range(2, n):
            if n % d == 0:
                target = cyclic_product(R, [d], name=f"Z_{d}")
                epis.append(GradedHomomorphism(M, target, [(1,)], f"proj[Z_{d}]"))
    return endos, epis


def enumerate_corpus(spec: CorpusSpec) -> Corpus:
    instances, contexts = [], []
    skipped = {"carrier_cap": 0, "mult_set_cap": 0}
    for R in _rings(spec):
        if R.carrier.size > spec.max_carrier_size:
            skipped["carrier_cap"] += 1
            continue
        M = ring_as_module(R)
        subs = all_graded_submodules(M)
        for i, C in enumerate(subs):
            if not C.name:
                C.name = f"C{i}"
        msets, dropped = standard_mult_sets(R, spec.bound, spec.max_mult_sets)
        skipped["mult_set_cap"] += dropped
        endos, epis = _homomorphisms(R, M)
        ctx = Context(f"{R.name} over G={R.group}", M, spec.bound, subs, msets, endos, epis)
        contexts.append(ctx)
        for C in subs:
            for A in msets:
                instances.append(Instance(len(instances), ctx, C, A))
    return Corpus(instances, contexts, skipped, fingerprint(instances))


def corpus_from_spec(spec: StructureSpec) -> Corpus:
    """Instances from a single structure file: every named submodule x every named set."""
    M = spec.module
    ctx = Context(M.name, M, spec.bound, list(spec.submodules.values()),
                  list(spec.mult_sets.values()),
                  ring_module=M is ring_as_module(spec.ring))
    for name, f in spec.homomorphisms.items():
        for Cp in spec.target_submodules.get(name, []):
            ctx.preimage_cases.append((f, Cp))
        if f.source.is_finite and f.target.is_finite and f.is_surjective():
            ctx.epimorphisms.append(f)
    instances = [Instance(i, ctx, C, A)
                 for i, (C, A) in enumerate((C, A) for C in ctx.submodules for A in ctx.mult_sets)]
    return Corpus(instances, [ctx], {}, fingerprint(instances))


def fingerprint(instances) -> str:
    """sha256 of the canonical instance list (structure, submodule, set)."""
    rows = []
    for inst in instances:
        M = inst.context.module
        rows.append([
            inst.context.label,
            list(M.carrier.orders),
            [[list(g), [list(x) for x in gens]] for g, gens in sorted(M.grading.generators.items())],
            [list(x) for x in inst.submodule.key()],
            [list(a) for a in inst.mult_set.elements],
            inst.mult_set.bounded,
        ])
    blob = json.dumps(rows, separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()
