"""Property suite: every instance of a corpus is run through the theorem checks.

Each property reports one status per instance:

  holds           the property was verified and every verdict involved is exact
  bounded         verified, but some verdict involved was a box-limited BoundedHolds
  not_applicable  the property's premise is not met on this instance
  counterexample  the property is violated; the payload says how

Properties are implications between predicate verdicts, so a counterexample
always points at a bug in this package rather than at the mathematics.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .corpus import Corpus, CorpusSpec, corpus_from_spec, describe, enumerate_corpus
from .localization import localize_module, localize_ring, localize_submodule, saturation_cross_check
from .predicates import (
    MultiplicativeSet,
    check_component_ideal_condition,
    check_ideal_component_condition,
    colon_characterization,
    colon_quotient_2abs,
    is_graded_2_absorbing,
    is_graded_A_2_absorbing,
    is_graded_A_prime,
    is_graded_prime,
    is_witness,
    pair_violates,
    saturate,
    stabilization_check,
    triple_violates,
)
from .structures import (
    CheckOutcome,
    GradedSubmodule,
    Verdict,
    colon_ring,
    hom_image,
    hom_preimage,
    intersect,
    is_graded_submodule,
    kernel,
    ring_as_module,
    validate_graded_module,
    validate_graded_ring,
)

log = logging.getLogger(__name__)

PROPERTIES = (
    ("P1", "monotonicity in A"),
    ("P2", "saturation invariance"),
    ("P3", "localization gives a graded 2-absorbing submodule"),
    ("P4", "component-ideal condition agrees"),
    ("P5", "ideal form of the component condition agrees"),
    ("P6", "colon ideal inherits the property"),
    ("P7", "colon characterization agrees"),
    ("P8", "colon stabilization at a^3"),
    ("P9", "colon-quotient criterion agrees"),
    ("P10", "preimages under graded maps"),
    ("P11", "images under graded epimorphisms"),
    ("P12", "intersection of two A-primes"),
    ("H1", "A-prime implies A-2-absorbing"),
    ("H2", "2-absorbing and disjoint implies A-2-absorbing"),
    ("T1", "trivial A reduces to 2-absorbing"),
    ("L", "localization soundness"),
    ("F", "failures are self-certifying"),
)
PROPERTY_NAMES = tuple(p for p, _ in PROPERTIES)


class Status(str, Enum):
    HOLDS = "holds"
    BOUNDED = "bounded"
    NOT_APPLICABLE = "not_applicable"
    COUNTEREXAMPLE = "counterexample"


@dataclass
class PropertyResult:
    status: Status
    payload: object = None


def jsonable(x):
    """Plain-JSON view of outcomes, elements, submodules and sets."""
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, GradedSubmodule):
        return {"name": x.name, "members": describe(x)}
    if isinstance(x, MultiplicativeSet):
        return {"name": x.name, "elements": jsonable(x.elements)}
    if isinstance(x, CheckOutcome):
        return {"verdict": x.verdict.value, "witness": jsonable(x.witness),
                "counterexample": jsonable(x.counterexample), "reason": x.reason}
    if x is None or isinstance(x, (int, float, str, bool)):
        return x
    return repr(x)


def _bounded(*outcomes) -> bool:
    return any(o is not None and o.verdict is Verdict.BOUNDED_HOLDS for o in outcomes)


def _ok(*outcomes) -> PropertyResult:
    return PropertyResult(Status.BOUNDED if _bounded(*outcomes) else Status.HOLDS)


def _na(reason=None) -> PropertyResult:
    return PropertyResult(Status.NOT_APPLICABLE, reason)


def _cx(**payload) -> PropertyResult:
    return PropertyResult(Status.COUNTEREXAMPLE, jsonable(payload))


def _kind(o: CheckOutcome) -> str:
    if o.holds:
        return "holds"
    return "fails" if o.fails else "not_applicable"


class Evaluator:
    """Memoized predicate calls shared by all properties of a run."""

    def __init__(self, bound: int):
        self.bound = bound
        self._memo: dict = {}

    def _get(self, key, fn):
        v = self._memo.get(key)
        if v is None:
            v = self._memo[key] = fn()
        return v

    def a2abs(self, C, A):
        return self._get(("a2", id(C.parent), C.key(), id(A)),
                         lambda: is_graded_A_2_absorbing(C, A, self.bound))

    def aprime(self, C, A):
        return self._get(("ap", id(C.parent), C.key(), id(A)),
                         lambda: is_graded_A_prime(C, A, self.bound))

    def two_abs(self, C):
        return self._get(("2a", id(C.parent), C.key()), lambda: is_graded_2_absorbing(C, self.bound))

    def prime(self, C):
        return self._get(("pr", id(C.parent), C.key()), lambda: is_graded_prime(C, self.bound))

    def saturation(self, A):
        return self._get(("sat", id(A)), lambda: saturate(A, self.bound))

    def loc_ring(self, A):
        return self._get(("lr", id(A)), lambda: localize_ring(A.ring, A))

    def loc_module(self, M, A):
        return self._get(("lm", id(M), id(A)), lambda: localize_module(M, A, self.loc_ring(A)))


# ---------------------------------------------------------------------------
# the properties; each takes (evaluator, instance) and returns a PropertyResult


def p1_monotonicity(ev, inst):
    C, A = inst.submodule, inst.mult_set
    base = ev.a2abs(C, A)
    if not base.holds:
        return _na("premise")
    used = [base]
    for A2 in inst.context.mult_sets:
        if A2 is A or not A <= A2 or A2.contains_zero:
            continue
        out = ev.a2abs(C, A2)
        if out.not_applicable:
            continue
        if not out.holds:
            return _cx(larger_set=A2, outcome=out)
        used.append(out)
    return _ok(*used) if len(used) > 1 else _na("no larger disjoint set")


def p2_saturation(ev, inst):
    C, A = inst.submodule, inst.mult_set
    base = ev.a2abs(C, A)
    star = ev.saturation(A)
    other = ev.a2abs(C, star)
    if base.not_applicable and other.not_applicable:
        return _na("colon meets A")
    if base.holds != other.holds:
        return _cx(saturation=star, outcome_A=base, outcome_saturated=other)
    return _ok(base, other)


def p3_localization(ev, inst):
    C, A = inst.submodule, inst.mult_set
    M = C.parent
    if not (M.is_finite and M.ring.is_finite):
        return _na("infinite carrier")
    base = ev.a2abs(C, A)
    if not base.holds:
        return _na("premise")
    L = ev.loc_module(M, A)
    AC = localize_submodule(C, A, L)
    if AC.is_whole():
        # the conclusion asks for a proper submodule; record these rather than count them
        log.info("localization of %s at %s is the whole module", C.name, A.name)
        return _na("localized submodule is everything")
    out = is_graded_2_absorbing(AC, ev.bound)
    if not out.holds:
        return _cx(localized=AC, outcome=out)
    return _ok(base, out)


def _agreement(ev, inst, route, recheck):
    C, A = inst.submodule, inst.mult_set
    base = ev.a2abs(C, A)
    other = route(C, A, ev.bound)
    if _kind(base) != _kind(other):
        return _cx(definition=base, route=other)
    if base.not_applicable:
        return _na("colon meets A")
    if other.holds:
        a = recheck(other)
        check = is_witness(a, C, A, ev.bound)
        if not check.holds:
            return _cx(route=other, rechecked_witness=a, recheck=check)
        return _ok(base, other, check)
    return _ok(base, other)


def p4_component(ev, inst):
    return _agreement(ev, inst, check_component_ideal_condition, lambda o: o.witness)


def p5_ideal(ev, inst):
    if not inst.context.ring_module:
        return _na("module is not the ring itself")
    C, A = inst.submodule, inst.mult_set
    base = ev.a2abs(C, A)
    other = check_ideal_component_condition(C, A, ev.bound)
    if _kind(base) != _kind(other):
        return _cx(definition=base, ideal_form=other)
    if base.not_applicable:
        return _na("ideal meets A")
    return _ok(base, other)


def p6_colon(ev, inst):
    C, A = inst.submodule, inst.mult_set
    base = ev.a2abs(C, A)
    if not base.holds:
        return _na("premise")
    R = C.parent.ring
    ideal = colon_ring(C)
    if ideal.parent is not ring_as_module(R):
        return _cx(reason="colon ideal not in the ring module")
    out = ev.a2abs(ideal, A)
    if not out.holds:
        return _cx(colon=ideal, outcome=out)
    return _ok(base, out)


def p7_colon_characterization(ev, inst):
    return _agreement(ev, inst, colon_characterization,
                      lambda o: o.details["definition_witness"])


def p8_stabilization(ev, inst):
    C, A = inst.submodule, inst.mult_set
    base = ev.a2abs(C, A)
    if not base.holds:
        return _na("premise")
    out = stabilization_check(C, A, bound=ev.bound, witness=base.witness)
    if not out.holds:
        return _cx(outcome=out)
    return _ok(base, out)


def p9_colon_quotient(ev, inst):
    return _agreement(ev, inst, colon_quotient_2abs, lambda o: o.witness)


def _disjoint(ev, C, A) -> bool:
    return not any(a in colon_ring(C) for a in A)


def p10_preimage(ev, inst):
    C, A = inst.submodule, inst.mult_set
    cases = [(f, C) for f in inst.context.endomorphisms]
    if C is inst.context.submodules[0]:
        # cases given in a structure file do not involve C; run them once per set
        cases += inst.context.preimage_cases
    used = []
    for f, Cp in cases:
        prem = ev.a2abs(Cp, A)
        if not prem.holds:
            continue
        pre = hom_preimage(f, Cp, name=f"{f.name}^-1({Cp.name})")
        if not _disjoint(ev, pre, A):
            continue
        out = ev.a2abs(pre, A)
        if not out.holds:
            return _cx(map=f.name, target_submodule=Cp, preimage=pre, outcome=out)
        used += [prem, out]
    return _ok(*used) if used else _na("premise")


def p11_image(ev, inst):
    C, A = inst.submodule, inst.mult_set
    base = ev.a2abs(C, A)
    if not base.holds:
        return _na("premise")
    used = [base]
    for f in inst.context.epimorphisms:
        if not kernel(f) <= C:
            continue
        img = hom_image(f, C, name=f"{f.name}({C.name})")
        out = ev.a2abs(img, A)
        if not out.holds:
            return _cx(map=f.name, image=img, outcome=out)
        used.append(out)
    return _ok(*used) if len(used) > 1 else _na("no epimorphism with kernel inside C")


def p12_intersection(ev, inst):
    C, A = inst.submodule, inst.mult_set
    first = ev.aprime(C, A)
    if not first.holds:
        return _na("premise")
    used = [first]
    for C2 in inst.context.submodules:
        second = ev.aprime(C2, A)
        if not second.holds:
            continue
        D = intersect(C, C2, name=f"{C.name}&{C2.name}")
        out = ev.a2abs(D, A)
        if not out.holds:
            return _cx(other=C2, intersection=D, outcome=out)
        used += [second, out]
    return _ok(*used)


def h1_hierarchy(ev, inst):
    C, A = inst.submodule, inst.mult_set
    ap = ev.aprime(C, A)
    if not ap.holds:
        return _na("premise")
    out = ev.a2abs(C, A)
    return _ok(ap, out) if out.holds else _cx(a_prime=ap, outcome=out)


def h2_hierarchy(ev, inst):
    C, A = inst.submodule, inst.mult_set
    two = ev.two_abs(C)
    out = ev.a2abs(C, A)
    if not two.holds or out.not_applicable:
        return _na("premise")
    return _ok(two, out) if out.holds else _cx(two_absorbing=two, outcome=out)


def t1_trivial(ev, inst):
    C, A = inst.submodule, inst.mult_set
    R = C.parent.ring
    if set(A.elements) != {R.one}:
        return _na("A is not {1}")
    rel = ev.a2abs(C, A)
    plain = ev.two_abs(C)
    if rel.holds != plain.holds or rel.not_applicable != C.is_whole():
        return _cx(relative=rel, plain=plain)
    if rel.not_applicable:
        return _na("C = M")
    return _ok(rel, plain)


def l_localization(ev, inst):
    C, A = inst.submodule, inst.mult_set
    M = C.parent
    if not (M.is_finite and M.ring.is_finite):
        return _na("infinite carrier")
    LR = ev.loc_ring(A)
    LM = ev.loc_module(M, A)
    checks = {
        "ring_validator": validate_graded_ring(LR.structure),
        "module_validator": validate_graded_module(LM.structure),
        "ring_well_defined": LR.check_well_defined(),
        "module_well_defined": LM.check_well_defined(),
        "saturation_cross_check": saturation_cross_check(A, ev.saturation(A), LR),
    }
    for name, out in checks.items():
        if not out.holds:
            return _cx(check=name, outcome=out)
    AC = localize_submodule(C, A, LM)
    graded = is_graded_submodule(AC)
    if not graded.holds:
        return _cx(check="localized_submodule_graded", outcome=graded)
    return _ok()


def f_self_certifying(ev, inst):
    C, A = inst.submodule, inst.mult_set
    seen = False
    for out, check in (
        (ev.two_abs(C), lambda o: triple_violates(C, None, o.counterexample)),
        (ev.prime(C), lambda o: pair_violates(C, None, o.counterexample)),
        (ev.a2abs(C, A), lambda o: all(triple_violates(C, a, t) for a, t in o.details["per_witness"])),
        (ev.aprime(C, A), lambda o: all(pair_violates(C, a, p) for a, p in o.details["per_witness"])),
    ):
        if out.fails:
            seen = True
            if not check(out):
                return _cx(outcome=out)
    return _ok() if seen else _na("nothing failed")


CHECKS = {
    "P1": p1_monotonicity, "P2": p2_saturation, "P3": p3_localization, "P4": p4_component,
    "P5": p5_ideal, "P6": p6_colon, "P7": p7_colon_characterization, "P8": p8_stabilization,
    "P9": p9_colon_quotient, "P10": p10_preimage, "P11": p11_image, "P12": p12_intersection,
    "H1": h1_hierarchy, "H2": h2_hierarchy, "T1": t1_trivial, "L": l_localization,
    "F": f_self_certifying,
}


def evaluate_instance(ev: Evaluator, inst, properties=PROPERTY_NAMES) -> dict:
    if inst.mult_set.contains_zero:
        return {p: PropertyResult(Status.NOT_APPLICABLE, "0 in A") for p in properties}
    return {p: CHECKS[p](ev, inst) for p in properties}


# ---------------------------------------------------------------------------
# report


@dataclass
class SuiteReport:
    property_counts: dict
    counterexamples: list
    corpus_fingerprint: str
    bound: int
    instances: int
    skipped: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def total_counterexamples(self) -> int:
        return sum(c["counterexamples"] for c in self.property_counts.values())

    @property
    def evaluations(self) -> int:
        return sum(c["instances_tested"] - c["not_applicable"] for c in self.property_counts.values())

    @property
    def verdict(self) -> Verdict:
        if self.total_counterexamples:
            return Verdict.FAILS
        if any(c["bounded"] for c in self.property_counts.values()):
            return Verdict.BOUNDED_HOLDS
        return Verdict.HOLDS

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "verdict": self.verdict.value,
            "witness": None,
            "counterexample": self.counterexamples[0] if self.counterexamples else None,
            "bound": self.bound,
            "property_counts": self.property_counts,
            "corpus_fingerprint": self.corpus_fingerprint,
            "instances": self.instances,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
        }
        if timing:
            out["timing"] = self.timing
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)

    def text(self) -> str:
        lines = [f"corpus {self.corpus_fingerprint[:16]}  instances {self.instances}  bound {self.bound}",
                 f"{'property':<9}{'tested':>8}{'holds':>8}{'bounded':>9}{'n/a':>6}{'cex':>6}"]
        for p, desc in PROPERTIES:
            c = self.property_counts.get(p)
            if c is None:
                continue
            lines.append(f"{p:<9}{c['instances_tested']:>8}{c['holds']:>8}{c['bounded']:>9}"
                         f"{c['not_applicable']:>6}{c['counterexamples']:>6}  {desc}")
        for cx in self.counterexamples[:20]:
            lines.append(f"COUNTEREXAMPLE {cx['property']} #{cx['instance']} {cx['label']}: "
                         f"{json.dumps(cx['payload'])}")
        lines.append(f"verdict {self.verdict.value}  ({self.evaluations} evaluations,"
                     f" {self.total_counterexamples} counterexamples)")
        if self.timing:
            lines.append(f"wall time {self.timing.get('wall_seconds', 0):.2f}s")
        return "\n".join(lines)


def _rows(corpus: Corpus, indices, bound: int, properties) -> list:
    ev = Evaluator(bound)
    rows = []
    for i in indices:
        inst = corpus.instances[i]
        res = evaluate_instance(ev, inst, properties)
        rows.append((i, inst.label, {p: (r.status.value, r.payload) for p, r in res.items()}))
    return rows


_WORKER_CORPUS: dict = {}


def _worker(source: dict, indices, properties):
    key = json.dumps(source, sort_keys=True)
    corpus = _WORKER_CORPUS.get(key)
    if corpus is None:
        corpus = _WORKER_CORPUS[key] = build_corpus(source)
    return _rows(corpus, indices, corpus.contexts[0].bound, properties)


def build_corpus(source: dict) -> Corpus:
    """Rebuild a corpus from its picklable description (used by worker processes)."""
    if "spec_path" in source:
        from .spec_format import read_spec

        return corpus_from_spec(read_spec(source["spec_path"]))
    return enumerate_corpus(CorpusSpec(**source["corpus"]))


def run_theorem_suite(corpus: Corpus, jobs: int = 1, properties=PROPERTY_NAMES,
                      source: dict | None = None) -> SuiteReport:
    """Evaluate every property on every instance; merge in instance order.

    With jobs > 1 the instances are split into chunks that worker processes
    evaluate after rebuilding the corpus from ``source``; results are merged
    by instance index so the report does not depend on the job count.
    """
    if not len(corpus):
        raise ValueError("empty corpus")
    start = time.perf_counter()
    bound = corpus.contexts[0].bound
    n = len(corpus)
    if jobs > 1 and source is not None:
        chunks = [list(range(k, n, jobs * 4)) for k in range(min(n, jobs * 4))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_worker, [source] * len(chunks), chunks, [properties] * len(chunks))
            rows = [r for part in parts for r in part]
    else:
        rows = _rows(corpus, range(n), bound, properties)
    rows.sort(key=lambda r: r[0])

    counts = {p: {"instances_tested": 0, "holds": 0, "bounded": 0, "not_applicable": 0,
                  "counterexamples": 0} for p in properties}
    field_of = {"holds": "holds", "bounded": "bounded", "not_applicable": "not_applicable",
                "counterexample": "counterexamples"}
    cexs = []
    for i, label, res in rows:
        for p in properties:
            status, payload = res[p]
            counts[p]["instances_tested"] += 1
            counts[p][field_of[status]] += 1
            if status == "counterexample":
                cexs.append({"property": p, "instance": i, "label": label, "payload": payload})
    wall = time.perf_counter() - start
    return SuiteReport(counts, cexs, corpus.fingerprint, bound, n, dict(corpus.skipped),
                       {"wall_seconds": wall, "jobs": jobs, "cpu_count": os.cpu_count()})
