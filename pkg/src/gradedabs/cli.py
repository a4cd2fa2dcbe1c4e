"""Command line front end.

Exit codes: 0 holds (or a clean suite), 1 fails (or a suite counterexample),
2 not applicable, 3 bad input or failed validation.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .core import PreconditionError, StructureError, UnsupportedModeError, format_element, parse_element
from .corpus import corpus_from_spec, describe, enumerate_corpus, read_corpus
from .localization import localize_module, localize_ring, localize_submodule
from .predicates import (
    check_component_ideal_condition,
    colon_characterization,
    colon_quotient_2abs,
    is_graded_2_absorbing,
    is_graded_A_2_absorbing,
    is_graded_A_prime,
    is_graded_prime,
    is_witness,
    pair_violates,
    saturate,
    triple_violates,
)
from .spec_format import SpecError, read_spec
from .structures import (
    CheckOutcome,
    Verdict,
    colon_module,
    colon_ring,
    is_graded_submodule,
    ring_as_module,
)
from .suite import jsonable, run_theorem_suite

EXIT_OK, EXIT_FAILS, EXIT_NA, EXIT_INPUT = 0, 1, 2, 3

PREDICATES = {
    "prime": (lambda C, A, b: is_graded_prime(C, b), False),
    "two-absorbing": (lambda C, A, b: is_graded_2_absorbing(C, b), False),
    "a-prime": (is_graded_A_prime, True),
    "a-two-absorbing": (is_graded_A_2_absorbing, True),
    "colon-char": (colon_characterization, True),
    "component-ideal": (check_component_ideal_condition, True),
    "colon-quotient": (colon_quotient_2abs, True),
}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gradedabs", description="Graded A-2-absorbing submodule toolkit")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="parse a structure file and run the validators")
    v.add_argument("file")

    c = sub.add_parser("check", help="decide one predicate for a named submodule")
    c.add_argument("file")
    c.add_argument("--predicate", required=True, choices=sorted(PREDICATES))
    c.add_argument("--submodule", required=True)
    c.add_argument("--multset")
    c.add_argument("--bound", type=int)
    c.add_argument("--witness", help="test this particular element of A (a-two-absorbing only)")
    c.add_argument("--format", choices=["text", "json"], default="text")

    k = sub.add_parser("colon", help="colon ideal (C:M), or (C:a) / (C:I) with a divisor")
    k.add_argument("file")
    k.add_argument("--submodule", required=True)
    group = k.add_mutually_exclusive_group()
    group.add_argument("--divisor")
    group.add_argument("--ideal")

    s = sub.add_parser("saturate", help="saturation of a multiplicative set")
    s.add_argument("file")
    s.add_argument("--multset", required=True)

    lo = sub.add_parser("localize", help="ring and module of fractions (finite structures)")
    lo.add_argument("file")
    lo.add_argument("--multset", required=True)
    lo.add_argument("--submodule")

    ve = sub.add_parser("verify", help="run the theorem suite on a structure file or a corpus")
    ve.add_argument("file", nargs="?")
    ve.add_argument("--corpus")
    ve.add_argument("--jobs", type=int, default=1)
    ve.add_argument("--format", choices=["text", "json"], default="text")
    return p


def _lookup(table: dict, name, what):
    if name not in table:
        known = ", ".join(table) or "none"
        raise InputError(f"unknown {what} {name!r} (known: {known})")
    return table[name]


def _element(structure, text):
    try:
        return structure.carrier.element(parse_element(text))
    except (ValueError, StructureError) as exc:
        raise InputError(f"bad element {text!r}: {exc}") from exc


def _exit_code(outcome: CheckOutcome) -> int:
    if outcome.holds:
        return EXIT_OK
    return EXIT_FAILS if outcome.fails else EXIT_NA


def _show(x):
    if isinstance(x, tuple) and x and all(isinstance(v, tuple) for v in x):
        return "(" + ", ".join(format_element(v) for v in x) + ")"
    if isinstance(x, tuple):
        return format_element(x)
    return str(x)


def _recheck(name, outcome, C, witness):
    """Feed a reported counterexample back through the plain checker."""
    cx = outcome.counterexample
    if cx is None:
        return None
    if name == "two-absorbing":
        return triple_violates(C, None, cx)
    if name == "prime":
        return pair_violates(C, None, cx)
    if name == "a-two-absorbing":
        if witness is not None:
            return triple_violates(C, witness, cx)
        return all(triple_violates(C, a, t) for a, t in outcome.details.get("per_witness", ()))
    if name == "a-prime":
        return all(pair_violates(C, a, p) for a, p in outcome.details.get("per_witness", ()))
    return None


def cmd_validate(args):
    spec = read_spec(args.file)
    print(f"ring    {spec.ring.name}: {spec.validation['ring'].verdict.value}")
    print(f"module  {spec.module.name}: {spec.validation['module'].verdict.value}")
    for name, C in spec.submodules.items():
        print(f"submodule {name}: graded {is_graded_submodule(C, bound=spec.bound).verdict.value}")
    for name, A in spec.mult_sets.items():
        flag = " (bounded)" if A.bounded else ""
        print(f"mult set {name}: {len(A)} elements{flag}")
    for name, f in spec.homomorphisms.items():
        print(f"homomorphism {name}: {f.source.name} -> {f.target.name}")
    return EXIT_OK


def cmd_check(args):
    spec = read_spec(args.file)
    bound = args.bound or spec.bound
    C = _lookup(spec.submodules, args.submodule, "submodule")
    fn, needs_set = PREDICATES[args.predicate]
    A = None
    if needs_set:
        if not args.multset:
            raise InputError(f"--predicate {args.predicate} needs --multset")
        A = _lookup(spec.mult_sets, args.multset, "multiplicative set")
    witness = None
    if args.witness is not None:
        if args.predicate != "a-two-absorbing":
            raise InputError("--witness applies to --predicate a-two-absorbing")
        witness = _element(spec.ring, args.witness)
        try:
            outcome = is_witness(witness, C, A, bound)
        except PreconditionError as exc:
            raise InputError(str(exc)) from exc
    else:
        outcome = fn(C, A, bound)
    rechecked = _recheck(args.predicate, outcome, C, witness) if outcome.fails else None
    if args.format == "json":
        print(json.dumps({
            "verdict": outcome.verdict.value,
            "witness": jsonable(outcome.witness),
            "counterexample": jsonable(outcome.counterexample),
            "bound": bound,
            "property_counts": None,
            "corpus_fingerprint": None,
            "reason": outcome.reason,
            "revalidated": rechecked,
        }, indent=2, sort_keys=True))
    else:
        line = f"{args.predicate}({args.submodule}"
        line += f", {args.multset})" if A is not None else ")"
        print(f"{line}: {outcome.verdict.value}")
        if outcome.witness is not None:
            print(f"  witness a = {format_element(outcome.witness)}")
        if outcome.verdict is Verdict.BOUNDED_HOLDS:
            print(f"  scalars/elements searched in the box [-{bound}, {bound}]")
        if outcome.fails:
            print(f"  counterexample {_show(outcome.counterexample)} ({outcome.reason})")
            if rechecked is not None:
                print(f"  re-validated: {'yes' if rechecked else 'NO'}")
        if outcome.not_applicable:
            print(f"  reason: {outcome.reason}")
    return _exit_code(outcome)


def _print_submodule(C, bound):
    if C.bounded:
        print(f"  lattice basis {[list(b) for b in C.lattice.basis]}")
        members = C.members(bound)
        print(f"  {len(members)} members in the box [-{bound}, {bound}]")
        if len(members) <= 40:
            print("  " + ", ".join(format_element(x) for x in members))
    else:
        print(f"  {describe(C)}")


def cmd_colon(args):
    spec = read_spec(args.file)
    C = _lookup(spec.submodules, args.submodule, "submodule")
    if args.divisor is not None:
        a = _element(spec.ring, args.divisor)
        print(f"({args.submodule} :_M {format_element(a)})")
        _print_submodule(colon_module(C, a), spec.bound)
    elif args.ideal is not None:
        I = _lookup(spec.submodules, args.ideal, "submodule")
        if I.parent is not ring_as_module(spec.ring):
            raise InputError(f"{args.ideal} is not an ideal of the ring")
        print(f"({args.submodule} :_M {args.ideal})")
        _print_submodule(colon_module(C, I), spec.bound)
    else:
        print(f"({args.submodule} :_R M)")
        _print_submodule(colon_ring(C), spec.bound)
    return EXIT_OK


def cmd_saturate(args):
    spec = read_spec(args.file)
    A = _lookup(spec.mult_sets, args.multset, "multiplicative set")
    star = saturate(A, spec.bound)
    flag = f" (box [-{spec.bound}, {spec.bound}])" if star.bounded else ""
    print(f"{A.name} = {{{', '.join(format_element(a) for a in A)}}}")
    print(f"{star.name} = {{{', '.join(format_element(a) for a in star)}}}{flag}")
    return EXIT_OK


def cmd_localize(args):
    spec = read_spec(args.file)
    A = _lookup(spec.mult_sets, args.multset, "multiplicative set")
    LR = localize_ring(spec.ring, A)
    LM = localize_module(spec.module, A, LR)

    def frac(p):
        return f"{format_element(p[0])}/{format_element(p[1])}"

    print(f"{A.name}^-1 {spec.ring.name}: {len(LR)} classes")
    for rep, members in LR.classes.items():
        unit = " unit" if LR.is_unit(rep) else ""
        print(f"  [{frac(rep)}] size {len(members)}{unit}")
    print(f"{A.name}^-1 {spec.module.name}: {len(LM)} classes")
    for g in LM.structure.degrees:
        comp = LM.structure.component_members(g)
        print(f"  degree {format_element(g)}: {', '.join('[' + frac(p) + ']' for p in comp)}")
    if args.submodule:
        C = _lookup(spec.submodules, args.submodule, "submodule")
        AC = localize_submodule(C, A, LM)
        print(f"{A.name}^-1 {args.submodule}: " + ", ".join(f"[{frac(p)}]" for p in AC.members()))
    return EXIT_OK


def cmd_verify(args):
    if bool(args.file) == bool(args.corpus):
        raise InputError("verify needs exactly one of FILE or --corpus")
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    if args.corpus:
        cspec = read_corpus(args.corpus)
        source = {"corpus": cspec.as_dict()}
        corpus = enumerate_corpus(cspec)
    else:
        source = {"spec_path": args.file}
        corpus = corpus_from_spec(read_spec(args.file))
    if not len(corpus):
        raise InputError("corpus is empty")
    report = run_theorem_suite(corpus, jobs=args.jobs, source=source)
    print(report.dumps() if args.format == "json" else report.text())
    return EXIT_FAILS if report.total_counterexamples else EXIT_OK


COMMANDS = {"validate": cmd_validate, "check": cmd_check, "colon": cmd_colon,
            "saturate": cmd_saturate, "localize": cmd_localize, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (SpecError, InputError, OSError, UnsupportedModeError, PreconditionError,
            StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
