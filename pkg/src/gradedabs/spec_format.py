"""Reader for the YAML structure-description format (see docs/FORMAT.md).

A spec file describes one grading group, one ring, one module over it, and
any number of named submodules, multiplicative sets and homomorphisms out
of the module.  Parsing validates everything; problems are reported as
SpecError with the offending field path (and line, for YAML syntax errors).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from .core import DEFAULT_BOUND, GradingGroup, PreconditionError, StructureError, UnsupportedModeError
from .predicates import MultiplicativeSet, mult_closure, nonzero_integers, units
from .structures import (
    CheckOutcome,
    GradedHomomorphism,
    GradedSubmodule,
    cyclic_product,
    generate_submodule,
    group_algebra,
    hom_preimage,
    integers,
    modular,
    product_ring,
    ring_as_module,
    submodule_from_elements,
    table_module,
    table_ring,
    validate_graded_module,
    validate_graded_ring,
    validate_homomorphism,
)

FORMAT_VERSION = 1


class SpecError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


@dataclass
class StructureSpec:
    group: GradingGroup
    ring: object
    module: object
    bound: int = DEFAULT_BOUND
    submodules: dict = field(default_factory=dict)
    mult_sets: dict = field(default_factory=dict)
    homomorphisms: dict = field(default_factory=dict)
    # homomorphism name -> list of target submodules used for preimage checks
    target_submodules: dict = field(default_factory=dict)
    validation: dict = field(default_factory=dict)


def _require(mapping, key, where):
    if not isinstance(mapping, dict):
        raise SpecError(where, "expected a mapping")
    if key not in mapping:
        raise SpecError(f"{where}.{key}", "missing field")
    return mapping[key]


def _int_list(value, where) -> list:
    if isinstance(value, int):
        return [value]
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise SpecError(where, f"expected an integer or list of integers, got {value!r}")
    return value


def _grading(block: dict, where: str, default="trivial"):
    if "component_assignment" in block:
        return [_int_list(d, f"{where}.component_assignment[{i}]")
                for i, d in enumerate(block["component_assignment"])]
    if "components" in block:
        comps = {}
        for i, entry in enumerate(block["components"]):
            w = f"{where}.components[{i}]"
            deg = tuple(_int_list(_require(entry, "degree", w), f"{w}.degree"))
            gens = [_int_list(g, f"{w}.generators") for g in entry.get("generators", [])]
            comps[deg] = gens
        return comps
    grading = block.get("grading", default)
    if grading != "trivial":
        raise SpecError(f"{where}.grading", f"unknown grading {grading!r}")
    return "trivial"


def _build_ring(block, group, where="ring"):
    kind = _require(block, "constructor", where)
    try:
        if kind == "modular":
            n = _require(block, "modulus", where)
            return modular(n, group, _grading(block, where))
        if kind == "integers":
            return integers(group, _grading(block, where))
        if kind == "group_algebra":
            base = _require(block, "base", where)
            return group_algebra(base, group)
        if kind == "product":
            factors = [_build_ring(f, group, f"{where}.factors[{i}]")
                       for i, f in enumerate(_require(block, "factors", where))]
            grading = None if not ("component_assignment" in block or "components" in block) \
                else _grading(block, where)
            return product_ring(factors, grading)
        if kind == "table":
            return table_ring(_require(block, "orders", where), _require(block, "constants", where),
                              _require(block, "one", where), group, _grading(block, where))
    except (StructureError, UnsupportedModeError, PreconditionError) as exc:
        raise SpecError(where, str(exc)) from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(where, str(exc)) from exc
    raise SpecError(f"{where}.constructor", f"unsupported constructor {kind!r}")


def _build_module(block, ring, where="module"):
    kind = _require(block, "constructor", where)
    try:
        if kind == "ring_as_module":
            return ring_as_module(ring)
        if kind == "cyclic_product":
            return cyclic_product(ring, _require(block, "orders", where), _grading(block, where),
                                  name=block.get("name", "M"))
        if kind == "table":
            return table_module(ring, _require(block, "orders", where),
                                _require(block, "action", where), _grading(block, where),
                                name=block.get("name", "M"))
    except (StructureError, UnsupportedModeError, PreconditionError) as exc:
        raise SpecError(where, str(exc)) from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(where, str(exc)) from exc
    raise SpecError(f"{where}.constructor", f"unsupported constructor {kind!r}")


def _element(structure, value, where):
    try:
        return structure.carrier.element(_int_list(value, where))
    except StructureError as exc:
        raise SpecError(where, str(exc)) from exc


def _submodule(block, M, name, where) -> GradedSubmodule:
    if not isinstance(block, dict):
        raise SpecError(where, "expected a mapping with 'generators' or 'elements'")
    try:
        if "elements" in block:
            elems = [_element(M, e, f"{where}.elements") for e in block["elements"]]
            return submodule_from_elements(elems, M, name)
        gens = [_element(M, g, f"{where}.generators") for g in block.get("generators", [])]
        return generate_submodule(gens, M, name)
    except (StructureError, UnsupportedModeError, PreconditionError) as exc:
        raise SpecError(where, str(exc)) from exc


def _mult_set(block, R, bound, name, where) -> MultiplicativeSet:
    if not isinstance(block, dict):
        raise SpecError(where, "expected a mapping")
    kind = block.get("constructor", "closure")
    try:
        if kind == "units":
            return units(R, bound, name)
        if kind == "nonzero_integers":
            return nonzero_integers(R, bound, name)
        if kind == "closure":
            gens = [_element(R, g, f"{where}.generators") for g in block.get("generators", [])]
            return mult_closure(gens, R, bound, name)
    except PreconditionError as exc:
        raise SpecError(where, str(exc)) from exc
    raise SpecError(f"{where}.constructor", f"unsupported constructor {kind!r}")


def _check(outcome: CheckOutcome, where: str, what: str):
    if outcome.fails:
        raise SpecError(where, f"{what} failed ({outcome.reason}) at {outcome.counterexample}")


def load_yaml(text: str) -> dict:
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        loc = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "input"
        raise SpecError(loc, f"syntax error: {exc.problem}") from exc
    except yaml.YAMLError as exc:
        raise SpecError("input", f"syntax error: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecError("input", "top level must be a mapping")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise SpecError("format_version", f"unsupported version {version!r}")
    return data


def parse_spec(text: str) -> StructureSpec:
    data = load_yaml(text)
    bound = data.get("bound", DEFAULT_BOUND)
    if not isinstance(bound, int) or bound < 1:
        raise SpecError("bound", "must be a positive integer")
    try:
        group = GradingGroup(_int_list(_require(data, "grading_group", "spec"), "grading_group"))
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError("grading_group", str(exc)) from exc
    ring = _build_ring(_require(data, "ring", "spec"), group)
    module = _build_module(data.get("module", {"constructor": "ring_as_module"}), ring)
    spec = StructureSpec(group, ring, module, bound)

    spec.validation["ring"] = validate_graded_ring(ring, bound)
    _check(spec.validation["ring"], "ring", "graded ring validation")
    spec.validation["module"] = validate_graded_module(module, bound)
    _check(spec.validation["module"], "module", "graded module validation")

    for name, block in (data.get("submodules") or {}).items():
        spec.submodules[name] = _submodule(block, module, name, f"submodules.{name}")
    for name, block in (data.get("mult_sets") or {}).items():
        spec.mult_sets[name] = _mult_set(block, ring, bound, name, f"mult_sets.{name}")
    for name, block in (data.get("homomorphisms") or {}).items():
        where = f"homomorphisms.{name}"
        target = _build_module(_require(block, "target", where), ring, f"{where}.target")
        _check(validate_graded_module(target, bound), f"{where}.target", "graded module validation")
        images = [_element(target, v, f"{where}.images") for v in _require(block, "images", where)]
        try:
            f = GradedHomomorphism(module, target, images, name)
        except StructureError as exc:
            raise SpecError(where, str(exc)) from exc
        _check(validate_homomorphism(f, bound), where, "homomorphism validation")
        spec.homomorphisms[name] = f
        spec.target_submodules[name] = [
            _submodule(b, target, f"{name}.{i}", f"{where}.target_submodules[{i}]")
            for i, b in enumerate(block.get("target_submodules", []))]
    return spec


def read_spec(path) -> StructureSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())
