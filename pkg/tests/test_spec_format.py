import pytest

from gradedabs.spec_format import SpecError, parse_spec, read_spec
from gradedabs.structures import Verdict


def test_example_fixture(fixtures_dir):
    spec = read_spec(fixtures_dir / "ex1.yaml")
    assert spec.group.cyclic_orders == (0,)
    assert spec.module.carrier.orders == (0, 6)
    assert spec.bound == 10
    assert spec.submodules["C"].is_zero()
    assert spec.mult_sets["A"].bounded and len(spec.mult_sets["A"]) == 20
    assert spec.validation["module"].verdict is Verdict.BOUNDED_HOLDS
    assert "proj" in spec.homomorphisms


def test_contrast_fixture(fixtures_dir):
    spec = read_spec(fixtures_dir / "ex2.yaml")
    assert spec.module.component_members((1,)) == [(0,)]
    assert len(spec.module.component_members((0,))) == 6
    assert {a for (a,) in spec.mult_sets["A"]} == {1, -1}


BASE = """
grading_group: [2]
ring: {constructor: modular, modulus: 6}
"""


def test_no_submodules_is_valid():
    spec = parse_spec(BASE)
    assert spec.submodules == {}
    assert spec.module is not None


def test_bad_module_order():
    text = BASE + "module: {constructor: cyclic_product, orders: [4]}\n"
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert err.value.where == "module"


def test_syntax_error_has_line():
    with pytest.raises(SpecError) as err:
        parse_spec("grading_group: [2\nring: {")
    assert "line" in err.value.where


def test_unknown_constructor():
    with pytest.raises(SpecError) as err:
        parse_spec("grading_group: [2]\nring: {constructor: quaternions}\n")
    assert err.value.where == "ring.constructor"


def test_missing_field():
    with pytest.raises(SpecError) as err:
        parse_spec("ring: {constructor: modular, modulus: 6}\n")
    assert err.value.where == "spec.grading_group"


def test_non_graded_assignment():
    text = """
grading_group: [2]
ring:
  constructor: modular
  modulus: 12
  components:
    - {degree: [0], generators: [[2]]}
    - {degree: [1], generators: [[6]]}
"""
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert err.value.where == "ring"


def test_bad_submodule_field():
    text = BASE + "submodules:\n  C: {generators: [[1, 2, 3]]}\n"
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert err.value.where.startswith("submodules.C")


def test_version_check():
    with pytest.raises(SpecError):
        parse_spec("format_version: 99\n" + BASE)


def test_product_and_table_constructors():
    text = """
grading_group: [2]
ring:
  constructor: product
  factors:
    - {constructor: modular, modulus: 2}
    - {constructor: modular, modulus: 3}
submodules:
  first: {generators: [[1, 0]]}
mult_sets:
  E: {generators: [[1, 0]]}
"""
    spec = parse_spec(text)
    assert len(spec.ring.elements()) == 6
    assert len(spec.submodules["first"].members()) == 2

    table = """
grading_group: [2]
ring:
  constructor: table
  orders: [2, 2]
  constants: [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
  one: [1, 0]
  component_assignment: [0, 1]
"""
    spec = parse_spec(table)
    assert spec.ring.mul((0, 1), (0, 1)) == (1, 0)


def test_group_algebra_spec():
    spec = parse_spec("grading_group: [2]\nring: {constructor: group_algebra, base: 3}\n")
    assert spec.module.degrees == [(0,), (1,)]
