import pytest

from gradedabs import GradingGroup, UnsupportedModeError, group_algebra, integers, modular, ring_as_module
from gradedabs.localization import localize_module, localize_ring, localize_submodule, saturation_cross_check
from gradedabs.predicates import mult_closure, saturate
from gradedabs.structures import (
    all_graded_submodules,
    generate_submodule,
    is_graded_submodule,
    validate_graded_module,
    validate_graded_ring,
    whole_module,
)

import oracles


def test_trivial_set_keeps_the_ring():
    R = modular(12)
    L = localize_ring(R, mult_closure([], R))
    assert len(L) == 12
    for x in R.elements():
        for y in R.elements():
            assert L.structure.mul(L.fraction(x), L.fraction(y)) == L.fraction(R.mul(x, y))


def test_three_torsion_collapses():
    R = modular(12)
    A = mult_closure([(4,)], R)
    L = localize_ring(R, A)
    assert L.fraction((3,)) == L.fraction((0,))
    # the fraction ring is Z_3: 4 is a unit mod 3 and nilpotent mod 4
    assert len(L) == oracles.fraction_classes(12, {1, 4}) == 3


@pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
def test_class_counts_match_oracle(n):
    R = modular(n)
    for x in range(n):
        A = mult_closure([(x,)], R, warn=False)
        assert len(localize_ring(R, A)) == oracles.fraction_classes(n, {a[0] for a in A})


@pytest.mark.parametrize("R", [modular(12), modular(8), group_algebra(2, GradingGroup([2])),
                               group_algebra(3, GradingGroup([2]))], ids=lambda R: R.name)
def test_localized_structures_validate(R):
    M = ring_as_module(R)
    for x in R.homogeneous():
        A = mult_closure([x], R, warn=False)
        LR = localize_ring(R, A)
        LM = localize_module(M, A, LR)
        assert validate_graded_ring(LR.structure).holds
        assert validate_graded_module(LM.structure).holds
        assert LR.check_well_defined().holds
        assert LM.check_well_defined().holds
        for a in A:
            assert LR.is_unit(LR.fraction(a))
        assert saturation_cross_check(A, saturate(A), LR).holds


def test_localized_submodule():
    R = modular(12)
    M = ring_as_module(R)
    A = mult_closure([(4,)], R)
    LM = localize_module(M, A)
    zero = localize_submodule(generate_submodule([], M), A, LM)
    assert zero.is_zero()
    for x in [(0,), (3,), (6,), (9,)]:
        assert LM.class_of[(x, (1,))] in zero
    assert localize_submodule(whole_module(M), A, LM).is_whole()
    for C in all_graded_submodules(M):
        assert is_graded_submodule(localize_submodule(C, A, LM)).holds


def test_trivial_set_keeps_submodules():
    R = modular(6)
    M = ring_as_module(R)
    A = mult_closure([], R)
    LM = localize_module(M, A)
    for C in all_graded_submodules(M):
        assert len(localize_submodule(C, A, LM).members()) == len(C.members())


def test_group_algebra_grading_survives():
    R = group_algebra(2, GradingGroup([2]))
    LM = localize_module(ring_as_module(R), mult_closure([], R))
    comps = {g: set(LM.structure.component_members(g)) for g in LM.structure.degrees}
    assert comps[(0,)] == {LM.fraction((0, 0)), LM.fraction((1, 0))}
    assert comps[(1,)] == {LM.fraction((0, 0)), LM.fraction((0, 1))}


def test_infinite_ring_rejected():
    Z = integers()
    with pytest.raises(UnsupportedModeError):
        localize_ring(Z, mult_closure([], Z))


def test_z6_module_over_z12_style():
    R = modular(6)
    A = mult_closure([(4,)], R)
    L = localize_module(ring_as_module(R), A)
    assert L.fraction((3,)) == L.fraction((0,))
    assert len(L) == oracles.fraction_classes(6, {1, 4})
