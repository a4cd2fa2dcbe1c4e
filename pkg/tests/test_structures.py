import pytest

from gradedabs import GradingGroup, StructureError, group_algebra, modular, ring_as_module
from gradedabs.core import PreconditionError
from gradedabs.structures import (
    GradedHomomorphism,
    Verdict,
    all_graded_submodules,
    colon_module,
    colon_ring,
    cyclic_product,
    generate_submodule,
    hom_image,
    hom_preimage,
    homogeneous_components,
    ideal_component,
    intersect,
    is_graded_submodule,
    kernel,
    submodule_from_elements,
    validate_graded_module,
    validate_graded_ring,
    validate_homomorphism,
    whole_module,
    zero_submodule,
)

from builders import ex1, ex2
from oracles import ideals

G2 = GradingGroup([2])


def elems(C):
    return {x[0] if len(x) == 1 else x for x in C.members()}


class TestValidators:
    def test_trivial_z12(self):
        assert validate_graded_ring(modular(12, G2)).verdict is Verdict.HOLDS

    def test_group_algebra(self):
        assert validate_graded_ring(group_algebra(2, G2)).verdict is Verdict.HOLDS

    def test_bad_grading_reports_one(self):
        R = modular(12, G2, {(0,): [(2,)], (1,): [(6,)]})
        out = validate_graded_ring(R)
        assert out.fails
        assert out.counterexample == (1,)

    def test_example_module_bounded(self):
        _, M, _, _ = ex1()
        assert validate_graded_module(M, 10).verdict is Verdict.BOUNDED_HOLDS

    def test_contrast_module(self):
        _, M, _, _ = ex2()
        out = validate_graded_module(M)
        assert out.holds

    @pytest.mark.parametrize("n", [4, 6, 12])
    def test_ring_as_module(self, n):
        assert validate_graded_module(ring_as_module(modular(n))).verdict is Verdict.HOLDS

    def test_ill_defined_action(self):
        with pytest.raises(StructureError):
            cyclic_product(modular(6), [4])


class TestComponents:
    def test_group_algebra_split(self):
        R = group_algebra(2, G2)
        parts = homogeneous_components((1, 1), ring_as_module(R))
        assert parts == {(0,): (1, 0), (1,): (0, 1)}

    def test_example_split(self):
        _, M, _, _ = ex1()
        assert homogeneous_components((5, 4), M) == {(0,): (5, 0), (1,): (0, 4)}
        assert homogeneous_components((0, 0), M) == {}

    def test_non_graded_ideal(self):
        RM = ring_as_module(group_algebra(2, G2))
        C = submodule_from_elements([(0, 0), (1, 1)], RM)
        out = is_graded_submodule(C)
        assert out.fails and out.counterexample == (1, 1)

    def test_zero_and_whole_are_graded(self):
        _, M, C, _ = ex1()
        assert is_graded_submodule(C).holds
        assert is_graded_submodule(whole_module(M)).holds

    def test_ideal_component(self):
        RM = ring_as_module(modular(12, G2))
        I = generate_submodule([(4,)], RM)
        assert set(ideal_component(I, (0,))) == {(0,), (4,), (8,)}
        assert set(ideal_component(I, (1,))) == {(0,)}
        RA = ring_as_module(group_algebra(2, G2))
        T = generate_submodule([(0, 1)], RA)
        assert set(ideal_component(T, (1,))) == {(0, 0), (0, 1)}


class TestSubmodules:
    def test_generate_in_z12(self):
        RM = ring_as_module(modular(12))
        assert elems(generate_submodule([(4,)], RM)) == {0, 4, 8}
        assert generate_submodule([], RM).is_zero()

    def test_generate_bounded(self):
        _, M, _, _ = ex1()
        C = generate_submodule([(0, 1)], M)
        assert (0, 5) in C and (1, 0) not in C
        assert len(C.members(1)) == 6

    def test_non_homogeneous_generator(self):
        _, M, _, _ = ex1()
        with pytest.raises(PreconditionError):
            generate_submodule([(1, 1)], M)

    def test_intersections(self):
        RM = ring_as_module(modular(12))
        g = lambda d: generate_submodule([(d,)], RM)  # noqa: E731
        assert elems(intersect(g(4), g(6))) == {0}
        assert elems(intersect(g(2), g(3))) == {0, 6}
        assert intersect(g(4), g(4)) == g(4)

    def test_parent_mismatch(self):
        a = zero_submodule(ring_as_module(modular(4)))
        b = zero_submodule(ring_as_module(modular(6)))
        with pytest.raises(StructureError):
            intersect(a, b)

    @pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
    def test_all_graded_submodules_are_the_ideals(self, n):
        subs = all_graded_submodules(ring_as_module(modular(n)))
        assert {frozenset(x[0] for x in C.members()) for C in subs} == set(ideals(n))


class TestColons:
    def test_example_colon_is_zero(self):
        _, M, C, _ = ex1()
        col = colon_ring(C)
        assert col.is_zero()

    def test_contrast_colon_is_6z(self):
        _, M, C, _ = ex2()
        col = colon_ring(C)
        assert elems(col) == {0, 6, -6}
        assert (12,) in col and (3,) not in col

    def test_whole_colon(self):
        _, M, _, _ = ex2()
        assert colon_ring(whole_module(M)).is_whole()

    def test_module_colons(self):
        _, M, C, _ = ex2()
        assert colon_module(C, (1,)) == C
        assert elems(colon_module(C, (2,))) == {0, 3}
        assert colon_module(C, (6,)).is_whole()


class TestHomomorphisms:
    def _projection(self):
        Z, M, _, _ = ex1()
        T = cyclic_product(Z, [6], [1], name="Z6")
        return M, T, GradedHomomorphism(M, T, [(0,), (1,)], "proj")

    def test_projection_validates(self):
        _, _, f = self._projection()
        assert validate_homomorphism(f).holds

    def test_kernel_and_preimage(self):
        M, T, f = self._projection()
        ker = kernel(f)
        expected = [x for x in M.elements(3) if x[1] == 0]
        assert ker.members(3) == expected
        assert hom_preimage(f, zero_submodule(T)) == ker

    def test_identity_map(self):
        R = modular(12)
        M = ring_as_module(R)
        f = GradedHomomorphism(M, M, [(1,)], "id")
        for C in all_graded_submodules(M):
            assert hom_image(f, C) == C
            assert hom_preimage(f, C) == C

    def test_image_is_graded(self):
        M, T, f = self._projection()
        img = hom_image(f, generate_submodule([(0, 2)], M))
        assert is_graded_submodule(img).holds
        assert {x[0] for x in img.members()} == {0, 2, 4}
