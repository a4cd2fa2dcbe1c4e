import logging

import pytest

from gradedabs import modular, ring_as_module
from gradedabs.core import PreconditionError
from gradedabs.predicates import (
    check_component_ideal_condition,
    colon_characterization,
    colon_quotient_2abs,
    is_graded_2_absorbing,
    is_graded_A_2_absorbing,
    is_graded_A_prime,
    is_graded_prime,
    is_witness,
    mult_closure,
    saturate,
    stabilization_check,
    triple_violates,
    pair_violates,
    units,
)
from gradedabs.structures import Verdict, all_graded_submodules, generate_submodule, whole_module
from gradedabs import GradingGroup, group_algebra, integers

import oracles
from builders import ex1, ex2


def z12_zero():
    R = modular(12)
    M = ring_as_module(R)
    return R, M, generate_submodule([], M)


def ints(A):
    return {a[0] for a in A}


class TestMultiplicativeSets:
    def test_closures(self):
        R = modular(12)
        assert ints(mult_closure([], R)) == {1}
        assert ints(mult_closure([(4,)], R)) == {1, 4}

    def test_bounded_closure(self):
        Z = integers()
        A = mult_closure([(6,)], Z, 10)
        assert ints(A) == {1, 6} and A.bounded

    def test_zero_warns(self, caplog):
        with caplog.at_level(logging.WARNING):
            A = mult_closure([(2,)], modular(8))
        assert A.contains_zero
        assert "contains 0" in caplog.text

    def test_non_homogeneous_generator(self):
        RA = group_algebra(2, GradingGroup([2]))
        with pytest.raises(PreconditionError):
            mult_closure([(1, 1)], RA)

    def test_saturation_of_one(self):
        R = modular(12)
        assert ints(saturate(mult_closure([], R))) == {1, 5, 7, 11}

    @pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
    def test_saturation_matches_oracle(self, n):
        R = modular(n)
        for x in range(n):
            A = mult_closure([(x,)], R, warn=False)
            S = saturate(A)
            assert ints(S) == oracles.saturation(n, ints(A))
            assert saturate(S) == S

    def test_units(self):
        assert ints(units(modular(12))) == {1, 5, 7, 11}
        assert ints(units(integers())) == {1, -1}


class TestDefinitions:
    def test_example_not_2_absorbing(self):
        _, M, C, _ = ex1()
        out = is_graded_2_absorbing(C)
        assert out.fails
        assert out.counterexample == ((2,), (3,), (0, 1))
        assert triple_violates(C, None, ((2,), (3,), (0, 1)))

    def test_example_A_2_absorbing(self):
        _, M, C, A = ex1()
        out = is_graded_A_2_absorbing(C, A)
        assert out.verdict is Verdict.BOUNDED_HOLDS
        assert out.witness == (2,)

    def test_example_witnesses(self):
        _, M, C, A = ex1()
        assert is_witness((6,), C, A).verdict is Verdict.BOUNDED_HOLDS
        bad = is_witness((1,), C, A)
        assert bad.fails and bad.counterexample == ((2,), (3,), (0, 1))
        with pytest.raises(PreconditionError):
            is_witness((0,), C, A)

    def test_contrast_example(self):
        Z, M, C, U = ex2()
        prime = is_graded_prime(C)
        assert prime.fails and pair_violates(C, None, prime.counterexample)
        assert prime.counterexample == ((2,), (3,))
        assert is_graded_2_absorbing(C).verdict is Verdict.HOLDS
        rel = is_graded_A_2_absorbing(C, U)
        assert rel.verdict is Verdict.HOLDS and rel.witness == (1,)
        assert is_graded_A_prime(C, U).fails

    def test_2z6_is_prime(self):
        Z, M, _, _ = ex2()
        C = generate_submodule([(2,)], M)
        assert is_graded_prime(C).verdict is Verdict.HOLDS
        one = mult_closure([], Z)
        out = is_graded_A_prime(C, one)
        assert out.holds and out.witness == (1,)

    def test_whole_is_not_applicable(self):
        Z, M, _, U = ex2()
        W = whole_module(M)
        assert is_graded_prime(W).not_applicable
        assert is_graded_2_absorbing(W).not_applicable
        assert is_graded_A_prime(W, U).not_applicable

    def test_z12_zero(self):
        R, M, C = z12_zero()
        out = is_graded_2_absorbing(C)
        assert out.fails and out.counterexample == ((2,), (2,), (3,))
        A = mult_closure([(4,)], R)
        rel = is_graded_A_2_absorbing(C, A)
        assert rel.verdict is Verdict.HOLDS and rel.witness == (4,)

    def test_zero_in_A(self):
        R = modular(8)
        M = ring_as_module(R)
        A = mult_closure([(2,)], R, warn=False)
        for C in all_graded_submodules(M):
            assert is_graded_A_2_absorbing(C, A).not_applicable


def _instances():
    for n in [4, 6, 8, 9, 12]:
        R = modular(n)
        M = ring_as_module(R)
        for C in all_graded_submodules(M):
            for x in range(n):
                yield n, C, mult_closure([(x,)], R, warn=False)


@pytest.mark.parametrize("n,C,A", list(_instances()),
                         ids=lambda v: str(v) if isinstance(v, int) else None)
def test_predicates_match_oracle(n, C, A):
    cset = frozenset(x[0] for x in C.members())
    aset = ints(A)
    plain = oracles.is_2_absorbing(n, cset)
    got = is_graded_2_absorbing(C)
    assert (None if got.not_applicable else got.holds) == plain

    good = oracles.witnesses_2abs(n, cset, aset)
    rel = is_graded_A_2_absorbing(C, A)
    if good is None:
        assert rel.not_applicable
    else:
        assert rel.holds == bool(good)
        if rel.holds:
            # canonical order on Z_n is the natural order
            assert rel.witness == (good[0],)
    good_p = oracles.witnesses_prime(n, cset, aset)
    relp = is_graded_A_prime(C, A)
    if good_p is None:
        assert relp.not_applicable
    else:
        assert relp.holds == bool(good_p)


class TestCharacterizations:
    def test_component_condition(self):
        R, M, C = z12_zero()
        out = check_component_ideal_condition(C, mult_closure([(4,)], R))
        assert out.verdict is Verdict.HOLDS and out.witness == (4,)
        Z, M2, C2, U = ex2()
        assert check_component_ideal_condition(C2, U).verdict is Verdict.HOLDS
        assert check_component_ideal_condition(whole_module(M2), U).not_applicable

    def test_colon_characterization(self):
        Z, M, C, _ = ex2()
        one = mult_closure([], Z)
        out = colon_characterization(C, one)
        assert out.holds and out.witness == (1,)
        R, M12, C12 = z12_zero()
        assert colon_characterization(C12, mult_closure([(4,)], R)).holds
        bad = colon_characterization(C12, mult_closure([], R))
        assert bad.fails and bad.counterexample == ((2,), (2,))

    def test_stabilization(self):
        R, M, C = z12_zero()
        out = stabilization_check(C, mult_closure([(4,)], R), n_max=10)
        assert out.verdict is Verdict.HOLDS and out.witness == (4,)
        _, _, C1, A1 = ex1()
        out1 = stabilization_check(C1, A1, witness=(6,))
        assert out1.verdict is Verdict.BOUNDED_HOLDS
        with pytest.raises(PreconditionError):
            stabilization_check(C, mult_closure([], R))

    def test_colon_quotient(self):
        R, M, C = z12_zero()
        out = colon_quotient_2abs(C, mult_closure([(4,)], R))
        assert out.holds and out.witness == (4,)
        Z, M2, C2, U = ex2()
        out2 = colon_quotient_2abs(C2, U)
        assert out2.holds and out2.witness == (1,)
        assert colon_quotient_2abs(whole_module(M2), U).not_applicable

    def test_example_routes_agree(self):
        _, _, C, A = ex1()
        for route in (check_component_ideal_condition, colon_characterization, colon_quotient_2abs):
            assert route(C, A).verdict is Verdict.BOUNDED_HOLDS
