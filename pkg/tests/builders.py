"""The two worked structures, built directly through the library API."""
from gradedabs import GradingGroup, cyclic_product, integers
from gradedabs.predicates import nonzero_integers, units
from gradedabs.structures import zero_submodule


def ex1():
    """Z x Z_6 over Z, G = Z, first coordinate in degree 0, second in degree 1."""
    Z = integers(GradingGroup([0]))
    M = cyclic_product(Z, [0, 6], [0, 1], name="ZxZ6")
    return Z, M, zero_submodule(M), nonzero_integers(Z)


def ex2():
    """Z_6 over Z, G = Z_2, everything in degree 0."""
    Z = integers(GradingGroup([2]))
    M = cyclic_product(Z, [6], {(0,): [(1,)], (1,): []}, name="Z6")
    return Z, M, zero_submodule(M), units(Z)
