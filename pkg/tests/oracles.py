"""Brute-force reference implementations over plain integers mod n.

Nothing here imports the package: these are the independent answers the
package is checked against.  Everything works for R = M = Z_n with the
trivial grading, where every element is homogeneous and submodules are the
ideals dZ_n for d | n.
"""
from itertools import product


def ideal(n, d):
    return frozenset(range(0, n, d)) if d % n else frozenset({0})


def ideals(n):
    return [ideal(n, d) for d in range(1, n + 1) if n % d == 0]


def colon(n, C):
    """(C :_R M) for M = R = Z_n."""
    return frozenset(r for r in range(n) if all((r * m) % n in C for m in range(n)))


def closure(n, gens):
    found = {1 % n, *[g % n for g in gens]}
    while True:
        new = {(x * y) % n for x in found for y in found} - found
        if not new:
            return frozenset(found)
        found |= new


def units(n):
    return frozenset(a for a in range(n) if any((a * b) % n == 1 for b in range(n)))


def is_2_absorbing(n, C):
    if len(C) == n:
        return None
    col = colon(n, C)
    for r, s, m in product(range(n), repeat=3):
        if (r * s * m) % n in C and (r * s) % n not in col \
                and (r * m) % n not in C and (s * m) % n not in C:
            return False
    return True


def witnesses_2abs(n, C, A):
    """All a in A serving as the fixed element (None if the colon meets A)."""
    col = colon(n, C)
    if col & A:
        return None
    good = []
    for a in sorted(A):
        ok = True
        for r, s, m in product(range(n), repeat=3):
            if (r * s * m) % n in C and (a * r * s) % n not in col \
                    and (a * r * m) % n not in C and (a * s * m) % n not in C:
                ok = False
                break
        if ok:
            good.append(a)
    return good


def witnesses_prime(n, C, A):
    col = colon(n, C)
    if col & A:
        return None
    good = []
    for a in sorted(A):
        if all(not ((r * m) % n in C) or (a * r) % n in col or (a * m) % n in C
               for r in range(n) for m in range(n)):
            good.append(a)
    return good


def fraction_classes(n, A):
    """Number of classes of Z_n x A under (x,a)~(y,b) iff c(bx-ay)=0 for some c in A."""
    pairs = [(x, a) for x in range(n) for a in sorted(A)]
    reps = []
    for x, a in pairs:
        if not any(any((c * (b * x - a * y)) % n == 0 for c in A) for y, b in reps):
            reps.append((x, a))
    return len(reps)


def saturation(n, A):
    return frozenset(x for x in range(n)
                     if any((b * (x * t - u)) % n == 0 for t in range(n) for u in A for b in A))


def subgroup(orders, gens):
    """Subgroup of Z_{d1} x ... generated by gens, by closure."""
    zero = tuple(0 for _ in orders)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % d for a, b, d in zip(x, g, orders))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)
