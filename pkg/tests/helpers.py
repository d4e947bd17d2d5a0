"""Independent oracles and generators shared by the test modules.

The oracles deliberately avoid the library's decision procedures: truth
tables for satisfiability, direct definition checks for MUS/MCS, plain
tail summation for binomial sizes.  They are the reference the fast
paths are judged against.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

from probaccept import (
    Formula,
    FormulaSet,
    WorldModel,
    atom,
    conj,
    disj,
    evaluate,
    iff,
    implies,
    neg,
)


def truth_table_satisfiable(formulas) -> bool:
    """Exhaustive-enumeration satisfiability; exponential, small inputs only."""
    formulas = list(formulas)
    names = sorted(set().union(*(f.atoms() for f in formulas))) if formulas else []
    for bits in product((False, True), repeat=len(names)):
        assignment = dict(zip(names, bits))
        if all(evaluate(f, assignment) for f in formulas):
            return True
    return False


def _keyset(formulas) -> frozenset[str]:
    return frozenset(f.canonical_key for f in formulas)


def brute_minimal_unsat_subsets(candidates, background) -> set[frozenset[str]]:
    members = list(FormulaSet(candidates))
    background = list(background)
    out: set[frozenset[str]] = set()
    for size in range(1, len(members) + 1):
        for combo in combinations(range(len(members)), size):
            subset = [members[i] for i in combo]
            if truth_table_satisfiable(background + subset):
                continue
            minimal = all(
                truth_table_satisfiable(
                    background + [members[j] for j in combo if j != i]
                )
                for i in combo
            )
            if minimal:
                out.add(_keyset(subset))
    return out


def brute_maximal_consistent_subsets(candidates, background) -> set[frozenset[str]]:
    members = list(FormulaSet(candidates))
    background = list(background)
    out: set[frozenset[str]] = set()
    for size in range(len(members), -1, -1):
        for combo in combinations(range(len(members)), size):
            subset = [members[i] for i in combo]
            if not truth_table_satisfiable(background + subset):
                continue
            excluded = [members[j] for j in range(len(members)) if j not in combo]
            maximal = all(
                not truth_table_satisfiable(background + subset + [e])
                for e in excluded
            )
            if maximal:
                out.add(_keyset(subset))
    return out


def brute_min_cover_over_consistent_subsets(candidates, background) -> int:
    """Minimum number of background-consistent subsets (arbitrary, not
    just maximal) that jointly cover every candidate."""
    members = list(FormulaSet(candidates))
    background = list(background)
    n = len(members)
    if n == 0:
        return 1
    consistent = [
        frozenset(combo)
        for size in range(1, n + 1)
        for combo in combinations(range(n), size)
        if truth_table_satisfiable(background + [members[i] for i in combo])
    ]
    universe = frozenset(range(n))
    for k in range(1, n + 1):
        for pick in combinations(consistent, k):
            if frozenset().union(*pick) == universe:
                return k
    raise AssertionError("some candidate is individually unsatisfiable")


def random_formula(rng, names, depth: int = 3) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        return atom(rng.choice(names))
    op = rng.choice(("not", "and", "or", "implies", "iff"))
    if op == "not":
        return neg(random_formula(rng, names, depth - 1))
    if op in ("and", "or"):
        parts = [random_formula(rng, names, depth - 1) for _ in range(rng.randint(2, 3))]
        return conj(*parts) if op == "and" else disj(*parts)
    left = random_formula(rng, names, depth - 1)
    right = random_formula(rng, names, depth - 1)
    return implies(left, right) if op == "implies" else iff(left, right)


def random_model(rng, max_atoms: int = 4) -> WorldModel:
    """All valuations over a few atoms, random nonnegative rational weights."""
    m = rng.randint(1, max_atoms)
    names = list("abcdef")[:m]
    valuations = list(product((False, True), repeat=m))
    weights = [rng.randint(0, 9) for _ in valuations]
    if sum(weights) == 0:
        weights[rng.randrange(len(weights))] = 1
    total = sum(weights)
    return WorldModel(
        names, [(v, Fraction(w, total)) for v, w in zip(valuations, weights)]
    )


def binomial_tail_sum(n: int, p: Fraction, counts) -> Fraction:
    """Independent exact size computation for a set of counts."""
    return sum(
        (Fraction(math.comb(n, x)) * p**x * (1 - p) ** (n - x) for x in counts),
        Fraction(0),
    )
