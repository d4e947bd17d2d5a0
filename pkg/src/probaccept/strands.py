"""Living with weakly inconsistent statement sets.

A weakly inconsistent set still has useful structure.  Its maximal
consistent subsets each describe one way things could coherently be; the
minimum number of consistent subsets needed to cover every statement
measures how inconsistent the set is (degree 1 means not at all, an
n-ticket lottery sits at degree 2 for every n >= 2).

A :class:`Strand` wraps one maximal consistent subset as a query target:
its deductive closure is infinite, so it is never materialized, but
entailment against it is decidable and every strand stays consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import Formula, FormulaSet
from .sat import (
    DEFAULT_CANDIDATE_CAP,
    entails,
    is_satisfiable,
    maximal_consistent_subsets,
)

__all__ = [
    "Strand",
    "strands",
    "strand_entails",
    "degree_of_inconsistency",
]


@dataclass(frozen=True)
class Strand:
    """A maximal consistent subset (the kernel) over a background; stands
    in for its deductive closure."""

    kernel: FormulaSet
    background: FormulaSet


def strands(
    candidates: FormulaSet,
    background: FormulaSet | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
) -> list[Strand]:
    """One strand per maximal consistent subset, in deterministic order."""
    bg = FormulaSet(background or ())
    return [
        Strand(kernel, bg)
        for kernel in maximal_consistent_subsets(candidates, bg, cap)
    ]


def strand_entails(strand: Strand, formula: Formula) -> bool:
    """Does the strand's closure contain the formula?"""
    return entails(strand.background, strand.kernel, formula)


def degree_of_inconsistency(
    candidates: FormulaSet,
    background: FormulaSet | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
) -> int:
    """Minimum number of background-consistent subsets covering every
    candidate, computed by exact branch-and-bound set cover over the
    family of maximal consistent subsets.

    Covering with arbitrary consistent subsets would give the same
    minimum, since any consistent subset extends to a maximal one.
    Requires every candidate to be individually satisfiable with the
    background (otherwise no consistent subset can cover it).
    """
    members = tuple(FormulaSet(candidates))
    bg = list(background or ())
    for formula in members:
        if not is_satisfiable(bg + [formula]):
            raise ValueError(
                f"candidate {formula} is individually unsatisfiable with "
                "the background"
            )
    if not members:
        return 1
    family = maximal_consistent_subsets(members, bg, cap)
    key_index = {f.canonical_key: i for i, f in enumerate(members)}
    sets = [frozenset(key_index[f.canonical_key] for f in mcs) for mcs in family]
    universe = frozenset(range(len(members)))
    return _min_cover(universe, sets)


def _min_cover(universe: frozenset[int], sets: list[frozenset[int]]) -> int:
    # Greedy first for an upper bound, then exact branch-and-bound picking
    # the least-covered element and trying its covering sets largest-first.
    best = _greedy_cover(universe, sets)

    def search(uncovered: frozenset[int], used: int, bound: int) -> int:
        if not uncovered:
            return used
        if used + 1 >= bound:
            return bound
        element = min(
            uncovered, key=lambda e: sum(1 for s in sets if e in s)
        )
        options = sorted(
            (s for s in sets if element in s),
            key=lambda s: (-len(s & uncovered), sorted(s)),
        )
        for option in options:
            bound = min(bound, search(uncovered - option, used + 1, bound))
        return bound

    return search(universe, 0, best)


def _greedy_cover(universe: frozenset[int], sets: list[frozenset[int]]) -> int:
    uncovered = set(universe)
    count = 0
    while uncovered:
        gain, choice = max(
            ((len(s & uncovered), s) for s in sets),
            key=lambda pair: (pair[0], sorted(pair[1])),
        )
        if gain == 0:
            raise ValueError("candidates cannot be covered by consistent subsets")
        uncovered -= choice
        count += 1
    return count
