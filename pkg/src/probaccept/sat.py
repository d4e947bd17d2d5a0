"""Satisfiability, entailment, and subset diagnostics for formula sets.

The decision procedure is a self-contained iterative DPLL search (unit
propagation plus chronological backtracking) over a structure-preserving
clausal translation of the canonical negation normal form.  Subformulas
that are not already clause-shaped get one definitional variable each, so
lottery-style constraint sets translate with no auxiliary variables at
all.  Instances here are desk scale; determinism wins over raw speed.

Minimal unsatisfiable subsets (MUS) and maximal consistent subsets (MCS)
are enumerated exhaustively over the candidate powerset, with
superset/subset pruning.  The exponential cost is deliberate and guarded
by a candidate cap.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .formulas import Formula, FormulaSet, neg, nnf_key

__all__ = [
    "DEFAULT_CANDIDATE_CAP",
    "is_satisfiable",
    "entails",
    "minimal_unsat_subsets",
    "maximal_consistent_subsets",
    "shrink_unsat_subset",
]

DEFAULT_CANDIDATE_CAP = 20

Clause = frozenset  # of (variable name, polarity) pairs

_CLAUSE_CACHE: dict[str, tuple[Clause, ...]] = {}


def _clauses_for(formula: Formula) -> tuple[Clause, ...]:
    key = formula.canonical_key
    cached = _CLAUSE_CACHE.get(key)
    if cached is not None:
        return cached

    clauses: list[Clause] = []
    defined: set[tuple] = set()

    def literal_of(node: tuple) -> tuple[str, bool]:
        if node[0] == "lit":
            return (node[1], node[2])
        name = "#" + nnf_key(node)
        if node not in defined:
            defined.add(node)
            define(node, name)
        return (name, True)

    def define(node: tuple, name: str) -> None:
        # name -> node, enough for satisfiability (positive occurrences only)
        if node[0] == "and":
            for child in node[1]:
                clauses.append(frozenset({(name, False), literal_of(child)}))
        else:
            clauses.append(frozenset({(name, False)} | {literal_of(c) for c in node[1]}))

    def top(node: tuple) -> None:
        if node[0] == "and":
            for child in node[1]:
                top(child)
        elif node[0] == "or":
            clauses.append(frozenset(literal_of(c) for c in node[1]))
        else:
            clauses.append(frozenset({(node[1], node[2])}))

    top(formula.nnf())
    result = tuple(clauses)
    _CLAUSE_CACHE[key] = result
    return result


def _int_clauses(
    clauses: Iterable[Clause], index: dict[str, int]
) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for clause in clauses:
        lits = []
        names_seen: dict[str, bool] = {}
        tautology = False
        for name, positive in clause:
            prior = names_seen.get(name)
            if prior is not None and prior != positive:
                tautology = True
                break
            names_seen[name] = positive
            lits.append(index[name] if positive else -index[name])
        if not tautology:
            out.append(tuple(sorted(lits, key=abs)))
    return out


def _dpll(clauses: Sequence[tuple[int, ...]], nvars: int) -> bool:
    if any(not clause for clause in clauses):
        return False
    assign = [0] * (nvars + 1)
    occurrences: dict[int, list[int]] = {}
    for ci, clause in enumerate(clauses):
        for lit in clause:
            occurrences.setdefault(lit, []).append(ci)
    trail: list[int] = []

    def propagate(queue: list[int]) -> bool:
        qi = 0
        while qi < len(queue):
            lit = queue[qi]
            qi += 1
            var = abs(lit)
            want = 1 if lit > 0 else -1
            current = assign[var]
            if current == want:
                continue
            if current == -want:
                return False
            assign[var] = want
            trail.append(var)
            for ci in occurrences.get(-lit, ()):
                clause = clauses[ci]
                unassigned = 0
                last = 0
                satisfied = False
                for other in clause:
                    value = assign[abs(other)]
                    if value == 0:
                        unassigned += 1
                        last = other
                    elif (value > 0) == (other > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if unassigned == 0:
                    return False
                if unassigned == 1:
                    queue.append(last)
        return True

    queue = [clause[0] for clause in clauses if len(clause) == 1]
    stack: list[tuple[int, int, bool]] = []  # (decision var, trail mark, tried negation)
    cursor = 1
    while True:
        if propagate(queue):
            while cursor <= nvars and assign[cursor] != 0:
                cursor += 1
            if cursor > nvars:
                return True
            stack.append((cursor, len(trail), False))
            queue = [cursor]
        else:
            while stack:
                var, mark, tried = stack.pop()
                while len(trail) > mark:
                    undone = trail.pop()
                    assign[undone] = 0
                    if undone < cursor:
                        cursor = undone
                if not tried:
                    stack.append((var, mark, True))
                    queue = [-var]
                    break
            else:
                return False


def _solve_clause_set(clauses: set[Clause]) -> bool:
    if not clauses:
        return True
    names = sorted({name for clause in clauses for name, _ in clause})
    index = {name: i + 1 for i, name in enumerate(names)}
    return _dpll(_int_clauses(clauses, index), len(names))


def is_satisfiable(formulas: Iterable[Formula]) -> bool:
    """True iff some total valuation satisfies every member."""
    clause_set: set[Clause] = set()
    for f in formulas:
        clause_set.update(_clauses_for(f))
    return _solve_clause_set(clause_set)


def entails(
    background: Iterable[Formula],
    premises: Iterable[Formula],
    conclusion: Formula,
) -> bool:
    """Classical entailment relative to a background set."""
    members = list(background) + list(premises) + [neg(conclusion)]
    return not is_satisfiable(members)


class _SubsetSolver:
    """Fixed variable numbering over background plus candidates, so that
    per-subset satisfiability checks only splice precompiled clauses."""

    def __init__(self, members: Sequence[Formula], background: Iterable[Formula]):
        self.members = tuple(members)
        bg_clauses: set[Clause] = set()
        for f in background:
            bg_clauses.update(_clauses_for(f))
        member_clauses = [_clauses_for(f) for f in self.members]
        names = {name for clause in bg_clauses for name, _ in clause}
        for group in member_clauses:
            names.update(name for clause in group for name, _ in clause)
        index = {name: i + 1 for i, name in enumerate(sorted(names))}
        self.nvars = len(index)
        self.background = _int_clauses(bg_clauses, index)
        self.per_member = [_int_clauses(group, index) for group in member_clauses]

    def satisfiable(self, which: Iterable[int]) -> bool:
        clauses = list(self.background)
        for i in which:
            clauses.extend(self.per_member[i])
        return _dpll(clauses, self.nvars)


def _prepare(
    candidates: Iterable[Formula],
    background: Iterable[Formula] | None,
    cap: int,
) -> tuple[tuple[Formula, ...], _SubsetSolver]:
    members = tuple(FormulaSet(candidates))
    bg = tuple(background) if background is not None else ()
    if cap < 1:
        raise ValueError("cap must be positive")
    if len(members) > cap:
        raise ValueError(
            f"{len(members)} candidates exceed the enumeration cap of {cap}"
        )
    if not is_satisfiable(bg):
        raise ValueError("background is unsatisfiable")
    return members, _SubsetSolver(members, bg)


def minimal_unsat_subsets(
    candidates: Iterable[Formula],
    background: Iterable[Formula] | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
) -> list[FormulaSet]:
    """All subsets of ``candidates`` that are unsatisfiable together with
    ``background`` and minimally so.  Exhaustive and deterministic; raises
    if the background is unsatisfiable or the cap is exceeded."""
    members, solver = _prepare(candidates, background, cap)
    found: list[tuple[int, ...]] = []
    found_sets: list[frozenset[int]] = []
    for size in range(1, len(members) + 1):
        for combo in combinations(range(len(members)), size):
            chosen = frozenset(combo)
            if any(prior <= chosen for prior in found_sets):
                continue
            if not solver.satisfiable(combo):
                found.append(combo)
                found_sets.append(chosen)
    return [FormulaSet(members[i] for i in combo) for combo in found]


def maximal_consistent_subsets(
    candidates: Iterable[Formula],
    background: Iterable[Formula] | None = None,
    cap: int = DEFAULT_CANDIDATE_CAP,
) -> list[FormulaSet]:
    """All subsets of ``candidates`` satisfiable with ``background`` to
    which no excluded candidate can be added without losing
    satisfiability.  Exhaustive and deterministic under the cap."""
    members, solver = _prepare(candidates, background, cap)
    found: list[tuple[int, ...]] = []
    found_sets: list[frozenset[int]] = []
    for size in range(len(members), -1, -1):
        for combo in combinations(range(len(members)), size):
            chosen = frozenset(combo)
            if any(chosen <= prior for prior in found_sets):
                continue
            if solver.satisfiable(combo):
                found.append(combo)
                found_sets.append(chosen)
    return [FormulaSet(members[i] for i in combo) for combo in found]


def shrink_unsat_subset(
    candidates: Iterable[Formula],
    background: Iterable[Formula] | None = None,
) -> FormulaSet | None:
    """Deletion-based extraction of one minimal unsatisfiable subset.

    Linear in the number of candidates, so usable far beyond the
    exhaustive-enumeration cap.  Returns None when the candidates are
    satisfiable with the background.  The result is a minimal
    unsatisfiable subset but not necessarily a smallest one.
    """
    members = tuple(FormulaSet(candidates))
    bg = tuple(background) if background is not None else ()
    if not is_satisfiable(bg):
        raise ValueError("background is unsatisfiable")
    solver = _SubsetSolver(members, bg)
    current = list(range(len(members)))
    if solver.satisfiable(current):
        return None
    for i in list(current):
        trimmed = [j for j in current if j != i]
        if not solver.satisfiable(trimmed):
            current = trimmed
    return FormulaSet(members[i] for i in current)
