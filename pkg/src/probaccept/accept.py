"""Acceptance policies over belief bases.

Four ways of turning "probable enough" into "accepted":

* ``threshold_accept`` takes every candidate whose probability clears the
  acceptance level, consistency be damned; with a fair n-ticket lottery
  at level 1 - 1/n this reproduces the classic jointly-unsatisfiable
  accepted set.
* ``lehrer_accept`` additionally demands that a candidate be strictly
  more probable than every candidate contrary to it (contrary: the pair
  is unsatisfiable together with the background), so ties block.
* ``sequential_accept`` scans candidates in a given order and keeps each
  one that clears the level and preserves satisfiability.  The outcome
  depends on the order.
* ``teng_accept`` scans in order but thresholds the probability of each
  candidate conditional on what is already accepted: a fixed-point rule,
  accept what is probable relative to what you have accepted.

``lehrer_cascade`` iterates the dominance rule with conditioning, which
on a biased lottery accepts lose-statement after lose-statement until it
ends up accepting that the last remaining ticket wins.
``enumerate_extensions`` surfaces the order dependence by running a
policy over many candidate orders and collecting the distinct outcomes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Sequence

from .formulas import Formula, FormulaSet, atom
from .sat import is_satisfiable
from .worlds import BeliefBase, as_fraction

__all__ = [
    "AcceptanceLevel",
    "Acceptance",
    "AcceptedSet",
    "ExtensionEnumeration",
    "stakes_threshold",
    "threshold_accept",
    "lehrer_accept",
    "lehrer_cascade",
    "sequential_accept",
    "teng_accept",
    "enumerate_extensions",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 0

POLICIES = ("threshold", "lehrer", "lehrer_cascade", "sequential", "teng")


@dataclass(frozen=True)
class AcceptanceLevel:
    """Acceptance at level 1 - epsilon.

    The threshold comparison is non-strict by default (probability >= 1 -
    epsilon), which is what lets the n-ticket lottery at epsilon = 1/n go
    through; set ``strict`` for the strictly-greater variant.
    """

    epsilon: Fraction
    strict: bool = False

    def __post_init__(self):
        eps = as_fraction(self.epsilon)
        if not (0 < eps < 1):
            raise ValueError(f"epsilon must lie strictly between 0 and 1, got {eps}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def threshold(self) -> Fraction:
        return 1 - self.epsilon

    def met_by(self, p: Fraction) -> bool:
        return p > self.threshold if self.strict else p >= self.threshold


@dataclass(frozen=True)
class Acceptance:
    """One accepted statement.

    ``probability`` is the statement's unconditional probability in the
    model; ``support`` is the value that was actually compared against
    the threshold when the statement was accepted (for the conditional
    policies these differ).
    """

    label: str
    statement: Formula
    probability: Fraction
    support: Fraction


@dataclass(frozen=True)
class AcceptedSet:
    """The output of one policy run: accepted statements in acceptance
    order, the background they sit on, and a weak-consistency verdict."""

    policy: str
    level: AcceptanceLevel
    accepted: tuple[Acceptance, ...]
    background: FormulaSet
    weakly_consistent: bool

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(a.label for a in self.accepted)

    @property
    def accepted_formulas(self) -> FormulaSet:
        return FormulaSet(a.statement for a in self.accepted)

    @property
    def statements(self) -> FormulaSet:
        return self.background.union(a.statement for a in self.accepted)


def stakes_threshold(max_benefit_to_cost) -> AcceptanceLevel:
    """Acceptance level for a class of circumstances whose benefit-to-cost
    ratios never exceed r: epsilon = 1/(1+r), threshold r/(1+r).

    Above that threshold no available bet in the circumstance class is
    worth taking against the statement, so r = 3 already flattens the
    difference between probability 3/4 and probability 1.
    """
    ratio = as_fraction(max_benefit_to_cost)
    if ratio < 1:
        raise ValueError(f"stakes ratio must be at least 1, got {ratio}")
    return AcceptanceLevel(Fraction(1, 1) / (1 + ratio))


def _finish(
    policy: str,
    level: AcceptanceLevel,
    accepted: list[Acceptance],
    base: BeliefBase,
) -> AcceptedSet:
    members = list(base.background) + [a.statement for a in accepted]
    return AcceptedSet(
        policy=policy,
        level=level,
        accepted=tuple(accepted),
        background=base.background,
        weakly_consistent=is_satisfiable(members),
    )


def threshold_accept(base: BeliefBase, level: AcceptanceLevel) -> AcceptedSet:
    """Accept every candidate whose probability clears the level.

    Weak consistency of the result is reported, not enforced.
    """
    accepted = []
    for label, formula in base.candidates:
        p = base.model.probability(formula)
        if level.met_by(p):
            accepted.append(Acceptance(label, formula, p, p))
    return _finish("threshold", level, accepted, base)


def _contrary_pairs(base: BeliefBase) -> set[frozenset[int]]:
    """Index pairs of candidates that are jointly unsatisfiable with the
    background.  A shared world is a cheap witness of compatibility, so
    the SAT solver only runs on pairs with no common world."""
    model = base.model
    bg_mask = model.full_mask()
    for g in base.background:
        bg_mask &= model.satisfying_mask(g)
    formulas = [f for _, f in base.candidates]
    masks = [model.satisfying_mask(f) for f in formulas]
    background = list(base.background)
    contrary: set[frozenset[int]] = set()
    for i in range(len(formulas)):
        for j in range(i + 1, len(formulas)):
            if masks[i] & masks[j] & bg_mask:
                continue
            if not is_satisfiable(background + [formulas[i], formulas[j]]):
                contrary.add(frozenset((i, j)))
    return contrary


def lehrer_accept(base: BeliefBase, level: AcceptanceLevel) -> AcceptedSet:
    """Accept a candidate only when it clears the level and is strictly
    more probable than every candidate contrary to it.  Ties between
    contraries block both sides, which empties the two-ticket fair
    lottery."""
    probs = [base.model.probability(f) for _, f in base.candidates]
    contrary = _contrary_pairs(base)
    accepted = []
    for i, (label, formula) in enumerate(base.candidates):
        if not level.met_by(probs[i]):
            continue
        rivals = [j for j in range(len(probs)) if frozenset((i, j)) in contrary]
        if all(probs[i] > probs[j] for j in rivals):
            accepted.append(Acceptance(label, formula, probs[i], probs[i]))
    return _finish("lehrer", level, accepted, base)


def _ticket_atom(formula: Formula) -> str:
    if formula.op == "not" and formula.args[0].op == "atom":
        return formula.args[0].name  # type: ignore[return-value]
    raise ValueError(
        "cascade needs lottery-shaped candidates (each the negation of one "
        f"outcome atom); got {formula}"
    )


def lehrer_cascade(base: BeliefBase, level: AcceptanceLevel) -> AcceptedSet:
    """Iterated dominance with conditioning on prior acceptances.

    At each stage the most probable unaccepted lose-statement, measured
    conditional on everything accepted so far, is accepted if it clears
    the level; a tie for the top halts the cascade (strict dominance is
    the rule's own requirement).  When exactly one ticket remains able to
    win, the cascade accepts that it wins.
    """
    model = base.model
    tickets = {label: _ticket_atom(f) for label, f in base.candidates}
    current = model.full_mask()
    for g in base.background:
        current &= model.satisfying_mask(g)
    accepted: list[Acceptance] = []
    remaining = dict(base.candidates)
    while remaining:
        denominator = model.mask_weight(current)
        if denominator == 0:
            raise RuntimeError("cascade conditioning set reached probability 0")
        conditional = {
            label: model.mask_weight(current & model.satisfying_mask(f)) / denominator
            for label, f in remaining.items()
        }
        best = max(conditional.values())
        leaders = [label for label, p in conditional.items() if p == best]
        if len(leaders) != 1 or not level.met_by(best):
            break
        label = leaders[0]
        formula = remaining.pop(label)
        accepted.append(
            Acceptance(label, formula, model.probability(formula), best)
        )
        current &= model.satisfying_mask(formula)
    denominator = model.mask_weight(current)
    if denominator > 0:
        alive = [
            name
            for name in dict.fromkeys(tickets.values())
            if model.mask_weight(current & model.satisfying_mask(atom(name))) > 0
        ]
        if len(alive) == 1:
            win = atom(alive[0])
            support = (
                model.mask_weight(current & model.satisfying_mask(win)) / denominator
            )
            accepted.append(
                Acceptance(alive[0], win, model.probability(win), support)
            )
    return _finish("lehrer_cascade", level, accepted, base)


def _check_order(base: BeliefBase, order: Sequence[str]) -> list[str]:
    order = list(order)
    if sorted(order) != sorted(base.candidate_labels):
        raise ValueError("order must be a permutation of the candidate labels")
    return order


def sequential_accept(
    base: BeliefBase, order: Sequence[str], level: AcceptanceLevel
) -> AcceptedSet:
    """Accept candidates in order when probable enough, skipping any that
    would make the accepted set (with background) unsatisfiable.  Always
    weakly consistent; which statements get in depends on the order."""
    order = _check_order(base, order)
    accepted: list[Acceptance] = []
    current = list(base.background)
    for label in order:
        formula = base.candidate(label)
        p = base.model.probability(formula)
        if not level.met_by(p):
            continue
        if is_satisfiable(current + [formula]):
            accepted.append(Acceptance(label, formula, p, p))
            current.append(formula)
    return _finish("sequential", level, accepted, base)


def teng_accept(
    base: BeliefBase, order: Sequence[str], level: AcceptanceLevel
) -> AcceptedSet:
    """Fixed-point acceptance: scan candidates in order and accept each
    one whose probability conditional on the already-accepted statements
    (and background) clears the level.

    On the fair 100-ticket lottery at epsilon 1/100 this stops after a
    single lose statement, because 98/99 < 99/100 exactly.
    """
    order = _check_order(base, order)
    model = base.model
    current = model.full_mask()
    for g in base.background:
        current &= model.satisfying_mask(g)
    accepted: list[Acceptance] = []
    for label in order:
        denominator = model.mask_weight(current)
        if denominator == 0:
            raise RuntimeError("teng conditioning set reached probability 0")
        formula = base.candidate(label)
        joint = current & model.satisfying_mask(formula)
        conditional = model.mask_weight(joint) / denominator
        if level.met_by(conditional):
            accepted.append(
                Acceptance(label, formula, model.probability(formula), conditional)
            )
            current = joint
    return _finish("teng", level, accepted, base)


_ORDERED_POLICIES: dict[str, Callable[..., AcceptedSet]] = {
    "sequential": sequential_accept,
    "teng": teng_accept,
}


@dataclass(frozen=True)
class ExtensionEnumeration:
    """Distinct accepted sets of an order-dependent policy across
    candidate orders, plus their conjunctive and disjunctive merges."""

    policy: str
    level: AcceptanceLevel
    extensions: tuple[AcceptedSet, ...]
    witness_orders: tuple[tuple[str, ...], ...]
    conjunction: FormulaSet
    conjunction_weakly_consistent: bool
    intersection: FormulaSet
    exhaustive: bool
    permutation_count: int
    seed: int


def enumerate_extensions(
    base: BeliefBase,
    policy: str,
    level: AcceptanceLevel,
    max_permutations: int = 720,
    seed: int = DEFAULT_SEED,
) -> ExtensionEnumeration:
    """Run a policy over candidate orders and collect distinct outcomes.

    All permutations are tried when their count is at most
    ``max_permutations``; otherwise a deterministic seeded sample of that
    many shuffles is used.  Taken conjunctively the extensions may be
    weakly inconsistent again; taken disjunctively (the intersection)
    they may license nothing beyond the background.
    """
    if policy not in _ORDERED_POLICIES:
        raise ValueError(f"policy must be one of {sorted(_ORDERED_POLICIES)}")
    if max_permutations < 1:
        raise ValueError("max_permutations must be positive")
    run = _ORDERED_POLICIES[policy]
    labels = list(base.candidate_labels)
    total = math.factorial(len(labels))
    exhaustive = total <= max_permutations
    if exhaustive:
        orders = [tuple(p) for p in permutations(labels)]
    else:
        rng = random.Random(seed)
        seen_orders: set[tuple[str, ...]] = set()
        orders = []
        for _ in range(max_permutations):
            shuffled = labels[:]
            rng.shuffle(shuffled)
            candidate_order = tuple(shuffled)
            if candidate_order not in seen_orders:
                seen_orders.add(candidate_order)
                orders.append(candidate_order)

    extensions: list[AcceptedSet] = []
    witness: list[tuple[str, ...]] = []
    signatures: set[frozenset[str]] = set()
    for order in orders:
        result = run(base, order, level)
        signature = frozenset(f.canonical_key for f in result.accepted_formulas)
        if signature not in signatures:
            signatures.add(signature)
            extensions.append(result)
            witness.append(order)

    union = FormulaSet(base.background).union(
        f for ext in extensions for f in ext.accepted_formulas
    )
    if extensions:
        common = set.intersection(
            *({f.canonical_key for f in ext.accepted_formulas} for ext in extensions)
        )
    else:
        common = set()
    intersection = FormulaSet(base.background).union(
        f for _, f in base.candidates if f.canonical_key in common
    )
    return ExtensionEnumeration(
        policy=policy,
        level=level,
        extensions=tuple(extensions),
        witness_orders=tuple(witness),
        conjunction=union,
        conjunction_weakly_consistent=is_satisfiable(union),
        intersection=intersection,
        exhaustive=exhaustive,
        permutation_count=len(orders),
        seed=seed,
    )
