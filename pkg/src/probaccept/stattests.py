"""Classical rejection-region tests as acceptance of negations.

A binomial test at significance epsilon rejects its hypothesis on rarely
misleading evidence: the exact null probability of the rejection region
never exceeds epsilon.  Rejecting H is then treated as accepting the bare
negation of H at level 1 - epsilon (the nominal level; the achieved size
is smaller and reported alongside).  Failing to reject accepts nothing.

Accepted rejections combine like any other accepted statements: with no
independence assumption k rejections at epsilon support their conjunction
at 1 - k*epsilon; independent tests support it at prod(1 - eps_i), which
is only marginally better.

Everything is exact integer and rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .worlds import ProbabilityBound, as_fraction

__all__ = [
    "Decision",
    "BinomialTestSpec",
    "RejectionRegion",
    "AcceptedRejection",
    "CombinedRejection",
    "binomial_pmf",
    "binomial_rejection_region",
    "run_test",
    "rejection_to_acceptance",
    "combine_tests",
]

SIDEDNESS = ("two_sided", "upper", "lower")


class Decision(Enum):
    REJECT = "reject"
    FAIL_TO_REJECT = "fail_to_reject"


@dataclass(frozen=True)
class BinomialTestSpec:
    """An exact binomial test of H: success probability equals p0, on n
    trials, at significance epsilon."""

    n: int
    p0: Fraction
    epsilon: Fraction
    sided: str = "two_sided"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("sample size n must be a positive integer")
        object.__setattr__(self, "p0", as_fraction(self.p0))
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if not (0 < self.p0 < 1):
            raise ValueError("null parameter p0 must lie strictly between 0 and 1")
        # epsilon = 1 is allowed (a vacuous size constraint), unlike
        # acceptance levels proper.
        if not (0 < self.epsilon <= 1):
            raise ValueError("significance epsilon must lie in (0, 1]")
        if self.sided not in SIDEDNESS:
            raise ValueError(f"sidedness must be one of {SIDEDNESS}")


@dataclass(frozen=True)
class RejectionRegion:
    """The set of observed counts on which H is rejected, with its exact
    null probability (the achieved size)."""

    n: int
    rejected_counts: frozenset[int]
    achieved_size: Fraction

    def __contains__(self, observed: int) -> bool:
        return observed in self.rejected_counts


def binomial_pmf(n: int, p: Fraction, x: int) -> Fraction:
    return math.comb(n, x) * p**x * (1 - p) ** (n - x)


def _largest_tail(
    pmf: Sequence[Fraction], budget: Fraction, upper: bool
) -> list[int]:
    """Greedily extend a tail from the extreme inward while its exact mass
    stays within budget."""
    indices = range(len(pmf) - 1, -1, -1) if upper else range(len(pmf))
    chosen: list[int] = []
    mass = Fraction(0)
    for x in indices:
        if mass + pmf[x] <= budget:
            mass += pmf[x]
            chosen.append(x)
        else:
            break
    return chosen


def binomial_rejection_region(spec: BinomialTestSpec) -> RejectionRegion:
    """Largest region of the requested sidedness with exact size <= eps.

    Two-sided regions give each tail half the budget (equal-tail
    convention) and maximize each tail separately.
    """
    pmf = [binomial_pmf(spec.n, spec.p0, x) for x in range(spec.n + 1)]
    if spec.sided == "upper":
        counts = _largest_tail(pmf, spec.epsilon, upper=True)
    elif spec.sided == "lower":
        counts = _largest_tail(pmf, spec.epsilon, upper=False)
    else:
        half = spec.epsilon / 2
        counts = _largest_tail(pmf, half, upper=False)
        counts += _largest_tail(pmf, half, upper=True)
    region = frozenset(counts)
    size = sum((pmf[x] for x in region), Fraction(0))
    if size > spec.epsilon:
        raise RuntimeError(
            f"constructed region has size {size} > {spec.epsilon}; "
            "this should be impossible"
        )
    return RejectionRegion(spec.n, region, size)


def run_test(region: RejectionRegion, observed: int) -> Decision:
    """Reject iff the observed count falls in the region.  Failing to
    reject is not accepting H; it yields nothing."""
    if not isinstance(observed, int) or not (0 <= observed <= region.n):
        raise ValueError(
            f"observed count must be an integer in [0, {region.n}], got {observed!r}"
        )
    return Decision.REJECT if observed in region else Decision.FAIL_TO_REJECT


@dataclass(frozen=True)
class AcceptedRejection:
    """The negation of a rejected hypothesis, accepted at the nominal
    level 1 - epsilon.

    ``statement`` is the bare logical negation (or the directional claim
    for one-sided tests); ``alternative_note`` is free text for the
    specific alternative one may actually have in mind, which rejecting H
    does not by itself support.
    """

    statement: str
    epsilon: Fraction
    support: ProbabilityBound
    achieved_size: Fraction
    directional: bool
    alternative_note: str = ""


def rejection_to_acceptance(
    spec: BinomialTestSpec, decision: Decision, alternative_note: str = ""
) -> AcceptedRejection:
    """Turn a rejection at significance eps into acceptance of the
    negated hypothesis with support lower bound 1 - eps (nominal, not the
    smaller achieved size)."""
    if decision is not Decision.REJECT:
        raise ValueError("only a rejection licenses accepting the negation")
    if spec.sided == "upper":
        statement = f"parameter > {spec.p0}"
    elif spec.sided == "lower":
        statement = f"parameter < {spec.p0}"
    else:
        statement = f"parameter != {spec.p0}"
    region = binomial_rejection_region(spec)
    return AcceptedRejection(
        statement=statement,
        epsilon=spec.epsilon,
        support=ProbabilityBound(1 - spec.epsilon, Fraction(1)),
        achieved_size=region.achieved_size,
        directional=spec.sided != "two_sided",
        alternative_note=alternative_note,
    )


@dataclass(frozen=True)
class CombinedRejection:
    """The conjunction of several accepted rejections with its support
    floor.  The statement is textual; negated statistical hypotheses are
    not formulas over any world model."""

    statement: str
    support_lower_bound: Fraction
    premise_count: int
    independent: bool


def combine_tests(
    accepted: Sequence[AcceptedRejection], independent: bool = False
) -> CombinedRejection:
    """Support floor for the conjunction of accepted rejections.

    Independent tests: prod(1 - eps_i).  Otherwise the union bound
    max(0, 1 - sum(eps_i)); two rejections at the 1/100 level leave the
    conjunction at 98/100 either way, give or take 1/10000.
    """
    if not accepted:
        raise ValueError("need at least one accepted rejection")
    if independent:
        floor = Fraction(1)
        for a in accepted:
            floor *= 1 - a.epsilon
    else:
        slack = sum((a.epsilon for a in accepted), Fraction(0))
        floor = max(Fraction(0), 1 - slack)
    statement = " & ".join(f"({a.statement})" for a in accepted)
    return CombinedRejection(
        statement=statement,
        support_lower_bound=floor,
        premise_count=len(accepted),
        independent=independent,
    )
