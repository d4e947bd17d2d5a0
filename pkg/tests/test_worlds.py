import random
from fractions import Fraction

import pytest

from probaccept import (
    BeliefBase,
    FormulaSet,
    ProbabilityBound,
    UnknownAtomError,
    WorldModel,
    ZeroProbabilityError,
    atom,
    biased_lottery,
    conj,
    entails,
    fair_lottery,
    independent_lottery,
    neg,
    parse,
)

from helpers import random_formula, random_model


class TestProbability:
    def test_fair_lottery_lose_probability(self, lottery100):
        assert lottery100.model.probability(lottery100.candidate("L7")) == Fraction(99, 100)

    def test_tautology_has_probability_one(self, lottery100):
        assert lottery100.model.probability(parse("wins_1 | ~wins_1")) == 1

    def test_independent_pair_someone_wins(self):
        base = independent_lottery(2, Fraction(1, 2))
        assert base.model.probability(parse("wins_1 | wins_2")) == Fraction(3, 4)
        assert base.model.probability(parse("~wins_1 & ~wins_2")) == Fraction(1, 4)

    def test_single_ticket_lottery(self):
        base = fair_lottery(1)
        assert base.model.probability(base.candidate("L1")) == 0

    def test_unknown_atom_rejected(self, lottery100):
        with pytest.raises(UnknownAtomError):
            lottery100.model.probability(atom("nonexistent"))

    def test_complement_rule_randomized(self):
        rng = random.Random(11)
        for _ in range(100):
            model = random_model(rng)
            f = random_formula(rng, list(model.atoms), depth=2)
            assert model.probability(f) + model.probability(neg(f)) == 1

    def test_monotone_under_entailment(self):
        rng = random.Random(12)
        for _ in range(100):
            model = random_model(rng)
            names = list(model.atoms)
            f = random_formula(rng, names, depth=2)
            g = random_formula(rng, names, depth=2)
            weaker = parse(f"({f}) | ({g})")
            assert entails([], [f], weaker)
            assert model.probability(f) <= model.probability(weaker)

    def test_union_bound_randomized(self):
        rng = random.Random(13)
        for _ in range(100):
            model = random_model(rng)
            names = list(model.atoms)
            f = random_formula(rng, names, depth=2)
            g = random_formula(rng, names, depth=2)
            disjunction = parse(f"({f}) | ({g})")
            assert model.probability(disjunction) <= model.probability(f) + model.probability(g)


class TestConditionalProbability:
    def test_fair_lottery_conditional(self, lottery100):
        p = lottery100.model.conditional_probability(
            lottery100.candidate("L2"), [lottery100.candidate("L1")]
        )
        assert p == Fraction(98, 99)

    def test_self_conditioning(self):
        base = fair_lottery(4)
        f = base.candidate("L1")
        assert base.model.conditional_probability(f, [f]) == 1

    def test_zero_probability_condition_rejected(self):
        base = fair_lottery(3)
        impossible = conj(*(f for _, f in base.candidates), *base.background)
        with pytest.raises(ZeroProbabilityError):
            base.model.conditional_probability(base.candidate("L1"), [impossible])

    def test_product_identity_randomized(self):
        rng = random.Random(14)
        for _ in range(100):
            model = random_model(rng)
            names = list(model.atoms)
            f = random_formula(rng, names, depth=2)
            g = random_formula(rng, names, depth=2)
            pg = model.probability(g)
            if pg == 0:
                continue
            joint = model.probability(conj(f, g))
            assert model.conditional_probability(f, [g]) * pg == joint


class TestLotteries:
    def test_fair_structure(self):
        base = fair_lottery(3)
        assert base.model.atoms == ("wins_1", "wins_2", "wins_3")
        assert len(base.model.worlds) == 3
        assert all(w == Fraction(1, 3) for _, w in base.model.worlds)
        assert base.candidate_labels == ("L1", "L2", "L3")
        assert base.model.probability(base.candidate("L1")) == Fraction(2, 3)

    def test_fair_all_lose_probabilities(self, lottery100):
        for label in lottery100.candidate_labels:
            assert lottery100.model.probability(lottery100.candidate(label)) == Fraction(99, 100)

    def test_background_certain(self):
        for base in (fair_lottery(4), biased_lottery(["1/4", "1/4", "1/2"])):
            for f in base.background:
                assert base.model.probability(f) == 1

    def test_biased_lose_probabilities(self):
        base = biased_lottery([Fraction(1, 100), Fraction(9, 100), Fraction(90, 100)])
        expected = [Fraction(99, 100), Fraction(91, 100), Fraction(10, 100)]
        for label, want in zip(base.candidate_labels, expected):
            assert base.model.probability(base.candidate(label)) == want

    def test_uniform_bias_equals_fair(self):
        assert biased_lottery([Fraction(1, 3)] * 3) == fair_lottery(3)

    def test_bad_weights_rejected(self):
        with pytest.raises(ValueError):
            biased_lottery([Fraction(1, 4), Fraction(1, 4)])  # sums to 1/2
        with pytest.raises(ValueError):
            biased_lottery([Fraction(3, 2), Fraction(-1, 2)])
        with pytest.raises(ValueError):
            fair_lottery(0)

    def test_independent_structure(self):
        base = independent_lottery(2, Fraction(1, 2))
        assert len(base.model.worlds) == 4
        assert len(base.background) == 0
        assert base.candidate_labels == ("L1", "L2", "some_wins")

    def test_independent_single_ticket(self):
        base = independent_lottery(1, Fraction(3, 7))
        assert base.model.probability(base.candidate("some_wins")) == Fraction(3, 7)

    def test_independent_ten_tickets(self):
        base = independent_lottery(10, Fraction(1, 2))
        assert base.model.probability(base.candidate("L3")) == Fraction(1, 2)
        assert base.model.probability(base.candidate("some_wins")) == Fraction(1023, 1024)

    def test_independent_cap(self):
        with pytest.raises(ValueError):
            independent_lottery(21, Fraction(1, 2))
        with pytest.raises(ValueError):
            independent_lottery(3, Fraction(1, 1))


class TestModelValidation:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            WorldModel(["a"], [((True,), Fraction(1, 2))])

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            WorldModel(
                ["a"],
                [((True,), Fraction(3, 2)), ((False,), Fraction(-1, 2))],
            )

    def test_duplicate_valuations_rejected(self):
        with pytest.raises(ValueError):
            WorldModel(
                ["a"],
                [((True,), Fraction(1, 2)), ((True,), Fraction(1, 2))],
            )

    def test_float_weights_rejected(self):
        with pytest.raises(ValueError):
            WorldModel(["a"], [((True,), 0.5), ((False,), 0.5)])

    def test_zero_weight_worlds_allowed(self):
        model = WorldModel(["a"], [((True,), 1), ((False,), 0)])
        assert model.probability(atom("a")) == 1


class TestBeliefBase:
    def test_background_below_one_rejected(self):
        model = WorldModel(
            ["a"], [((True,), Fraction(1, 2)), ((False,), Fraction(1, 2))]
        )
        with pytest.raises(ValueError):
            BeliefBase(model, FormulaSet([atom("a")]), [])

    def test_candidate_atoms_must_exist(self):
        model = WorldModel(["a"], [((True,), 1)])
        with pytest.raises(UnknownAtomError):
            BeliefBase(model, [], [("C", atom("b"))])

    def test_duplicate_labels_rejected(self):
        model = WorldModel(["a"], [((True,), 1)])
        with pytest.raises(ValueError):
            BeliefBase(model, [], [("C", atom("a")), ("C", neg(atom("a")))])


class TestProbabilityBound:
    def test_point_bound(self):
        b = ProbabilityBound(Fraction(1, 2))
        assert b.lower == b.upper == Fraction(1, 2)

    def test_interval_ordering_enforced(self):
        with pytest.raises(ValueError):
            ProbabilityBound(Fraction(3, 4), Fraction(1, 4))
        with pytest.raises(ValueError):
            ProbabilityBound(Fraction(-1, 4), Fraction(1, 4))
