from fractions import Fraction

import pytest

from probaccept import (
    BeliefBaseFormatError,
    biased_lottery,
    dumps,
    fair_lottery,
    independent_lottery,
    loads,
    parse_rational,
)

SAMPLE = """\
# a two-sided coin, candidates on both sides
ATOMS: heads
WORLDS:
w1: heads=1 weight 1/2
w2: heads=0 weight 1/2
CANDIDATES:
H: heads
T: ~heads   # trailing comments are fine
"""


class TestParseRational:
    @pytest.mark.parametrize(
        "text,value",
        [("3/4", Fraction(3, 4)), ("2", Fraction(2)), (" 10/4 ", Fraction(5, 2))],
    )
    def test_accepts_rationals(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["0.5", "1e-2", "", "a/b", "1/2/3"])
    def test_rejects_non_rationals(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)


class TestRoundTrip:
    @pytest.mark.parametrize(
        "base",
        [
            fair_lottery(3),
            biased_lottery([Fraction(1, 100), Fraction(9, 100), Fraction(90, 100)]),
            independent_lottery(2, Fraction(1, 3)),
        ],
        ids=["fair3", "biased3", "independent2"],
    )
    def test_dumps_loads_identity(self, base):
        assert loads(dumps(base)) == base

    def test_dumps_stable(self):
        base = fair_lottery(4)
        assert dumps(base) == dumps(fair_lottery(4))

    def test_sample_parses(self):
        base = loads(SAMPLE)
        assert base.model.atoms == ("heads",)
        assert base.candidate_labels == ("H", "T")
        assert base.model.probability(base.candidate("H")) == Fraction(1, 2)
        assert len(base.background) == 0

    def test_sample_round_trips(self):
        base = loads(SAMPLE)
        assert loads(dumps(base)) == base


class TestFormatErrors:
    def test_missing_atoms_section(self):
        with pytest.raises(BeliefBaseFormatError):
            loads("WORLDS:\nw1: weight 1\n")

    def test_missing_worlds(self):
        with pytest.raises(BeliefBaseFormatError):
            loads("ATOMS: a\n")

    def test_world_without_weight(self):
        with pytest.raises(BeliefBaseFormatError, match="line 3"):
            loads("ATOMS: a\nWORLDS:\nw1: a=1\n")

    def test_float_weight_rejected(self):
        with pytest.raises(BeliefBaseFormatError):
            loads("ATOMS: a\nWORLDS:\nw1: a=1 weight 0.5\nw2: a=0 weight 0.5\n")

    def test_unknown_atom_in_world(self):
        with pytest.raises(BeliefBaseFormatError, match="unknown atom"):
            loads("ATOMS: a\nWORLDS:\nw1: a=1 b=0 weight 1\n")

    def test_incomplete_valuation(self):
        with pytest.raises(BeliefBaseFormatError, match="unassigned"):
            loads("ATOMS: a b\nWORLDS:\nw1: a=1 weight 1\n")

    def test_duplicate_candidate_label(self):
        text = (
            "ATOMS: a\nWORLDS:\nw1: a=1 weight 1\n"
            "CANDIDATES:\nC: a\nC: ~a\n"
        )
        with pytest.raises(BeliefBaseFormatError, match="duplicate"):
            loads(text)

    def test_bad_formula_reports_line(self):
        text = "ATOMS: a\nWORLDS:\nw1: a=1 weight 1\nBACKGROUND:\na &\n"
        with pytest.raises(BeliefBaseFormatError, match="line 5"):
            loads(text)

    def test_content_before_section(self):
        with pytest.raises(BeliefBaseFormatError, match="line 1"):
            loads("a=1\nATOMS: a\n")

    def test_weights_not_summing_rejected(self):
        text = "ATOMS: a\nWORLDS:\nw1: a=1 weight 1/3\nw2: a=0 weight 1/3\n"
        with pytest.raises(BeliefBaseFormatError):
            loads(text)
