import random

import pytest

from probaccept import (
    FormulaSet,
    FormulaSyntaxError,
    atom,
    conj,
    disj,
    evaluate,
    has_strong_inconsistency,
    iff,
    implies,
    neg,
    parse,
    render,
)

from helpers import random_formula


class TestParsing:
    def test_conjunction_with_negation(self):
        f = parse("a & ~a")
        assert f.op == "and"
        assert f.args[0] == atom("a")
        assert f.args[1] == neg(atom("a"))

    def test_precedence_or_binds_tighter_than_implies(self):
        f = parse("a | b -> c")
        assert f == implies(disj(atom("a"), atom("b")), atom("c"))
        assert f.op == "implies"
        assert f.args[0].op == "or"

    def test_precedence_not_and_or(self):
        assert parse("~a & b | c") == disj(conj(neg(atom("a")), atom("b")), atom("c"))

    def test_implies_right_associative(self):
        f = parse("a -> b -> c")
        assert f == implies(atom("a"), implies(atom("b"), atom("c")))

    def test_iff_chains_left(self):
        f = parse("a <-> b <-> c")
        assert f.op == "iff"
        assert f.args[0].op == "iff"

    def test_parens_override(self):
        assert parse("(a | b) & c").op == "and"
        assert parse("a | (b & c)").op == "or"

    def test_unbalanced_paren_position(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse("(a")
        assert err.value.position == 2

    def test_bad_character(self):
        with pytest.raises(FormulaSyntaxError):
            parse("a + b")

    def test_empty_input(self):
        with pytest.raises(FormulaSyntaxError):
            parse("")

    def test_trailing_junk(self):
        with pytest.raises(FormulaSyntaxError):
            parse("a b")

    def test_dangling_connective(self):
        with pytest.raises(FormulaSyntaxError):
            parse("a &")


class TestCanonicalIdentity:
    def test_implication_equals_its_disjunctive_form(self):
        assert parse("a -> b") == parse("~a | b")

    def test_commutativity(self):
        assert parse("a & b") == parse("b & a")
        assert parse("a | b | c") == parse("c | b | a")

    def test_double_negation(self):
        assert parse("~~a") == parse("a")

    def test_de_morgan(self):
        assert parse("~(a & b)") == parse("~a | ~b")

    def test_idempotent_duplicates(self):
        assert parse("a & a") == parse("a")

    def test_distinct_formulas_differ(self):
        assert parse("a & b") != parse("a | b")
        assert parse("a") != parse("b")

    def test_canonicalization_idempotent(self):
        f = parse("~(a -> b) <-> (c | ~a)")
        again = parse(f.canonical_key)
        assert again.canonical_key == f.canonical_key

    def test_hashing_follows_equality(self):
        assert len({parse("a -> b"), parse("~a | b"), parse("b | ~a")}) == 1

    def test_render_parse_round_trip_catalog(self):
        texts = [
            "a",
            "~a",
            "~~(a & b)",
            "a & b & c",
            "a | b -> c",
            "(a -> b) -> c",
            "a -> b -> c",
            "a <-> b <-> c",
            "a <-> (b <-> c)",
            "~(a | b) & (c -> ~d)",
        ]
        for text in texts:
            f = parse(text)
            assert parse(render(f)) == f

    def test_render_parse_round_trip_random(self):
        rng = random.Random(1234)
        names = ["a", "b", "c", "d"]
        for _ in range(300):
            f = random_formula(rng, names)
            assert parse(render(f)) == f


class TestEvaluation:
    def test_connectives(self):
        env = {"a": True, "b": False}
        assert evaluate(parse("a & ~b"), env)
        assert not evaluate(parse("a -> b"), env)
        assert evaluate(parse("b -> a"), env)
        assert evaluate(parse("a <-> a"), env)
        assert not evaluate(parse("a <-> b"), env)

    def test_atoms_collected(self):
        assert parse("a & (b -> a)").atoms() == frozenset({"a", "b"})


class TestStrongInconsistency:
    def test_single_self_contradiction(self):
        assert has_strong_inconsistency([parse("s & ~s")])

    def test_weak_only_pair(self):
        # jointly unsatisfiable, but no member contradicts itself
        assert not has_strong_inconsistency([parse("s"), parse("~s")])

    def test_empty(self):
        assert not has_strong_inconsistency([])

    def test_compound_subformula(self):
        assert has_strong_inconsistency([parse("(a | b) & ~(a | b)")])

    def test_negated_tautology(self):
        assert has_strong_inconsistency([parse("~(a -> a)")])

    def test_nested_under_disjunction(self):
        assert has_strong_inconsistency([parse("t | (s & ~s)")])

    def test_plain_contingency(self):
        assert not has_strong_inconsistency([parse("a & b"), parse("~a | b")])


class TestFormulaSet:
    def test_deduplicates_by_canonical_key(self):
        s = FormulaSet([parse("a -> b"), parse("~a | b"), parse("c")])
        assert len(s) == 2

    def test_preserves_insertion_order(self):
        s = FormulaSet([parse("c"), parse("a"), parse("b")])
        assert [render(f) for f in s] == ["c", "a", "b"]

    def test_membership(self):
        s = FormulaSet([parse("a -> b")])
        assert parse("~a | b") in s
        assert parse("a") not in s

    def test_union_and_add(self):
        s = FormulaSet([parse("a")]) | FormulaSet([parse("b")])
        assert len(s.add(parse("a"))) == 2
        assert len(s.add(parse("c"))) == 3

    def test_equality_ignores_order(self):
        assert FormulaSet([parse("a"), parse("b")]) == FormulaSet(
            [parse("b"), parse("a")]
        )


class TestConstructors:
    def test_invalid_atom_name(self):
        for bad in ("", "1a", "a-b", "a b"):
            with pytest.raises(ValueError):
                atom(bad)

    def test_variadic_singletons_collapse(self):
        assert conj(atom("a")) == atom("a")
        assert disj(atom("a")) == atom("a")

    def test_empty_variadic_rejected(self):
        with pytest.raises(ValueError):
            conj()
        with pytest.raises(ValueError):
            disj()
