"""Propositional formulas with a canonical normal form.

Formulas are immutable trees built from atoms and the connectives
``~ & | -> <->``.  Identity is syntactic on a canonical form: negation
normal form with flattened, sorted, deduplicated arguments for the
commutative connectives.  Two formulas compare (and hash) equal exactly
when their canonical keys coincide, which makes formulas directly usable
as set elements.  Canonicalization is idempotent by construction.

The concrete grammar (whitespace insignificant, precedence low to high
``<->``, ``->``, ``|``, ``&``, ``~``; ``->`` right-associative)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "(" formula ")" | atom
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Formula",
    "FormulaSet",
    "FormulaSyntaxError",
    "atom",
    "neg",
    "conj",
    "disj",
    "implies",
    "iff",
    "parse",
    "render",
    "evaluate",
    "has_strong_inconsistency",
    "nnf_key",
]

_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_OPS = frozenset({"atom", "not", "and", "or", "implies", "iff"})


class FormulaSyntaxError(ValueError):
    """Malformed formula text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


# ---------------------------------------------------------------------------
# Canonical NNF nodes.
#
# A node is a plain tuple:  ("lit", name, positive)  |  ("and", children)
# |  ("or", children), children sorted by key and deduplicated.  Using bare
# tuples keeps nodes hashable and cheap to share.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def nnf_key(node: tuple) -> str:
    """Unambiguous string rendering of a canonical NNF node."""
    tag = node[0]
    if tag == "lit":
        return node[1] if node[2] else "~" + node[1]
    sep = " & " if tag == "and" else " | "
    return "(" + sep.join(nnf_key(child) for child in node[1]) + ")"


def _gather(parts: Iterable[tuple], tag: str) -> tuple:
    flat: list[tuple] = []
    for part in parts:
        if part[0] == tag:
            flat.extend(part[1])
        else:
            flat.append(part)
    seen: set[tuple] = set()
    unique: list[tuple] = []
    for part in sorted(flat, key=nnf_key):
        if part not in seen:
            seen.add(part)
            unique.append(part)
    if len(unique) == 1:
        return unique[0]
    return (tag, tuple(unique))


def _n_and(parts: Iterable[tuple]) -> tuple:
    return _gather(parts, "and")


def _n_or(parts: Iterable[tuple]) -> tuple:
    return _gather(parts, "or")


def _n_negate(node: tuple) -> tuple:
    if node[0] == "lit":
        return ("lit", node[1], not node[2])
    if node[0] == "and":
        return _n_or(_n_negate(child) for child in node[1])
    return _n_and(_n_negate(child) for child in node[1])


# ---------------------------------------------------------------------------
# Formula values.
# ---------------------------------------------------------------------------


class Formula:
    """An immutable propositional sentence.

    ``op`` is one of ``atom``, ``not``, ``and``, ``or``, ``implies``,
    ``iff``; ``and``/``or`` are variadic with at least two arguments.
    Instances are created through :func:`atom`, :func:`neg`, :func:`conj`,
    :func:`disj`, :func:`implies`, :func:`iff` or :func:`parse`.
    """

    __slots__ = ("op", "args", "name", "_nnf", "_key", "_atoms")

    def __init__(self, op: str, args: tuple["Formula", ...] = (), name: str | None = None):
        if op not in _OPS:
            raise ValueError(f"unknown connective {op!r}")
        if op == "atom":
            if name is None or not _ATOM_RE.fullmatch(name):
                raise ValueError(f"invalid atom name {name!r}")
            if args:
                raise ValueError("atoms take no arguments")
        else:
            if name is not None:
                raise ValueError("only atoms carry a name")
            arity_ok = (
                len(args) == 1 if op == "not"
                else len(args) == 2 if op in ("implies", "iff")
                else len(args) >= 2
            )
            if not arity_ok or not all(isinstance(a, Formula) for a in args):
                raise ValueError(f"bad arguments for {op!r}")
        self.op = op
        self.args = args
        self.name = name
        self._nnf: tuple[tuple, tuple] | None = None
        self._key: str | None = None
        self._atoms: frozenset[str] | None = None

    def nnf(self) -> tuple:
        """Canonical negation-normal-form node for this formula."""
        return self._nnf_pair()[0]

    def _nnf_pair(self) -> tuple[tuple, tuple]:
        if self._nnf is None:
            op = self.op
            if op == "atom":
                pair = (("lit", self.name, True), ("lit", self.name, False))
            elif op == "not":
                pos, negn = self.args[0]._nnf_pair()
                pair = (negn, pos)
            elif op in ("and", "or"):
                pairs = [a._nnf_pair() for a in self.args]
                both = (
                    _n_and(p for p, _ in pairs),
                    _n_or(n for _, n in pairs),
                )
                pair = both if op == "and" else (
                    _n_or(p for p, _ in pairs),
                    _n_and(n for _, n in pairs),
                )
            elif op == "implies":
                lp, ln = self.args[0]._nnf_pair()
                rp, rn = self.args[1]._nnf_pair()
                pair = (_n_or((ln, rp)), _n_and((lp, rn)))
            else:  # iff
                lp, ln = self.args[0]._nnf_pair()
                rp, rn = self.args[1]._nnf_pair()
                pair = (
                    _n_or((_n_and((lp, rp)), _n_and((ln, rn)))),
                    _n_or((_n_and((lp, rn)), _n_and((ln, rp)))),
                )
            self._nnf = pair
        return self._nnf

    @property
    def canonical_key(self) -> str:
        if self._key is None:
            self._key = nnf_key(self.nnf())
        return self._key

    def atoms(self) -> frozenset[str]:
        if self._atoms is None:
            if self.op == "atom":
                self._atoms = frozenset((self.name,))
            else:
                out: set[str] = set()
                for a in self.args:
                    out |= a.atoms()
                self._atoms = frozenset(out)
        return self._atoms

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self.canonical_key == other.canonical_key

    def __hash__(self) -> int:
        return hash(self.canonical_key)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Formula({render(self)!r})"


def atom(name: str) -> Formula:
    return Formula("atom", name=name)


def neg(f: Formula) -> Formula:
    return Formula("not", (f,))


def conj(*formulas: Formula) -> Formula:
    if not formulas:
        raise ValueError("conjunction of nothing")
    if len(formulas) == 1:
        return formulas[0]
    return Formula("and", tuple(formulas))


def disj(*formulas: Formula) -> Formula:
    if not formulas:
        raise ValueError("disjunction of nothing")
    if len(formulas) == 1:
        return formulas[0]
    return Formula("or", tuple(formulas))


def implies(antecedent: Formula, consequent: Formula) -> Formula:
    return Formula("implies", (antecedent, consequent))


def iff(left: Formula, right: Formula) -> Formula:
    return Formula("iff", (left, right))


# ---------------------------------------------------------------------------
# Rendering.  Parenthesization is minimal under the grammar's precedence,
# so render/parse round-trips preserve structure.
# ---------------------------------------------------------------------------

_PREC = {"iff": 1, "implies": 2, "or": 3, "and": 4, "not": 5, "atom": 6}


def _wrap(f: Formula, need: int) -> str:
    text = render(f)
    return f"({text})" if _PREC[f.op] < need else text


def render(f: Formula) -> str:
    op = f.op
    if op == "atom":
        return f.name  # type: ignore[return-value]
    if op == "not":
        return "~" + _wrap(f.args[0], 5)
    if op == "and":
        return " & ".join(_wrap(a, 5) for a in f.args)
    if op == "or":
        return " | ".join(_wrap(a, 4) for a in f.args)
    if op == "implies":
        return _wrap(f.args[0], 3) + " -> " + _wrap(f.args[1], 2)
    return _wrap(f.args[0], 1) + " <-> " + _wrap(f.args[1], 2)


# ---------------------------------------------------------------------------
# Parsing.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<atom>[A-Za-z_][A-Za-z0-9_]*)|(?P<iff><->)|(?P<implies>->)"
    r"|(?P<and>&)|(?P<or>\|)|(?P<not>~)|(?P<lparen>\()|(?P<rparen>\)))"
)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", where)
        kind = m.lastgroup
        assert kind is not None
        tokens.append((m.group(kind) if kind == "atom" else kind, m.start(kind)))
        pos = m.end()
    tokens.append(("end", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.imp()
        while self.peek()[0] == "iff":
            self.take()
            left = iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.or_()
        if self.peek()[0] == "implies":
            self.take()
            return implies(left, self.imp())
        return left

    def or_(self) -> Formula:
        parts = [self.and_()]
        while self.peek()[0] == "or":
            self.take()
            parts.append(self.and_())
        return disj(*parts)

    def and_(self) -> Formula:
        parts = [self.unary()]
        while self.peek()[0] == "and":
            self.take()
            parts.append(self.unary())
        return conj(*parts)

    def unary(self) -> Formula:
        kind, pos = self.take()
        if kind == "not":
            return neg(self.unary())
        if kind == "lparen":
            inner = self.formula()
            kind2, pos2 = self.take()
            if kind2 != "rparen":
                raise FormulaSyntaxError("expected ')'", pos2)
            return inner
        if kind in ("iff", "implies", "and", "or", "rparen", "end"):
            raise FormulaSyntaxError("expected a formula", pos)
        return atom(kind)


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula; raises :class:`FormulaSyntaxError`."""
    parser = _Parser(text)
    result = parser.formula()
    kind, pos = parser.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {kind!r}", pos)
    return result


# ---------------------------------------------------------------------------
# Evaluation and diagnostics.
# ---------------------------------------------------------------------------


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Truth value of ``f`` under a total assignment of its atoms."""
    op = f.op
    if op == "atom":
        return bool(assignment[f.name])
    if op == "not":
        return not evaluate(f.args[0], assignment)
    if op == "and":
        return all(evaluate(a, assignment) for a in f.args)
    if op == "or":
        return any(evaluate(a, assignment) for a in f.args)
    if op == "implies":
        return (not evaluate(f.args[0], assignment)) or evaluate(f.args[1], assignment)
    return evaluate(f.args[0], assignment) == evaluate(f.args[1], assignment)


def _node_has_direct_contradiction(node: tuple) -> bool:
    if node[0] == "lit":
        return False
    children = node[1]
    if node[0] == "and":
        present = set(children)
        for child in children:
            flipped = _n_negate(child)
            if flipped[0] == "and":
                if all(part in present for part in flipped[1]):
                    return True
            elif flipped in present:
                return True
    return any(_node_has_direct_contradiction(child) for child in children)


def has_strong_inconsistency(formulas: Iterable[Formula]) -> bool:
    """True when some member, canonicalized, conjoins a subformula with its
    own negation.  Distinct members that merely contradict each other do
    not count; that is mere joint unsatisfiability."""
    return any(_node_has_direct_contradiction(f.nnf()) for f in formulas)


class FormulaSet:
    """An ordered collection of distinct formulas.

    Insertion order is preserved for iteration; duplicates (by canonical
    key) are dropped.  Equality and hashing are order-insensitive.
    """

    __slots__ = ("_members", "_keys")

    def __init__(self, members: Iterable[Formula] = ()):
        ordered: list[Formula] = []
        keys: dict[str, Formula] = {}
        for f in members:
            if not isinstance(f, Formula):
                raise TypeError(f"FormulaSet members must be formulas, got {f!r}")
            key = f.canonical_key
            if key not in keys:
                keys[key] = f
                ordered.append(f)
        self._members = tuple(ordered)
        self._keys = keys

    def __iter__(self) -> Iterator[Formula]:
        return iter(self._members)

    def __len__(self) -> int:
        return len(self._members)

    def __bool__(self) -> bool:
        return bool(self._members)

    def __contains__(self, f: object) -> bool:
        return isinstance(f, Formula) and f.canonical_key in self._keys

    def add(self, f: Formula) -> "FormulaSet":
        return FormulaSet(self._members + (f,))

    def union(self, other: Iterable[Formula]) -> "FormulaSet":
        return FormulaSet(self._members + tuple(other))

    def __or__(self, other: "FormulaSet") -> "FormulaSet":
        if not isinstance(other, FormulaSet):
            return NotImplemented
        return self.union(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormulaSet):
            return NotImplemented
        return frozenset(self._keys) == frozenset(other._keys)

    def __hash__(self) -> int:
        return hash(frozenset(self._keys))

    def __repr__(self) -> str:
        inner = ", ".join(render(f) for f in self._members)
        return f"FormulaSet([{inner}])"


EMPTY_SET = FormulaSet()
