"""Line-oriented text format for belief bases.

Layout (UTF-8, ``#`` starts a comment, blank lines ignored)::

    ATOMS: wins_1 wins_2 wins_3
    WORLDS:
    w1: wins_1=1 wins_2=0 wins_3=0 weight 1/3
    w2: wins_1=0 wins_2=1 wins_3=0 weight 1/3
    w3: wins_1=0 wins_2=0 wins_3=1 weight 1/3
    BACKGROUND:
    # one formula per line
    (wins_1 | wins_2 | wins_3) & ~(wins_1 & wins_2) & ...
    CANDIDATES:
    L1: ~wins_1

Rationals are written ``p/q`` or as bare integers; floating point is
rejected everywhere.  ``dumps`` followed by ``loads`` reproduces an equal
belief base.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .formulas import FormulaSyntaxError, parse, render
from .worlds import BeliefBase, WorldModel

__all__ = [
    "BeliefBaseFormatError",
    "parse_rational",
    "loads",
    "dumps",
    "load",
    "dump",
]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:\s*/\s*\d+)?")
_WORLD_RE = re.compile(r"(?P<label>\S+)\s*:\s*(?P<body>.*)")
_ASSIGN_RE = re.compile(r"(?P<atom>[A-Za-z_][A-Za-z0-9_]*)=(?P<value>[01])")

_SECTIONS = ("ATOMS:", "WORLDS:", "BACKGROUND:", "CANDIDATES:")


class BeliefBaseFormatError(ValueError):
    """Malformed belief-base text; message carries the line number."""


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; anything else (floats included) fails."""
    if not _RATIONAL_RE.fullmatch(text.strip()):
        raise ValueError(f"expected a rational p/q or integer, got {text!r}")
    return Fraction(text.replace(" ", ""))


def _fail(lineno: int, message: str) -> BeliefBaseFormatError:
    return BeliefBaseFormatError(f"line {lineno}: {message}")


def loads(text: str) -> BeliefBase:
    atoms: list[str] = []
    worlds: list[tuple[tuple[bool, ...], Fraction]] = []
    background: list = []
    candidates: list[tuple[str, object]] = []
    seen_labels: set[str] = set()
    section: str | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        upper = line.split()[0].upper()
        if upper in _SECTIONS:
            section = upper[:-1]
            rest = line[len(upper):].strip()
            if rest:
                if section != "ATOMS":
                    raise _fail(lineno, f"unexpected text after {upper}")
                atoms.extend(rest.split())
            continue
        if section is None:
            raise _fail(lineno, "content before any section header")
        if section == "ATOMS":
            atoms.extend(line.split())
        elif section == "WORLDS":
            worlds.append(_parse_world(line, lineno, atoms))
        elif section == "BACKGROUND":
            background.append(_parse_formula(line, lineno))
        else:
            m = _WORLD_RE.fullmatch(line)
            if m is None:
                raise _fail(lineno, "expected '<label>: <formula>'")
            label = m.group("label")
            if label in seen_labels:
                raise _fail(lineno, f"duplicate candidate label {label!r}")
            seen_labels.add(label)
            candidates.append((label, _parse_formula(m.group("body"), lineno)))

    if not atoms:
        raise BeliefBaseFormatError("no ATOMS section")
    if not worlds:
        raise BeliefBaseFormatError("no WORLDS section")
    try:
        model = WorldModel(atoms, worlds)
        return BeliefBase(model, background, candidates)
    except ValueError as exc:
        raise BeliefBaseFormatError(str(exc)) from exc


def _parse_formula(text: str, lineno: int):
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise _fail(lineno, f"bad formula: {exc}") from exc


def _parse_world(line: str, lineno: int, atoms: list[str]):
    m = _WORLD_RE.fullmatch(line)
    if m is None:
        raise _fail(lineno, "expected '<label>: <atom>=<0|1> ... weight <p/q>'")
    body = m.group("body")
    parts = body.split()
    if "weight" not in parts:
        raise _fail(lineno, "world line is missing its weight")
    split_at = parts.index("weight")
    weight_tokens = parts[split_at + 1:]
    if len(weight_tokens) != 1:
        raise _fail(lineno, "expected exactly one weight value")
    try:
        weight = parse_rational(weight_tokens[0])
    except ValueError as exc:
        raise _fail(lineno, str(exc)) from exc
    assignment: dict[str, bool] = {}
    for token in parts[:split_at]:
        am = _ASSIGN_RE.fullmatch(token)
        if am is None:
            raise _fail(lineno, f"bad assignment token {token!r}")
        name = am.group("atom")
        if name not in atoms:
            raise _fail(lineno, f"unknown atom {name!r}")
        if name in assignment:
            raise _fail(lineno, f"atom {name!r} assigned twice")
        assignment[name] = am.group("value") == "1"
    missing = [a for a in atoms if a not in assignment]
    if missing:
        raise _fail(lineno, f"world leaves atoms unassigned: {', '.join(missing)}")
    return tuple(assignment[a] for a in atoms), weight


def dumps(base: BeliefBase) -> str:
    lines = ["ATOMS: " + " ".join(base.model.atoms)]
    lines.append("WORLDS:")
    for i, (valuation, weight) in enumerate(base.model.worlds, start=1):
        assigns = " ".join(
            f"{name}={1 if value else 0}"
            for name, value in zip(base.model.atoms, valuation)
        )
        lines.append(f"w{i}: {assigns} weight {weight}")
    if base.background:
        lines.append("BACKGROUND:")
        for formula in base.background:
            lines.append(render(formula))
    if base.candidates:
        lines.append("CANDIDATES:")
        for label, formula in base.candidates:
            lines.append(f"{label}: {render(formula)}")
    return "\n".join(lines) + "\n"


def load(path) -> BeliefBase:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read())


def dump(base: BeliefBase, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps(base))
