"""Question AST, concrete syntax, and grammar enumeration.

Concrete grammar::

    question = "weight" | "could(self)"
             | "other(" question ")" | "you(" question ")"
             | "could(" question ")" | "avoid(opposite," question ")"
             | "restrict(" setspec "," question ")"
    setspec  = "{w,w" sign integer "}" | "{" integer ",w}"

Whitespace between tokens is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .core import ConstPair, OffsetPair, SetTemplate
from .errors import ParseError


@dataclass(frozen=True)
class Direct:
    """Ask for the weight."""

    def __str__(self) -> str:
        return "weight"


@dataclass(frozen=True)
class CouldProvideSelf:
    """"Give an answer you could give to this very question." """

    def __str__(self) -> str:
        return "could(self)"


@dataclass(frozen=True)
class AskOther:
    inner: "Question"

    def __str__(self) -> str:
        return f"other({self.inner})"


@dataclass(frozen=True)
class WouldSayYou:
    inner: "Question"

    def __str__(self) -> str:
        return f"you({self.inner})"


@dataclass(frozen=True)
class CouldProvide:
    inner: "Question"

    def __str__(self) -> str:
        return f"could({self.inner})"


@dataclass(frozen=True)
class Restricted:
    template: SetTemplate
    inner: "Question"

    def __str__(self) -> str:
        return f"restrict({self.template}, {self.inner})"


@dataclass(frozen=True)
class OppositeAvoids:
    inner: "Question"

    def __str__(self) -> str:
        return f"avoid(opposite, {self.inner})"


Question = Union[Direct, CouldProvideSelf, AskOther, WouldSayYou, CouldProvide,
                 Restricted, OppositeAvoids]

LEAVES = (Direct, CouldProvideSelf)
WRAPPERS = (AskOther, WouldSayYou, CouldProvide, OppositeAvoids)


def print_question(q: Question) -> str:
    return str(q)


def depth(q: Question) -> int:
    n = 1
    while not isinstance(q, LEAVES):
        q = q.inner
        n += 1
    return n


def size(q: Question) -> int:
    """Number of AST nodes. Every constructor has at most one child, so this
    equals the depth."""
    return depth(q)


def closure(q: Question) -> list[Question]:
    """All distinct subquestions of ``q``, innermost first, ending with ``q``."""
    chain = [q]
    while not isinstance(chain[-1], LEAVES):
        chain.append(chain[-1].inner)
    out: list[Question] = []
    for sub in reversed(chain):
        if sub not in out:
            out.append(sub)
    return out


def contains_self_reference(q: Question) -> bool:
    return any(isinstance(sub, CouldProvideSelf) for sub in closure(q))


def templates_of(q: Question) -> list[SetTemplate]:
    return [sub.template for sub in closure(q) if isinstance(sub, Restricted)]


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<word>[a-z]+)|(?P<int>\d+)|(?P<punct>[(){},+\-]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _fail(self, expected: str):
        self._skip_ws()
        raise ParseError(self.pos, expected, self.text)

    def peek(self) -> Optional[str]:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return None
        return m.group("word") or m.group("int") or m.group("punct")

    def take(self) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            self._fail("a token")
        self.pos = m.end()
        return m.group("word") or m.group("int") or m.group("punct")

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            self._fail(f'"{tok}"')
        self.take()

    def integer(self) -> int:
        tok = self.peek()
        if tok is None or not tok.isdigit():
            self._fail("an integer")
        return int(self.take())

    def question(self) -> Question:
        tok = self.peek()
        if tok == "weight":
            self.take()
            return Direct()
        if tok in ("other", "you"):
            self.take()
            self.expect("(")
            inner = self.question()
            self.expect(")")
            return AskOther(inner) if tok == "other" else WouldSayYou(inner)
        if tok == "could":
            self.take()
            self.expect("(")
            if self.peek() == "self":
                self.take()
                self.expect(")")
                return CouldProvideSelf()
            inner = self.question()
            self.expect(")")
            return CouldProvide(inner)
        if tok == "avoid":
            self.take()
            self.expect("(")
            self.expect("opposite")
            self.expect(",")
            inner = self.question()
            self.expect(")")
            return OppositeAvoids(inner)
        if tok == "restrict":
            self.take()
            self.expect("(")
            template = self.setspec()
            self.expect(",")
            inner = self.question()
            self.expect(")")
            return Restricted(template, inner)
        self._fail('a question ("weight", "could", "other", "you", "avoid" or "restrict")')

    def setspec(self) -> SetTemplate:
        self.expect("{")
        if self.peek() == "w":
            self.take()
            self.expect(",")
            self.expect("w")
            sign = self.peek()
            if sign not in ("+", "-"):
                self._fail('"+" or "-"')
            self.take()
            start = self.pos
            delta = self.integer()
            if delta == 0:
                raise ParseError(start, "a nonzero offset", self.text)
            self.expect("}")
            return OffsetPair(delta if sign == "+" else -delta)
        negative = False
        if self.peek() == "-":
            self.take()
            negative = True
        c = self.integer()
        self.expect(",")
        self.expect("w")
        self.expect("}")
        return ConstPair(-c if negative else c)


def parse(text: str) -> Question:
    """Parse DSL text into a Question. Raises ParseError with a character
    offset and a description of what was expected."""
    p = _Parser(text)
    q = p.question()
    p._skip_ws()
    if p.pos != len(text):
        raise ParseError(p.pos, "end of input", text)
    return q


def parse_setspec(text: str) -> SetTemplate:
    """Parse a bare template such as ``{w,w+10}`` or ``{0,w}``."""
    p = _Parser(text)
    t = p.setspec()
    p._skip_ws()
    if p.pos != len(text):
        raise ParseError(p.pos, "end of input", text)
    return t


# -- enumeration ---------------------------------------------------------------


def wrappers(templates: Sequence[SetTemplate] = ()):
    """One-argument constructors in canonical enumeration order."""
    out = list(WRAPPERS)
    for t in templates:
        out.append(lambda inner, t=t: Restricted(t, inner))
    return out


def enumerate_grammar(max_depth: int, templates: Iterable[SetTemplate] = ()) -> list[Question]:
    """Every distinct question of depth <= max_depth, shallowest first."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    templates = list(dict.fromkeys(templates))
    wraps = wrappers(templates)
    level: list[Question] = [Direct(), CouldProvideSelf()]
    out = list(level)
    for _ in range(max_depth - 1):
        level = [w(inner) for inner in level for w in wraps]
        out.extend(level)
    return out
