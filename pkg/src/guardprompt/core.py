"""Answer spaces, worlds, guard roles, liar models and answer-set templates."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import InvalidWorld, ModeError, RangeError, ValidationError

AnswerSet = frozenset  # frozenset[int]

EXACTLY_ONE_EACH = "exactly-one-each"
ANY = "any"
ROLE_MODES = (EXACTLY_ONE_EACH, ANY)


@dataclass(frozen=True)
class AnswerSpace:
    """The finite set of answers a guard is allowed to give."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        if not vals:
            raise RangeError("answer space must be nonempty")
        if any(not isinstance(v, int) or isinstance(v, bool) for v in vals):
            raise RangeError("answer space values must be integers")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise RangeError("answer space values must be strictly increasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Iterable[int]) -> "AnswerSpace":
        return cls(tuple(sorted(set(values))))

    def __contains__(self, x) -> bool:
        return x in self.as_set

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def as_set(self) -> AnswerSet:
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.values)
            object.__setattr__(self, "_set", s)
        return s

    @property
    def is_interval(self) -> bool:
        return self.values[-1] - self.values[0] + 1 == len(self.values)

    def __str__(self) -> str:
        if self.is_interval and len(self.values) > 2:
            return f"{self.values[0]}..{self.values[-1]}"
        return "{" + ",".join(map(str, self.values)) + "}"

    def validate_scenario(self) -> None:
        if len(self.values) < 2:
            raise ValidationError(
                f"answer space {self} has fewer than 2 values; the puzzle is degenerate")


def make_space(lo: int, hi: int) -> AnswerSpace:
    """The integer interval ``lo..hi`` (inclusive)."""
    if lo > hi:
        raise RangeError(f"empty range {lo}..{hi}")
    return AnswerSpace(tuple(range(lo, hi + 1)))


@dataclass(frozen=True)
class World:
    true_weight: int

    def __post_init__(self):
        if not isinstance(self.true_weight, int):
            raise TypeError("true_weight must be an int")

    def __str__(self) -> str:
        return f"w={self.true_weight}"


def weight_of(w: Union[World, int]) -> int:
    return w.true_weight if isinstance(w, World) else w


def make_world(w: int, space: AnswerSpace) -> World:
    if w not in space:
        raise ValidationError(f"w={w} is not in the answer space {space}")
    return World(w)


class Role(enum.Enum):
    TRUTH_TELLER = "T"
    LIAR = "L"

    @property
    def opposite(self) -> "Role":
        return Role.LIAR if self is Role.TRUTH_TELLER else Role.TRUTH_TELLER

    def __str__(self) -> str:
        return "truth-teller" if self is Role.TRUTH_TELLER else "liar"


TRUTH_TELLER = Role.TRUTH_TELLER
LIAR = Role.LIAR


@dataclass(frozen=True)
class RoleAssignment:
    roles: tuple[Role, ...]

    def __post_init__(self):
        roles = tuple(self.roles)
        if not roles:
            raise ModeError("a role assignment needs at least one guard")
        object.__setattr__(self, "roles", roles)

    @classmethod
    def parse(cls, text: str) -> "RoleAssignment":
        """``"TL"`` -> truth-teller at guard 0, liar at guard 1."""
        return cls(tuple(Role(c) for c in text.strip().upper()))

    def __getitem__(self, i: int) -> Role:
        return self.roles[i]

    def __len__(self) -> int:
        return len(self.roles)

    def __iter__(self) -> Iterator[Role]:
        return iter(self.roles)

    def __str__(self) -> str:
        return "".join(r.value for r in self.roles)

    def liars(self) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r is Role.LIAR]


def enumerate_assignments(n: int, mode: str = EXACTLY_ONE_EACH) -> list[RoleAssignment]:
    """All role vectors for ``n`` guards under ``mode``.

    ``exactly-one-each`` is the classic two-guard setting and only exists for
    n = 2; ``any`` gives every one of the 2**n vectors.
    """
    if mode == EXACTLY_ONE_EACH:
        if n != 2:
            raise ModeError(f"mode {mode} requires exactly 2 guards, got {n}")
        return [RoleAssignment((TRUTH_TELLER, LIAR)), RoleAssignment((LIAR, TRUTH_TELLER))]
    if mode == ANY:
        if n < 1:
            raise ModeError("need at least one guard")
        return [RoleAssignment(p) for p in itertools.product((TRUTH_TELLER, LIAR), repeat=n)]
    raise ModeError(f"unknown roles mode {mode!r}; expected one of {ROLE_MODES}")


# -- liar models -------------------------------------------------------------


@dataclass(frozen=True)
class FixedRule:
    """A deterministic liar who maps the true answer ``t`` to ``f(t)``.

    Either a constant ``offset`` (f(t) = t + offset) or an explicit ``table``
    of (t, f(t)) pairs. ``f`` is partial: values it does not cover are None.
    """

    offset: Optional[int] = None
    table: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if (self.offset is None) == (not self.table):
            if self.offset is None:
                raise ValidationError("fixed rule needs an offset or a table")
            raise ValidationError("fixed rule takes an offset or a table, not both")
        if self.offset is not None and self.offset == 0:
            raise ValidationError("fixed rule must change the answer")
        if self.table:
            table = tuple(sorted(dict(self.table).items()))
            if len(table) != len(self.table):
                raise ValidationError("fixed rule table has duplicate keys")
            for x, fx in table:
                if x == fx:
                    raise ValidationError(
                        f"fixed rule must change the answer (f({x}) = {fx})")
            object.__setattr__(self, "table", table)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "FixedRule":
        return cls(table=tuple(mapping.items()))

    def __call__(self, x: int) -> Optional[int]:
        if self.offset is not None:
            return x + self.offset
        return dict(self.table).get(x)

    def __str__(self) -> str:
        if self.offset is not None:
            return f"fixed({self.offset:+d})"
        return "fixed{" + ",".join(f"{a}->{b}" for a, b in self.table) + "}"


@dataclass(frozen=True)
class FullSupport:
    """A randomized liar whose possible answers are every permissible lie."""

    def __str__(self) -> str:
        return "full_support"


@dataclass(frozen=True)
class Adversarial:
    """A liar who may answer any false value, chosen adversarially per question."""

    def __str__(self) -> str:
        return "adversarial"


LiarModel = Union[FixedRule, FullSupport, Adversarial]


def parse_liar_model(text: str) -> LiarModel:
    t = text.strip()
    if t == "full_support":
        return FullSupport()
    if t == "adversarial":
        return Adversarial()
    if t.startswith("fixed(") and t.endswith(")"):
        body = t[len("fixed("):-1].strip()
        try:
            offset = int(body)
        except ValueError:
            raise ValidationError(f"bad fixed rule offset {body!r}") from None
        return FixedRule(offset=offset)
    raise ValidationError(
        f"unknown liar model {text!r}; expected full_support, fixed(<+/-int>) or adversarial")


# -- answer-set templates ------------------------------------------------------


@dataclass(frozen=True)
class OffsetPair:
    """``{w, w+delta}``"""

    delta: int

    def __post_init__(self):
        if self.delta == 0:
            raise ValidationError("offset pair needs a nonzero delta")

    def instantiate(self, w: int) -> tuple[int, int]:
        return (w, w + self.delta)

    def __str__(self) -> str:
        return f"{{w,w{self.delta:+d}}}"


@dataclass(frozen=True)
class ConstPair:
    """``{c, w}``"""

    c: int

    def instantiate(self, w: int) -> tuple[int, int]:
        return (self.c, w)

    def __str__(self) -> str:
        return f"{{{self.c},w}}"


SetTemplate = Union[OffsetPair, ConstPair]


def apply_template(t: SetTemplate, w: Union[World, int], s: AnswerSpace) -> AnswerSet:
    """Instantiate ``t`` at world ``w``; raise InvalidWorld if the result is not
    two distinct members of ``s``."""
    w = weight_of(w)
    if w not in s:
        raise InvalidWorld(f"w={w} is not in the answer space")
    elems = t.instantiate(w)
    outside = [x for x in elems if x not in s]
    if outside:
        raise InvalidWorld(f"{t} at w={w} leaves the answer space ({outside[0]} not in S)")
    result = frozenset(elems)
    if len(result) != 2:
        raise InvalidWorld(f"{t} at w={w} collapses to {{{w}}}")
    return result


def fmt_set(values: Iterable[int], space: Optional[AnswerSpace] = None) -> str:
    """Compact rendering; sets missing only a few elements of ``space`` are
    shown as a complement."""
    vals = sorted(values)
    if space is not None and len(space) > 6:
        if len(vals) == len(space):
            return "S"
        missing = sorted(space.as_set - set(vals))
        if len(vals) > len(space) // 2 and len(missing) <= 3:
            return "S\\{" + ",".join(map(str, missing)) + "}"
    if not vals:
        return "∅"
    return "{" + ",".join(map(str, vals)) + "}"
