"""Decide whether a prompt always lets the asker recover the hidden weight."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Union

from .adversary import StrategySearch, liar_seats
from .core import (
    EXACTLY_ONE_EACH, Adversarial, AnswerSpace, LiarModel, RoleAssignment, World,
    enumerate_assignments,
)
from .dsl import AskOther, Question, Restricted, closure, contains_self_reference
from .errors import (
    ArityError, SelfReferenceUnsupported, StuckError, UnknownAnswer, ValidationError,
)
from .semantics import EvalContext, WorldDomain, response_support, world_domain

FORCED_MEMBERSHIP = "answers are forced into the restricted two-element set"


@dataclass(frozen=True)
class Outcome:
    """One possible answer of the asked guard."""

    world: int
    assignment: RoleAssignment
    strategy: Optional[int]  # index of the joint adversarial strategy, if any
    choice: int  # index of the answer within the sorted support
    answer: int
    detail: Optional[tuple] = field(default=None, compare=False)

    def behavior(self) -> str:
        parts = []
        if self.strategy is not None:
            parts.append(f"strategy #{self.strategy}")
        parts.append(f"choice #{self.choice}")
        return ", ".join(parts)

    def __str__(self) -> str:
        s = f"w={self.world}, roles={self.assignment}, {self.behavior()} -> answer {self.answer}"
        if self.detail:
            s += " [" + "; ".join(str(x) for x in self.detail) + "]"
        return s


@dataclass(frozen=True)
class Collision:
    answer: int
    world1: int
    world2: int
    witness1: Outcome
    witness2: Outcome

    kind = "collision"

    def __str__(self) -> str:
        return (f"COLLISION on answer {self.answer}: worlds w={self.world1} and w={self.world2}\n"
                f"  {self.witness1}\n  {self.witness2}")


@dataclass(frozen=True)
class Stuck:
    world: int
    assignment: RoleAssignment
    behavior: Optional[int]
    question: Optional[Question]
    reason: str

    kind = "stuck"

    def __str__(self) -> str:
        where = f" at {self.question}" if self.question is not None else ""
        return f"STUCK in w={self.world}, roles={self.assignment}{where}: {self.reason}"


Counterexample = Union[Collision, Stuck]


class Decoder(Mapping):
    """Answer -> world map certified by a winning verdict."""

    def __init__(self, table: Mapping[int, int]):
        self._table = dict(sorted(table.items()))

    def __getitem__(self, answer: int) -> int:
        return self._table[answer]

    def __iter__(self):
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def __eq__(self, other):
        if isinstance(other, Decoder):
            return self._table == other._table
        if isinstance(other, Mapping):
            return self._table == dict(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"Decoder({self._table})"

    def closed_form(self) -> Optional[str]:
        """``identity``, ``answer - c``, ``answer + c`` or ``c - answer`` when
        the table fits one of those shapes."""
        if not self._table:
            return None
        items = list(self._table.items())
        shifts = {w - a for a, w in items}
        if len(shifts) == 1:
            c = shifts.pop()
            if c == 0:
                return "identity"
            return f"answer - {-c}" if c < 0 else f"answer + {c}"
        sums = {w + a for a, w in items}
        if len(sums) == 1:
            return f"{sums.pop()} - answer"
        return None

    def describe(self) -> str:
        form = self.closed_form()
        if form is not None:
            return form
        return "{" + ", ".join(f"{a}->{w}" for a, w in self._table.items()) + "}"


def decode(decoder: Decoder, answer: int) -> World:
    try:
        return World(decoder[answer])
    except KeyError:
        raise UnknownAnswer(f"answer {answer} is never realizable under this prompt") from None


@dataclass(frozen=True)
class Winning:
    decoder: Decoder
    outcome_count: int
    excluded: tuple[tuple[int, str], ...] = ()
    assumptions: tuple[str, ...] = ()

    kind = "winning"

    @property
    def worlds(self) -> list[int]:
        return sorted(set(self.decoder.values()))

    def __str__(self) -> str:
        return f"WINNING, decoder: {self.decoder.describe()}, {self.outcome_count} outcomes"


@dataclass(frozen=True)
class NotWinning:
    counterexample: Counterexample
    excluded: tuple[tuple[int, str], ...] = ()
    assumptions: tuple[str, ...] = ()

    kind = "not-winning"

    def __str__(self) -> str:
        return f"NOT WINNING\n{self.counterexample}"


@dataclass(frozen=True)
class Invalid:
    reason: str
    excluded: tuple[tuple[int, str], ...] = ()
    assumptions: tuple[str, ...] = ()

    kind = "invalid"

    def __str__(self) -> str:
        return f"INVALID: {self.reason}"


Verdict = Union[Winning, NotWinning, Invalid]


@dataclass(frozen=True)
class StuckEvent:
    world: int
    assignment: RoleAssignment
    behavior: Optional[int]
    question: Optional[Question]
    reason: str


def check_scenario(space: AnswerSpace, prompt: Question, guard_count: int,
                   roles_mode: str, asked_guard: int) -> list[RoleAssignment]:
    space.validate_scenario()
    if contains_self_reference(prompt):
        raise SelfReferenceUnsupported(
            f"{prompt} is self-referential; run the fixpoint diagnosis instead")
    assignments = enumerate_assignments(guard_count, roles_mode)
    if not 0 <= asked_guard < guard_count:
        raise ValidationError(f"asked guard {asked_guard} out of range for {guard_count} guards")
    if guard_count != 2 and any(isinstance(q, AskOther) for q in closure(prompt)):
        raise ArityError(f"'other' needs exactly 2 guards, have {guard_count}")
    return assignments


def iter_outcomes(space: AnswerSpace, liar_model: LiarModel, prompt: Question,
                  worlds, assignments, asked_guard: int) -> Iterator[Union[Outcome, StuckEvent]]:
    """Outcomes in deterministic order: worlds ascending, then assignments,
    then behaviors."""
    adversarial = isinstance(liar_model, Adversarial)
    for world in worlds:
        w = world.true_weight
        for roles in assignments:
            if not adversarial:
                ctx = EvalContext(space, world, roles, liar_model, asked_guard)
                try:
                    support = response_support(ctx, prompt)
                except StuckError as e:
                    yield StuckEvent(w, roles, None, e.question, str(e))
                    continue
                for i, a in enumerate(sorted(support)):
                    yield Outcome(w, roles, None, i, a)
                continue

            seats = liar_seats(roles, prompt, asked_guard)
            search = StrategySearch(space, world, roles, prompt, seats)
            found = False
            for j, joint in enumerate(search):
                found = True
                ctx = EvalContext(space, world, roles, liar_model, asked_guard, strategy_env=joint)
                try:
                    support = response_support(ctx, prompt)
                except StuckError as e:
                    yield StuckEvent(w, roles, j, e.question, str(e))
                    continue
                detail = tuple(joint[s] for s in seats)
                for i, a in enumerate(sorted(support)):
                    yield Outcome(w, roles, j, i, a, detail)
            if not found:
                seat, q = search.dead_end or (None, None)
                yield StuckEvent(w, roles, None, q,
                                 f"liar in guard {seat} has no permissible false answer")


def verify(space: AnswerSpace, liar_model: LiarModel, prompt: Question, *,
           roles_mode: str = EXACTLY_ONE_EACH, guard_count: int = 2,
           asked_guard: int = 0) -> Verdict:
    """Winning iff every realizable answer pins down a single world and no
    (world, roles, behavior) combination leaves a guard without an answer."""
    assignments = check_scenario(space, prompt, guard_count, roles_mode, asked_guard)
    domain = world_domain(space, liar_model, prompt, guard_count=guard_count, roles_mode=roles_mode)
    assumptions = (FORCED_MEMBERSHIP,) if any(isinstance(q, Restricted) for q in closure(prompt)) else ()
    if not domain.worlds:
        reasons = sorted({r for _, r in domain.excluded})
        return Invalid("no valid worlds" + (f" ({reasons[0]})" if reasons else ""),
                       domain.excluded, assumptions)

    first: dict[int, Outcome] = {}
    count = 0
    for item in iter_outcomes(space, liar_model, prompt, domain.worlds, assignments, asked_guard):
        if isinstance(item, StuckEvent):
            cx = Stuck(item.world, item.assignment, item.behavior, item.question, item.reason)
            return NotWinning(cx, domain.excluded, assumptions)
        count += 1
        prev = first.get(item.answer)
        if prev is None:
            first[item.answer] = item
        elif prev.world != item.world:
            cx = Collision(item.answer, prev.world, item.world, prev, item)
            return NotWinning(cx, domain.excluded, assumptions)
    decoder = Decoder({a: o.world for a, o in first.items()})
    return Winning(decoder, count, domain.excluded, assumptions)


def all_outcomes(space: AnswerSpace, liar_model: LiarModel, prompt: Question, *,
                 roles_mode: str = EXACTLY_ONE_EACH, guard_count: int = 2,
                 asked_guard: int = 0) -> list[Union[Outcome, StuckEvent]]:
    assignments = check_scenario(space, prompt, guard_count, roles_mode, asked_guard)
    domain = world_domain(space, liar_model, prompt, guard_count=guard_count, roles_mode=roles_mode)
    return list(iter_outcomes(space, liar_model, prompt, domain.worlds, assignments, asked_guard))


def replay(outcome: Outcome, space: AnswerSpace, liar_model: LiarModel, prompt: Question,
           asked_guard: int = 0) -> int:
    """Recompute the answer an Outcome records, from scratch."""
    world = World(outcome.world)
    env = None
    if outcome.strategy is not None:
        seats = liar_seats(outcome.assignment, prompt, asked_guard)
        search = StrategySearch(space, world, outcome.assignment, prompt, seats)
        for j, joint in enumerate(search):
            if j == outcome.strategy:
                env = joint
                break
        else:
            raise ValueError(f"strategy #{outcome.strategy} does not exist")
    ctx = EvalContext(space, world, outcome.assignment, liar_model, asked_guard, strategy_env=env)
    return sorted(response_support(ctx, prompt))[outcome.choice]
