"""Deterministic strategies for adversarial liars.

A strategy fixes one answer per subquestion of the prompt. Each answer must be
false: outside the truthful set that the same liar would compute for that
subquestion, given the answers already fixed for the inner subquestions.
Randomized liars need no separate treatment because their possible outputs are
the union over these deterministic strategies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .core import LIAR, Adversarial, AnswerSpace, RoleAssignment, World, weight_of
from .dsl import AskOther, OppositeAvoids, Question, closure, LEAVES
from .errors import StuckError, ValidationError
from .semantics import (
    Agent, EvalContext, _enter, enclosing_restrictions, opposite_agent,
    other_agent, truthful_set,
)


@dataclass(frozen=True)
class Strategy(Mapping):
    """Answer chosen by the liar in ``seat`` for each question of a closure."""

    seat: int
    assignment: tuple[tuple[Question, int], ...]

    def __getitem__(self, q: Question) -> int:
        for k, v in self.assignment:
            if k == q:
                return v
        raise KeyError(q)

    def __iter__(self):
        return (k for k, _ in self.assignment)

    def __len__(self) -> int:
        return len(self.assignment)

    def __str__(self) -> str:
        body = ", ".join(f"{q} -> {v}" for q, v in self.assignment)
        return f"guard {self.seat}: {{{body}}}"


JointStrategy = dict  # seat -> Strategy


def liar_seats(roles: RoleAssignment, prompt: Question, asked: int) -> list[int]:
    """Seats whose adversarial strategy can influence the asked guard's answer.

    A liar reached at any level needs a strategy over the whole closure, and
    checking that strategy may in turn reach further agents.
    """
    chain = list(reversed(closure(prompt)))  # outermost first
    start = (Agent(asked, roles[asked]), 0)
    seen = {start}
    todo = [start]
    while todo:
        agent, i = todo.pop()
        nxt = []
        if agent.role is LIAR:
            nxt.extend((agent, j) for j in range(len(chain)))
        node = chain[i]
        if not isinstance(node, LEAVES):
            if isinstance(node, AskOther):
                ref = other_agent(roles, agent)
            elif isinstance(node, OppositeAvoids):
                ref = opposite_agent(roles, agent)
            else:
                ref = agent
            nxt.append((ref, i + 1))
        for item in nxt:
            if item not in seen:
                seen.add(item)
                todo.append(item)
    return sorted({a.seat for a, _ in seen if a.role is LIAR})


class StrategySearch:
    """Depth-first search over joint strategies, innermost question first.

    ``dead_end`` records the first (seat, question) with no admissible lie,
    which is what a stuck-liar counterexample reports.
    """

    def __init__(self, space: AnswerSpace, world, roles: RoleAssignment,
                 prompt: Question, seats: Sequence[int], rng: Optional[random.Random] = None):
        self.space = space
        self.world = World(weight_of(world))
        self.roles = roles
        self.prompt = prompt
        self.seats = list(seats)
        self.rng = rng
        self.dead_end: Optional[tuple[int, Question]] = None
        self._chain = closure(prompt)
        self._enclosing = enclosing_restrictions(prompt, self.world.true_weight, space)
        self._slots = [(q, s) for q in self._chain for s in self.seats]

    def candidates(self, q: Question, seat: int, env: dict) -> list[int]:
        ctx = EvalContext(self.space, self.world, self.roles, Adversarial(),
                          Agent(seat, LIAR), self._enclosing[q], env)
        try:
            truth = truthful_set(ctx, q)
        except StuckError:
            return []
        values = sorted(_enter(ctx, q).permissible - truth)
        if self.rng is not None:
            self.rng.shuffle(values)
        return values

    def __iter__(self) -> Iterator[JointStrategy]:
        env: dict[int, dict[Question, int]] = {s: {} for s in self.seats}

        def go(k: int):
            if k == len(self._slots):
                yield {s: Strategy(s, tuple(env[s].items())) for s in self.seats}
                return
            q, seat = self._slots[k]
            values = self.candidates(q, seat, env)
            if not values and self.dead_end is None:
                self.dead_end = (seat, q)
            for v in values:
                env[seat][q] = v
                yield from go(k + 1)
                del env[seat][q]

        yield from go(0)


def enumerate_joint_strategies(space, world, roles, prompt, seats, rng=None) -> list[JointStrategy]:
    return list(StrategySearch(space, world, roles, prompt, seats, rng))


def enumerate_strategies(space: AnswerSpace, world, roles: RoleAssignment,
                         prompt: Question, liar_index: int) -> list[Strategy]:
    """All falsity-consistent strategies of the liar in ``liar_index``.

    An empty list means the liar is stuck: at some subquestion no false
    permissible answer exists. Raises StrategyRequired if the liar's truthful
    sets depend on another adversarial liar; use enumerate_joint_strategies.
    """
    if roles[liar_index] is not LIAR:
        raise ValidationError(f"guard {liar_index} is not a liar in {roles}")
    return [j[liar_index] for j in StrategySearch(space, world, roles, prompt, [liar_index])]


def sample_joint_strategy(rng: random.Random, space, world, roles, prompt, seats) -> Optional[JointStrategy]:
    """A random consistent joint strategy, or None if the liars are stuck."""
    return next(iter(StrategySearch(space, world, roles, prompt, seats, rng)), None)


def is_consistent(space, world, roles, prompt, joint: Mapping[int, Strategy]) -> bool:
    """Independent re-check of totality and falsity for a joint strategy."""
    world = World(weight_of(world))
    enclosing = enclosing_restrictions(prompt, world.true_weight, space)
    for seat, strat in joint.items():
        for q in closure(prompt):
            if q not in strat:
                return False
            ctx = EvalContext(space, world, roles, Adversarial(), Agent(seat, LIAR),
                              enclosing[q], joint)
            p = _enter(ctx, q).permissible
            if strat[q] not in p or strat[q] in truthful_set(ctx, q):
                return False
    return True
