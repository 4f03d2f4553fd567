"""Truthful-answer sets and response supports.

A question is always evaluated from the point of view of one agent (the
respondent). An agent is a seat at the table plus a role; when a question asks
about "a guard of the opposite type" and no real guard fits, a hypothetical
agent of the flipped role takes the respondent's seat.

Under a restricted question every agent, including the respondent giving the
outer reply, must answer inside the two-element set the template produces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Optional, Union

from .core import (
    EXACTLY_ONE_EACH, LIAR, TRUTH_TELLER, Adversarial, AnswerSet, AnswerSpace,
    FixedRule, FullSupport, LiarModel, Role, RoleAssignment, World,
    apply_template, enumerate_assignments, fmt_set, weight_of,
)
from .dsl import (
    AskOther, CouldProvide, CouldProvideSelf, Direct, OppositeAvoids, Question,
    Restricted, WouldSayYou, closure,
)
from .errors import (
    ArityError, FixedRuleUndefined, InvalidRestriction, InvalidWorld,
    SelfReferenceUnsupported, StrategyRequired, StuckError, StuckLiar,
    StuckRespondent, ValidationError,
)


@dataclass(frozen=True)
class Agent:
    seat: int
    role: Role

    def __str__(self) -> str:
        return f"guard {self.seat} ({self.role})"


def other_agent(roles: RoleAssignment, agent: Agent) -> Agent:
    if len(roles) != 2:
        raise ArityError(f"'other' needs exactly 2 guards, have {len(roles)}")
    seat = 1 - agent.seat
    return Agent(seat, roles[seat])


def opposite_agent(roles: RoleAssignment, agent: Agent) -> Agent:
    """The real other guard if it has the opposite role, else a hypothetical
    guard of the opposite role in the respondent's seat."""
    flipped = agent.role.opposite
    if len(roles) == 2 and roles[1 - agent.seat] is flipped:
        return Agent(1 - agent.seat, flipped)
    return Agent(agent.seat, flipped)


@dataclass(frozen=True)
class EvalContext:
    space: AnswerSpace
    world: World
    roles: RoleAssignment
    liar_model: LiarModel
    respondent: Union[Agent, int] = 0
    restriction: Optional[AnswerSet] = None
    # seat -> {question -> answer} for adversarial liars
    strategy_env: Optional[Mapping[int, Mapping[Question, int]]] = field(default=None, compare=False)

    def __post_init__(self):
        if isinstance(self.world, int):
            object.__setattr__(self, "world", World(self.world))
        if isinstance(self.roles, (tuple, list)):
            object.__setattr__(self, "roles", RoleAssignment(tuple(self.roles)))
        if isinstance(self.respondent, int):
            if not 0 <= self.respondent < len(self.roles):
                raise ValidationError(
                    f"respondent {self.respondent} out of range for {len(self.roles)} guards")
            object.__setattr__(self, "respondent", Agent(self.respondent, self.roles[self.respondent]))
        elif not 0 <= self.respondent.seat < len(self.roles):
            raise ValidationError(f"respondent seat {self.respondent.seat} out of range")
        if self.restriction is not None:
            r = frozenset(self.restriction)
            if not r or not r <= self.space.as_set:
                raise ValidationError("restriction must be a nonempty subset of the answer space")
            object.__setattr__(self, "restriction", r)

    @property
    def w(self) -> int:
        return self.world.true_weight

    @property
    def permissible(self) -> AnswerSet:
        return self.restriction if self.restriction is not None else self.space.as_set

    def as_agent(self, agent: Agent) -> "EvalContext":
        return replace(self, respondent=agent)


def _enter(ctx: EvalContext, q: Question) -> EvalContext:
    """Context in force while ``q`` itself is answered."""
    if isinstance(q, Restricted):
        try:
            a = apply_template(q.template, ctx.w, ctx.space)
        except InvalidWorld as e:
            raise InvalidRestriction(e.reason) from None
        if ctx.restriction == a:
            return ctx
        return replace(ctx, restriction=a)
    return ctx


def truthful_set(ctx: EvalContext, q: Question) -> AnswerSet:
    """Answers that would be true statements in reply to ``q``, from the
    respondent's point of view, within the active permissible set."""
    if isinstance(q, CouldProvideSelf):
        raise SelfReferenceUnsupported(
            "could(self) has no set semantics; use solve_self_reference")
    ctx = _enter(ctx, q)
    p = ctx.permissible
    if isinstance(q, Direct):
        result = frozenset((ctx.w,))
    elif isinstance(q, AskOther):
        result = response_support(ctx.as_agent(other_agent(ctx.roles, ctx.respondent)), q.inner)
    elif isinstance(q, (WouldSayYou, CouldProvide, Restricted)):
        result = response_support(ctx, q.inner)
    elif isinstance(q, OppositeAvoids):
        opp = opposite_agent(ctx.roles, ctx.respondent)
        result = p - response_support(ctx.as_agent(opp), q.inner)
    else:
        raise TypeError(f"not a question: {q!r}")
    return result & p


def response_support(ctx: EvalContext, q: Question) -> AnswerSet:
    """Every answer the respondent could give to ``q``."""
    ctx = _enter(ctx, q)
    agent = ctx.respondent
    p = ctx.permissible

    if agent.role is TRUTH_TELLER:
        support = truthful_set(ctx, q)
        if not support:
            raise StuckRespondent(f"{agent} has no true answer to {q}", q)
        return support

    model = ctx.liar_model
    if isinstance(model, Adversarial):
        env = ctx.strategy_env or {}
        try:
            return frozenset((env[agent.seat][q],))
        except KeyError:
            raise StrategyRequired(f"no adversarial strategy bound for {agent} on {q}") from None

    truth = truthful_set(ctx, q)
    if isinstance(model, FullSupport):
        support = p - truth
    elif isinstance(model, FixedRule):
        if len(truth) != 1:
            raise FixedRuleUndefined(
                f"fixed rule needs a single true answer to {q}, got {len(truth)}")
        (t,) = truth
        ft = model(t)
        if ft is not None and ft in p:
            support = frozenset((ft,))
        elif ctx.restriction is None:
            raise FixedRuleUndefined(f"{model} is undefined at {t}: {ft} is outside S")
        else:
            # forced answer set dominates the rule
            support = p - truth
    else:
        raise TypeError(f"unknown liar model {model!r}")
    if not support:
        raise StuckLiar(f"{agent} has no permissible false answer to {q}", q)
    return support


# -- domain of worlds ----------------------------------------------------------


@dataclass(frozen=True)
class WorldDomain:
    worlds: tuple[World, ...]
    excluded: tuple[tuple[int, str], ...]

    def excluded_weights(self) -> list[int]:
        return [w for w, _ in self.excluded]


def enclosing_restrictions(prompt: Question, w: int, space: AnswerSpace) -> dict:
    """For each subquestion, the restriction in force when it is asked (before
    any template of its own applies)."""
    out = {}
    current = None
    for node in reversed(closure(prompt)):
        out[node] = current
        if isinstance(node, Restricted):
            try:
                current = apply_template(node.template, w, space)
            except InvalidWorld as e:
                raise InvalidRestriction(e.reason) from None
    return out


def world_domain(space: AnswerSpace, model: LiarModel, prompt: Question, *,
                 guard_count: int = 2, roles_mode: str = EXACTLY_ONE_EACH) -> WorldDomain:
    """Split S into worlds where the prompt is well defined and excluded
    worlds (with the reason)."""
    assignments = enumerate_assignments(guard_count, roles_mode)
    valid, excluded = [], []
    for w in space:
        try:
            enclosing_restrictions(prompt, w, space)
        except InvalidRestriction as e:
            excluded.append((w, e.reason))
            continue
        reason = None
        if isinstance(model, FixedRule):
            reason = _fixed_rule_gap(space, model, prompt, w, assignments)
        if reason is None:
            valid.append(World(w))
        else:
            excluded.append((w, reason))
    return WorldDomain(tuple(valid), tuple(excluded))


def _fixed_rule_gap(space, model, prompt, w, assignments) -> Optional[str]:
    for roles in assignments:
        for seat in range(len(roles)):
            ctx = EvalContext(space, World(w), roles, model, seat)
            try:
                response_support(ctx, prompt)
            except FixedRuleUndefined as e:
                return str(e)
            except StuckError:
                pass
    return None


def valid_worlds(space: AnswerSpace, model: LiarModel, prompt: Question, **kw) -> list[World]:
    return list(world_domain(space, model, prompt, **kw).worlds)


# -- self-reference ------------------------------------------------------------


@dataclass(frozen=True)
class Unique:
    set: AnswerSet

    def __str__(self) -> str:
        return f"UNIQUE FIXPOINT: {fmt_set(self.set)}"


@dataclass(frozen=True)
class Underdetermined:
    description: str
    examples: tuple[AnswerSet, ...] = ()

    def __str__(self) -> str:
        return f"UNDERDETERMINED: {self.description}"


@dataclass(frozen=True)
class NoFixpoint:
    witness: tuple[AnswerSet, AnswerSet]
    label: str = ""

    def __str__(self) -> str:
        if self.label:
            return f"NO FIXPOINT: {self.label}"
        a, b = self.witness
        return f"NO FIXPOINT: oscillates between {fmt_set(a)} and {fmt_set(b)}"


FixpointReport = Union[Unique, Underdetermined, NoFixpoint]


def _orbit(f: Callable[[AnswerSet], AnswerSet], start: AnswerSet) -> list[AnswerSet]:
    """Iterate ``f`` from ``start`` until a set repeats; the last element's
    image is already in the list."""
    seen = [start]
    while True:
        nxt = f(seen[-1])
        if nxt in seen:
            return seen
        seen.append(nxt)


def classify_fixpoints(f: Callable[[AnswerSet], AnswerSet], universe: AnswerSet, *,
                       exhaustive_limit: int = 12) -> FixpointReport:
    """Classify the solutions of R = f(R) over subsets of ``universe``.

    Iterates from the full set and from the empty set. For small universes
    every subset is checked; for large ones the orbit endpoints decide.
    """
    universe = frozenset(universe)
    ends = []
    cycle = None
    for start in (universe, frozenset()):
        orbit = _orbit(f, start)
        last = orbit[-1]
        if f(last) == last:
            ends.append(last)
        elif cycle is None:
            head = f(last)
            cycle = (head, f(head))

    if len(universe) <= exhaustive_limit:
        elems = sorted(universe)
        fixed = [frozenset(c) for r in range(len(elems) + 1)
                 for c in itertools.combinations(elems, r) if f(frozenset(c)) == frozenset(c)]
        if not fixed:
            return NoFixpoint(cycle)
        if len(fixed) == 1:
            return Unique(fixed[0])
        return Underdetermined(f"{len(fixed)} fixpoints", tuple(fixed[:2]))

    if cycle is not None and not ends:
        return NoFixpoint(cycle)
    if len(set(ends)) == 1 and cycle is None:
        return Unique(ends[0])
    return Underdetermined("iteration from S and from ∅ reaches different fixpoints",
                           tuple(dict.fromkeys(ends)))


def solve_self_reference(ctx: EvalContext) -> FixpointReport:
    """Diagnose could(self): find R with R = F(R), where F is the identity for
    a truth-teller and complement within P for a liar."""
    if isinstance(ctx.liar_model, Adversarial):
        raise ValueError("adversarial self-reference is handled by strategy enumeration")
    p = ctx.permissible
    if ctx.respondent.role is TRUTH_TELLER:
        report = classify_fixpoints(lambda r: r, p)
        if isinstance(report, Underdetermined):
            n = len(p)
            return Underdetermined(
                f"every subset of P is a fixpoint of the identity ({_pow2(n)} candidates)",
                report.examples)
        return report
    report = classify_fixpoints(lambda r: p - r, p)
    if isinstance(report, NoFixpoint) and report.witness == (p, frozenset()):
        if ctx.restriction is None:
            return NoFixpoint(report.witness, "oscillates between S and ∅")
        return NoFixpoint(report.witness, f"oscillates between {fmt_set(p)} and ∅")
    return report


def _pow2(n: int) -> str:
    return f"2^{n}" if n > 20 else str(2 ** n)
