"""Grammar search for winning prompts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    EXACTLY_ONE_EACH, LIAR, TRUTH_TELLER, Adversarial, AnswerSpace, LiarModel,
    RoleAssignment, SetTemplate, World,
)
from .dsl import (
    AskOther, CouldProvideSelf, Question, closure, contains_self_reference,
    enumerate_grammar,
)
from .semantics import Agent, EvalContext, solve_self_reference
from .verifier import Invalid, NotWinning, Winning, verify


@dataclass
class SynthesisReport:
    candidates_examined: int = 0
    winning: list[tuple[Question, str]] = field(default_factory=list)
    failing: list[tuple[Question, str]] = field(default_factory=list)
    diagnostic: list[tuple[Question, str]] = field(default_factory=list)

    def winning_prompts(self) -> list[Question]:
        return [q for q, _ in self.winning]

    def failing_prompts(self) -> list[Question]:
        return [q for q, _ in self.failing]

    def __str__(self) -> str:
        lines = [f"{self.candidates_examined} candidates examined"]
        lines.append(f"winning ({len(self.winning)}):")
        lines += [f"  {q}  decoder: {d}" for q, d in self.winning]
        lines.append(f"failing ({len(self.failing)}):")
        lines += [f"  {q}  [{k}]" for q, k in self.failing]
        if self.diagnostic:
            lines.append(f"self-referential, diagnostic only ({len(self.diagnostic)}):")
            lines += [f"  {q}  {note}" for q, note in self.diagnostic]
        return "\n".join(lines)


def self_reference_note(space: AnswerSpace, liar_model: LiarModel, q: Question) -> str:
    if not isinstance(q, CouldProvideSelf):
        return "contains could(self) below the root; no set semantics"
    if isinstance(liar_model, Adversarial):
        return "adversarial liar: no answer can differ from itself"
    roles = RoleAssignment((TRUTH_TELLER, LIAR))
    world = World(space.values[0])
    truth = solve_self_reference(EvalContext(space, world, roles, liar_model, Agent(0, TRUTH_TELLER)))
    liar = solve_self_reference(EvalContext(space, world, roles, liar_model, Agent(1, LIAR)))
    return f"truth-teller: {truth}; liar: {liar}"


def synthesize(space: AnswerSpace, liar_model: LiarModel, max_depth: int,
               templates: Sequence[SetTemplate] = (), *, roles_mode: str = EXACTLY_ONE_EACH,
               guard_count: int = 2, asked_guard: int = 0) -> SynthesisReport:
    """Verify every grammar candidate up to ``max_depth``; self-referential
    candidates are diagnosed rather than verified."""
    space.validate_scenario()
    report = SynthesisReport()
    for q in enumerate_grammar(max_depth, templates):
        report.candidates_examined += 1
        if contains_self_reference(q):
            report.diagnostic.append((q, self_reference_note(space, liar_model, q)))
            continue
        if guard_count != 2 and any(isinstance(s, AskOther) for s in closure(q)):
            report.failing.append((q, "arity"))
            continue
        verdict = verify(space, liar_model, q, roles_mode=roles_mode,
                         guard_count=guard_count, asked_guard=asked_guard)
        if isinstance(verdict, Winning):
            report.winning.append((q, verdict.decoder.describe()))
        elif isinstance(verdict, NotWinning):
            report.failing.append((q, verdict.counterexample.kind))
        else:
            report.failing.append((q, verdict.kind))
    return report
