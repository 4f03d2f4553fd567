"""Scenario files, batch commands and the interactive play loop.

Scenario files are ``key=value`` lines; ``#`` starts a comment::

    space=0..100
    guards=2
    roles=exactly-one-each
    liar=full_support
    prompt="could(weight)"
    seed=7
    budget=1

Guard numbers on the command line and in the play loop start at 1.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .adversary import liar_seats, sample_joint_strategy, StrategySearch
from .core import (
    EXACTLY_ONE_EACH, LIAR, ROLE_MODES, TRUTH_TELLER, Adversarial, AnswerSpace,
    LiarModel, RoleAssignment, World, enumerate_assignments, fmt_set, make_space,
    parse_liar_model,
)
from .dsl import AskOther, Question, closure, parse, parse_setspec
from .errors import (
    BudgetExhausted, FieldError, FixedRuleUndefined, ParseError, PuzzleError,
    SelfReferenceUnsupported, StuckError, ValidationError,
)
from .semantics import (
    Agent, EvalContext, response_support, solve_self_reference, truthful_set, world_domain,
)
from .synth import synthesize
from .verifier import NotWinning, Winning, verify

KEYS = ("space", "guards", "roles", "liar", "prompt", "seed", "budget")


@dataclass(frozen=True)
class Scenario:
    space: AnswerSpace
    liar: LiarModel
    guard_count: int = 2
    roles_mode: str = EXACTLY_ONE_EACH
    prompt: Optional[Question] = None
    seed: Optional[int] = None
    budget: int = 1


def _parse_space(text: str) -> AnswerSpace:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if m:
        return make_space(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"\s*\{([-\d,\s]+)\}\s*", text)
    if m:
        return AnswerSpace.of(int(x) for x in m.group(1).split(",") if x.strip())
    raise ValueError("expected <lo>..<hi>")


def _unquote(text: str) -> str:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return text[1:-1]
    return text


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario text; every failure is a FieldError that
    names the offending line."""
    fields: dict[str, tuple[int, str]] = {}
    block_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if block_line is None:
            block_line = lineno
        if "=" not in line:
            raise FieldError(lineno, line, "expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise FieldError(lineno, key, f"unknown key (expected one of {', '.join(KEYS)})")
        if key in fields:
            raise FieldError(lineno, key, f"duplicate key (first set on line {fields[key][0]})")
        fields[key] = (lineno, value)
    block_line = block_line or 1

    def get(key):
        if key not in fields:
            raise FieldError(block_line, key, "required")
        return fields[key]

    def integer(key, lo):
        lineno, value = fields[key]
        try:
            n = int(value)
        except ValueError:
            raise FieldError(lineno, key, f"expected an integer, got {value!r}") from None
        if lo is not None and n < lo:
            raise FieldError(lineno, key, f"must be >= {lo}")
        return n

    lineno, value = get("space")
    try:
        space = _parse_space(value)
    except (ValueError, PuzzleError) as e:
        raise FieldError(lineno, "space", str(e)) from None
    if len(space) < 2:
        raise FieldError(lineno, "space", "needs at least 2 values")

    lineno, value = get("liar")
    try:
        liar = parse_liar_model(value)
    except ValidationError as e:
        raise FieldError(lineno, "liar", str(e)) from None

    guards = integer("guards", 1) if "guards" in fields else 2
    roles = EXACTLY_ONE_EACH
    if "roles" in fields:
        lineno, roles = fields["roles"]
        if roles not in ROLE_MODES:
            raise FieldError(lineno, "roles", f"expected one of {', '.join(ROLE_MODES)}")
    if roles == EXACTLY_ONE_EACH and guards != 2:
        line_of = fields.get("roles", fields.get("guards", (block_line,)))[0]
        raise FieldError(line_of, "roles", "exactly-one-each needs guards=2")

    prompt = None
    if "prompt" in fields:
        lineno, value = fields["prompt"]
        try:
            prompt = parse(_unquote(value))
        except ParseError as e:
            raise FieldError(lineno, "prompt", str(e)) from None
        if guards != 2 and any(isinstance(q, AskOther) for q in closure(prompt)):
            raise FieldError(lineno, "prompt", "'other' needs guards=2")

    seed = integer("seed", None) if "seed" in fields else None
    budget = integer("budget", 0) if "budget" in fields else 1
    return Scenario(space, liar, guards, roles, prompt, seed, budget)


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FileError(f"cannot read scenario {path}: {e.strerror or e}") from None
    return parse_scenario(text)


class FileError(PuzzleError):
    pass


# -- play loop -------------------------------------------------------------------


@dataclass(frozen=True)
class ReplSession:
    space: AnswerSpace
    liar: LiarModel
    world: int
    roles: RoleAssignment
    rng_state: tuple
    budget: int = 1
    transcript: tuple[tuple[int, str, Optional[int]], ...] = ()
    over: bool = False


def new_session(scenario: Scenario, seed: Optional[int] = None, *,
                world: Optional[int] = None, roles: Optional[RoleAssignment] = None) -> ReplSession:
    rng = random.Random(scenario.seed if seed is None else seed)
    if world is None:
        world = rng.choice(scenario.space.values)
    if roles is None:
        roles = rng.choice(enumerate_assignments(scenario.guard_count, scenario.roles_mode))
    return ReplSession(scenario.space, scenario.liar, world, roles, rng.getstate(), scenario.budget)


def _sample_answer(session: ReplSession, rng: random.Random, seat: int, q: Question) -> Optional[int]:
    env = None
    if isinstance(session.liar, Adversarial):
        seats = liar_seats(session.roles, q, seat)
        env = sample_joint_strategy(rng, session.space, session.world, session.roles, q, seats)
        if env is None:
            return None
    ctx = EvalContext(session.space, World(session.world), session.roles, session.liar, seat,
                      strategy_env=env)
    try:
        support = response_support(ctx, q)
    except (StuckError, FixedRuleUndefined):
        return None
    return rng.choice(sorted(support))


def repl_step(session: ReplSession, line: str) -> tuple[ReplSession, str]:
    """Apply one command; returns the new session and the reply text."""
    cmd, _, rest = line.strip().partition(" ")
    rest = rest.strip()
    if session.over:
        return session, "the game is over"
    n = len(session.roles)

    if cmd == "ask":
        if session.budget <= 0:
            raise BudgetExhausted("no questions left; only 'guess' is accepted")
        guard_text, _, qtext = rest.partition(" ")
        try:
            guard = int(guard_text)
        except ValueError:
            return session, f"usage: ask <guard 1..{n}> <question>"
        if not 1 <= guard <= n:
            return session, f"there is no guard {guard}; pick 1..{n}"
        q = parse(_unquote(qtext))
        if any(isinstance(s, AskOther) for s in closure(q)) and n != 2:
            return session, "'other' only makes sense with exactly 2 guards"
        rng = random.Random()
        rng.setstate(session.rng_state)
        try:
            answer = _sample_answer(session, rng, guard - 1, q)
        except SelfReferenceUnsupported:
            return session, "no guard can answer could(self) consistently; ask something else"
        session = replace(session, rng_state=rng.getstate(), budget=session.budget - 1,
                          transcript=session.transcript + ((guard, str(q), answer),))
        if answer is None:
            return session, f"guard {guard} is stuck: there is no permissible answer"
        return session, f"guard {guard} answers: {answer}"

    if cmd == "guess":
        try:
            value = int(rest)
        except ValueError:
            return session, "usage: guess <value>"
        ok = value == session.world
        return replace(session, over=True), "correct" if ok else f"incorrect (w was {session.world})"

    if cmd == "reveal":
        if session.budget <= 0:
            raise BudgetExhausted("no questions left; only 'guess' is accepted")
        roles = ", ".join(f"guard {i + 1} is a {r}" for i, r in enumerate(session.roles))
        return replace(session, over=True), f"w was {session.world}; {roles}"

    return session, "commands: ask <guard> <question> | guess <value> | reveal"


def play(scenario: Scenario, inp: TextIO, out: TextIO, seed: Optional[int] = None) -> ReplSession:
    session = new_session(scenario, seed)
    n = len(session.roles)
    out.write(f"{n} guards stand before you; answers lie in {session.space}. "
              f"You may ask {session.budget} question(s).\n")
    for line in inp:
        if not line.strip():
            continue
        try:
            session, reply = repl_step(session, line)
        except ParseError as e:
            reply = f"parse error at offset {e.offset}: expected {e.expected}"
        except PuzzleError as e:
            reply = str(e)
        out.write(reply + "\n")
        if session.over:
            break
    return session


# -- batch commands ----------------------------------------------------------------


def _ranges(values: Sequence[int]) -> str:
    out, vals = [], sorted(values)
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] == vals[j] + 1:
            j += 1
        out.append(str(vals[i]) if i == j else f"{vals[i]}..{vals[j]}")
        i = j + 1
    return ", ".join(out)


def _require_prompt(sc: Scenario) -> Question:
    if sc.prompt is None:
        raise ValidationError("this command needs a prompt= line in the scenario")
    return sc.prompt


def cmd_verify(sc: Scenario, args, out: TextIO) -> int:
    prompt = _require_prompt(sc)
    asked = args.asked_guard - 1
    verdict = verify(sc.space, sc.liar, prompt, roles_mode=sc.roles_mode,
                     guard_count=sc.guard_count, asked_guard=asked)
    code = 0 if isinstance(verdict, Winning) else 1 if isinstance(verdict, NotWinning) else 2
    if args.format == "machine":
        json.dump(verdict_to_json(verdict, sc, prompt), out, indent=2)
        out.write("\n")
        return code
    out.write(f"prompt: {prompt}\nS={sc.space}, liar={sc.liar}, guards={sc.guard_count} "
              f"({sc.roles_mode}), asking guard {args.asked_guard}\n")
    out.write(f"{verdict}\n")
    if isinstance(verdict, Winning) and verdict.decoder.closed_form() is None:
        for a, w in verdict.decoder.items():
            out.write(f"  answer {a} -> w={w}\n")
    if verdict.excluded:
        ws = [w for w, _ in verdict.excluded]
        out.write(f"excluded worlds: {_ranges(ws)} ({verdict.excluded[0][1]})\n")
    for a in verdict.assumptions:
        out.write(f"assumes: {a}\n")
    return code


def verdict_to_json(verdict, sc: Scenario, prompt: Question) -> dict:
    d = {"verdict": verdict.kind, "prompt": str(prompt), "space": str(sc.space),
         "liar": str(sc.liar), "excluded": [{"world": w, "reason": r} for w, r in verdict.excluded],
         "assumptions": list(verdict.assumptions)}
    if isinstance(verdict, Winning):
        d["decoder"] = {"closed_form": verdict.decoder.closed_form(),
                        "table": {str(a): w for a, w in verdict.decoder.items()}}
        d["outcomes"] = verdict.outcome_count
    elif isinstance(verdict, NotWinning):
        cx = verdict.counterexample
        d["counterexample"] = {"kind": cx.kind, "text": str(cx)}
        if cx.kind == "collision":
            d["counterexample"].update(answer=cx.answer, worlds=[cx.world1, cx.world2])
        else:
            d["counterexample"].update(world=cx.world, roles=str(cx.assignment))
    else:
        d["reason"] = verdict.reason
    return d


def cmd_eval(sc: Scenario, args, out: TextIO) -> int:
    prompt = _require_prompt(sc)
    domain = world_domain(sc.space, sc.liar, prompt, guard_count=sc.guard_count,
                          roles_mode=sc.roles_mode)
    if args.world is not None:
        w = args.world
        if w not in sc.space:
            raise ValidationError(f"w={w} is not in S")
    elif domain.worlds:
        w = domain.worlds[0].true_weight
    else:
        raise ValidationError("no valid world to evaluate")
    rows = []
    for roles in enumerate_assignments(sc.guard_count, sc.roles_mode):
        for seat in range(len(roles)):
            rows.append(_eval_row(sc, prompt, w, roles, seat))
    if args.format == "machine":
        json.dump({"prompt": str(prompt), "world": w, "rows": rows}, out, indent=2)
        out.write("\n")
        return 0
    out.write(f"prompt: {prompt}   w={w}   S={sc.space}   liar={sc.liar}\n")
    for r in rows:
        if "error" in r:
            out.write(f"  roles={r['roles']} guard {r['guard']} ({r['role']}): {r['error']}\n")
        else:
            extra = f"  [{r['strategies']} strategies]" if "strategies" in r else ""
            out.write(f"  roles={r['roles']} guard {r['guard']} ({r['role']}): "
                      f"truthful={r['truthful_text']}  support={r['support_text']}{extra}\n")
    return 0


def _eval_row(sc, prompt, w, roles, seat) -> dict:
    row = {"roles": str(roles), "guard": seat + 1, "role": str(roles[seat])}
    envs = [None]
    if isinstance(sc.liar, Adversarial):
        envs = list(StrategySearch(sc.space, w, roles, prompt, liar_seats(roles, prompt, seat)))
        row["strategies"] = len(envs)
    truth, support = set(), set()
    try:
        for env in envs:
            ctx = EvalContext(sc.space, World(w), roles, sc.liar, seat, strategy_env=env)
            truth |= truthful_set(ctx, prompt)
            support |= response_support(ctx, prompt)
    except PuzzleError as e:
        row["error"] = f"{type(e).__name__}: {e}"
        return row
    row.update(truthful=sorted(truth), support=sorted(support),
               truthful_text=fmt_set(truth, sc.space), support_text=fmt_set(support, sc.space))
    return row


def cmd_synth(sc: Scenario, args, out: TextIO) -> int:
    templates = [parse_setspec(t) for t in args.template or []]
    report = synthesize(sc.space, sc.liar, args.max_depth, templates,
                        roles_mode=sc.roles_mode, guard_count=sc.guard_count,
                        asked_guard=args.asked_guard - 1)
    if args.format == "machine":
        json.dump({"candidates": report.candidates_examined,
                   "winning": [{"prompt": str(q), "decoder": d} for q, d in report.winning],
                   "failing": [{"prompt": str(q), "kind": k} for q, k in report.failing],
                   "diagnostic": [{"prompt": str(q), "note": n} for q, n in report.diagnostic]},
                  out, indent=2)
        out.write("\n")
    else:
        out.write(f"{report}\n")
    return 0


def cmd_fixpoint(sc: Scenario, args, out: TextIO) -> int:
    w = args.world if args.world is not None else sc.space.values[0]
    roles = RoleAssignment((TRUTH_TELLER, LIAR))
    result = {}
    if isinstance(sc.liar, Adversarial):
        result["truth-teller"] = "UNDERDETERMINED: any answer restates itself"
        result["liar"] = "NO FIXPOINT: an adversarial answer cannot differ from itself"
    else:
        for label, agent in (("truth-teller", Agent(0, TRUTH_TELLER)), ("liar", Agent(1, LIAR))):
            ctx = EvalContext(sc.space, World(w), roles, sc.liar, agent)
            result[label] = str(solve_self_reference(ctx))
    if args.format == "machine":
        json.dump({"question": "could(self)", **result}, out, indent=2)
        out.write("\n")
    else:
        out.write("could(self)\n")
        for label, text in result.items():
            out.write(f"  {label}: {text}\n")
    return 0


def cmd_play(sc: Scenario, args, out: TextIO) -> int:
    play(sc, sys.stdin, out)
    return 0


COMMANDS = {"verify": cmd_verify, "eval": cmd_eval, "synth": cmd_synth,
            "fixpoint": cmd_fixpoint, "play": cmd_play}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="guardprompt",
                                description="Verify and synthesize prompts for the truth-teller/liar weight puzzle.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--scenario", required=True, help="path to a key=value scenario file")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--max-depth", type=int, default=2)
    p.add_argument("--template", action="append", metavar="SETSPEC",
                   help='answer-set template for synth, e.g. "{w,w+10}" or "{0,w}"')
    p.add_argument("--world", type=int)
    p.add_argument("--asked-guard", type=int, default=1, help="guard to ask (1-based)")
    return p


def run(argv: Optional[Sequence[str]] = None, out: TextIO = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        sc = load_scenario(args.scenario)
        if not 1 <= args.asked_guard <= sc.guard_count:
            raise ValidationError(f"--asked-guard must be in 1..{sc.guard_count}")
        if args.max_depth < 1:
            raise ValidationError("--max-depth must be >= 1")
        return COMMANDS[args.command](sc, args, out)
    except (PuzzleError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
