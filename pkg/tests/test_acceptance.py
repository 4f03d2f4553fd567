"""One test per acceptance criterion. A PASS/FAIL line per criterion is
printed in the terminal summary (see conftest.py)."""

import random
import time

import pytest

from guardprompt import (
    ANY, LIAR, TRUTH_TELLER, Adversarial, Agent, EvalContext, FixedRule, FullSupport,
    NoFixpoint, OffsetPair, RoleAssignment, Underdetermined, World, enumerate_assignments,
    enumerate_grammar, make_space, parse, response_support, solve_self_reference,
    synthesize, truthful_set, verify,
)
from guardprompt.adversary import liar_seats, sample_joint_strategy
from guardprompt.cli import new_session, parse_scenario, repl_step
from guardprompt.dsl import contains_self_reference
from guardprompt.errors import FixedRuleUndefined, InvalidRestriction, StuckError
from guardprompt.semantics import _enter
from guardprompt.verifier import Collision, Invalid, NotWinning, Outcome, Winning, all_outcomes, replay

S100 = make_space(0, 100)
S3 = make_space(0, 2)
TL = RoleAssignment.parse("TL")
LT = RoleAssignment.parse("LT")

# Every scenario in this file that should verify as winning.
WINNING_SCENARIOS = [
    (S100, FixedRule(10), "other(weight)", {}),
    (S100, FullSupport(), "could(weight)", {}),
    (make_space(0, 1), FullSupport(), "other(weight)", {}),
    (S100, FullSupport(), "restrict({w,w+10}, weight)", {}),
    (S100, FixedRule(10), "restrict({w,w+10}, weight)", {}),
    (S100, Adversarial(), "restrict({w,w+10}, weight)", {}),
    (S100, FullSupport(), "restrict({0,w}, weight)", {}),
    (S100, FullSupport(), "avoid(opposite, weight)", {}),
    (S100, FullSupport(), "could(weight)", {"guard_count": 3, "roles_mode": ANY}),
    (S3, Adversarial(), "restrict({w,w+1}, weight)", {}),
]


@pytest.fixture(autouse=True)
def under_ten_seconds():
    start = time.perf_counter()
    yield
    assert time.perf_counter() - start < 10


def test_criterion_1_fixed_rule_liar():
    v = verify(S100, FixedRule(10), parse("other(weight)"))
    assert isinstance(v, Winning)
    assert v.decoder.closed_form() == "answer - 10"
    assert all(v.decoder[a] == a - 10 for a in v.decoder)
    assert v.worlds == list(range(91))
    assert [w for w, _ in v.excluded] == list(range(91, 101))
    outs = all_outcomes(S100, FixedRule(10), parse("other(weight)"))
    assert {o.assignment for o in outs} == {TL, LT}
    assert len(outs) == 91 * 2


def test_criterion_2_full_support_could():
    prompt = parse("could(weight)")
    v = verify(S100, FullSupport(), prompt)
    assert isinstance(v, Winning)
    assert v.decoder.closed_form() == "identity"
    outs = all_outcomes(S100, FullSupport(), prompt)
    assert all(isinstance(o, Outcome) and o.answer == o.world for o in outs)
    assert {(o.world, o.assignment) for o in outs} == {(w, r) for w in range(101) for r in (TL, LT)}
    assert len(outs) == v.outcome_count == 202


def test_criterion_3_observation():
    v = verify(S3, Adversarial(), parse("you(weight)"))
    assert isinstance(v, NotWinning)
    cx = v.counterexample
    assert isinstance(cx, Collision) and cx.world1 != cx.world2
    liar_side = [o for o in (cx.witness1, cx.witness2) if o.assignment[0] is LIAR]
    assert liar_side
    (strategy,) = liar_side[0].detail
    assert strategy[parse("weight")] not in {cx.world1, cx.world2}

    swap = verify(make_space(0, 1), FullSupport(), parse("other(weight)"))
    assert isinstance(swap, Winning)
    assert swap.decoder == {0: 1, 1: 0}


@pytest.mark.parametrize("model", [FullSupport(), FixedRule(10), Adversarial()], ids=str)
def test_criterion_4_restricted_prompts(model):
    v = verify(S100, model, parse("restrict({w,w+10}, weight)"))
    assert isinstance(v, Winning)
    assert v.decoder.closed_form() == "identity"
    assert v.worlds == list(range(91))

    v0 = verify(S100, FullSupport(), parse("restrict({0,w}, weight)"))
    assert isinstance(v0, Winning)
    assert v0.worlds == list(range(1, 101))
    assert [w for w, _ in v0.excluded] == [0]


def test_criterion_5_model_ordering():
    S5 = make_space(0, 4)
    prompts = [q for q in enumerate_grammar(2, [OffsetPair(1)]) if not contains_self_reference(q)]
    assert len(prompts) == 6
    for q in prompts:
        if isinstance(verify(S5, Adversarial(), q), Winning):
            assert isinstance(verify(S5, FullSupport(), q), Winning), str(q)
    q = parse("could(weight)")
    assert isinstance(verify(S5, FullSupport(), q), Winning)
    assert isinstance(verify(S5, Adversarial(), q), NotWinning)


def test_criterion_6_remarks():
    q = parse("avoid(opposite, weight)")
    assert isinstance(verify(S100, FullSupport(), q), Winning)
    assert isinstance(verify(S3, Adversarial(), q), NotWinning)
    v = verify(S100, FullSupport(), parse("could(weight)"), guard_count=3, roles_mode=ANY)
    assert isinstance(v, Winning)
    assert len(enumerate_assignments(3, ANY)) == 8
    assert v.outcome_count == 101 * 8


@pytest.mark.parametrize("n", [2, 101])
def test_criterion_7_fixpoint(n):
    space = make_space(0, n - 1)
    for model in (FullSupport(), FixedRule(1)):
        truth = solve_self_reference(EvalContext(space, World(0), TL, model, Agent(0, TRUTH_TELLER)))
        liar = solve_self_reference(EvalContext(space, World(0), TL, model, Agent(1, LIAR)))
        assert isinstance(truth, Underdetermined)
        assert isinstance(liar, NoFixpoint)
        a, b = liar.witness
        assert a != b
        assert space.as_set - a == b and space.as_set - b == a


def test_criterion_8_synthesis():
    r = synthesize(S3, FullSupport(), 2)
    assert parse("could(weight)") in r.winning_prompts()
    assert parse("weight") in r.failing_prompts()
    r = synthesize(S3, Adversarial(), 2, [OffsetPair(1)])
    assert parse("restrict({w,w+1}, weight)") in r.winning_prompts()


# -- criterion 9 ------------------------------------------------------------------


def _random_defined_contexts(rng, count):
    """Random contexts (with a sampled adversarial strategy where needed)
    whose semantics are defined."""
    pool = [q for q in enumerate_grammar(4, [OffsetPair(1), OffsetPair(-3)])
            if not contains_self_reference(q)]
    out = []
    while len(out) < count:
        k = rng.randint(2, 8)
        space = make_space(0, k - 1)
        w = rng.choice(space.values)
        roles = rng.choice([TL, LT])
        seat = rng.randint(0, 1)
        q = rng.choice(pool)
        kind = rng.choice(["full", "fixed", "adversarial"])
        env = None
        if kind == "full":
            model = FullSupport()
        elif kind == "fixed":
            model = FixedRule.from_mapping({x: rng.choice([y for y in space.values if y != x])
                                            for x in space.values})
        else:
            model = Adversarial()
            try:
                env = sample_joint_strategy(rng, space, w, roles, q, liar_seats(roles, q, seat))
            except InvalidRestriction:
                continue
            if env is None:
                continue
        ctx = EvalContext(space, World(w), roles, model, seat, strategy_env=env)
        try:
            truth = truthful_set(ctx, q)
            support = response_support(ctx, q)
            p = _enter(ctx, q).permissible
        except (StuckError, FixedRuleUndefined, InvalidRestriction):
            continue
        out.append((ctx, q, truth, support, p))
    return out


def test_criterion_9_property_suites():
    # parser round trip on every generated AST to depth 4
    asts = enumerate_grammar(4, [OffsetPair(1), OffsetPair(-3)])
    assert all(parse(str(q)) == q for q in asts)

    # liar disjointness and full-support exactness
    rng = random.Random(20260101)
    contexts = _random_defined_contexts(rng, 1000)
    full_liars = 0
    for ctx, q, truth, support, p in contexts:
        if ctx.respondent.role is LIAR:
            assert not (truth & support), (ctx, q)
            if isinstance(ctx.liar_model, FullSupport):
                full_liars += 1
                assert support == p - truth, (ctx, q)
        else:
            assert support == truth
    assert full_liars > 50

    # every recorded outcome of every winning scenario decodes to its world
    for space, model, text, kw in WINNING_SCENARIOS:
        q = parse(text)
        v = verify(space, model, q, **kw)
        assert isinstance(v, Winning), text
        for o in all_outcomes(space, model, q, **kw):
            answer = replay(o, space, model, q) if kw.get("guard_count", 2) == 2 else o.answer
            assert answer == o.answer
            assert v.decoder[answer] == o.world

    # seeded REPL transcripts are reproducible
    sc = parse_scenario('space=0..5\nliar=adversarial\nbudget=4\n')
    lines = ["ask 1 you(weight)", "ask 2 other(weight)", "ask 1 avoid(opposite, weight)", "ask 2 weight"]

    def transcript(seed):
        s = new_session(sc, seed=seed)
        replies = []
        for line in lines:
            s, r = repl_step(s, line)
            replies.append(r)
        return s.world, s.roles, s.transcript, replies

    for seed in range(20):
        assert transcript(seed) == transcript(seed)
