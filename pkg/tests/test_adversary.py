import itertools

import pytest

from guardprompt import (
    ANY, LIAR, TRUTH_TELLER, Adversarial, RoleAssignment, enumerate_assignments,
    enumerate_joint_strategies, enumerate_strategies, make_space, parse,
)
from guardprompt.adversary import is_consistent, liar_seats, Strategy, StrategySearch
from guardprompt.dsl import closure, contains_self_reference, enumerate_grammar
from guardprompt import AnswerSpace, OffsetPair

TL = RoleAssignment((TRUTH_TELLER, LIAR))
S3 = make_space(0, 2)


def values(strats, q):
    return [s[parse(q)] for s in strats]


def test_direct_question_any_wrong_value():
    strats = enumerate_strategies(S3, 0, TL, parse("weight"), 1)
    assert values(strats, "weight") == [1, 2]


def test_would_say_you_two_levels():
    # oracle: pairs (a, b) with a != w and b != a
    expected = [(a, b) for a in S3 if a != 0 for b in S3 if b != a]
    strats = enumerate_strategies(S3, 0, TL, parse("you(weight)"), 1)
    got = [(s[parse("weight")], s[parse("you(weight)")]) for s in strats]
    assert got == expected
    assert len(got) == 4


def test_restricted_forces_single_strategy():
    q = parse("restrict({w,w+10}, weight)")
    strats = enumerate_strategies(make_space(0, 100), 70, TL, q, 1)
    assert len(strats) == 1
    assert strats[0][parse("weight")] == 80
    assert strats[0][q] == 70


@pytest.mark.parametrize("w", [0, 3, 6])
def test_direct_count_matches_full_support(w):
    s = make_space(0, 6)
    assert len(enumerate_strategies(s, w, TL, parse("weight"), 1)) == len(s) - 1


def test_strategy_requires_liar_seat():
    with pytest.raises(ValueError):
        enumerate_strategies(S3, 0, TL, parse("weight"), 0)


PROMPTS = [q for q in enumerate_grammar(3, [OffsetPair(1)]) if not contains_self_reference(q)]


@pytest.mark.parametrize("q", PROMPTS, ids=str)
def test_enumeration_equals_brute_force_filter(q):
    """Every assignment in S^closure that passes the independent re-check is
    produced, and nothing else."""
    space = make_space(0, 3)
    for roles in enumerate_assignments(2, "exactly-one-each"):
        seat = roles.liars()[0]
        for w in space:
            try:
                got = enumerate_strategies(space, w, roles, q, seat)
            except Exception as e:  # invalid worlds for the template
                assert "InvalidRestriction" in type(e).__name__
                continue
            cl = closure(q)
            brute = []
            for combo in itertools.product(space.values, repeat=len(cl)):
                cand = Strategy(seat, tuple(zip(cl, combo)))
                if is_consistent(space, w, roles, q, {seat: cand}):
                    brute.append(cand)
            assert got == brute
            for s in got:
                assert is_consistent(space, w, roles, q, {seat: s})


def test_two_liars_joint_strategies():
    ll = RoleAssignment((LIAR, LIAR))
    q = parse("other(weight)")
    assert liar_seats(ll, q, 0) == [0, 1]
    joints = enumerate_joint_strategies(S3, 0, ll, q, [0, 1])
    # each liar: weight != 0; other(weight) != the other liar's weight answer
    expected = [(a0, a1, b0, b1) for a0 in (1, 2) for a1 in (1, 2)
                for b0 in S3 if b0 != a1 for b1 in S3 if b1 != a0]
    got = sorted((j[0][parse("weight")], j[1][parse("weight")], j[0][q], j[1][q]) for j in joints)
    assert got == sorted(expected)
    assert all(is_consistent(S3, 0, ll, q, j) for j in joints)


def test_liar_seats_only_reachable():
    assert liar_seats(TL, parse("you(weight)"), 0) == []
    assert liar_seats(TL, parse("other(weight)"), 0) == [1]
    assert liar_seats(TL, parse("avoid(opposite, weight)"), 0) == [1]
    tll = RoleAssignment((TRUTH_TELLER, LIAR, LIAR))
    # hypothetical liar in the truth-teller's own seat
    assert liar_seats(tll, parse("avoid(opposite, weight)"), 0) == [0]


def test_stuck_liar_gives_empty_list():
    single = AnswerSpace((5,))
    assert enumerate_strategies(single, 5, TL, parse("weight"), 1) == []
    search = StrategySearch(single, 5, TL, parse("weight"), [1])
    assert list(search) == [] and search.dead_end == (1, parse("weight"))
