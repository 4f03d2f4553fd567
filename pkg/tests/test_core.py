import pytest
from hypothesis import given, strategies as st

from guardprompt import (
    ANY, EXACTLY_ONE_EACH, LIAR, TRUTH_TELLER, Adversarial, AnswerSpace, ConstPair,
    FixedRule, FullSupport, OffsetPair, RoleAssignment, apply_template,
    enumerate_assignments, make_space, parse, valid_worlds, world_domain,
)
from guardprompt.core import parse_liar_model
from guardprompt.errors import InvalidWorld, ModeError, RangeError, ValidationError


def test_make_space_paper_range():
    s = make_space(0, 100)
    assert len(s) == 101
    assert s.values[0] == 0 and s.values[-1] == 100


def test_make_space_singleton_is_a_valid_type_but_not_a_scenario():
    s = make_space(5, 5)
    assert s.values == (5,)
    with pytest.raises(ValidationError):
        s.validate_scenario()


def test_make_space_inverted():
    with pytest.raises(RangeError):
        make_space(3, 1)


def test_answer_space_invariants():
    with pytest.raises(RangeError):
        AnswerSpace(())
    with pytest.raises(RangeError):
        AnswerSpace((1, 1, 2))
    with pytest.raises(RangeError):
        AnswerSpace((2, 1))
    assert AnswerSpace.of([7, 3, 3, 5]).values == (3, 5, 7)


def test_apply_template_examples():
    s = make_space(0, 100)
    assert apply_template(OffsetPair(10), 70, s) == {70, 80}
    with pytest.raises(InvalidWorld, match="collapses"):
        apply_template(ConstPair(0), 0, s)
    with pytest.raises(InvalidWorld, match="105"):
        apply_template(OffsetPair(10), 95, s)


def test_offset_pair_rejects_zero():
    with pytest.raises(ValidationError):
        OffsetPair(0)


@given(lo=st.integers(-20, 20), n=st.integers(2, 30), delta=st.integers(-12, 12).filter(bool),
       c=st.integers(-25, 25), data=st.data())
def test_apply_template_closure(lo, n, delta, c, data):
    s = make_space(lo, lo + n - 1)
    w = data.draw(st.sampled_from(s.values))
    for t in (OffsetPair(delta), ConstPair(c)):
        try:
            a = apply_template(t, w, s)
        except InvalidWorld:
            continue
        assert len(a) == 2 and a <= s.as_set
    if w + delta in s:
        assert w in apply_template(OffsetPair(delta), w, s)


def test_enumerate_assignments_examples():
    two = enumerate_assignments(2, EXACTLY_ONE_EACH)
    assert [str(a) for a in two] == ["TL", "LT"]
    assert len(enumerate_assignments(3, ANY)) == 8
    with pytest.raises(ModeError):
        enumerate_assignments(3, EXACTLY_ONE_EACH)


@pytest.mark.parametrize("n", range(1, 7))
def test_any_mode_is_all_role_vectors(n):
    got = enumerate_assignments(n, ANY)
    assert len(got) == 2 ** n
    assert len(set(got)) == 2 ** n


def test_role_assignment_parse():
    ra = RoleAssignment.parse("tl")
    assert ra.roles == (TRUTH_TELLER, LIAR)
    assert ra.liars() == [1]


def test_fixed_rule_must_lie():
    with pytest.raises(ValidationError, match="change the answer"):
        FixedRule(offset=0)
    with pytest.raises(ValidationError):
        FixedRule.from_mapping({1: 1})
    f = FixedRule.from_mapping({0: 2, 1: 0})
    assert f(0) == 2 and f(1) == 0 and f(2) is None
    assert FixedRule(10)(70) == 80


def test_parse_liar_model():
    assert parse_liar_model("full_support") == FullSupport()
    assert parse_liar_model("adversarial") == Adversarial()
    assert parse_liar_model("fixed(+10)") == FixedRule(10)
    assert parse_liar_model("fixed(-3)") == FixedRule(-3)
    with pytest.raises(ValidationError):
        parse_liar_model("fixed(+0)")
    with pytest.raises(ValidationError):
        parse_liar_model("sometimes")


def test_valid_worlds_fixed_rule_range():
    # oracle: w is valid iff w + 10 stays in S
    s = make_space(0, 100)
    expected = [w for w in s if w + 10 in s]
    dom = world_domain(s, FixedRule(10), parse("other(weight)"))
    assert [w.true_weight for w in dom.worlds] == expected == list(range(91))
    assert dom.excluded_weights() == list(range(91, 101))


def test_valid_worlds_full_support_is_everything():
    s = make_space(0, 100)
    assert len(valid_worlds(s, FullSupport(), parse("could(weight)"))) == 101


def test_valid_worlds_template_outside_space():
    s = make_space(1, 100)
    assert valid_worlds(s, Adversarial(), parse("restrict({0,w}, weight)")) == []


@pytest.mark.parametrize("text", ["weight", "other(weight)", "you(could(weight))",
                                  "avoid(opposite, other(weight))"])
def test_template_free_full_support_domain_is_s(text):
    s = make_space(0, 9)
    assert len(valid_worlds(s, FullSupport(), parse(text))) == len(s)
