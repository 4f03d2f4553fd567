from hypothesis import strategies as st

from guardprompt import (
    ANY, EXACTLY_ONE_EACH, FixedRule, FullSupport, OffsetPair, ConstPair,
    enumerate_assignments, enumerate_grammar, make_space,
)
from guardprompt.dsl import contains_self_reference

TEMPLATE_FREE = [q for q in enumerate_grammar(4) if not contains_self_reference(q)]
WITH_TEMPLATES = [q for q in enumerate_grammar(3, [OffsetPair(1), OffsetPair(-2), ConstPair(0)])
                  if not contains_self_reference(q)]


@st.composite
def fixed_rules(draw, space):
    """A total lying table on ``space`` (f(x) != x everywhere)."""
    vals = list(space.values)
    table = {}
    for x in vals:
        table[x] = draw(st.sampled_from([v for v in vals if v != x]))
    return FixedRule.from_mapping(table)


@st.composite
def contexts(draw, questions=TEMPLATE_FREE, models=("full", "fixed")):
    n = draw(st.integers(2, 7))
    lo = draw(st.integers(-5, 5))
    space = make_space(lo, lo + n - 1)
    w = draw(st.sampled_from(space.values))
    kind = draw(st.sampled_from(models))
    model = FullSupport() if kind == "full" else draw(fixed_rules(space))
    roles = draw(st.sampled_from(enumerate_assignments(2, EXACTLY_ONE_EACH)))
    seat = draw(st.integers(0, 1))
    q = draw(st.sampled_from(questions))
    return space, w, roles, model, seat, q


# -- acceptance summary -------------------------------------------------------------

_criteria: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.failed:
        name = report.nodeid.split("::")[1].split("[")[0]
        label = " ".join(name.split("_")[1:3])
        _criteria[label] = _criteria.get(label, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(f"{'PASS' if _criteria[label] else 'FAIL'}  {label}")
