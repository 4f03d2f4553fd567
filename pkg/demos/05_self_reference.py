""""Give an answer you could give to this question" as a fixed-point problem.

A truth-teller's equation R = R accepts every subset, so nothing is pinned
down. A liar's R = S \\ R has no solution: the iteration flips between S and
the empty set forever.
"""
from guardprompt import (
    LIAR, TRUTH_TELLER, Agent, EvalContext, FullSupport, RoleAssignment, World,
    make_space, solve_self_reference,
)

roles = RoleAssignment.parse("TL")
for space in (make_space(0, 1), make_space(0, 100)):
    print(space)
    for agent in (Agent(0, TRUTH_TELLER), Agent(1, LIAR)):
        ctx = EvalContext(space, World(0), roles, FullSupport(), agent)
        print(f"  {agent}: {solve_self_reference(ctx)}")
