"""A liar who always adds 10, asked through the other guard.

Either way round, the relayed answer is w + 10, so subtracting 10 recovers
the weight. Weights above 90 are excluded because w + 10 would leave S.
"""
from guardprompt import FixedRule, make_space, parse, verify
from guardprompt.verifier import all_outcomes

S = make_space(0, 100)
prompt = parse("other(weight)")
verdict = verify(S, FixedRule(10), prompt)
print(verdict)
print("excluded:", [w for w, _ in verdict.excluded])

for o in all_outcomes(S, FixedRule(10), prompt)[:4]:
    print(" ", o)
