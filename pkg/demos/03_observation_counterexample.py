"""Against a liar that picks a deterministic strategy per question, the
"what would you say" trick breaks: the liar can pre-commit to a third value."""
from guardprompt import Adversarial, make_space, parse, verify
from guardprompt.adversary import enumerate_strategies
from guardprompt.core import RoleAssignment

S = make_space(0, 2)
q = parse("you(weight)")
print(verify(S, Adversarial(), q))

print("\nliar strategies at w=0 (liar in seat 0):")
for s in enumerate_strategies(S, 0, RoleAssignment.parse("LT"), q, 0):
    print(" ", s)
