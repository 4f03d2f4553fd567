"""Search the question grammar for winning prompts."""
from guardprompt import Adversarial, FullSupport, OffsetPair, make_space, synthesize

S = make_space(0, 2)
print("full support, depth 2")
print(synthesize(S, FullSupport(), 2))
print("\nadversarial, depth 2, template {w,w+1}")
print(synthesize(S, Adversarial(), 2, [OffsetPair(1)]))
