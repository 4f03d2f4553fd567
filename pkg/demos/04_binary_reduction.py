"""Restrict the answer to a two-element set containing w. A liar then has
exactly one false option, and nesting turns that back into the truth."""
from guardprompt import Adversarial, FixedRule, FullSupport, make_space, parse, verify

S = make_space(0, 100)
for text in ["restrict({w,w+10}, weight)", "restrict({0,w}, weight)"]:
    q = parse(text)
    for model in (FullSupport(), FixedRule(10), Adversarial()):
        v = verify(S, model, q)
        excluded = [w for w, _ in v.excluded]
        print(f"{text:28s} {str(model):12s} {v}  excluded={excluded[:3]}{'...' if len(excluded) > 3 else ''}")
