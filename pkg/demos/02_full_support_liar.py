"""When the liar may pick any false answer, relaying through the other guard
stops working, but asking for "an answer you could give" still does.

A truth-teller could only say w, so it says w. A liar could say anything in
S except w; those are the true replies to could(weight), so it must avoid
all of them and is left with w.
"""
from guardprompt import FullSupport, make_space, parse, verify

S = make_space(0, 100)
for text in ["weight", "other(weight)", "could(weight)", "avoid(opposite, weight)"]:
    print(f"{text:28s}", verify(S, FullSupport(), parse(text)))
