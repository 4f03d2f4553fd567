"""Exhaustive verification and synthesis of prompts for the non-binary
truth-teller / liar puzzle."""

from .core import (
    ANY, EXACTLY_ONE_EACH, LIAR, TRUTH_TELLER, Adversarial, AnswerSpace,
    ConstPair, FixedRule, FullSupport, OffsetPair, Role, RoleAssignment, World,
    apply_template, enumerate_assignments, make_space, parse_liar_model,
)
from .dsl import (
    AskOther, CouldProvide, CouldProvideSelf, Direct, OppositeAvoids, Restricted,
    WouldSayYou, closure, enumerate_grammar, parse, print_question,
)
from .semantics import (
    Agent, EvalContext, NoFixpoint, Underdetermined, Unique, response_support,
    solve_self_reference, truthful_set, valid_worlds, world_domain,
)
from .adversary import Strategy, enumerate_joint_strategies, enumerate_strategies
from .verifier import (
    Collision, Decoder, Invalid, NotWinning, Outcome, Stuck, Winning, decode, verify,
)
from .synth import SynthesisReport, synthesize
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
