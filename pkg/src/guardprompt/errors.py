"""Exception hierarchy shared across the package."""


class PuzzleError(Exception):
    """Base class for every error raised by guardprompt."""


class RangeError(PuzzleError, ValueError):
    pass


class ModeError(PuzzleError, ValueError):
    pass


class ValidationError(PuzzleError, ValueError):
    pass


class InvalidWorld(PuzzleError):
    """A set template cannot be instantiated at a given world."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class InvalidRestriction(InvalidWorld):
    pass


class ParseError(PuzzleError, ValueError):
    def __init__(self, offset: int, expected: str, text: str = ""):
        self.offset = offset
        self.expected = expected
        self.text = text
        super().__init__(f"at offset {offset}: expected {expected}")


class ArityError(PuzzleError):
    pass


class StrategyRequired(PuzzleError):
    pass


class FixedRuleUndefined(PuzzleError):
    """The fixed lying rule has no value for the current truthful answer."""


class StuckError(PuzzleError):
    """A guard has no permissible answer at all."""

    def __init__(self, message: str, question=None):
        super().__init__(message)
        self.question = question


class StuckLiar(StuckError):
    pass


class StuckRespondent(StuckError):
    pass


class SelfReferenceUnsupported(PuzzleError):
    pass


class UnknownAnswer(PuzzleError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class BudgetExhausted(PuzzleError):
    pass


class FieldError(PuzzleError, ValueError):
    def __init__(self, line: int, key: str, reason: str):
        self.line = line
        self.key = key
        self.reason = reason
        super().__init__(f"line {line}: {key}: {reason}")
