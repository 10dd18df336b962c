"""Exception types shared across the package."""


class HomLieError(Exception):
    """Base class for every error raised by :mod:`homlie`."""


class DimensionMismatch(HomLieError, ValueError):
    pass


class WellDefinednessFailure(HomLieError):
    """A linear map does not descend to the requested quotient.

    ``witness`` is a vector of the source kernel whose image escapes the
    target kernel; ``stage`` names the construction step that failed.
    """

    def __init__(self, message, witness=None, stage=None):
        super().__init__(message)
        self.witness = witness
        self.stage = stage


class NotAnIdeal(HomLieError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASubalgebra(HomLieError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAnEndomorphism(HomLieError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAHomomorphism(HomLieError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotClosed(HomLieError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ActionNotAdmissible(HomLieError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class IncompatibleActions(HomLieError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ActionsNotPreserved(HomLieError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ChainNotNested(HomLieError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class HypothesisFailure(HomLieError):
    """A mathematical precondition of a construction does not hold.

    ``hypothesis`` identifies which one (an index or a short name).
    """

    def __init__(self, message, hypothesis=None, witness=None):
        super().__init__(message)
        self.hypothesis = hypothesis
        self.witness = witness


class NotPerfect(HypothesisFailure):
    pass


class InvariantViolation(HomLieError):
    """A verified theorem was contradicted; indicates a bug or corrupt data."""


class ParseError(HomLieError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SemanticError(ParseError):
    pass


class UnknownFixture(HomLieError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown fixture"
