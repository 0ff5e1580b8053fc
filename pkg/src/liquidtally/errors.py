"""Exception types raised by the delegation engine.

Every exception carries a short upper-case ``code`` so callers (and the CLI)
can branch on the failure kind without parsing messages.
"""


class DelegationError(Exception):
    """Base class for all engine errors."""

    code = "DELEGATION_ERROR"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class GraphValidationError(DelegationError):
    """Input data does not form a valid delegation graph.

    The full :class:`~liquidtally.graph.ValidationReport` is attached as
    ``report``; ``code`` is the code of the first error.
    """

    def __init__(self, report):
        self.report = report
        first = report.errors[0]
        lines = "; ".join(f"{e.code}({e.element}): {e.message}" for e in report.errors)
        super().__init__(lines, code=first.code)


class ParseError(DelegationError):
    code = "PARSE_ERROR"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyResultError(DelegationError):
    code = "EMPTY_RESULT"


class SingularSystemError(DelegationError):
    code = "SINGULAR_SYSTEM"


class NoConvergenceError(DelegationError):
    code = "NO_CONVERGENCE"


class NotAVoterError(DelegationError):
    code = "NOT_A_VOTER"


class TooLargeError(DelegationError):
    code = "TOO_LARGE"
