"""Exception hierarchy shared by all logsynth modules."""


class LogSynthError(Exception):
    """Base class for every domain error raised by logsynth."""


class ParseError(LogSynthError):
    """A document or pattern expression could not be parsed."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class ValidationError(LogSynthError):
    """A parsed document violates a structural invariant.

    ``location`` names the offending element, e.g. ``transitions[3]``.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class UnknownSymbol(ParseError):
    def __init__(self, symbol, position=None):
        self.symbol = symbol
        super().__init__(f"unknown symbol {symbol!r}", position)


class DegenerateModel(LogSynthError):
    """No log sequence can be generated from the model under the given bound."""


class CapExceeded(LogSynthError):
    pass


class SizeLimit(LogSynthError):
    pass


class EmptyPool(LogSynthError):
    def __init__(self, pattern_id=None, message=None):
        self.pattern_id = pattern_id
        if message is None:
            if pattern_id is None:
                message = "all failure pools are empty"
            else:
                message = f"failure pattern {pattern_id!r} yields no word within the length bound"
        super().__init__(message)


class AttemptsExhausted(LogSynthError):
    def __init__(self, attempts, message=None):
        self.attempts = attempts
        super().__init__(
            message
            or f"{attempts} consecutive random walks all matched a failure pattern; "
            "the patterns cover too much of the behaviour model"
        )


class DegenerateClass(LogSynthError):
    """A split or oversampling step needs both labels but one is missing."""


class FormatError(LogSynthError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}"
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class EmptyAfterTruncation(LogSynthError):
    def __init__(self, task_id):
        self.task_id = task_id
        super().__init__(f"task {task_id!r} starts with a failure message; nothing left after truncation")


class MissingMlsl(LogSynthError):
    pass
