class FramedKnotError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(FramedKnotError, ValueError):
    def __init__(self, message, line=None, col=None, source=None):
        self.line = line
        self.col = col
        self.source = source
        where = ""
        if line is not None:
            where = f"{source or '<input>'}:{line}:{col or 1}: "
        super().__init__(where + message)


class ContextError(FramedKnotError, ValueError):
    pass


class GenericityError(FramedKnotError, ValueError):
    pass


class MoveError(FramedKnotError, ValueError):
    pass


class TheoremViolation(FramedKnotError, AssertionError):
    """An identity that must hold exactly failed; always a bug."""
