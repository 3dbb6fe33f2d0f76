"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed text input; ``lineno`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class MalformedRotation(ValueError):
    pass


class NotConsecutive(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class DivergentBound(ValueError):
    pass


class TooSmall(ValueError):
    pass
