class MixsimError(Exception):
    """Base class for errors raised by mixsim."""


class InvalidParameter(MixsimError, ValueError):
    pass


class EdgeListError(MixsimError, ValueError):
    """Malformed or invalid edge-list input.

    ``lineno`` is the 1-based line that triggered the error, or None when
    the problem is not tied to one line.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
