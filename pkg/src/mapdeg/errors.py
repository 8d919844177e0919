"""Exception hierarchy shared by every mapdeg module."""


class MapdegError(Exception):
    """Base class for all errors raised by mapdeg."""


class InvalidInputError(MapdegError, ValueError):
    """A value violates one of the model invariants.

    ``constraint`` names the violated invariant, e.g. ``"gcd(p,q)=1"``.
    """

    def __init__(self, constraint: str, message: str | None = None):
        self.constraint = constraint
        super().__init__(message or f"constraint violated: {constraint}")


class UnsupportedInputError(MapdegError, ValueError):
    """Input is well formed but outside what the engine accepts."""

    def __init__(self, constraint: str, message: str):
        self.constraint = constraint
        super().__init__(message)


class NoFamilyError(MapdegError):
    """A finite degree class has no infinite degree family."""


class NoWitnessError(MapdegError):
    """The target has a factor with a finite degree verdict.

    ``blockers`` is a list of ``(descriptor, reason_tag)`` pairs.
    """

    def __init__(self, blockers, message: str | None = None):
        self.blockers = list(blockers)
        if message is None:
            parts = ", ".join(f"{d} [{tag}]" for d, tag in self.blockers)
            message = f"no witness family: blocked by {parts}"
        super().__init__(message)


class NotDecomposableError(MapdegError):
    """A degree fails one of the four witness forms.

    ``form`` names the first failing form (``"C1"``..``"C4"``).
    """

    def __init__(self, form: str, message: str):
        self.form = form
        super().__init__(message)
