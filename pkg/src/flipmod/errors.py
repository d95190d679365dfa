"""Exception hierarchy shared by all flipmod modules."""


class FlipmodError(Exception):
    """Base class for every error raised by flipmod."""


class InvalidSpec(FlipmodError):
    """A topological spec violates its invariants.

    ``reason`` is one of ``"bad-n"``, ``"bad-genus"``, ``"duplicate-label"``,
    ``"missing-label"``, ``"untriangulable"`` or ``"parse"``.
    """

    def __init__(self, reason, message=""):
        self.reason = reason
        super().__init__(f"{reason}: {message}" if message else reason)


class Untriangulable(InvalidSpec):
    def __init__(self, message=""):
        super().__init__("untriangulable", message)


class MalformedMap(FlipmodError):
    """Raised by validation; ``diagnostics`` lists every violated invariant."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class NotBoundary(FlipmodError):
    pass


class UnknownVertex(FlipmodError):
    pass


class Unflippable(FlipmodError):
    pass


class SpecMismatch(FlipmodError):
    pass


class TooFewVertices(FlipmodError):
    pass


class TooSmall(FlipmodError):
    pass


class NotAdjacent(FlipmodError):
    pass


class BudgetExceeded(FlipmodError):
    pass


class Stuck(FlipmodError):
    """A constructive procedure found no admissible flip (indicates a bug)."""


class PreconditionViolated(FlipmodError):
    pass


class Obstructed(FlipmodError):
    pass


class NotAPod(FlipmodError):
    pass


class NotAdjacentPods(FlipmodError):
    pass
