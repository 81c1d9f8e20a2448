"""Exception types raised across amplekit."""


class AmplekitError(Exception):
    """Base class for all errors raised by this package."""


class InvalidFacet(AmplekitError, ValueError):
    pass


class InvalidParam(AmplekitError, ValueError):
    pass


class NotASimplex(AmplekitError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class VertexCollision(AmplekitError, ValueError):
    pass


class TooLarge(AmplekitError):
    """A work budget or size guard was exceeded."""


class NotABall(AmplekitError):
    """Ball certification failed; ``criterion`` names the first failed check."""

    def __init__(self, criterion, detail=""):
        self.criterion = criterion
        self.detail = detail
        super().__init__(f"{criterion}: {detail}" if detail else criterion)


class RejectedMove(AmplekitError):
    pass


class VerificationFailure(AmplekitError):
    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        super().__init__(f"move {index}: {reason}")


class NotACycle(AmplekitError, ValueError):
    pass


class NotConnected(AmplekitError, ValueError):
    pass
