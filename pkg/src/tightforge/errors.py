"""Exception types shared across the package."""


class TightforgeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidStructure(TightforgeError):
    """A table or map fails a structural axiom.

    Carries a human-readable reason and, when available, a witness tuple
    of the offending elements.
    """

    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        if witness is None:
            super().__init__(reason)
        else:
            super().__init__(f"{reason}: witness {witness!r}")


class ZeroTarget(TightforgeError):
    """A cover of the zero element was requested; covers target nonzero elements only."""


class SizeCapExceeded(TightforgeError):
    """A construction would exceed the configured element or arrow cap."""


class PreconditionFailed(TightforgeError):
    """An operation was called on input that fails its stated precondition."""


class NotTight(TightforgeError):
    """A map expected to be tight is not; the witness explains where."""

    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(reason if witness is None else f"{reason}: witness {witness!r}")


class InputError(TightforgeError):
    """Malformed user-facing input (documents, CLI arguments)."""
