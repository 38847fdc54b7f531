"""Exception hierarchy shared by every module."""


class AlgTypeError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(AlgTypeError, ValueError):
    """A signature (or a file declaring one) is malformed."""


class TermSyntaxError(AlgTypeError, ValueError):
    pass


class AlgebraError(AlgTypeError, ValueError):
    """A finite algebra or operation table violates its invariants."""


class SignatureMismatch(AlgTypeError, ValueError):
    pass


class EnumerationCapExceeded(AlgTypeError):
    """Raised when a bounded enumeration would produce more items than allowed."""

    def __init__(self, cap, what="terms"):
        super().__init__(f"enumeration of {what} exceeded the cap of {cap}")
        self.cap = cap


class NoGeneralRepresentative(AlgTypeError):
    """No element of a class maps onto every other element of it.

    Usually means the basis or the depth of the fragment is too small.
    """
