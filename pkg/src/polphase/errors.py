"""Exception hierarchy shared by all polphase modules."""


class PolphaseError(Exception):
    """Base class for every error raised by this package."""


class IndexRangeError(PolphaseError, IndexError):
    """A Fock number or energy label lies outside the truncated range."""


class DimensionError(PolphaseError, ValueError):
    """Operands live on incompatible bases or have the wrong shape."""


class DomainError(PolphaseError, ValueError):
    """A scalar parameter is outside its admissible domain."""


class ValidationError(PolphaseError, ValueError):
    """A state or distribution violates one of its type invariants."""


class UnderResolutionError(PolphaseError, ValueError):
    """The phase grid has fewer nodes than the Hilbert space dimension."""


class UnsupportedInputError(PolphaseError, TypeError):
    """The requested route cannot handle this kind of input."""


class SpecParseError(PolphaseError, ValueError):
    """A state-specification document is malformed.

    ``path`` is the dotted key path of the offending entry, e.g.
    ``"field.alpha_re"``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")
