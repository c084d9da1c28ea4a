"""Exception types shared across the package."""


class FormstrataError(Exception):
    """Base class for all package-specific errors."""


class NonSquare(FormstrataError):
    """A square matrix was required."""


class BadIndexSet(FormstrataError):
    """Row/column index selection is malformed or out of range."""


class AllZeroTuple(FormstrataError):
    """Every form in the tuple is identically zero."""


class BadK(FormstrataError):
    """Stratum index outside the valid range for the given degree."""


class PreconditionNotMet(FormstrataError):
    """An operation's stated precondition fails for the given input."""


class IndeterminacyLocus(FormstrataError):
    """All candidate coordinates vanish; the rational map is undefined here."""


class InconsistentInput(FormstrataError):
    """Components of a compound input do not fit together."""


class BadS(FormstrataError):
    """Unsupported shape for the product-minor expansion."""


class TooLarge(FormstrataError):
    """The requested computation exceeds the supported size."""


class ParseError(FormstrataError):
    """Malformed document or rational literal."""


class UnknownSuite(FormstrataError):
    """Verification suite name not recognized."""
