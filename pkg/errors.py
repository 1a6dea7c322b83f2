"""Exception hierarchy shared by all zonotile modules.

Everything derives from ``ValueError`` so callers that only care about
"bad input" can keep catching the builtin.
"""


class ZonotileError(ValueError):
    """Base class for every error raised by zonotile."""


class InvalidParameterError(ZonotileError):
    """k, multiplicities or another numeric parameter is out of range."""


class DegenerateTileError(ZonotileError):
    """A tile was requested with fewer than two distinct directions."""


class IntegrityError(ZonotileError):
    """A complex or a side signature is structurally malformed."""


class ContractViolation(ZonotileError):
    """An operation was called with its precondition broken."""


class ParseError(ZonotileError):
    """A tiling document could not be read or is malformed."""
