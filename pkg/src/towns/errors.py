"""Exception types shared across the package."""


class TownsError(Exception):
    """Base class for every error raised by ``towns``."""


class UsageError(TownsError, ValueError):
    """Malformed input: bad pattern text, empty member list, bad JSON."""


class GroundError(UsageError):
    """A set reaches outside its ground set, or the ground cap is exceeded."""


class ParameterError(TownsError, ValueError):
    """Construction parameters fail the catalog's validity predicate."""


class PreconditionError(TownsError, ValueError):
    """A transform was called on input that breaks its stated precondition."""


class UnsupportedPattern(TownsError, ValueError):
    """The operation is not defined for this modulus or pattern shape."""


class NotTabulated(TownsError, KeyError):
    """No reference value is encoded for this (pattern, n) cell."""


class CapExceeded(TownsError, ValueError):
    """A search or enumeration would exceed its hard size cap."""


class DuplicateMembersError(TownsError, ValueError):
    """A family would contain the same set twice."""
