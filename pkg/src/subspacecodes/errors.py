"""Exception types shared across the package."""


class SubspaceCodesError(Exception):
    """Base class for every error raised by this package."""


class AmbientMismatch(SubspaceCodesError, ValueError):
    """Operands live in ambient spaces of different dimension."""


class DimensionMismatch(SubspaceCodesError, ValueError):
    """Operation requires subspaces (or codewords) of equal dimension."""


class NontrivialIntersection(SubspaceCodesError, ValueError):
    """Direct sum requested for subspaces that intersect nontrivially."""


class DimensionOverflow(SubspaceCodesError, ValueError):
    """Requested dimensions do not fit inside the ambient space."""


class RankDeficient(SubspaceCodesError, ValueError):
    """Matrix lacks the full row rank the operation requires."""


class PreconditionViolated(SubspaceCodesError, ValueError):
    """Numerical admissibility condition failed (e.g. ||A+||_2 ||N||_2 >= 1)."""


class TrivialCharacter(SubspaceCodesError, ValueError):
    """Character sum requested with the trivial character chi_0."""


class DegreeConditionViolated(SubspaceCodesError, ValueError):
    """Polynomial degree is zero or shares a factor with the field size."""


class SizeOverflow(SubspaceCodesError, ValueError):
    """Code construction would exceed the configured size cap."""


class CapExceeded(SubspaceCodesError, ValueError):
    """Exhaustive search over more codewords than the configured cap."""


class LengthMismatch(SubspaceCodesError, ValueError):
    """Binary words of inconsistent length."""


class RetryLimitExceeded(SubspaceCodesError, RuntimeError):
    """Random sampling kept producing duplicate codewords."""


class EmptyCode(SubspaceCodesError, ValueError):
    """Decoding requested against an empty codebook."""


class DomainError(SubspaceCodesError, ValueError):
    """Argument outside the mathematical domain of a bound formula."""


class ConfigError(SubspaceCodesError, ValueError):
    """Malformed experiment configuration."""
