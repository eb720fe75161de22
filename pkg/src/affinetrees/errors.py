"""Exception types shared across the library.

Every error that a caller can trigger by violating a documented
precondition gets its own class, so callers (and the CLI) can map
violations to exit codes without parsing messages.
"""


class AffineTreesError(Exception):
    """Base class for all library errors."""


class PrecisionExhausted(AffineTreesError):
    """Sign determination did not separate a sum from zero within the
    refinement budget.  Cannot happen for a genuinely nonzero value."""


class DimensionMismatch(AffineTreesError, ValueError):
    """Operands have incompatible sizes."""


class NotUpperTriangular(AffineTreesError, ValueError):
    pass


class NotStrictUpper(AffineTreesError, ValueError):
    pass


class NotUnitriangular(AffineTreesError, ValueError):
    pass


class NotAffineForm(AffineTreesError, ValueError):
    """Matrix is not upper triangular with a 1 in the bottom-right corner."""


class IdentityInput(AffineTreesError, ValueError):
    """Predicate is undefined for the trivial element."""


class ZeroInput(AffineTreesError, ValueError):
    """Operation is undefined for the zero element."""


class NotInverseClosed(AffineTreesError, ValueError):
    """Generating set must contain the inverse of each generator."""


class IndexSpaceMismatch(AffineTreesError, ValueError):
    """Lexicographic values live in different index spaces."""


class ZeroComparand(AffineTreesError, ValueError):
    """Archimedean comparison against the zero element is undefined."""


class StructureMismatch(AffineTreesError, ValueError):
    """Wreath-product operands belong to different group structures."""


class EmptyLevels(AffineTreesError, ValueError):
    """An iterated wreath construction needs at least one level."""


class IdentityViolation(AffineTreesError):
    """An algebraic identity that must hold exactly failed on a sample.

    Signals an implementation bug, never an expected outcome.
    """

    def __init__(self, tag, witness):
        super().__init__(f"identity {tag!r} violated: {witness!r}")
        self.tag = tag
        self.witness = witness


class ConfigInvalid(AffineTreesError, ValueError):
    """Verification suite configuration failed validation."""
