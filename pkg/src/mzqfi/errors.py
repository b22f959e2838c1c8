"""Exception types shared across the package."""


class MzqfiError(Exception):
    """Base class for all package errors."""


class DomainError(MzqfiError, ValueError):
    """A parameter lies outside its documented domain."""


class TailTooLarge(MzqfiError):
    """Truncation tail mass exceeds the requested tolerance."""

    def __init__(self, tail_mass: float, tol: float, context: str = ""):
        self.tail_mass = tail_mass
        self.tol = tol
        msg = f"truncation tail mass {tail_mass:.3e} exceeds tolerance {tol:.3e}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class DegenerateCat(DomainError):
    """Cat-state normalization denominator is numerically zero."""


class DimensionMismatch(MzqfiError, ValueError):
    """Operator and state live on different truncated spaces."""


class NotDensityMatrix(MzqfiError):
    """Matrix fails trace, Hermiticity, or positivity checks."""


class BasisDegenerate(MzqfiError):
    """The two branch states coincide, so the 2D support basis is undefined."""
