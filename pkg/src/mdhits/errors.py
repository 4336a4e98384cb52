"""Exception hierarchy shared by all mdhits modules."""


class MDHitsError(ValueError):
    """Base class for every error raised by mdhits."""

    kind = "error"


class ShapeError(MDHitsError):
    """Index out of bounds, wrong vector length or invalid mode."""

    kind = "shape"


class WeightError(MDHitsError):
    """Nonpositive, infinite or NaN edge weight."""

    kind = "weight"


class ParseError(MDHitsError):
    """Malformed line in an edge-list file."""

    kind = "parse"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ZeroTensorError(MDHitsError):
    """The adjacency tensor has no stored entries."""

    kind = "zero_tensor"


class InfeasibleAlphaError(MDHitsError):
    """Exponents with rho(M_alpha) >= 1, where uniqueness is not guaranteed."""

    kind = "infeasible_alpha"

    def __init__(self, message, rho=None):
        self.rho = rho
        super().__init__(message)


class InactiveModeError(MDHitsError):
    """A slice of a centrality tuple is identically zero."""

    kind = "inactive_mode"

    def __init__(self, mode):
        self.mode = mode
        super().__init__(f"slice {mode} is identically zero (inactive mode)")


class NonconformingError(MDHitsError):
    """A tuple whose zero pattern does not match the tensor support."""

    kind = "nonconforming"
