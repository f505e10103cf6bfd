"""Exception types shared across the package."""


class SetflowError(Exception):
    """Base class for all setflow errors."""


class GridMismatch(SetflowError):
    """Operands live on different direction grids or have the wrong length."""


class NotInCone(SetflowError):
    """A value vector violates the discrete support-cone condition."""

    def __init__(self, index, margin, tol):
        self.index = index
        self.margin = margin
        self.tol = tol
        super().__init__(
            f"cone condition violated at index {index}: margin {margin:.3e} < -{tol:.3e}"
        )


class EmptyIntersection(SetflowError):
    """The halfplane intersection of a value vector is empty."""


class NegativeScalar(SetflowError):
    """Support samples can only be scaled by nonnegative factors."""


class Contained(SetflowError):
    """One set is contained in the other; no farthest realizer exists."""


class AsymmetricDistance(SetflowError):
    """The one-sided distance in the requested order does not realize the
    Hausdorff distance; retry with the arguments swapped."""


class ZeroFunction(SetflowError):
    """The zero function has no normalized dual representatives."""


class DegenerateDistance(SetflowError):
    """The two sets coincide within tolerance; the check is vacuous."""


class DegenerateField(SetflowError):
    """The sampled field bound is zero, so the horizon is the full interval."""

    def __init__(self, horizon):
        self.horizon = horizon
        super().__init__(f"field vanished on every sample; horizon = {horizon}")


class NonFiniteValue(SetflowError):
    """A field evaluation produced NaN or infinite entries."""


class ConfigError(SetflowError):
    """Scenario configuration is malformed."""

    def __init__(self, code, message):
        self.code = code
        super().__init__(message)
