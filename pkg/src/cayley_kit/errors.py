"""Exception hierarchy shared by all modules."""


class CayleyKitError(ValueError):
    """Base class for every error raised by this package."""


class SingularMatrixError(CayleyKitError):
    pass


class DimensionMismatchError(CayleyKitError):
    pass


class NotFullDimensionalError(CayleyKitError):
    """Raised by operations that need ``dim P == ambient_dim``.

    Use :func:`cayley_kit.polytope.restrict_to_affine_hull` first.
    """

    def __init__(self, dim, ambient_dim):
        super().__init__(
            f"polytope has dimension {dim} in ambient dimension {ambient_dim}; "
            "restrict it to its affine hull first (restrict_to_affine_hull)")
        self.dim = dim
        self.ambient_dim = ambient_dim


class InvalidCertificateError(CayleyKitError):
    pass


class DegenerationError(CayleyKitError):
    """A stage of the witness-to-certificate pipeline failed.

    ``stage`` names the failing step; the message is ``"<stage>: <detail>"``
    unless a fixed message is given.
    """

    def __init__(self, stage, detail, message=None):
        super().__init__(message or f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


class DependentWitnessError(DegenerationError):
    def __init__(self):
        super().__init__("normalize-star", "dependent")


class StarConditionError(DegenerationError):
    def __init__(self, detail):
        super().__init__("degenerate", detail)


class OverlappingSupportsError(DegenerationError):
    def __init__(self, position):
        super().__init__("labels", f"supports overlap at position {position}")


class PiPrimeError(DegenerationError):
    def __init__(self, detail):
        super().__init__("pi-prime", detail, f"pi-prime {detail}")
