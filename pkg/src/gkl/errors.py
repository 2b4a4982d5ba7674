"""Exception taxonomy shared by every module.

The CLI maps these onto exit codes: input/spec problems exit 2, fetch and
file problems exit 1, numerical failures exit 3.
"""


class GklError(Exception):
    """Base class for all library errors."""


class InvalidGraph(GklError):
    """Graph construction input violates the simple-undirected contract."""


class IncompatibleInput(GklError):
    """A graph does not satisfy a kernel's declared requirements."""


class SizeLimit(GklError):
    """Input exceeds a hard size bound (e.g. canonical codes above n=8)."""


class InvalidSpec(GklError):
    """Unknown kernel name or a parameter outside its schema."""


class EmptyCollection(GklError):
    """fit/transform called with no graphs."""


class NotFitted(GklError):
    """transform/diagonal requested before fit completed."""


class InvalidShape(GklError):
    """Matrix or vector dimensions do not match the operation contract."""


class NumericalError(GklError):
    """Numerical precondition violated (non-PSD input, solver failure)."""


class Divergent(NumericalError):
    """Random-walk geometric series diverges for the requested decay."""

    def __init__(self, decay: float, radius_estimate: float):
        self.decay = decay
        self.radius_estimate = radius_estimate
        super().__init__(
            f"random walk diverges: decay {decay!r} * spectral radius estimate "
            f"{radius_estimate:.6g} >= margin; lower the decay"
        )


class DegenerateKernel(NumericalError):
    """Landmark kernel block has no eigenvalue above the cutoff."""


class FetchError(GklError):
    """Dataset download failed."""

    def __init__(self, detail, status: int | None = None):
        self.status = status
        if status is not None:
            super().__init__(f"FetchError({status}): {detail}")
        else:
            super().__init__(f"FetchError: {detail}")


class CorruptDataset(GklError):
    """Dataset archive or file contents violate the TU format."""


class ParseError(GklError):
    """A dataset file contains an unparseable token."""
