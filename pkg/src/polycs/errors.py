"""Exception hierarchy shared by all polycs modules."""


class PolycsError(Exception):
    """Base class for every error raised by this package."""


class UnitarityViolation(PolycsError):
    """A squared ladder matrix element came out negative: the deformation
    parameters do not admit a unitary representation at this label."""


class RootSolveFailure(PolycsError):
    """The simultaneous root iteration did not reach the residual target."""


class DivergentSeries(PolycsError):
    """Series parameters lie outside the convergence domain."""


class ConvergenceFailure(PolycsError):
    """An iterative evaluation hit its term or iteration cap."""


class ZeroDenominator(PolycsError):
    """A parameter shift drove a lower series parameter onto a pole."""


class DomainError(PolycsError, ValueError):
    """Argument outside a function's domain."""


class DegenerateInput(PolycsError):
    """The requested quantity is undefined (0/0) at this input."""


class QuadratureFailure(PolycsError):
    """Numerical integration could not reach the requested tolerance."""
