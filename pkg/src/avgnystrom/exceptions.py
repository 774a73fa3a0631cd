"""Exception hierarchy used across the package."""


class ParameterError(ValueError):
    """A measure or weight parameter lies outside its admissible range."""


class NumericalError(ArithmeticError):
    """An eigen-solve or factorization failed in working precision."""


class SolverError(NumericalError):
    """A linear system is singular to working precision."""


class AssemblyError(ValueError):
    """A Nystrom system cannot be assembled for the given rule."""


class EvaluationError(ValueError):
    """A user evaluator returned a non-finite value."""


class DomainError(ValueError):
    """An evaluation point lies outside the domain of the measure."""
