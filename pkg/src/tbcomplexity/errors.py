"""Exception hierarchy shared by the library and the command line."""


class ComplexityError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ComplexityError, ValueError):
    """An argument lies outside the domain of the operation."""


class StructuralError(ComplexityError):
    """A triangulation is combinatorially inconsistent."""


class UnsupportedInputError(ComplexityError):
    """The input is valid but not handled (e.g. non-orientable)."""


class TriangulationParseError(StructuralError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CocycleError(ComplexityError):
    """Weights on face gluings do not define a usable circle-valued class."""


class SolverError(ComplexityError):
    """Base for gluing-equation solver failures."""


class NoGeometricSolution(SolverError):
    pass


class DegenerateSolution(SolverError):
    pass


class InternalInconsistency(ComplexityError):
    """A lower bound exceeded an upper bound; never expected."""
