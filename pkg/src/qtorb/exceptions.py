"""
Exceptions raised by qtorb.

Validation failures carry the full diagnostics list so that the CLI can print every
offending vertex or facet, not only the first one.
"""


class QtorbError(Exception):
    "Base class of all qtorb errors"


class ShapeError(QtorbError, ValueError):
    "A matrix has the wrong shape for the requested operation (e.g. non-square determinant)"


class DependentColumnsError(QtorbError, ValueError):
    "The columns of a coefficient matrix are linearly dependent"


class DiagnosticsError(QtorbError):
    """
    An error carrying a list of diagnostics.

    :param message: summary line
    :param diagnostics: list of strings, each naming one violation
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])

    def __str__(self):
        if self.diagnostics:
            return "{}: {}".format(self.args[0], "; ".join(self.diagnostics))
        return self.args[0]


class PolytopeError(DiagnosticsError):
    "Invalid combinatorial polytope or face"


class ModelError(DiagnosticsError):
    "Invalid characteristic model or model file"


class BlowupError(QtorbError, ValueError):
    "A blowup request is not admissible (face codimension, cone membership, primitivity)"


class UnsupportedOperation(QtorbError):
    "The model lacks the data the operation needs (e.g. vertex signs without inward normals)"


class ModelMismatchError(QtorbError, ValueError):
    "Objects coming from different models were combined"


class SectorError(QtorbError, ValueError):
    "The operation is undefined for the given sector (e.g. inverting the untwisted sector)"


class InvariantViolation(QtorbError):
    "An internal cross-check failed; this indicates an enumeration bug"


class UsageError(QtorbError):
    "Bad command line input that argparse itself cannot detect"
