"""Exception hierarchy.

Every failure the pipeline can report derives from :class:`JordanError`;
``exit_code`` is what the CLI returns for it.
"""


class JordanError(Exception):
    exit_code = 10


class DimensionMismatch(JordanError, ValueError):
    exit_code = 2


class ParseError(JordanError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DimensionError(ParseError):
    pass


class NotFullyFactorableOverRationals(JordanError):
    exit_code = 3


class InconsistentSpectrum(JordanError):
    exit_code = 4


class SeedExhaustion(JordanError):
    exit_code = 5


class ZeroProjection(JordanError):
    """Seed had no component in the target generalized eigenspace."""

    exit_code = 6


class CapExceeded(JordanError):
    exit_code = 6


class ExhaustedEigenvalue(JordanError):
    exit_code = 6

    def __init__(self, message, eigenvalue=None):
        self.eigenvalue = eigenvalue
        super().__init__(message)


class SingularMatrix(JordanError, ZeroDivisionError):
    exit_code = 7


class IncompleteBasis(JordanError):
    exit_code = 8
