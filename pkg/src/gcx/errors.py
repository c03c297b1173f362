"""Exception hierarchy shared by the engine and the command line front end."""


class GcxError(Exception):
    """Base class for every error raised by :mod:`gcx`."""

    exit_code = 1


class ParseError(GcxError):
    """Malformed model file.  Carries the 1-based line and column."""

    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class StructureError(GcxError):
    """A structural invariant failed (J^2 != -1, non-integrable, exactness...)."""

    exit_code = 3


class ContainmentError(StructureError):
    """A subspace that must sit inside another does not."""


class TheoremViolation(GcxError):
    """Output contradicts a proved theorem; always a bug in the engine."""

    exit_code = 4
