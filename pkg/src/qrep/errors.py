"""Exception hierarchy shared by the library and the CLI."""


class QrepError(Exception):
    """Base class for computation errors (CLI exit code 1)."""


class NotAdmissible(QrepError):
    """A relation contains a path of length < 2."""


class NotAdmissibleWithinCap(QrepError):
    """No m <= len_cap with J^m inside the ideal."""


class AlgebraMismatch(QrepError):
    pass


class DecompositionIncomplete(QrepError):
    """A remainder could not be certified indecomposable."""


class NotRadicalSquareZero(QrepError):
    pass


class ProjectiveInput(QrepError):
    pass


class NotIndecomposable(QrepError):
    pass


class CapExceeded(QrepError):
    """Raised with the partial result attached as ``.partial``."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ListEntryDecomposable(QrepError):
    pass


class DuplicateListEntry(QrepError):
    pass


class GenCogenFailed(QrepError):
    """The module is not a generator-cogenerator."""


class NotBasic(QrepError):
    pass


class PresentationMismatch(QrepError):
    """The extracted presentation does not reproduce the algebra's dimension."""


class ParseError(Exception):
    """Syntax or semantic error in an input file (CLI exit code 2)."""

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            where = f"{source or '<input>'}:{line}:{column or 1}: "
        super().__init__(where + message)
