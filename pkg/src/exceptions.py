from typing import Optional


class WorkbenchError(ValueError):
    """Base class for every error raised on bad input to the workbench"""


class VocabularyError(WorkbenchError):
    """A feature, atom, role or domain id that the interpretation does not know"""


class ConceptSyntaxError(WorkbenchError):
    """Malformed concept or TBox text, with the position of the problem"""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class NaturalnessError(WorkbenchError):
    """A non-natural concept where the grammar requires a natural one"""

    def __init__(self, message: str, subterm: str):
        self.subterm = subterm
        super().__init__(f"{message}: {subterm}")


class DeclarationError(WorkbenchError):
    pass


class TranslationError(WorkbenchError):
    pass


class DocumentError(WorkbenchError):
    pass


class GenerationError(WorkbenchError):
    pass


class BoundsError(WorkbenchError):
    pass


class UnknownPropositionError(WorkbenchError):
    pass


class WitnessError(WorkbenchError):
    pass
