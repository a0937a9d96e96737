"""Exception types shared across the library."""


class KrlError(Exception):
    """Base class for all library errors."""


class LatticeError(KrlError):
    """An operation needed a lattice property the input does not have."""


class VerificationFailed(KrlError):
    """A value that must hold by construction failed its direct check.

    Signals a broken fixture or an internal inconsistency, never a
    legitimate negative answer.
    """


class InvalidSource(KrlError):
    """Functor input failed validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SizeLimitExceeded(KrlError):
    """Construction refused because the result would be too large."""


class SearchBudgetExceeded(KrlError):
    """Certificate search gave up before reaching a definitive answer."""

    def __init__(self, nodes):
        super().__init__(f"certificate search exceeded its budget after {nodes} nodes")
        self.nodes = nodes


class ComposabilityError(KrlError):
    """Morphism composition attempted on mismatched endpoints."""


class NotAlexandroff(KrlError):
    """The operation requires an Alexandroff interior operator."""


class InvalidClosedPart(KrlError):
    """A closed-part value violates the closure conditions of its flavor."""


class HypothesisFailed(KrlError):
    """A named precondition of the implication-change construction broke.

    ``clause`` identifies which hypothesis failed and ``witness`` is a
    human-readable element (or pair) violating it.
    """

    def __init__(self, clause, witness):
        super().__init__(f"HypothesisFailed: {clause} at {witness}")
        self.clause = clause
        self.witness = witness


class SpecFileError(KrlError):
    """Base for errors raised by the document parser and workspace."""


class ParseError(SpecFileError):
    def __init__(self, message, line=None, expected=None):
        at = f" (line {line})" if line is not None else ""
        exp = f", expected {expected}" if expected else ""
        super().__init__(f"{message}{at}{exp}")
        self.line = line
        self.expected = expected


class IncompleteTable(SpecFileError):
    def __init__(self, section, missing):
        shown = ", ".join(missing[:8])
        more = "" if len(missing) <= 8 else f" and {len(missing) - 8} more"
        super().__init__(f"table '{section}' is missing entries for: {shown}{more}")
        self.section = section
        self.missing = missing


class UnknownElement(SpecFileError):
    def __init__(self, name, context):
        super().__init__(f"unknown element '{name}' in {context}")
        self.name = name
        self.context = context
