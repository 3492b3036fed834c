"""Exception hierarchy shared by all modules."""


class AspExplainError(Exception):
    """Base class for every error raised by this package."""


# --- aspif parsing ---

class AspifError(AspExplainError):
    """Base class for errors in the aspif text itself."""


class MalformedHeader(AspifError):
    pass


class TruncatedStatement(AspifError):
    pass


class MissingTerminator(AspifError):
    pass


# --- program reconstruction ---

class ReconstructionError(AspExplainError):
    """Base class for errors while rebuilding rules from aspif statements."""


class MultiLiteralOutputCondition(ReconstructionError):
    pass


class DuplicateSymbol(ReconstructionError):
    pass


class UnsupportedWeightBody(ReconstructionError):
    pass


class AuxCycle(ReconstructionError):
    pass


# --- engines ---

class NoSupport(AspExplainError):
    """A true atom has no rule whose body holds -- not an answer set."""


class UnviolableConstraint(AspExplainError):
    """A constraint is violated but nothing in its body saves it."""


class NotApplicable(AspExplainError):
    """The choice atom's truth value does not save this constraint."""


class UnknownLiteral(AspExplainError):
    """The queried literal names no atom, or has the wrong polarity for A."""


class NoValidGraph(AspExplainError):
    """Every expansion of the root violates a graph invariant."""


class TooLarge(AspExplainError):
    """An enumeration exceeded its configured cap."""
