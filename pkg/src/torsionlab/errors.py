"""Exception taxonomy shared across the package.

Three classes matter at the CLI boundary and map onto the documented exit
codes: bad input (1), a mathematical hypothesis that the input fails (2), and a
violated internal invariant, which always indicates a bug (3).
"""


class TorsionLabError(Exception):
    """Base class for all package errors."""


class InputError(TorsionLabError):
    """Malformed or inconsistent user input (files, literals, shapes)."""


class HypothesisError(TorsionLabError):
    """The requested statement does not apply to this input.

    Examples: homology is not torsion so no Alexander invariant exists, or a
    denominator determinant vanishes identically.
    """


class InternalInvariantError(TorsionLabError):
    """An invariant the implementation guarantees was observed to fail."""


class ParseError(InputError):
    """Literal syntax error; carries the offending position."""

    def __init__(self, text: str, pos: int, message: str):
        self.text = text
        self.pos = pos
        snippet = text[max(0, pos - 12) : pos + 12]
        super().__init__(f"{message} at position {pos} (near {snippet!r})")
