"""Exception hierarchy shared by every layer of the engine.

All engine errors derive from :class:`TensorLogicError` so callers can catch
one type at the boundary (the CLI does exactly that).  Parse-time errors carry
source positions; everything else carries a plain message.
"""

from __future__ import annotations


class TensorLogicError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(TensorLogicError):
    """Operand dimensions are incompatible for the requested operation."""


class RankError(TensorLogicError):
    """A tensor with an unsupported rank (e.g. rank 0) was requested."""


class NotSquareError(TensorLogicError):
    """A square matrix was required but the operand is not square."""


class ElementCapError(TensorLogicError):
    """A tensor construction would exceed the configured element cap."""


class UnknownNameError(TensorLogicError):
    """A name is not declared in the model (atom, predicate, or relation)."""

    def __init__(self, name: str, kind: str = "name"):
        super().__init__(f"unknown {kind}: {name!r}")
        self.name = name
        self.kind = kind


class UnknownAtomError(UnknownNameError):
    def __init__(self, name: str):
        super().__init__(name, "atom")


class UnknownPredicateError(UnknownNameError):
    def __init__(self, name: str):
        super().__init__(name, "predicate")


class UnknownRelationError(UnknownNameError):
    def __init__(self, name: str):
        super().__init__(name, "relation")


class DuplicateNameError(TensorLogicError):
    """A name is declared more than once within a model."""


class ArityError(TensorLogicError):
    """Argument count does not match a relation's declared arity."""


class NonCharacteristicError(TensorLogicError):
    """A vector expected to have 0/1 entries has some other entry."""


class NonOneHotError(TensorLogicError):
    """A vector expected to be one-hot is not."""


class InvalidPredicateError(TensorLogicError):
    """A hand-built predicate or relation tensor violates its invariants."""


class InvalidTruthValueError(TensorLogicError):
    """A 2-vector does not encode a valid (crisp or normalized) truth value."""


class ParseError(TensorLogicError):
    """Syntax or binding error in model or formula text.

    ``line`` and ``column`` are 1-based positions into the parsed text.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.bare_message = message
        self.line = line
        self.column = column


class EmbeddedQuantifierError(ParseError):
    """A quantifier appeared somewhere other than the root of a formula."""


class PlanTooLargeError(TensorLogicError):
    """Compiling a formula would materialize a tensor above the element cap."""
