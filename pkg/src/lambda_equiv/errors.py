"""
Custom exceptions for the lambda_equiv library.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from lambda_equiv.syntax import Tm, Tp


class LambdaEquivError(Exception):
    """Base exception for all lambda_equiv errors."""

    def __init__(self, message: str, suggestion: str | None = None):
        self.suggestion = suggestion
        full_message = message
        if suggestion:
            full_message += f"\n\nSuggestion: {suggestion}"
        super().__init__(full_message)


class ContractError(LambdaEquivError):
    """Raised when a caller violates an operation's precondition."""


class ScopeError(ContractError):
    """Raised when a term mentions a variable outside the scope it is used in."""

    def __init__(self, index: int, scope: int):
        self.index = index
        self.scope = scope
        super().__init__(
            f"Variable #{index} is out of scope (only {scope} variables bound)"
        )


class IndexOutOfRange(ContractError):
    """Raised when looking up a de Bruijn index past the end of a context."""

    def __init__(self, index: int, length: int):
        self.index = index
        self.length = length
        super().__init__(
            f"Index {index} is out of range for a context of length {length}"
        )


class NotAPath(ContractError):
    """Raised when a path (a variable applied to arguments) was required."""

    def __init__(self, term: Tm):
        self.term = term
        super().__init__(f"Expected a path, got {term!r}")


class IllTyped(ContractError):
    """Raised when a term does not have the type an operation requires."""

    def __init__(self, term: Tm, expected: Tp | None = None):
        self.term = term
        self.expected = expected
        message = f"Term {term!r} is ill-typed"
        if expected is not None:
            message += f" at {expected!r}"
        super().__init__(message)


class InvalidPathSubst(ContractError):
    """Raised when a substitution is not a path substitution between two contexts."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message)


class InvalidTrace(ContractError):
    """Raised when a reduction trace does not replay onto the expected term."""


class MiddleTermMismatch(ContractError):
    """Raised when transitivity is applied to statements that do not chain."""


class InvalidDerivation(ContractError):
    """Raised when a declarative derivation does not prove its stated judgment."""


class FuelExhausted(LambdaEquivError):
    """Raised when weak head normalization takes more steps than allowed."""

    def __init__(self, fuel: int, term: Tm):
        self.fuel = fuel
        self.term = term
        super().__init__(
            f"Weak head normalization did not finish within {fuel} steps",
            suggestion="The term is probably ill-typed; check it, or raise --fuel",
        )


class GenerationFailed(LambdaEquivError):
    """Raised when the derivation generator cannot close its goals."""

    def __init__(self, seed: int, depth_bound: int):
        self.seed = seed
        self.depth_bound = depth_bound
        super().__init__(
            f"Could not generate a derivation of depth <= {depth_bound} (seed {seed})"
        )


class NotationError(LambdaEquivError):
    """Base class for problems with concrete syntax."""


class ParseError(NotationError):
    """Raised when concrete syntax does not match the grammar."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnboundVariable(NotationError):
    """Raised when concrete syntax mentions a name that nothing binds."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"Unbound variable: {name}",
            suggestion=f"Declare it in the context, e.g. '{name}:i'",
        )


class CertificateError(LambdaEquivError):
    """Raised when a certificate or derivation file is malformed."""

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        if path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class InconsistentCertificate(CertificateError):
    """Raised when an inner statement disagrees with what the rules above it produce."""
