"""Frozen dataclass-based assertion helpers for lambda_equiv.

Each helper stores a judgment in concrete syntax and implements ``__call__``,
which decides it and re-checks the resulting certificate, raising
``AssertionError`` with the judgment in the message on failure.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Self

from lambda_equiv.algo import check_tm_eq, decide_tm_eq
from lambda_equiv.certificates import deserialize_decl
from lambda_equiv.decl import check_decl
from lambda_equiv.errors import LambdaEquivError
from lambda_equiv.logrel import completeness
from lambda_equiv.notation import parse_ctx, parse_term, parse_type
from lambda_equiv.reduction import DEFAULT_FUEL


def _describe(ctx: str, left: str, right: str, tp: str) -> str:
    return f"{ctx} ⊢ {left} ≡ {right} : {tp}"


@dataclass(frozen=True)
class Equivalent:
    """Assert two terms are beta-eta equal at a type.

    Example:
        Equivalent("f:i -> i", "f", "\\y. f y", "i -> i")()
        Equivalent("", "\\x. \\y. x", "\\x. \\y. y", "i -> i -> i").not_()()
        Equivalent("", "(\\x. x x) (\\x. x x)", "...", "i").with_fuel(50)
    """

    ctx: str
    left: str
    right: str
    type: str
    negate: bool = False
    fuel: int = DEFAULT_FUEL

    def __call__(self) -> None:
        """Execute the assertion.

        Raises:
            AssertionError: If the outcome differs from the expected one, the
                input does not parse or typecheck, or a certificate fails to check
        """
        judgment = _describe(self.ctx, self.left, self.right, self.type)
        try:
            ctx = parse_ctx(self.ctx)
            left = parse_term(self.left, ctx)
            right = parse_term(self.right, ctx)
            tp = parse_type(self.type)
            deriv = decide_tm_eq(ctx.types, left, right, tp, fuel=self.fuel)
        except LambdaEquivError as e:
            raise AssertionError(f"{e}\n\nJudgment: {judgment}") from e

        if self.negate:
            if deriv is not None:
                raise AssertionError(f"Expected terms to differ\n\nJudgment: {judgment}")
            return
        if deriv is None:
            raise AssertionError(f"Expected terms to be equal\n\nJudgment: {judgment}")
        if not check_tm_eq(ctx.types, deriv, left, right, tp):
            raise AssertionError(f"Certificate does not check\n\nJudgment: {judgment}")

    def not_(self) -> Self:
        """Return instance for negative assertion (terms should differ)."""
        return replace(self, negate=True)

    def with_fuel(self, fuel: int) -> Self:
        return replace(self, fuel=fuel)


@dataclass(frozen=True)
class Translates:
    """Assert a declarative derivation translates to a checkable certificate.

    Example:
        Translates(Path("tests/golden/beta.decl.json").read_text())()
    """

    derivation: str

    def __call__(self) -> None:
        try:
            (ctx, left, right, tp), deriv = deserialize_decl(self.derivation)
        except LambdaEquivError as e:
            raise AssertionError(f"Malformed derivation: {e}") from e
        if not check_decl(ctx.types, deriv, left, right, tp):
            raise AssertionError("Derivation does not prove its root statement")
        result = completeness(ctx.types, deriv)
        if not check_tm_eq(ctx.types, result, left, right, tp):
            raise AssertionError("Translated certificate does not check")
