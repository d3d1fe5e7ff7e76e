"""
Simultaneous substitutions over de Bruijn terms and their equational theory.

A substitution is a first-class tuple of terms. Entry ``k`` counted from the
right replaces ``Var(k)`` of the domain context; every entry is a term over the
codomain context. The laws the rest of the library relies on hold as exact
structural equalities:

* ``apply_tm(id_subst(n), M) == M``
* ``apply_tm(compose(s, t), M) == apply_tm(t, apply_tm(s, M))``
* ``compose(extend(s, N), t) == extend(compose(s, t), apply_tm(t, N))``
* ``apply_tm(extend(s, N), M) == instantiate(apply_tm(lift(s), M), N)``
"""

from __future__ import annotations

from dataclasses import dataclass

from lambda_equiv.errors import ContractError, InvalidPathSubst, ScopeError
from lambda_equiv.syntax import (
    App,
    Ctx,
    Lam,
    Tm,
    Var,
    infer_path_type,
    is_path,
    scope_of,
    shift,
)


@dataclass(frozen=True, slots=True)
class Subst:
    """A simultaneous substitution; the last entry replaces ``Var(0)``."""

    entries: tuple[Tm, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, index: int) -> Tm:
        """
        The replacement for ``Var(index)``.

        Raises:
            ScopeError: If the substitution's domain does not bind ``index``
        """
        if 0 <= index < len(self.entries):
            return self.entries[-1 - index]
        raise ScopeError(index, len(self.entries))


# A substitution whose entries are all paths of the types the domain declares.
# Validity depends on the two contexts, so it is checked, not encoded.
type PathSubst = Subst

EMPTY = Subst()


def id_subst(n: int) -> Subst:
    """Identity on a context of length ``n``: ``Var(n-1), ..., Var(0)``."""
    return Subst(tuple(Var(k) for k in reversed(range(n))))


def weaken(subst: Subst, by: int) -> Subst:
    """Shift every entry up by ``by``; the codomain grows by ``by`` variables."""
    if by == 0:
        return subst
    return Subst(tuple(shift(entry, by) for entry in subst.entries))


def shift_subst(n: int, by: int) -> Subst:
    """The weakening ``Γ, Γ' ⊢ x1/x1, ..., xn/xn : Γ`` with ``|Γ| = n`` and ``|Γ'| = by``."""
    return weaken(id_subst(n), by)


def extend(subst: Subst, term: Tm) -> Subst:
    """Append ``term`` as the replacement for a new innermost domain variable."""
    return Subst((*subst.entries, term))


def lift(subst: Subst) -> Subst:
    """Push a substitution under one binder: ``(s[↑], Var(0)/Var(0))``."""
    return extend(weaken(subst, 1), Var(0))


def apply_tm(subst: Subst, term: Tm) -> Tm:
    """
    Capture-avoiding simultaneous substitution ``term[subst]``.

    Raises:
        ScopeError: If ``term`` mentions a variable the substitution does not cover
    """
    match term:
        case Var(index):
            return subst.entry(index)
        case Lam(body):
            return Lam(apply_tm(lift(subst), body))
        case App(fun, arg):
            return App(apply_tm(subst, fun), apply_tm(subst, arg))


def compose(first: Subst, second: Subst) -> Subst:
    """The substitution that applies ``first`` and then ``second``."""
    return Subst(tuple(apply_tm(second, entry) for entry in first.entries))


def instantiate(body: Tm, arg: Tm) -> Tm:
    """
    Single substitution ``body[arg/0]``, the contractum of a beta step.

    The identity part of the substitution is sized to the free variables of
    the redex, so no context needs to be passed.
    """
    n = max(scope_of(body) - 1, scope_of(arg), 0)
    return apply_tm(extend(id_subst(n), arg), body)


def is_path_subst(source: Ctx, subst: Subst, target: Ctx) -> bool:
    """True iff ``subst`` maps every variable of ``source`` to a path of the same type in ``target``."""
    try:
        check_path_subst(source, subst, target)
    except ContractError:
        return False
    return True


def check_path_subst(source: Ctx, subst: Subst, target: Ctx) -> None:
    """
    Validate a path substitution from ``source`` into ``target``.

    Raises:
        InvalidPathSubst: If a length or an entry does not match
    """
    if len(subst) != len(source):
        raise InvalidPathSubst(
            f"Substitution has {len(subst)} entries for a context of length {len(source)}"
        )
    for position, (entry, tp) in enumerate(zip(subst.entries, source)):
        index = len(source) - 1 - position
        if not is_path(entry):
            raise InvalidPathSubst(
                f"Entry for #{index} is not a path: {entry!r}", position=index
            )
        try:
            actual = infer_path_type(target, entry)
        except ContractError as e:
            raise InvalidPathSubst(
                f"Entry for #{index} is ill-typed: {e}", position=index
            ) from e
        if actual != tp:
            raise InvalidPathSubst(
                f"Entry for #{index} has type {actual!r}, expected {tp!r}",
                position=index,
            )
