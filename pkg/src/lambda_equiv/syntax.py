"""
Object-language types, de Bruijn terms, typing contexts and the type checker.

Terms use de Bruijn indices: ``Var(0)`` is the innermost binder. A context is a
tuple of types whose *last* element types ``Var(0)``, so extending a context
appends to the right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from lambda_equiv.errors import IllTyped, IndexOutOfRange, NotAPath


@dataclass(frozen=True, slots=True)
class Base:
    """The base type ``i``."""


@dataclass(frozen=True, slots=True)
class Arr:
    """The function type ``domain -> codomain``."""

    domain: Tp
    codomain: Tp


type Tp = Base | Arr

BASE = Base()


@dataclass(frozen=True, slots=True)
class Var:
    index: int


@dataclass(frozen=True, slots=True)
class Lam:
    body: Tm


@dataclass(frozen=True, slots=True)
class App:
    fun: Tm
    arg: Tm


type Tm = Var | Lam | App

type Ctx = tuple[Tp, ...]


def arrows(*types: Tp) -> Tp:
    """Build a right-nested arrow type: ``arrows(A, B, C) == A -> (B -> C)``."""
    result = types[-1]
    for domain in reversed(types[:-1]):
        result = Arr(domain, result)
    return result


def extend_ctx(ctx: Ctx, tp: Tp) -> Ctx:
    """Bind a new innermost variable of type ``tp``."""
    return (*ctx, tp)


def lookup(ctx: Ctx, index: int) -> Tp:
    """
    Type of the variable with de Bruijn index ``index``.

    Index 0 is the last entry of the context; each further index steps one
    binder outward.

    Raises:
        IndexOutOfRange: If the context has no entry for the index
    """
    if 0 <= index < len(ctx):
        return ctx[-1 - index]
    raise IndexOutOfRange(index, len(ctx))


def is_path(term: Tm) -> bool:
    """True iff ``term`` is a variable applied to zero or more arguments."""
    while isinstance(term, App):
        term = term.fun
    return isinstance(term, Var)


def spine(term: Tm) -> tuple[Tm, list[Tm]]:
    """Split ``h a1 ... an`` into its head ``h`` and arguments ``[a1, ..., an]``."""
    args: list[Tm] = []
    while isinstance(term, App):
        args.append(term.arg)
        term = term.fun
    args.reverse()
    return term, args


def scope_of(term: Tm) -> int:
    """Least context length in which ``term`` is well-scoped."""
    match term:
        case Var(index):
            return index + 1
        case Lam(body):
            return max(scope_of(body) - 1, 0)
        case App(fun, arg):
            return max(scope_of(fun), scope_of(arg))


def term_size(term: Tm) -> int:
    match term:
        case Var():
            return 1
        case Lam(body):
            return 1 + term_size(body)
        case App(fun, arg):
            return 1 + term_size(fun) + term_size(arg)


def type_depth(tp: Tp) -> int:
    match tp:
        case Base():
            return 0
        case Arr(domain, codomain):
            return 1 + max(type_depth(domain), type_depth(codomain))


def shift(term: Tm, by: int, cutoff: int = 0) -> Tm:
    """Add ``by`` to every free index at or above ``cutoff``."""
    match term:
        case Var(index):
            return Var(index + by) if index >= cutoff else term
        case Lam(body):
            return Lam(shift(body, by, cutoff + 1))
        case App(fun, arg):
            return App(shift(fun, by, cutoff), shift(arg, by, cutoff))


def mentions(term: Tm, index: int) -> bool:
    """True iff the free variable ``index`` occurs in ``term``."""
    match term:
        case Var(k):
            return k == index
        case Lam(body):
            return mentions(body, index + 1)
        case App(fun, arg):
            return mentions(fun, index) or mentions(arg, index)


def unshift(term: Tm) -> Tm | None:
    """Inverse of ``shift(term, 1)``; None if ``Var(0)`` occurs free."""
    if mentions(term, 0):
        return None
    return _down(term, 0)


def _down(term: Tm, cutoff: int) -> Tm:
    match term:
        case Var(index):
            return Var(index - 1) if index > cutoff else term
        case Lam(body):
            return Lam(_down(body, cutoff + 1))
        case App(fun, arg):
            return App(_down(fun, cutoff), _down(arg, cutoff))


# Type checking
#
# Checking is bidirectional: lambdas are checked against arrows, variables and
# applications synthesize. A lambda in synthesis position (the head of a
# beta-redex) gets a metavariable for its domain, solved by first-order
# unification, which makes the checker exact for Curry-style typing.


@dataclass(frozen=True, slots=True)
class _Meta:
    id: int


type _Ty = Base | Arr | _Meta


class _Checker:
    """One typing problem: a metavariable supply plus its solution."""

    def __init__(self) -> None:
        self._solution: dict[int, _Ty] = {}
        self._ids = itertools.count()

    def fresh(self) -> _Meta:
        return _Meta(next(self._ids))

    def resolve(self, ty: _Ty) -> _Ty:
        while isinstance(ty, _Meta) and ty.id in self._solution:
            ty = self._solution[ty.id]
        return ty

    def occurs(self, meta: _Meta, ty: _Ty) -> bool:
        match self.resolve(ty):
            case _Meta(id=other):
                return other == meta.id
            case Arr(domain, codomain):
                return self.occurs(meta, domain) or self.occurs(meta, codomain)
            case _:
                return False

    def unify(self, left: _Ty, right: _Ty) -> bool:
        left, right = self.resolve(left), self.resolve(right)
        match left, right:
            case _Meta(id=a), _Meta(id=b) if a == b:
                return True
            case _Meta(), _:
                if self.occurs(left, right):
                    return False
                self._solution[left.id] = right
                return True
            case _, _Meta():
                return self.unify(right, left)
            case Base(), Base():
                return True
            case Arr(d1, c1), Arr(d2, c2):
                return self.unify(d1, d2) and self.unify(c1, c2)
            case _:
                return False

    def zonk(self, ty: _Ty) -> Tp:
        """Fully resolve a type; unsolved metavariables default to ``i``."""
        match self.resolve(ty):
            case Arr(domain, codomain):
                return Arr(self.zonk(domain), self.zonk(codomain))
            case _:
                return BASE

    def check(self, ctx: tuple[_Ty, ...], term: Tm, expected: _Ty) -> bool:
        expected = self.resolve(expected)
        match term, expected:
            case Lam(body), Arr(domain, codomain):
                return self.check((*ctx, domain), body, codomain)
            case Lam(), Base():
                return False
            case Lam(body), _Meta():
                domain, codomain = self.fresh(), self.fresh()
                self.unify(expected, Arr(domain, codomain))
                return self.check((*ctx, domain), body, codomain)
        inferred = self.infer(ctx, term)
        return inferred is not None and self.unify(inferred, expected)

    def infer(self, ctx: tuple[_Ty, ...], term: Tm) -> _Ty | None:
        match term:
            case Var(index):
                if 0 <= index < len(ctx):
                    return ctx[-1 - index]
                return None
            case Lam(body):
                domain = self.fresh()
                codomain = self.infer((*ctx, domain), body)
                return None if codomain is None else Arr(domain, codomain)
            case App(fun, arg):
                fun_ty = self.infer(ctx, fun)
                if fun_ty is None:
                    return None
                match self.resolve(fun_ty):
                    case Arr(domain, codomain):
                        return codomain if self.check(ctx, arg, domain) else None
                    case _Meta() as meta:
                        domain, codomain = self.fresh(), self.fresh()
                        self.unify(meta, Arr(domain, codomain))
                        return codomain if self.check(ctx, arg, domain) else None
                    case _:
                        return None


def type_check(ctx: Ctx, term: Tm, tp: Tp) -> bool:
    """True iff ``term`` has type ``tp`` in ``ctx`` under the simply typed rules."""
    return _Checker().check(ctx, term, tp)


def infer_type(ctx: Ctx, term: Tm) -> Tp | None:
    """
    Some type of ``term`` in ``ctx``, or None if it has none.

    Parts of the type that the term leaves undetermined (the domain of an
    unused lambda argument, say) are chosen to be ``i``.
    """
    checker = _Checker()
    inferred = checker.infer(ctx, term)
    return None if inferred is None else checker.zonk(inferred)


def infer_path_type(ctx: Ctx, path: Tm) -> Tp:
    """
    The unique type of a path.

    The head variable's type is read from the context and every argument is
    checked against the domain it meets, so the result does not depend on any
    choice.

    Raises:
        NotAPath: If ``path`` is not a variable applied to arguments
        IndexOutOfRange: If the head variable is not bound by ``ctx``
        IllTyped: If an argument does not fit its function's domain
    """
    head, args = spine(path)
    if not isinstance(head, Var):
        raise NotAPath(path)
    tp = lookup(ctx, head.index)
    for arg in args:
        match tp:
            case Arr(domain, codomain):
                if not type_check(ctx, arg, domain):
                    raise IllTyped(arg, domain)
                tp = codomain
            case Base():
                raise IllTyped(path)
    return tp
