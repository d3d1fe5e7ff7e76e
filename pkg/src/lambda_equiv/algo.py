"""
Algorithmic equality: type-directed term equality and syntax-directed path
equality, as certificate trees.

``TmEqDeriv`` proves ``ctx ⊢ M ⇔ N : T``:

* ``AlgArr(body)`` at ``A -> B``: ``body`` proves ``M↑ x ⇔ N↑ x : B`` in
  ``ctx, x:A``, where ``↑`` shifts past the fresh variable ``x = Var(0)``.
* ``AlgBase(trace_left, trace_right, paths)`` at ``i``: both sides weak head
  reduce along the traces to paths that ``paths`` proves equal.

``PathEqDeriv`` proves ``ctx ⊢ P ↔ Q : T``:

* ``PVar(k)``: ``Var(k) ↔ Var(k)`` at the type the context gives ``k``.
* ``PApp(fun, arg)``: ``P N₁ ↔ Q N₂ : S`` from ``P ↔ Q : T -> S`` and ``N₁ ⇔ N₂ : T``.

Derivations do not record their statements; checkers take the statement as
input and reconstruct every intermediate one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from lambda_equiv.errors import IllTyped, InvalidPathSubst, MiddleTermMismatch
from lambda_equiv.reduction import DEFAULT_FUEL, MStep, replay, whnf
from lambda_equiv.subst import Subst, check_path_subst, lift
from lambda_equiv.syntax import (
    BASE,
    App,
    Arr,
    Base,
    Ctx,
    Tm,
    Tp,
    Var,
    extend_ctx,
    is_path,
    lookup,
    shift,
    type_check,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class AlgBase:
    trace_left: MStep
    trace_right: MStep
    paths: PathEqDeriv


@dataclass(frozen=True, slots=True)
class AlgArr:
    body: TmEqDeriv


type TmEqDeriv = AlgBase | AlgArr


@dataclass(frozen=True, slots=True)
class PVar:
    index: int


@dataclass(frozen=True, slots=True)
class PApp:
    fun: PathEqDeriv
    arg: TmEqDeriv


type PathEqDeriv = PVar | PApp


def apply_fresh(term: Tm) -> Tm:
    """``M↑ x``: apply a term to the fresh innermost variable."""
    return App(shift(term, 1), Var(0))


# Decision procedure


def decide_tm_eq(
    ctx: Ctx, left: Tm, right: Tm, tp: Tp, *, fuel: int = DEFAULT_FUEL
) -> TmEqDeriv | None:
    """
    Decide ``ctx ⊢ left ⇔ right : tp``, returning a certificate or None.

    Args:
        ctx: Typing context of both terms
        left: Left-hand term
        right: Right-hand term
        tp: The type to compare at
        fuel: Step budget for each weak head normalization

    Returns:
        A derivation that ``check_tm_eq`` accepts, or None if the terms differ

    Raises:
        IllTyped: If either term does not have type ``tp`` in ``ctx``
        FuelExhausted: If normalization runs out of fuel
    """
    for term in (left, right):
        if not type_check(ctx, term, tp):
            raise IllTyped(term, tp)
    result = _decide_tm(ctx, left, right, tp, fuel)
    logger.debug("decide_tm_eq: %s", "equal" if result is not None else "different")
    return result


def decide_path_eq(
    ctx: Ctx, left: Tm, right: Tm, *, fuel: int = DEFAULT_FUEL
) -> tuple[PathEqDeriv, Tp] | None:
    """Decide ``ctx ⊢ left ↔ right``; on success also return the common type."""
    if not (is_path(left) and is_path(right)):
        return None
    return _decide_path(ctx, left, right, fuel)


def _decide_tm(ctx: Ctx, left: Tm, right: Tm, tp: Tp, fuel: int) -> TmEqDeriv | None:
    match tp:
        case Arr(domain, codomain):
            body = _decide_tm(
                extend_ctx(ctx, domain),
                apply_fresh(left),
                apply_fresh(right),
                codomain,
                fuel,
            )
            return None if body is None else AlgArr(body)
        case Base():
            left_nf, trace_left = whnf(left, fuel)
            right_nf, trace_right = whnf(right, fuel)
            if not (is_path(left_nf) and is_path(right_nf)):
                return None
            found = _decide_path(ctx, left_nf, right_nf, fuel)
            if found is None or found[1] != BASE:
                return None
            return AlgBase(trace_left, trace_right, found[0])


def _decide_path(
    ctx: Ctx, left: Tm, right: Tm, fuel: int
) -> tuple[PathEqDeriv, Tp] | None:
    match left, right:
        case Var(k), Var(j) if k == j and k < len(ctx):
            return PVar(k), lookup(ctx, k)
        case App(fun_left, arg_left), App(fun_right, arg_right):
            found = _decide_path(ctx, fun_left, fun_right, fuel)
            if found is None:
                return None
            match found[1]:
                case Arr(domain, codomain):
                    arg = _decide_tm(ctx, arg_left, arg_right, domain, fuel)
                    if arg is None:
                        return None
                    return PApp(found[0], arg), codomain
    return None


# Checkers


def check_tm_eq(ctx: Ctx, deriv: TmEqDeriv, left: Tm, right: Tm, tp: Tp) -> bool:
    """True iff ``deriv`` is a valid derivation of ``ctx ⊢ left ⇔ right : tp``."""
    match deriv, tp:
        case AlgArr(body), Arr(domain, codomain):
            return check_tm_eq(
                extend_ctx(ctx, domain),
                body,
                apply_fresh(left),
                apply_fresh(right),
                codomain,
            )
        case AlgBase(trace_left, trace_right, paths), Base():
            left_nf = replay(left, trace_left)
            right_nf = replay(right, trace_right)
            if left_nf is None or right_nf is None:
                return False
            return check_path_eq(ctx, paths, left_nf, right_nf) == BASE
    return False


def check_path_eq(ctx: Ctx, deriv: PathEqDeriv, left: Tm, right: Tm) -> Tp | None:
    """The type at which ``deriv`` proves ``left ↔ right`` in ``ctx``, or None."""
    match deriv, left, right:
        case PVar(k), Var(a), Var(b) if k == a == b and 0 <= k < len(ctx):
            return lookup(ctx, k)
        case PApp(fun, arg), App(fun_left, arg_left), App(fun_right, arg_right):
            match check_path_eq(ctx, fun, fun_left, fun_right):
                case Arr(domain, codomain) if check_tm_eq(
                    ctx, arg, arg_left, arg_right, domain
                ):
                    return codomain
    return None


# Weakening under path substitutions


def weaken_tm_eq(
    pi: Subst, source: Ctx, target: Ctx, deriv: TmEqDeriv, tp: Tp
) -> TmEqDeriv:
    """
    Transport ``source ⊢ M ⇔ N : tp`` to ``target ⊢ M[pi] ⇔ N[pi] : tp``.

    Weak head steps commute with substitution, so traces carry over unchanged;
    every ``PVar(k)`` becomes a derivation for the path ``pi`` puts at ``k``.

    Raises:
        InvalidPathSubst: If ``pi`` is not a path substitution from ``source`` to ``target``
    """
    check_path_subst(source, pi, target)
    return _weaken_tm(pi, source, target, deriv, tp)


def weaken_path_eq(
    pi: Subst, source: Ctx, target: Ctx, deriv: PathEqDeriv
) -> PathEqDeriv:
    """Path analogue of ``weaken_tm_eq``."""
    check_path_subst(source, pi, target)
    return _weaken_path(pi, source, target, deriv)[0]


def _weaken_tm(
    pi: Subst, source: Ctx, target: Ctx, deriv: TmEqDeriv, tp: Tp
) -> TmEqDeriv:
    match deriv, tp:
        case AlgArr(body), Arr(domain, codomain):
            return AlgArr(
                _weaken_tm(
                    lift(pi),
                    extend_ctx(source, domain),
                    extend_ctx(target, domain),
                    body,
                    codomain,
                )
            )
        case AlgBase(trace_left, trace_right, paths), Base():
            return AlgBase(
                trace_left, trace_right, _weaken_path(pi, source, target, paths)[0]
            )
    raise InvalidPathSubst(f"Derivation {type(deriv).__name__} does not fit type {tp!r}")


def _weaken_path(
    pi: Subst, source: Ctx, target: Ctx, deriv: PathEqDeriv
) -> tuple[PathEqDeriv, Tp]:
    match deriv:
        case PVar(k):
            tp = lookup(source, k)
            match pi.entry(k):
                case Var(j):
                    return PVar(j), tp
                case entry:
                    found = _decide_path(target, entry, entry, DEFAULT_FUEL)
                    if found is None:
                        raise InvalidPathSubst(
                            f"Entry for #{k} is not self-related: {entry!r}", position=k
                        )
                    return found[0], tp
        case PApp(fun, arg):
            fun2, fun_tp = _weaken_path(pi, source, target, fun)
            match fun_tp:
                case Arr(domain, codomain):
                    return PApp(fun2, _weaken_tm(pi, source, target, arg, domain)), codomain
            raise InvalidPathSubst(f"Path derivation applies a non-function {fun!r}")


# Symmetry and transitivity


def sym_tm_eq(deriv: TmEqDeriv) -> TmEqDeriv:
    """From ``M ⇔ N : T`` build ``N ⇔ M : T``."""
    match deriv:
        case AlgArr(body):
            return AlgArr(sym_tm_eq(body))
        case AlgBase(trace_left, trace_right, paths):
            return AlgBase(trace_right, trace_left, sym_path_eq(paths))


def sym_path_eq(deriv: PathEqDeriv) -> PathEqDeriv:
    match deriv:
        case PVar():
            return deriv
        case PApp(fun, arg):
            return PApp(sym_path_eq(fun), sym_tm_eq(arg))


def trans_tm_eq(first: TmEqDeriv, second: TmEqDeriv) -> TmEqDeriv:
    """
    From ``M ⇔ N : T`` and ``N ⇔ O : T`` build ``M ⇔ O : T``.

    Weak head reduction is deterministic, so both derivations must reduce the
    shared middle term along the same trace to the same path.

    Raises:
        MiddleTermMismatch: If the two derivations disagree about the middle term
    """
    match first, second:
        case AlgArr(body1), AlgArr(body2):
            return AlgArr(trans_tm_eq(body1, body2))
        case AlgBase(left1, right1, paths1), AlgBase(left2, right2, paths2):
            if right1 != left2:
                raise MiddleTermMismatch(
                    "The middle term reduces along different traces"
                )
            return AlgBase(left1, right2, trans_path_eq(paths1, paths2))
    raise MiddleTermMismatch(
        f"Cannot chain {type(first).__name__} with {type(second).__name__}"
    )


def trans_path_eq(first: PathEqDeriv, second: PathEqDeriv) -> PathEqDeriv:
    match first, second:
        case PVar(k), PVar(j) if k == j:
            return first
        case PApp(fun1, arg1), PApp(fun2, arg2):
            return PApp(trans_path_eq(fun1, fun2), trans_tm_eq(arg1, arg2))
    raise MiddleTermMismatch(f"Paths do not share a middle term: {first!r} / {second!r}")
