"""
The logical relation, executed.

A witness for ``ctx ⊢ M ≈ N : T`` is a value whose shape follows ``T``:

* at ``i`` it stores an algorithmic derivation of ``M ⇔ N : i``;
* at ``A -> B`` it stores a function that, for every path substitution ``pi``
  into a context ``target`` and every witness ``arg`` for ``N₁ ≈ N₂ : A`` in
  ``target``, produces a witness for ``M[pi] N₁ ≈ N[pi] N₂ : B``.

Every witness records its statement, and the function of an arrow witness is
wrapped so that inputs and outputs are checked on each call. ``reify`` turns a
witness into an algorithmic certificate; ``fundamental`` interprets a
declarative derivation as a witness; together they give ``completeness``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from lambda_equiv.algo import (
    AlgArr,
    AlgBase,
    PApp,
    PathEqDeriv,
    PVar,
    TmEqDeriv,
    sym_tm_eq,
    trans_tm_eq,
    weaken_path_eq,
    weaken_tm_eq,
)
from lambda_equiv.decl import (
    DecApp,
    DecBeta,
    DecExt,
    DecLam,
    DecSym,
    DecTrans,
    DecVar,
    DeclDeriv,
    conclusion,
)
from lambda_equiv.errors import (
    ContractError,
    InvalidDerivation,
    InvalidTrace,
    MiddleTermMismatch,
)
from lambda_equiv.reduction import BETA, REFL, MStep, replay, under_app
from lambda_equiv.subst import (
    Subst,
    apply_tm,
    check_path_subst,
    compose,
    extend,
    id_subst,
    shift_subst,
)
from lambda_equiv.syntax import (
    BASE,
    App,
    Arr,
    Ctx,
    Tm,
    Tp,
    Var,
    extend_ctx,
    lookup,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class LogBase:
    """A witness at the base type: an algorithmic derivation."""

    ctx: Ctx
    left: Tm
    right: Tm
    deriv: TmEqDeriv

    @property
    def tp(self) -> Tp:
        return BASE


type Mapping = Callable[[Ctx, Subst, LogWitness], LogWitness]


@dataclass(frozen=True, slots=True)
class LogArr:
    """A witness at an arrow type: a function on related arguments."""

    ctx: Ctx
    left: Tm
    right: Tm
    tp: Arr
    mapping: Mapping = field(compare=False, repr=False)

    def apply(self, target: Ctx, pi: Subst, arg: LogWitness) -> LogWitness:
        """
        Use the witness at ``target`` through ``pi`` on the related arguments ``arg``.

        Raises:
            InvalidPathSubst: If ``pi`` is not a path substitution from ``ctx`` to ``target``
            ContractError: If ``arg`` lives elsewhere, has the wrong type, or the
                stored function answers with the wrong statement
        """
        check_path_subst(self.ctx, pi, target)
        if arg.ctx != target or arg.tp != self.tp.domain:
            raise ContractError(
                f"Argument witness is for {arg.tp!r} in a context of length "
                f"{len(arg.ctx)}, expected {self.tp.domain!r} in one of length {len(target)}"
            )
        result = self.mapping(target, pi, arg)
        expected = (
            target,
            App(apply_tm(pi, self.left), arg.left),
            App(apply_tm(pi, self.right), arg.right),
            self.tp.codomain,
        )
        if statement(result) != expected:
            raise ContractError("Arrow witness produced a witness for the wrong statement")
        return result


type LogWitness = LogBase | LogArr


def statement(w: LogWitness) -> tuple[Ctx, Tm, Tm, Tp]:
    return w.ctx, w.left, w.right, w.tp


# Monotonicity and closure


def log_monotone(pi: Subst, target: Ctx, w: LogWitness) -> LogWitness:
    """
    Transport ``ctx ⊢ M ≈ N : T`` to ``target ⊢ M[pi] ≈ N[pi] : T``.

    Raises:
        InvalidPathSubst: If ``pi`` is not a path substitution from ``w.ctx`` to ``target``
    """
    check_path_subst(w.ctx, pi, target)
    left, right = apply_tm(pi, w.left), apply_tm(pi, w.right)
    match w:
        case LogBase(ctx, _, _, deriv):
            return LogBase(target, left, right, weaken_tm_eq(pi, ctx, target, deriv, BASE))
        case LogArr():

            def mapping(target2: Ctx, pi2: Subst, arg: LogWitness) -> LogWitness:
                return w.apply(target2, compose(pi, pi2), arg)

            return LogArr(target, left, right, w.tp, mapping)


def closed(
    left: Tm, trace_left: MStep, right: Tm, trace_right: MStep, w: LogWitness
) -> LogWitness:
    """
    Weak head closure: from ``N₁ ≈ N₂`` and ``M₁ ->* N₁``, ``M₂ ->* N₂`` get ``M₁ ≈ M₂``.

    Raises:
        InvalidTrace: If a trace does not lead from its term to the witness's term
    """
    if replay(left, trace_left) != w.left:
        raise InvalidTrace("Left trace does not reach the related term")
    if replay(right, trace_right) != w.right:
        raise InvalidTrace("Right trace does not reach the related term")
    match w:
        case LogBase(ctx, _, _, AlgBase(inner_left, inner_right, paths)):
            return LogBase(
                ctx,
                left,
                right,
                AlgBase(trace_left + inner_left, trace_right + inner_right, paths),
            )
        case LogArr(ctx, _, _, tp):

            def mapping(target: Ctx, pi: Subst, arg: LogWitness) -> LogWitness:
                return closed(
                    App(apply_tm(pi, left), arg.left),
                    under_app(trace_left),
                    App(apply_tm(pi, right), arg.right),
                    under_app(trace_right),
                    w.apply(target, pi, arg),
                )

            return LogArr(ctx, left, right, tp, mapping)
    raise ContractError(f"Base witness does not hold a base derivation: {w!r}")


# Reflection and reification


def reflect(ctx: Ctx, tp: Tp, left: Tm, right: Tm, deriv: PathEqDeriv) -> LogWitness:
    """Turn ``ctx ⊢ left ↔ right : tp`` into a witness for ``left ≈ right``."""
    match tp:
        case Arr(_, codomain):

            def mapping(target: Ctx, pi: Subst, arg: LogWitness) -> LogWitness:
                path = PApp(weaken_path_eq(pi, ctx, target, deriv), reify(arg))
                return reflect(
                    target,
                    codomain,
                    App(apply_tm(pi, left), arg.left),
                    App(apply_tm(pi, right), arg.right),
                    path,
                )

            return LogArr(ctx, left, right, tp, mapping)
        case _:
            return LogBase(ctx, left, right, AlgBase(REFL, REFL, deriv))


def reify(w: LogWitness) -> TmEqDeriv:
    """
    Read an algorithmic certificate off a witness.

    At an arrow type the witness is used at the context extended by one fresh
    variable of the domain type, through the weakening substitution.
    """
    match w:
        case LogBase(deriv=deriv):
            return deriv
        case LogArr(ctx, _, _, Arr(domain, _)):
            target = extend_ctx(ctx, domain)
            fresh = reflect(target, domain, Var(0), Var(0), PVar(0))
            return AlgArr(reify(w.apply(target, shift_subst(len(ctx), 1), fresh)))


# Symmetry and transitivity


def log_sym(w: LogWitness) -> LogWitness:
    match w:
        case LogBase(ctx, left, right, deriv):
            return LogBase(ctx, right, left, sym_tm_eq(deriv))
        case LogArr(ctx, left, right, tp):

            def mapping(target: Ctx, pi: Subst, arg: LogWitness) -> LogWitness:
                return log_sym(w.apply(target, pi, log_sym(arg)))

            return LogArr(ctx, right, left, tp, mapping)


def log_trans(first: LogWitness, second: LogWitness) -> LogWitness:
    """
    Chain ``M ≈ N`` and ``N ≈ O`` into ``M ≈ O``.

    Raises:
        MiddleTermMismatch: If the witnesses do not share context, type and middle term
    """
    if first.ctx != second.ctx or first.tp != second.tp or first.right != second.left:
        raise MiddleTermMismatch("Witnesses do not share a middle term")
    match first, second:
        case LogBase(ctx, left, _, d1), LogBase(_, _, right, d2):
            return LogBase(ctx, left, right, trans_tm_eq(d1, d2))
        case LogArr(ctx, left, _, tp), LogArr(_, _, right, _):

            def mapping(target: Ctx, pi: Subst, arg: LogWitness) -> LogWitness:
                diagonal = log_trans(log_sym(arg), arg)
                return log_trans(
                    first.apply(target, pi, arg), second.apply(target, pi, diagonal)
                )

            return LogArr(ctx, left, right, tp, mapping)
    raise MiddleTermMismatch("Witnesses have different shapes")


# Related substitutions


@dataclass(frozen=True, slots=True)
class LogSubEnv:
    """
    ``target ⊢ s1 ≈ s2 : source``.

    ``witnesses`` is ordered like ``source``: the witness for ``Var(k)`` is
    ``witnesses[-1 - k]``.
    """

    target: Ctx
    source: Ctx
    s1: Subst
    s2: Subst
    witnesses: tuple[LogWitness, ...]

    def __post_init__(self) -> None:
        n = len(self.source)
        if not (len(self.s1) == len(self.s2) == len(self.witnesses) == n):
            raise ContractError(
                f"Related substitution has mismatched lengths for a context of length {n}"
            )

    def witness(self, index: int) -> LogWitness:
        lookup(self.source, index)
        return self.witnesses[-1 - index]


def extend_logsub(env: LogSubEnv, w: LogWitness) -> LogSubEnv:
    """Relate one more variable, of ``w``'s type, by ``w``."""
    if w.ctx != env.target:
        raise ContractError("Witness does not live in the environment's target context")
    return LogSubEnv(
        env.target,
        extend_ctx(env.source, w.tp),
        extend(env.s1, w.left),
        extend(env.s2, w.right),
        (*env.witnesses, w),
    )


def wkn_logsub(pi: Subst, target: Ctx, env: LogSubEnv) -> LogSubEnv:
    """
    Transport a related substitution along ``pi``.

    Raises:
        InvalidPathSubst: If ``pi`` is not a path substitution from ``env.target`` to ``target``
    """
    check_path_subst(env.target, pi, target)
    return LogSubEnv(
        target,
        env.source,
        compose(env.s1, pi),
        compose(env.s2, pi),
        tuple(log_monotone(pi, target, w) for w in env.witnesses),
    )


def sym_logsub(env: LogSubEnv) -> LogSubEnv:
    return LogSubEnv(
        env.target,
        env.source,
        env.s2,
        env.s1,
        tuple(log_sym(w) for w in env.witnesses),
    )


def diag_logsub(env: LogSubEnv) -> LogSubEnv:
    """``s2 ≈ s2`` from ``s1 ≈ s2``."""
    return LogSubEnv(
        env.target,
        env.source,
        env.s2,
        env.s2,
        tuple(log_trans(log_sym(w), w) for w in env.witnesses),
    )


def id_logsub(ctx: Ctx) -> LogSubEnv:
    """The identity substitution related to itself, by reflecting each variable."""
    n = len(ctx)
    witnesses = tuple(
        reflect(ctx, tp, Var(n - 1 - position), Var(n - 1 - position), PVar(n - 1 - position))
        for position, tp in enumerate(ctx)
    )
    return LogSubEnv(ctx, ctx, id_subst(n), id_subst(n), witnesses)


# The fundamental theorem


def fundamental(deriv: DeclDeriv, env: LogSubEnv) -> LogWitness:
    """
    Interpret ``source ⊢ M ≡ N : T`` as a witness for ``target ⊢ M[s1] ≈ N[s2] : T``.

    Raises:
        InvalidDerivation: If ``deriv`` proves nothing in ``env.source``
    """
    match deriv:
        case DecVar(k):
            if not 0 <= k < len(env.source):
                raise InvalidDerivation(f"Variable #{k} is not bound")
            return env.witness(k)
        case DecLam(_, body):
            left, right, tp = _instantiated(deriv, env)

            def mapping(target: Ctx, pi: Subst, arg: LogWitness) -> LogWitness:
                inner = fundamental(body, extend_logsub(wkn_logsub(pi, target, env), arg))
                return closed(
                    App(apply_tm(pi, left), arg.left),
                    MStep((BETA,)),
                    App(apply_tm(pi, right), arg.right),
                    MStep((BETA,)),
                    inner,
                )

            return LogArr(env.target, left, right, tp, mapping)
        case DecExt(_, body):
            left, right, tp = _instantiated(deriv, env)

            def mapping(target: Ctx, pi: Subst, arg: LogWitness) -> LogWitness:
                return fundamental(body, extend_logsub(wkn_logsub(pi, target, env), arg))

            return LogArr(env.target, left, right, tp, mapping)
        case DecBeta(body, arg):
            left, right, _ = _instantiated(deriv, env)
            inner = fundamental(body, extend_logsub(env, fundamental(arg, env)))
            return closed(left, MStep((BETA,)), right, REFL, inner)
        case DecApp(fun, arg):
            fun_witness = fundamental(fun, env)
            if not isinstance(fun_witness, LogArr):
                raise InvalidDerivation("Application of a derivation at a base type")
            n = len(env.target)
            return fun_witness.apply(env.target, id_subst(n), fundamental(arg, env))
        case DecSym(inner):
            return log_sym(fundamental(inner, sym_logsub(env)))
        case DecTrans(first, second):
            return log_trans(
                fundamental(first, env), fundamental(second, diag_logsub(env))
            )


def _instantiated(deriv: DeclDeriv, env: LogSubEnv) -> tuple[Tm, Tm, Tp]:
    stmt = conclusion(env.source, deriv)
    if stmt is None:
        raise InvalidDerivation(f"{type(deriv).__name__} does not derive a statement")
    left, right, tp = stmt
    return apply_tm(env.s1, left), apply_tm(env.s2, right), tp


def completeness(ctx: Ctx, deriv: DeclDeriv) -> TmEqDeriv:
    """
    Translate a declarative derivation into an algorithmic certificate.

    Args:
        ctx: The context the derivation is stated in
        deriv: A derivation of ``ctx ⊢ M ≡ N : T``

    Returns:
        A derivation that ``check_tm_eq(ctx, ·, M, N, T)`` accepts

    Raises:
        InvalidDerivation: If ``deriv`` proves nothing in ``ctx``
    """
    if conclusion(ctx, deriv) is None:
        raise InvalidDerivation("Derivation does not prove a statement in this context")
    result = reify(fundamental(deriv, id_logsub(ctx)))
    logger.debug("completeness: translated derivation in context of length %d", len(ctx))
    return result
