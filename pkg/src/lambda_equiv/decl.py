"""
Declarative equality derivations.

The declarative system has congruence, beta, extensionality, symmetry and
transitivity rules. It is not syntax-directed; derivations are supplied by the
user (or by ``gen_decl``) and checked by reconstructing the statement each
node concludes.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from lambda_equiv.errors import GenerationFailed
from lambda_equiv.subst import instantiate
from lambda_equiv.syntax import (
    BASE,
    App,
    Arr,
    Ctx,
    Lam,
    Tm,
    Tp,
    Var,
    extend_ctx,
    lookup,
    unshift,
)

logger = logging.getLogger(__name__)

__all__ = [
    "DecApp",
    "DecBeta",
    "DecExt",
    "DecLam",
    "DecSym",
    "DecTrans",
    "DecVar",
    "DeclDeriv",
    "check_decl",
    "conclusion",
    "decl_depth",
    "gen_decl",
    "left_refl",
    "lookup",
    "right_refl",
    "weaken_decl",
]


@dataclass(frozen=True, slots=True)
class DecBeta:
    """``(\\x. M₂) M₁ ≡ N₂[N₁/x]`` from ``M₂ ≡ N₂`` (under ``x``) and ``M₁ ≡ N₁``."""

    body: DeclDeriv
    arg: DeclDeriv


@dataclass(frozen=True, slots=True)
class DecLam:
    """``\\x. M ≡ \\x. N : domain -> S`` from ``M ≡ N : S`` under ``x:domain``."""

    domain: Tp
    body: DeclDeriv


@dataclass(frozen=True, slots=True)
class DecExt:
    """``M ≡ N : domain -> S`` from ``M x ≡ N x : S`` under a fresh ``x:domain``."""

    domain: Tp
    body: DeclDeriv


@dataclass(frozen=True, slots=True)
class DecVar:
    index: int


@dataclass(frozen=True, slots=True)
class DecApp:
    fun: DeclDeriv
    arg: DeclDeriv


@dataclass(frozen=True, slots=True)
class DecSym:
    inner: DeclDeriv


@dataclass(frozen=True, slots=True)
class DecTrans:
    left: DeclDeriv
    right: DeclDeriv


type DeclDeriv = DecBeta | DecLam | DecExt | DecVar | DecApp | DecSym | DecTrans

type Statement = tuple[Tm, Tm, Tp]


def conclusion(ctx: Ctx, deriv: DeclDeriv) -> Statement | None:
    """
    Reconstruct the statement ``(M, N, T)`` that ``deriv`` proves in ``ctx``.

    Returns None if some side condition fails: an unbound variable, a type
    mismatch between premises, an extensionality premise that is not an
    application to the fresh variable, or transitivity premises that do not
    share their middle term.
    """
    match deriv:
        case DecVar(k):
            if 0 <= k < len(ctx):
                return Var(k), Var(k), lookup(ctx, k)
            return None
        case DecLam(domain, body):
            inner = conclusion(extend_ctx(ctx, domain), body)
            if inner is None:
                return None
            left, right, codomain = inner
            return Lam(left), Lam(right), Arr(domain, codomain)
        case DecExt(domain, body):
            inner = conclusion(extend_ctx(ctx, domain), body)
            match inner:
                case (App(fun_left, Var(0)), App(fun_right, Var(0)), codomain):
                    left, right = unshift(fun_left), unshift(fun_right)
                    if left is None or right is None:
                        return None
                    return left, right, Arr(domain, codomain)
            return None
        case DecBeta(body, arg):
            arg_stmt = conclusion(ctx, arg)
            if arg_stmt is None:
                return None
            arg_left, arg_right, domain = arg_stmt
            body_stmt = conclusion(extend_ctx(ctx, domain), body)
            if body_stmt is None:
                return None
            body_left, body_right, codomain = body_stmt
            return (
                App(Lam(body_left), arg_left),
                instantiate(body_right, arg_right),
                codomain,
            )
        case DecApp(fun, arg):
            fun_stmt = conclusion(ctx, fun)
            arg_stmt = conclusion(ctx, arg)
            if fun_stmt is None or arg_stmt is None:
                return None
            match fun_stmt[2]:
                case Arr(domain, codomain) if domain == arg_stmt[2]:
                    return (
                        App(fun_stmt[0], arg_stmt[0]),
                        App(fun_stmt[1], arg_stmt[1]),
                        codomain,
                    )
            return None
        case DecSym(inner):
            stmt = conclusion(ctx, inner)
            if stmt is None:
                return None
            return stmt[1], stmt[0], stmt[2]
        case DecTrans(left, right):
            first = conclusion(ctx, left)
            second = conclusion(ctx, right)
            if first is None or second is None:
                return None
            if first[1] != second[0] or first[2] != second[2]:
                return None
            return first[0], second[1], first[2]


def check_decl(ctx: Ctx, deriv: DeclDeriv, left: Tm, right: Tm, tp: Tp) -> bool:
    """True iff ``deriv`` derives ``ctx ⊢ left ≡ right : tp``."""
    return conclusion(ctx, deriv) == (left, right, tp)


def decl_depth(deriv: DeclDeriv) -> int:
    match deriv:
        case DecVar():
            return 1
        case DecLam(_, body) | DecExt(_, body) | DecSym(body):
            return 1 + decl_depth(body)
        case DecBeta(a, b) | DecApp(a, b) | DecTrans(a, b):
            return 1 + max(decl_depth(a), decl_depth(b))


def weaken_decl(deriv: DeclDeriv, cutoff: int = 0) -> DeclDeriv:
    """Renumber a derivation for a context with one more variable at index ``cutoff``."""
    match deriv:
        case DecVar(k):
            return DecVar(k + 1) if k >= cutoff else deriv
        case DecLam(domain, body):
            return DecLam(domain, weaken_decl(body, cutoff + 1))
        case DecExt(domain, body):
            return DecExt(domain, weaken_decl(body, cutoff + 1))
        case DecBeta(body, arg):
            return DecBeta(weaken_decl(body, cutoff + 1), weaken_decl(arg, cutoff))
        case DecApp(fun, arg):
            return DecApp(weaken_decl(fun, cutoff), weaken_decl(arg, cutoff))
        case DecSym(inner):
            return DecSym(weaken_decl(inner, cutoff))
        case DecTrans(left, right):
            return DecTrans(weaken_decl(left, cutoff), weaken_decl(right, cutoff))


def left_refl(ctx: Ctx, deriv: DeclDeriv) -> DeclDeriv:
    """A derivation of ``M ≡ M`` for the left term ``M`` that ``deriv`` concludes."""
    match deriv:
        case DecVar():
            return deriv
        case DecLam(domain, body):
            return DecLam(domain, left_refl(extend_ctx(ctx, domain), body))
        case DecExt(domain, body):
            return DecExt(domain, left_refl(extend_ctx(ctx, domain), body))
        case DecBeta(body, arg):
            stmt = conclusion(ctx, arg)
            assert stmt is not None
            domain = stmt[2]
            return DecApp(
                DecLam(domain, left_refl(extend_ctx(ctx, domain), body)),
                left_refl(ctx, arg),
            )
        case DecApp(fun, arg):
            return DecApp(left_refl(ctx, fun), left_refl(ctx, arg))
        case DecSym(inner):
            return right_refl(ctx, inner)
        case DecTrans(left, _):
            return left_refl(ctx, left)


def right_refl(ctx: Ctx, deriv: DeclDeriv) -> DeclDeriv:
    """A derivation of ``N ≡ N`` for the right term ``N`` that ``deriv`` concludes."""
    match deriv:
        case DecVar():
            return deriv
        case DecLam(domain, body):
            return DecLam(domain, right_refl(extend_ctx(ctx, domain), body))
        case DecExt(domain, body):
            return DecExt(domain, right_refl(extend_ctx(ctx, domain), body))
        case DecBeta():
            # the contractum has no structural counterpart in the derivation
            return DecTrans(DecSym(deriv), deriv)
        case DecApp(fun, arg):
            return DecApp(right_refl(ctx, fun), right_refl(ctx, arg))
        case DecSym(inner):
            return left_refl(ctx, inner)
        case DecTrans(_, right):
            return right_refl(ctx, right)


# Random derivations


def _random_type(rng: random.Random, depth: int) -> Tp:
    if depth == 0 or rng.random() < 0.5:
        return BASE
    return Arr(_random_type(rng, depth - 1), _random_type(rng, depth - 1))


class _Generator:
    """Top-down random rule application with backtracking and a work budget."""

    def __init__(self, rng: random.Random, budget: int):
        self.rng = rng
        self.budget = budget

    def derive(
        self, ctx: Ctx, tp: Tp, depth: int
    ) -> tuple[DeclDeriv, Tm, Tm] | None:
        self.budget -= 1
        if self.budget < 0 or depth < 1:
            return None
        rules = ["var", "lam", "ext", "app", "beta", "sym", "trans"]
        self.rng.shuffle(rules)
        for rule in rules:
            result = getattr(self, f"_rule_{rule}")(ctx, tp, depth)
            if result is not None:
                return result
        return None

    def _rule_var(self, ctx: Ctx, tp: Tp, depth: int):
        candidates = [k for k in range(len(ctx)) if lookup(ctx, k) == tp]
        if not candidates:
            return None
        k = self.rng.choice(candidates)
        return DecVar(k), Var(k), Var(k)

    def _rule_lam(self, ctx: Ctx, tp: Tp, depth: int):
        if depth < 2 or not isinstance(tp, Arr):
            return None
        inner = self.derive(extend_ctx(ctx, tp.domain), tp.codomain, depth - 1)
        if inner is None:
            return None
        body, left, right = inner
        return DecLam(tp.domain, body), Lam(left), Lam(right)

    def _rule_ext(self, ctx: Ctx, tp: Tp, depth: int):
        if depth < 3 or not isinstance(tp, Arr):
            return None
        inner = self.derive(ctx, tp, depth - 2)
        if inner is None:
            return None
        fun, left, right = inner
        return DecExt(tp.domain, DecApp(weaken_decl(fun), DecVar(0))), left, right

    def _rule_app(self, ctx: Ctx, tp: Tp, depth: int):
        if depth < 2:
            return None
        domain = _random_type(self.rng, 1)
        fun = self.derive(ctx, Arr(domain, tp), depth - 1)
        if fun is None:
            return None
        arg = self.derive(ctx, domain, depth - 1)
        if arg is None:
            return None
        return DecApp(fun[0], arg[0]), App(fun[1], arg[1]), App(fun[2], arg[2])

    def _rule_beta(self, ctx: Ctx, tp: Tp, depth: int):
        if depth < 2:
            return None
        domain = _random_type(self.rng, 1)
        body = self.derive(extend_ctx(ctx, domain), tp, depth - 1)
        if body is None:
            return None
        arg = self.derive(ctx, domain, depth - 1)
        if arg is None:
            return None
        return (
            DecBeta(body[0], arg[0]),
            App(Lam(body[1]), arg[1]),
            instantiate(body[2], arg[2]),
        )

    def _rule_sym(self, ctx: Ctx, tp: Tp, depth: int):
        if depth < 2:
            return None
        inner = self.derive(ctx, tp, depth - 1)
        if inner is None:
            return None
        return DecSym(inner[0]), inner[2], inner[1]

    def _rule_trans(self, ctx: Ctx, tp: Tp, depth: int):
        if depth < 2:
            return None
        inner = self.derive(ctx, tp, depth - 1)
        if inner is None:
            return None
        first, left, right = inner
        if self.rng.random() < 0.5:
            deriv = DecTrans(first, right_refl(ctx, first))
            result = (deriv, left, right)
        else:
            deriv = DecTrans(first, DecSym(first))
            result = (deriv, left, left)
        if decl_depth(deriv) > depth:
            return None
        return result


def gen_decl(
    seed: int, depth_bound: int, *, attempts: int = 100, budget: int = 2_000
) -> tuple[Ctx, DeclDeriv, Tm, Tm, Tp]:
    """
    Generate a random valid declarative derivation.

    Args:
        seed: Seed for the random number generator
        depth_bound: Maximum depth of the derivation tree
        attempts: How many (context, type) goals to try before giving up
        budget: Rule applications allowed per goal

    Returns:
        ``(ctx, deriv, M, N, T)`` with ``check_decl(ctx, deriv, M, N, T)``

    Raises:
        GenerationFailed: If no goal could be closed within the bound
    """
    if depth_bound < 1:
        raise GenerationFailed(seed, depth_bound)
    rng = random.Random(seed)
    for _ in range(attempts):
        ctx = tuple(_random_type(rng, 2) for _ in range(rng.randint(1, 2)))
        if depth_bound == 1 or rng.random() < 0.5:
            tp = rng.choice(ctx)
        else:
            tp = _random_type(rng, 2)
        depth = rng.randint(1, depth_bound)
        found = _Generator(rng, budget).derive(ctx, tp, depth)
        if found is not None:
            deriv, left, right = found
            logger.debug("gen_decl: seed %d, depth %d", seed, decl_depth(deriv))
            return ctx, deriv, left, right, tp
    raise GenerationFailed(seed, depth_bound)
