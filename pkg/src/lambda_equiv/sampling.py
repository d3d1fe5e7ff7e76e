"""
Seeded random and exhaustive generators for types, terms, substitutions and
path derivations.

Every function takes an explicit ``random.Random`` so that runs are
reproducible; none of them touch global random state.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from functools import cache

from lambda_equiv.algo import PathEqDeriv, decide_path_eq
from lambda_equiv.errors import ContractError
from lambda_equiv.subst import PathSubst, Subst
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
)


def random_type(rng: random.Random, depth: int) -> Tp:
    """A type of arrow depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.4:
        return BASE
    return Arr(random_type(rng, depth - 1), random_type(rng, depth - 1))


def random_ctx(rng: random.Random, max_len: int = 2, depth: int = 2) -> Ctx:
    """
    A nonempty context that binds at least one variable of type ``i``.

    With a base variable around every type is inhabited, which
    ``random_typed_term`` relies on.
    """
    types = [random_type(rng, depth) for _ in range(rng.randint(0, max_len - 1))]
    types.insert(rng.randint(0, len(types)), BASE)
    return tuple(types)


def random_term(rng: random.Random, scope: int, size: int) -> Tm:
    """A well-scoped, not necessarily typable, term of roughly ``size`` nodes."""
    if size <= 1:
        return Var(rng.randrange(scope)) if scope > 0 else Lam(Var(0))
    roll = rng.random()
    if scope > 0 and roll < 0.2:
        return Var(rng.randrange(scope))
    if roll < 0.55 or size < 3:
        return Lam(random_term(rng, scope + 1, size - 1))
    split = rng.randint(1, size - 2)
    return App(random_term(rng, scope, split), random_term(rng, scope, size - 1 - split))


def random_subst(rng: random.Random, domain: int, codomain: int, size: int) -> Subst:
    """Arbitrary terms over ``codomain`` variables for each of ``domain`` variables."""
    return Subst(tuple(random_term(rng, codomain, size) for _ in range(domain)))


def _heads(ctx: Ctx, tp: Tp) -> list[tuple[int, list[Tp]]]:
    """Variables that produce ``tp`` after some number of arguments."""
    found = []
    for k in range(len(ctx)):
        current, args = lookup(ctx, k), []
        while True:
            if current == tp:
                found.append((k, list(args)))
            if not isinstance(current, Arr):
                break
            args.append(current.domain)
            current = current.codomain
    return found


def random_typed_term(rng: random.Random, ctx: Ctx, tp: Tp, size: int) -> Tm:
    """
    A term of type ``tp`` in ``ctx`` mixing lambdas, paths and beta-redexes.

    Raises:
        ContractError: If ``ctx`` has no variable of type ``i`` and ``tp`` is uninhabited
    """
    heads = _heads(ctx, tp)
    if size <= 1:
        exact = [k for k, args in heads if not args]
        if exact:
            return Var(rng.choice(exact))
        if isinstance(tp, Arr):
            return Lam(random_typed_term(rng, extend_ctx(ctx, tp.domain), tp.codomain, 0))
        raise ContractError(f"No small inhabitant of {tp!r} in this context")
    roll = rng.random()
    if isinstance(tp, Arr) and (roll < 0.35 or not heads):
        return Lam(random_typed_term(rng, extend_ctx(ctx, tp.domain), tp.codomain, size - 1))
    if roll < 0.5 and size >= 3:
        domain = random_type(rng, 1)
        body = random_typed_term(rng, extend_ctx(ctx, domain), tp, (size - 1) // 2)
        arg = random_typed_term(rng, ctx, domain, (size - 1) // 2)
        return App(Lam(body), arg)
    if not heads:
        return random_typed_term(rng, ctx, tp, 0)
    k, arg_types = rng.choice(heads)
    term: Tm = Var(k)
    budget = max(size - 1, 0) // max(len(arg_types), 1)
    for arg_tp in arg_types:
        term = App(term, random_typed_term(rng, ctx, arg_tp, budget))
    return term


def random_path(rng: random.Random, ctx: Ctx, tp: Tp, size: int = 3) -> Tm:
    """
    A path of type ``tp`` in ``ctx`` with well-typed random arguments.

    Raises:
        ContractError: If no variable of ``ctx`` produces ``tp``
    """
    heads = _heads(ctx, tp)
    if not heads:
        raise ContractError(f"No variable produces {tp!r}")
    k, arg_types = rng.choice(heads)
    term: Tm = Var(k)
    for arg_tp in arg_types:
        term = App(term, random_typed_term(rng, ctx, arg_tp, size))
    return term


def random_path_subst(rng: random.Random, source: Ctx, target: Ctx) -> PathSubst:
    """
    A path substitution from ``source`` into ``target``.

    Raises:
        ContractError: If ``target`` cannot produce a path of some ``source`` type
    """
    return Subst(tuple(random_path(rng, target, tp, 2) for tp in source))


def random_weakening(rng: random.Random, ctx: Ctx, extra: int = 2) -> tuple[Ctx, PathSubst]:
    """
    Insert up to ``extra`` fresh variables at random positions of ``ctx``.

    Returns:
        The larger context and the renaming from ``ctx`` into it
    """
    slots: list[tuple[Tp, int | None]] = [(tp, position) for position, tp in enumerate(ctx)]
    for _ in range(rng.randint(0, extra)):
        slots.insert(rng.randint(0, len(slots)), (random_type(rng, 1), None))
    target = tuple(tp for tp, _ in slots)
    moved = {old: new for new, (_, old) in enumerate(slots) if old is not None}
    entries = tuple(Var(len(target) - 1 - moved[position]) for position in range(len(ctx)))
    return target, Subst(entries)


def random_path_eq(
    rng: random.Random, ctx: Ctx, size: int = 3
) -> tuple[Tm, Tm, PathEqDeriv, Tp]:
    """
    A valid path derivation ``ctx ⊢ P ↔ Q : T`` between a random path and a
    copy whose arguments are wrapped in identity redexes.

    Returns:
        ``(P, Q, deriv, T)``
    """
    k = rng.randrange(len(ctx))
    head_tp = lookup(ctx, k)
    left: Tm = Var(k)
    right: Tm = Var(k)
    tp = head_tp
    while isinstance(tp, Arr) and rng.random() < 0.7:
        arg = random_typed_term(rng, ctx, tp.domain, size)
        left = App(left, arg)
        right = App(right, App(Lam(Var(0)), arg) if rng.random() < 0.5 else arg)
        tp = tp.codomain
    found = decide_path_eq(ctx, left, right)
    assert found is not None and found[1] == tp
    return left, right, found[0], tp


@cache
def _terms_of_size(size: int, scope: int) -> tuple[Tm, ...]:
    if size == 1:
        return tuple(Var(k) for k in range(scope))
    terms: list[Tm] = [Lam(body) for body in _terms_of_size(size - 1, scope + 1)]
    for fun_size in range(1, size - 1):
        for fun in _terms_of_size(fun_size, scope):
            for arg in _terms_of_size(size - 1 - fun_size, scope):
                terms.append(App(fun, arg))
    return tuple(terms)


def enumerate_terms(max_size: int, scope: int) -> Iterator[Tm]:
    """Every term over ``scope`` free variables with at most ``max_size`` nodes."""
    for size in range(1, max_size + 1):
        yield from _terms_of_size(size, scope)
