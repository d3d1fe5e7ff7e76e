"""
Tests for lambda_equiv.syntax: types, terms, contexts and the type checker.
"""

import itertools
import random
from functools import cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambda_equiv.errors import IllTyped, IndexOutOfRange, NotAPath
from lambda_equiv.sampling import enumerate_terms, random_ctx, random_path_eq, random_typed_term
from lambda_equiv.syntax import (
    BASE,
    App,
    Arr,
    Lam,
    Var,
    arrows,
    extend_ctx,
    infer_path_type,
    infer_type,
    is_path,
    lookup,
    scope_of,
    shift,
    spine,
    term_size,
    type_check,
    type_depth,
    unshift,
)

I_TO_I = Arr(BASE, BASE)
OMEGA_HALF = Lam(App(Var(0), Var(0)))


def test_lookup_innermost_is_last():
    ctx = (BASE, I_TO_I)
    assert lookup(ctx, 0) == I_TO_I
    assert lookup(ctx, 1) == BASE


def test_lookup_out_of_range():
    with pytest.raises(IndexOutOfRange):
        lookup((BASE,), 1)
    with pytest.raises(IndexOutOfRange):
        lookup((), 0)


def test_extend_ctx_appends():
    assert extend_ctx((BASE,), I_TO_I) == (BASE, I_TO_I)


def test_arrows_nests_right():
    assert arrows(BASE, BASE, BASE) == Arr(BASE, Arr(BASE, BASE))
    assert arrows(BASE) == BASE


def test_is_path():
    assert is_path(Var(0))
    assert is_path(App(App(Var(1), Var(0)), Lam(Var(0))))
    assert not is_path(Lam(Var(0)))
    assert not is_path(App(Lam(Var(0)), Var(0)))


def test_spine():
    head, args = spine(App(App(Var(2), Var(0)), Var(1)))
    assert head == Var(2)
    assert args == [Var(0), Var(1)]


def test_scope_and_size():
    term = Lam(App(Var(1), Var(0)))
    assert scope_of(term) == 1
    assert scope_of(Lam(Var(0))) == 0
    assert term_size(term) == 4
    assert type_depth(Arr(I_TO_I, BASE)) == 2


def test_shift_respects_cutoff():
    term = Lam(App(Var(1), Var(0)))
    assert shift(term, 1) == Lam(App(Var(2), Var(0)))
    assert shift(Var(0), 2, cutoff=1) == Var(0)


def test_unshift_inverts_shift():
    term = Lam(App(Var(2), Var(0)))
    assert unshift(shift(term, 1)) == term
    assert unshift(Var(0)) is None
    assert unshift(Lam(Var(1))) is None


def test_type_check_identity():
    assert type_check((), Lam(Var(0)), I_TO_I)
    assert not type_check((), Lam(Var(0)), BASE)


def test_type_check_eta_example():
    ctx = (I_TO_I,)
    assert type_check(ctx, Var(0), I_TO_I)
    assert type_check(ctx, Lam(App(Var(1), Var(0))), I_TO_I)


def test_type_check_unannotated_redex():
    """The domain of a lambda in head position is found by unification."""
    ctx = (BASE,)
    redex = App(Lam(Var(0)), Var(0))
    assert type_check(ctx, redex, BASE)
    higher = App(Lam(App(Var(0), Var(1))), Lam(Var(0)))
    assert type_check(ctx, higher, BASE)


def test_type_check_rejects_self_application():
    assert not type_check((), App(OMEGA_HALF, OMEGA_HALF), BASE)
    assert not type_check((I_TO_I,), OMEGA_HALF, I_TO_I)


def test_type_check_unbound_variable():
    assert not type_check((BASE,), Var(1), BASE)


def test_infer_type_defaults_unused_domains():
    assert infer_type((), Lam(Var(0))) == I_TO_I
    assert infer_type((BASE,), App(Lam(Var(1)), Var(0))) == BASE
    assert infer_type((), App(OMEGA_HALF, OMEGA_HALF)) is None


def test_infer_path_type():
    ctx = (BASE, Arr(BASE, I_TO_I))
    assert infer_path_type(ctx, App(Var(0), Var(1))) == I_TO_I
    assert infer_path_type(ctx, App(App(Var(0), Var(1)), Var(1))) == BASE


def test_infer_path_type_errors():
    ctx = (BASE, I_TO_I)
    with pytest.raises(NotAPath):
        infer_path_type(ctx, Lam(Var(0)))
    with pytest.raises(IndexOutOfRange):
        infer_path_type(ctx, Var(2))
    with pytest.raises(IllTyped):
        infer_path_type(ctx, App(Var(0), Var(0)))
    with pytest.raises(IllTyped):
        infer_path_type(ctx, App(Var(1), Var(1)))


def test_terms_are_hashable_values():
    assert {Lam(Var(0)), Lam(Var(0))} == {Lam(Var(0))}
    with pytest.raises(AttributeError):
        Var(0).index = 1  # type: ignore[misc]


terms = st.recursive(
    st.builds(Var, st.integers(0, 4)),
    lambda children: st.one_of(st.builds(Lam, children), st.builds(App, children, children)),
    max_leaves=16,
)


@settings(max_examples=300, deadline=None)
@given(terms, st.integers(0, 3))
def test_shift_then_unshift(term, by):
    shifted = shift(term, by + 1)
    assert scope_of(shifted) == (scope_of(term) + by + 1 if scope_of(term) else 0)
    assert unshift(shift(term, 1)) == term


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_paths_check_at_their_inferred_type(seed):
    rng = random.Random(seed)
    ctx = random_ctx(rng, max_len=3)
    path, _, _, tp = random_path_eq(rng, ctx)
    assert infer_path_type(ctx, path) == tp
    assert type_check(ctx, path, infer_path_type(ctx, path))


@settings(max_examples=200, deadline=None)
@given(seeds, terms)
def test_type_check_is_deterministic(seed, term):
    rng = random.Random(seed)
    ctx = random_ctx(rng, max_len=3)
    tp = arrows(*ctx[: rng.randint(0, 1)], BASE)
    assert type_check(ctx, term, tp) == type_check(ctx, term, tp)
    assert infer_type(ctx, term) == infer_type(ctx, term)
    typed = random_typed_term(rng, ctx, tp, 8)
    assert all(type_check(ctx, typed, tp) for _ in range(3))


# Typing against a brute-force search over the typing rules
#
# Lambdas carry no domain, so the rule for a redex has to guess the types of
# its arguments. Every argument of a term with at most six nodes, over the
# contexts and types below, has a type of depth at most four if it has one.


def _types_up_to(depth):
    if depth == 0:
        return (BASE,)
    smaller = _types_up_to(depth - 1)
    return (BASE, *(Arr(a, b) for a in smaller for b in smaller))


GUESSES = _types_up_to(4)


@cache
def _argument_types(ctx, arg):
    return tuple(tp for tp in GUESSES if _derivable(ctx, arg, tp))


@cache
def _derivable(ctx, term, tp):
    head, args = spine(term)
    match head:
        case Var(index):
            if index >= len(ctx):
                return False
            current = ctx[-1 - index]
            for arg in args:
                if not isinstance(current, Arr) or not _derivable(ctx, arg, current.domain):
                    return False
                current = current.codomain
            return current == tp
        case Lam(body) if not args:
            return isinstance(tp, Arr) and _derivable((*ctx, tp.domain), body, tp.codomain)
        case Lam():
            return any(
                _derivable(ctx, head, arrows(*guess, tp))
                for guess in itertools.product(*(_argument_types(ctx, arg) for arg in args))
            )


SEARCH_CONTEXTS = [(), (BASE,), (I_TO_I,), (BASE, I_TO_I), (Arr(I_TO_I, BASE),)]
SEARCH_TYPES = [BASE, I_TO_I, arrows(BASE, BASE, BASE), Arr(I_TO_I, BASE)]


@pytest.mark.parametrize(
    "ctx", SEARCH_CONTEXTS, ids=["empty", "i", "i->i", "i,i->i", "(i->i)->i"]
)
def test_type_check_agrees_with_rule_search(ctx):
    typable = 0
    for term in enumerate_terms(6, len(ctx)):
        for tp in SEARCH_TYPES:
            expected = _derivable(ctx, term, tp)
            assert type_check(ctx, term, tp) == expected, (ctx, term, tp)
            typable += expected
    assert typable > 0
