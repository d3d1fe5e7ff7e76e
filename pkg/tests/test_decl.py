"""
Tests for lambda_equiv.decl: declarative derivations and their generator.
"""

import pytest

from lambda_equiv.decl import (
    DecApp,
    DecBeta,
    DecExt,
    DecLam,
    DecSym,
    DecTrans,
    DecVar,
    check_decl,
    conclusion,
    decl_depth,
    gen_decl,
    left_refl,
    lookup,
    right_refl,
    weaken_decl,
)
from lambda_equiv.errors import GenerationFailed, IndexOutOfRange
from lambda_equiv.syntax import BASE, App, Arr, Lam, Var, shift, type_check

I_TO_I = Arr(BASE, BASE)
ETA_F = Lam(App(Var(1), Var(0)))

# ctx = [i]: (\y. y) x ≡ x
BETA_EXAMPLE = DecBeta(DecVar(0), DecVar(0))

# ctx = [i -> i]: f ≡ \x. f x, by extensionality and a backwards beta step
ETA_EXAMPLE = DecExt(BASE, DecSym(DecBeta(DecApp(DecVar(2), DecVar(0)), DecVar(0))))


def test_lookup_reexported():
    assert lookup((BASE, I_TO_I), 0) == I_TO_I
    assert lookup((I_TO_I, BASE), 1) == I_TO_I
    with pytest.raises(IndexOutOfRange):
        lookup((), 0)


def test_var():
    assert check_decl((BASE,), DecVar(0), Var(0), Var(0), BASE)
    assert not check_decl((BASE,), DecVar(1), Var(1), Var(1), BASE)


def test_beta():
    assert conclusion((BASE,), BETA_EXAMPLE) == (App(Lam(Var(0)), Var(0)), Var(0), BASE)
    assert check_decl((BASE,), BETA_EXAMPLE, App(Lam(Var(0)), Var(0)), Var(0), BASE)


def test_eta():
    assert check_decl((I_TO_I,), ETA_EXAMPLE, Var(0), ETA_F, I_TO_I)


def test_ext_requires_fresh_variable_argument():
    # f y under [f:i -> i, y:i, x:i] applies f to y, not to the fresh x
    bad = DecExt(BASE, DecApp(DecVar(2), DecVar(1)))
    assert conclusion((I_TO_I, BASE), bad) is None


def test_lam():
    deriv = DecLam(BASE, DecVar(0))
    assert check_decl((), deriv, Lam(Var(0)), Lam(Var(0)), I_TO_I)


def test_app_type_mismatch():
    assert conclusion((BASE, BASE), DecApp(DecVar(0), DecVar(1))) is None


def test_trans_mismatched_middle():
    ctx = (BASE, BASE)
    assert not check_decl(ctx, DecTrans(DecVar(0), DecVar(1)), Var(0), Var(1), BASE)
    assert conclusion(ctx, DecTrans(DecVar(0), DecVar(1))) is None


def test_sym_flips():
    assert conclusion((BASE,), DecSym(BETA_EXAMPLE)) == (Var(0), App(Lam(Var(0)), Var(0)), BASE)


def test_decl_depth():
    assert decl_depth(DecVar(0)) == 1
    assert decl_depth(BETA_EXAMPLE) == 2
    assert decl_depth(ETA_EXAMPLE) == 5


def test_weaken_decl_shifts_statement():
    left, right, tp = conclusion((I_TO_I,), ETA_EXAMPLE)
    moved = conclusion((I_TO_I, BASE), weaken_decl(ETA_EXAMPLE))
    assert moved == (shift(left, 1), shift(right, 1), tp)


def test_reflexivity_derivations():
    for ctx, deriv in [((BASE,), BETA_EXAMPLE), ((I_TO_I,), ETA_EXAMPLE)]:
        left, right, tp = conclusion(ctx, deriv)
        assert check_decl(ctx, left_refl(ctx, deriv), left, left, tp)
        assert check_decl(ctx, right_refl(ctx, deriv), right, right, tp)


# Generator


def test_gen_depth_one_is_a_variable():
    for seed in range(50):
        ctx, deriv, left, right, tp = gen_decl(seed, 1)
        assert isinstance(deriv, DecVar)
        assert ctx
        assert check_decl(ctx, deriv, left, right, tp)


def test_gen_is_deterministic():
    assert gen_decl(17, 5) == gen_decl(17, 5)


def test_gen_rejects_zero_depth():
    with pytest.raises(GenerationFailed):
        gen_decl(0, 0)


def test_generated_derivations_are_valid():
    for seed in range(500):
        ctx, deriv, left, right, tp = gen_decl(seed, 6)
        assert decl_depth(deriv) <= 6
        assert check_decl(ctx, deriv, left, right, tp)
        assert type_check(ctx, left, tp)
        assert type_check(ctx, right, tp)


def test_generator_uses_every_rule():
    seen = set()

    def collect(deriv):
        seen.add(type(deriv))
        match deriv:
            case DecLam(_, body) | DecExt(_, body) | DecSym(body):
                collect(body)
            case DecBeta(a, b) | DecApp(a, b) | DecTrans(a, b):
                collect(a)
                collect(b)

    for seed in range(200):
        collect(gen_decl(seed, 6)[1])
    assert seen == {DecVar, DecLam, DecExt, DecBeta, DecApp, DecSym, DecTrans}
