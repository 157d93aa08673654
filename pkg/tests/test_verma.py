import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uqeps.cogroupoid import random_word
from uqeps.qea import QEA
from uqeps.root_data import EpsChar, LambdaChar, build_root_datum, weights_up_to
from uqeps.scalars import SymbolicContext
from uqeps.verma import (VermaModule, highest_weight_from_lambda, induced_character, irreducible_dims,
                         is_unitarizable_up_to, point_module, serre_radical_check, shapovalov_gram,
                         sl2_shapovalov_oracle)

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
PLUS1, PLUS2 = EpsChar.plus(1), EpsChar.plus(2)


def lam_from(datum, powers):
    return LambdaChar.from_alpha_powers(datum, powers)


def test_trivial_block():
    block = shapovalov_gram(A2, LambdaChar.of([Fraction(1, 3), 0]), PLUS2, PLUS2, (0, 0))
    assert block.gram == [[block.gram[0][0]]] and block.gram[0][0] == SymbolicContext(12).one()


def test_single_letter_block():
    eps, eta = EpsChar.of([Fraction(1, 2)]), EpsChar.of([3])
    lam = LambdaChar.of([Fraction(1, 4)])
    block = shapovalov_gram(A1, lam, eps, eta, (1,))
    ctx = SymbolicContext(A1.exponent_denominator(lam.exponents))
    la2 = lam.value(ctx, (4,))                   # lambda_alpha^2 = lambda_{4 omega}
    expect = (ctx.const(eps[0]) * la2 - ctx.const(eta[0]) / la2) / (ctx.qpow(1) - ctx.qpow(-1))
    assert block.gram == [[expect]]


@pytest.mark.parametrize("e", [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)])
def test_sl2_product_formula(e):
    lam = LambdaChar.of([e])
    ctx = SymbolicContext(A1.exponent_denominator([e]))
    mod = VermaModule(QEA(A1, PLUS1, PLUS1, ctx), lam, 6)
    for k in range(7):
        assert mod.gram_block((k,)).gram == [[sl2_shapovalov_oracle(ctx, 2 * e, k)]]


def test_oracle_small_cases():
    ctx = SymbolicContext(4)
    assert sl2_shapovalov_oracle(ctx, Fraction(1, 2), 0) == ctx.one()
    q = ctx.qpow(1)
    assert sl2_shapovalov_oracle(ctx, Fraction(1, 2), 1) == (q - 1 / q) / (q - 1 / q)


@pytest.mark.parametrize("n", range(4))
def test_sl2_finite_dims(n):
    dims = irreducible_dims(A1, lam_from(A1, [2 * n]), PLUS1, depth=6)
    assert [dims[(k,)] for k in range(7)] == [1] * (n + 1) + [0] * (6 - n)


def test_eps_zero_is_infinite():
    for power in [1, 2, Fraction(7, 3)]:
        dims = irreducible_dims(A1, lam_from(A1, [power]), EpsChar.of([0]), depth=6)
        assert all(dims[(k,)] == 1 for k in range(7))


def test_adjoint_dimension():
    dims = irreducible_dims(A2, lam_from(A2, [2, 2]), PLUS2, depth=5)
    assert sum(dims.values()) == 8


@pytest.mark.parametrize("m", [(1, 0), (0, 1), (2, 0), (1, 1)])
def test_weyl_dimension_agreement(m):
    lam = lam_from(A2, [2 * m[0], 2 * m[1]])
    assert highest_weight_from_lambda(A2, lam) == m
    height = 2 * (m[0] + m[1])          # lambda - w0 lambda in type A2
    dims = irreducible_dims(A2, lam, PLUS2, depth=height + 1)
    assert sum(dims.values()) == A2.weyl_dimension(m)


def test_string_persists_when_condition_fails():
    dims = irreducible_dims(A2, lam_from(A2, [2, 1]), PLUS2, depth=5)
    assert all(dims[(0, k)] == 1 for k in range(6))


def test_verdict_examples():
    v = is_unitarizable_up_to(A1, lam_from(A1, [4]), EpsChar.of([1]), depth=6)
    assert v.psd and v.height_ranks() == [1, 1, 1, 0, 0, 0, 0]
    v = is_unitarizable_up_to(A1, lam_from(A1, [3]), EpsChar.of([1]), depth=4)
    assert not v.psd and v.witness.value < 0 and sum(v.witness.weight) <= 4
    v = is_unitarizable_up_to(A1, lam_from(A1, [2]), EpsChar.of([-1]), depth=6)
    assert v.psd


def test_witness_is_checkable():
    v = is_unitarizable_up_to(A1, lam_from(A1, [5]), EpsChar.of([1]), depth=6)
    mod = point_module(A1, lam_from(A1, [5]), EpsChar.of([1]))
    vec = {w: mod.ctx.const(c) for w, c in v.witness.vector.items()}
    assert mod.ctx.to_rational(mod.form(vec, vec)) == v.witness.value < 0


@pytest.mark.parametrize("eps", [(1, 1), (1, 0), (0, -1)])
def test_serre_vectors_in_radical(eps):
    mod = VermaModule(QEA(A2, EpsChar.of(eps), PLUS2, SymbolicContext(12)), LambdaChar.of([Fraction(1, 3), 0]), 4)
    for n in weights_up_to(2, 4):
        assert serre_radical_check(mod, n)


@given(st.integers(0, 10**6))
def test_form_is_hermitian(seed):
    rng = random.Random(seed)
    eps = EpsChar.of([rng.choice([-1, 0, 1]), rng.choice([0, 1, 2])])
    alg = QEA(A2, eps, PLUS2, SymbolicContext(12))
    mod = VermaModule(alg, LambdaChar.of([Fraction(1, 3), Fraction(1, 6)]), 6)
    x = alg.word(random_word(rng, 2, 3))
    words = [w for n in weights_up_to(2, 2) for w in mod.gram_block(n).basis]
    u = {rng.choice(words): alg.ctx.one()}
    w = {rng.choice(words): alg.ctx.one()}
    assert mod.form(mod.act(x, u), w) == mod.form(u, mod.act(x.star(), w))


def test_generalized_verma_character():
    lam = lam_from(A2, [2, 1])
    dims = irreducible_dims(A2, lam, EpsChar.of([1, 0]), depth=4)
    assert dims == induced_character(A2, [0], (1, 0), 4)
