import random
from fractions import Fraction

import pytest

from uqeps.cogroupoid import random_word
from uqeps.harish_chandra import orbit_candidates, support_of_ones
from uqeps.quantum_space import (InfiniteDimensional, TruncatedModule, build_generators,
                                 expected_t_on_highest_weight, highest_weight_candidates, invariant_scalars_check,
                                 invariant_state, modular_check, podles_parameters, rank_one_elements,
                                 verify_subalg_relations)
from uqeps.root_data import EpsChar, LambdaChar, build_root_datum

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)


def module(datum, powers, eps, depth=4):
    return TruncatedModule(datum, LambdaChar.from_alpha_powers(datum, powers), EpsChar.of(eps), depth)


def test_represent_basics():
    mod = module(A2, [2, 1], [1, 0], depth=3)
    alg, ctx = mod.alg, mod.ctx
    assert mod.represent(alg.one()).cols == mod.identity().cols
    mu = (1, -2)
    op = mod.represent(alg.K(mu))
    for j, (n, _) in enumerate(mod.basis):
        expect = mod.lam.value(ctx, mu) / alg.qhalf(mu, n)
        assert op.cols[j] == {j: expect}
    for r in range(2):
        assert mod.represent(alg.E(r)).cols[0] == {}


def test_a1_generators():
    mod = module(A1, [2], [1])
    gens = build_generators(mod)
    assert gens.W[0].cols == mod.identity().cols
    assert gens.T[0].equal_on_interior(gens.T_alt[0])
    assert gens.Z[0].entry(0, 0) == mod.lam.value(mod.ctx, (-4,))


@pytest.mark.parametrize("powers,eps", [([4], [1]), ([2], [-1]), ([1], [0])])
def test_a1_relations(powers, eps):
    rpt = verify_subalg_relations(module(A1, powers, eps))
    assert rpt.ok, rpt.failures
    assert len(rpt.checked) == 64


def test_a2_relations_sample():
    rpt = verify_subalg_relations(module(A2, [2, 2], [0, 1], depth=3))
    assert rpt.ok, rpt.failures


def test_commutator_identity_on_module():
    mod = module(A1, [3], [-1], depth=5)
    gens = build_generators(mod)
    X, Y, Z, T = gens.X[0], gens.Y[0], gens.Z[0], gens.T[0]
    q, qi = mod.alg.qr(0), mod.alg.qr_inv(0)
    assert (X * Y - Y * X).equal_on_interior((T * Z).scale(q - qi) - (Z * Z).scale(q * q - qi * qi))


@pytest.mark.parametrize("e,regime", [(1, 1), (0, 0), (-1, -1), (Fraction(1, 2), 1)])
def test_podles_parameters_a1(e, regime):
    mod = module(A1, [Fraction(3, 2)], [e], depth=4)
    p = podles_parameters(mod, 0)
    assert p.w == mod.ctx.one() and p.regime == regime
    assert p.t == expected_t_on_highest_weight(mod, 0)


def test_t_formula_on_highest_weight():
    mod = module(A1, [Fraction(3, 2)], [1], depth=3)
    ctx, lam, q = mod.ctx, mod.lam, mod.alg.qr(0)
    # eps q lambda_{4 alpha - 4 omega} + q^{-1} lambda_{-4 omega}, alpha = 2 omega
    assert podles_parameters(mod, 0).t == q * lam.value(ctx, (4,)) + lam.value(ctx, (-4,)) / q


def test_invariant_state_a1_closed_form():
    e = Fraction(1, 4)
    mod = TruncatedModule(A1, LambdaChar.of([e]), EpsChar.of([1]), 3)
    assert mod.finite and len(mod.basis) == 2
    gens = build_generators(mod)
    ctx = mod.ctx
    q = ctx.qpow
    expect = (q(-8 * e) + q(4 - 8 * e)) / (q(-4 * e) + q(2 - 4 * e))
    assert invariant_state(gens.Z[0], gens) == expect
    assert invariant_state(mod.identity(), gens) == ctx.one()


@pytest.mark.parametrize("datum,powers,depth", [(A1, [4], 4), (A2, [2, 0], 4)])
def test_modular_identity(datum, powers, depth):
    mod = module(datum, powers, [1] * datum.rank, depth)
    assert mod.finite
    rpt = modular_check(build_generators(mod), pairs=20)
    assert rpt.ok and len(rpt.checked) == 21


def test_state_needs_finite_module():
    mod = module(A1, [1], [0], depth=3)
    with pytest.raises(InfiniteDimensional):
        invariant_state(mod.identity(), build_generators(mod))


def test_invariant_scalars():
    assert invariant_scalars_check(module(A1, [2], [1])) == 1


def test_z_is_not_invariant():
    mod = module(A1, [2], [1])
    el = rank_one_elements(mod.alg, 0)
    assert mod.cg.adjoint_action(el.Z, mod.acting.E(0)) != mod.alg.zero()


def test_radical_stability_and_adjointness():
    mod = module(A1, [2], [1], depth=3)
    el = rank_one_elements(mod.alg, 0)
    alg = mod.alg
    for x in [alg.E(0), alg.F(0), alg.K((1,)), el.X, el.T]:
        assert mod.radical_stable(x)
        assert mod.gram_adjoint(x)


@pytest.mark.parametrize("powers,eps", [([2, 2], [1, 1]), ([2, 4], [1, 0]), ([4, 2], [0, 1])])
def test_other_candidates_are_excluded(powers, eps):
    lam = LambdaChar.from_alpha_powers(A2, powers)
    checks = highest_weight_candidates(A2, lam, EpsChar.of(eps))
    assert len(checks) == len(orbit_candidates(A2, lam, support_of_ones(EpsChar.of(eps))))
    for c in checks:
        assert c.admissible == (c.candidate == lam)
