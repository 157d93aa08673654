from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uqeps.harish_chandra import (central_character, central_element_from, orbit_candidates,
                                  same_central_character, support_of_ones, weight_multiplicities)
from uqeps.qea import QEA
from uqeps.root_data import EpsChar, LambdaChar, build_root_datum
from uqeps.scalars import SymbolicContext

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
exponents = st.fractions(min_value=-2, max_value=2, max_denominator=4)


def test_a1_central_character():
    ctx = SymbolicContext(4)
    lam = LambdaChar.of([Fraction(1, 4)])
    q = ctx.qpow(1)
    l4 = lam.value(ctx, (4,))
    for e in (1, Fraction(1, 2), 0):
        value = central_character(A1, lam, EpsChar.of([e]), (1,), ctx)
        assert value == 1 / (q * l4) + ctx.const(e) * q * l4
    assert central_character(A1, lam, EpsChar.of([1]), (0,), ctx) == ctx.one()


def test_same_central_character_examples():
    eps = EpsChar.of([1])
    lam = LambdaChar.of([Fraction(1, 4)])
    assert same_central_character(A1, lam, lam, eps)
    assert same_central_character(A1, lam, LambdaChar.of([Fraction(-3, 4)]), eps)
    assert not same_central_character(A1, lam, LambdaChar.of([Fraction(1, 2)]), eps)


def test_orbit_candidate_examples():
    lam = LambdaChar.of([Fraction(1, 4)])
    cands = orbit_candidates(A1, lam, [0])
    assert cands[0] == lam and cands[1].exponents == (Fraction(-3, 4),)
    lam2 = LambdaChar.of([Fraction(1, 3), Fraction(-1, 2)])
    cands = orbit_candidates(A2, lam2, [0])
    assert len(cands) == 2
    assert all(c.exponents[1] == lam2.exponents[1] for c in cands)


@given(st.lists(exponents, min_size=2, max_size=2), st.sampled_from([[], [0], [1], [0, 1]]))
def test_orbit_candidates_properties(exps, subset):
    lam = LambdaChar.of(exps)
    cands = orbit_candidates(A2, lam, subset)
    assert len(cands) <= len(A2.weyl_group(subset))
    eps = EpsChar.of([1 if r in subset else 0 for r in range(2)])
    assert support_of_ones(eps) == subset
    for c in cands:
        for r in range(2):
            if r not in subset:
                assert c.exponents[r] == lam.exponents[r]
        assert same_central_character(A2, lam, c, eps)


def test_weight_multiplicities():
    assert weight_multiplicities(A2, (1, 1)) == {(1, 1): 1, (0, 0): 2}
    assert weight_multiplicities(A2, (2, 0)) == {(2, 0): 1, (0, 1): 1}
    b2 = build_root_datum("B", 2)
    total = sum(m * len({w.act(nu) for w in b2.weyl_group()})
                for nu, m in weight_multiplicities(b2, (1, 1)).items())
    assert total == b2.weyl_dimension((1, 1))


@pytest.mark.parametrize("e", [1, 0])
def test_a1_central_element(e):
    eps = EpsChar.of([e])
    rpt = central_element_from(A1, (1,), eps)
    assert rpt.ok and rpt.central
    z = rpt.element
    alg = z.alg
    tz = alg.tau(z)
    has_plus = tz.coefficient((), (4,), ()) != alg.ctx.zero()
    assert has_plus == (e == 1)
    # chi_lambda(tau z) is one fixed multiple of the central character
    ratios = set()
    for ex in [Fraction(0), Fraction(1, 4), Fraction(3, 4), Fraction(-1, 2)]:
        lam = LambdaChar.of([ex])
        ratios.add(alg.chi_lambda(tz, lam) / central_character(A1, lam, eps, (1,), alg.ctx))
    assert len(ratios) == 1


def test_a2_central_element():
    rpt = central_element_from(A2, (1, 0), EpsChar.of([1, 0]))
    assert rpt.ok


def test_weights_with_stabilizers_count_once():
    # V_rho of A2 has the zero weight with multiplicity 2 and stabilizer W
    rpt = central_element_from(A2, (1, 1), EpsChar.of([1, 0]), cap=200)
    assert rpt.ok and rpt.closure_dim == 64
    rpt = central_element_from(A1, (2,), EpsChar.of([0]), cap=40)
    assert rpt.ok and rpt.closure_dim == 9
