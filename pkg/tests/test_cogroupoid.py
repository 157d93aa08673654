import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uqeps.cogroupoid import CapExceeded, Cogroupoid, Tensor, random_word, verify_cogroupoid_axioms
from uqeps.harish_chandra import central_element_from
from uqeps.root_data import EpsChar, build_root_datum

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
PLUS1, PLUS2 = EpsChar.plus(1), EpsChar.plus(2)


def test_coproduct_on_generators():
    cg = Cogroupoid(A2)
    eps, mid = EpsChar.of([Fraction(1, 2), -1]), EpsChar.of([3, 0])
    alg = cg.alg(eps, PLUS2)
    left, right = cg.alg(eps, mid), cg.alg(mid, PLUS2)
    z = (0, 0)
    one = cg.ctx.one()
    assert cg.coproduct(alg.one(), mid) == Tensor((left, right), {(((), z, ()), ((), z, ())): one})
    assert cg.coproduct(alg.K((1, 0)), mid) == Tensor((left, right), {(((), (1, 0), ()), ((), (1, 0), ())): one})
    a = A2.simple_root(0)
    na = tuple(-x for x in a)
    expect = Tensor((left, right), {(((), z, (0,)), ((), a, ())): one, (((), na, ()), ((), z, (0,))): one})
    assert cg.coproduct(alg.E(0), mid) == expect


def test_counit_and_antipode_examples():
    cg = Cogroupoid(A1)
    eps = EpsChar.of([2])
    alg = cg.alg(eps, eps)
    q = cg.ctx.qpow(1)
    assert cg.counit(alg.K((1,)) * alg.F(0) * alg.E(0)) == cg.ctx.zero()
    assert cg.counit(alg.E(0) * alg.F(0)) == cg.ctx.zero()
    assert cg.counit(alg.K((3,))) == cg.ctx.one()
    assert cg.antipode(alg.E(0)) == alg.E(0).scale(-q)
    assert cg.antipode(alg.F(0)) == alg.F(0).scale(-1 / q)
    assert cg.antipode(alg.K((1,)) * alg.E(0)) == (alg.E(0) * alg.K((-1,))).scale(-q)
    assert cg.antipode(alg.K((1,))) * alg.K((1,)) == alg.one()


def test_counit_needs_matching_indices():
    cg = Cogroupoid(A1)
    with pytest.raises(ValueError):
        cg.counit(cg.alg(EpsChar.of([2]), PLUS1).one())


def test_antipode_changes_indices():
    cg = Cogroupoid(A2)
    eps, eta = EpsChar.of([1, 0]), EpsChar.of([-1, 2])
    x = cg.alg(eps, eta).E(1)
    assert cg.antipode(x).alg.signature == cg.alg(eta, eps).signature


def test_axioms_on_all_short_words():
    cg = Cogroupoid(A2)
    eps, mu, nu, eta = (EpsChar.of(v) for v in ([Fraction(1, 2), -1], [0, 2], [1, Fraction(-1, 3)], [1, 1]))
    alg = cg.alg(eps, eta)
    letters = []
    for r in range(2):
        w = tuple(int(i == r) for i in range(2))
        letters += [("E", r), ("F", r), ("K", w), ("K", tuple(-x for x in w))]
    count = 0
    for n in range(4):
        for word in itertools.product(letters, repeat=n):
            assert cg.verify_axioms(alg.word(word), mu, nu) == [], word
            count += 1
    assert count == 1 + 8 + 64 + 512


@pytest.mark.parametrize("datum", [A1, A2], ids=["A1", "A2"])
def test_random_words_pass(datum):
    rng = random.Random(3)
    chars = [EpsChar.of([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(datum.rank)])
             for _ in range(4)]
    rpt = verify_cogroupoid_axioms(datum, *chars, degree=5, samples=200, seed=1)
    assert rpt.ok and rpt.checked >= 200


def test_antipode_star_involution():
    cg = Cogroupoid(A2)
    eps, eta = EpsChar.of([2, -1]), EpsChar.of([1, Fraction(1, 2)])
    alg = cg.alg(eps, eta)
    rng = random.Random(5)
    for _ in range(30):
        h = alg.word(random_word(rng, 2, 4))
        assert cg.antipode(cg.antipode(h).star()).star() == h


def _sample(alg, rng, degree=3):
    return alg.word(random_word(rng, alg.rank, degree))


@given(st.integers(0, 10**6))
def test_module_algebra_laws(seed):
    rng = random.Random(seed)
    cg = Cogroupoid(A1)
    eps = EpsChar.of([rng.choice([-1, 0, 1, Fraction(1, 2)])])
    alg, acting = cg.alg(eps, PLUS1), cg.alg(PLUS1, PLUS1)
    x, y = _sample(alg, rng), _sample(alg, rng)
    h, h2 = _sample(acting, rng, 2), _sample(acting, rng, 2)
    act = cg.adjoint_action
    assert act(act(x, h), h2) == act(x, h * h2)
    lhs = act(x * y, h)
    rhs = alg.zero()
    for (k1, k2), c in cg.coproduct(h).terms.items():
        rhs = rhs + (act(x, acting.term(*k1)) * act(y, acting.term(*k2))).scale(c)
    assert lhs == rhs
    assert act(x, h).star() == act(x.star(), cg.antipode(h).star())


def test_adjoint_action_examples():
    cg = Cogroupoid(A1)
    alg = cg.alg(EpsChar.of([0]), PLUS1)
    acting = cg.alg(PLUS1, PLUS1)
    assert cg.adjoint_action(alg.K((-4,)), acting.K((1,))) == alg.K((-4,))
    q = cg.ctx.qpow(1)
    # K_{-4 omega} <| E = (1 - q^2) K_{alpha - 4 omega} E, i.e. q^{1/2}(q^{-1} - q) times q^{1/2}
    assert cg.adjoint_action(alg.K((-4,)), acting.E(0)) == alg.term((), (-2,), (0,)).scale(1 - q * q)


def test_closure_examples():
    cg = Cogroupoid(A1)
    for e in (-1, 0, 1):
        alg = cg.alg(EpsChar.of([e]), PLUS1)
        assert len(cg.locally_finite_closure(alg.one())) == 1
        assert len(cg.locally_finite_closure(alg.K((-4,)))) == 4
        with pytest.raises(CapExceeded):
            cg.locally_finite_closure(alg.K((4,)), cap=30)


def test_center_iff_trivial_action():
    """On a spanning sample: x commutes with the generators exactly when
    x <| h = counit(h) x for every generator h."""
    cg = Cogroupoid(A1)
    eps = EpsChar.of([1])
    alg, acting = cg.alg(eps, PLUS1), cg.alg(PLUS1, PLUS1)
    z = central_element_from(A1, (1,), eps).element
    samples = [alg.one(), z, z * z + alg.one(), alg.E(0), alg.F(0), alg.F(0) * alg.E(0),
               alg.K((-4,)), alg.K((4,)), alg.K((1,)) * alg.E(0), z + alg.E(0)]
    gens = [g for _, g in cg.generators(acting)]
    for x in samples:
        commutes = all(alg.equal_mod_serre(x * alg.word([lt]), alg.word([lt]) * x)
                       for lt in [("E", 0), ("F", 0), ("K", (1,))])
        trivial = all(cg.adjoint_action(x, h) == x.scale(cg.counit(h)) for h in gens)
        assert commutes == trivial, str(x)
