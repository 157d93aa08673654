import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uqeps.contraction import (UnsupportedSeries, build_g_eps, contraction_row, free_positive_part_dim,
                               killing_signature, real_form_basis, real_form_intrinsic, rescaling_isomorphism,
                               su_pq_name, verify_presentation)

ONE = Fraction(1)


def index(L, label):
    return L.labels.index(label)


def test_sl2_recovered():
    g = build_g_eps(1, [1])
    e, f, h = index(g, "X+12"), index(g, "X-12"), index(g, "H1")
    assert g.bracket({e: ONE}, {f: ONE}) == {h: ONE}
    assert g.bracket({h: ONE}, {e: ONE}) == {e: 2 * ONE}


def test_eps_zero_is_nilpotent_extension():
    g = build_g_eps(1, [0])
    e, f = index(g, "X+12"), index(g, "X-12")
    assert g.bracket({e: ONE}, {f: ONE}) == {}
    assert g.dim == 3 and g.jacobi()


@pytest.mark.parametrize("l", [1, 2, 3])
def test_all_contractions_are_lie_star_algebras(l):
    for eps in itertools.product([-1, 0, 1], repeat=l):
        g = build_g_eps(l, eps)
        assert g.dim == l * (l + 2)
        assert g.antisymmetric() and g.jacobi() and g.star_antiautomorphism()
        real = real_form_basis(l, eps)
        assert real.dim == l * (l + 2) and real.jacobi()


def test_a1_real_forms():
    assert killing_signature(real_form_basis(1, [1])) == (0, 3, 0)
    assert killing_signature(real_form_basis(1, [-1])) == (2, 1, 0)
    assert killing_signature(real_form_basis(1, [0]))[2] > 0


@pytest.mark.parametrize("l", [1, 2, 3])
def test_signature_table(l):
    for eps in itertools.product([-1, 1], repeat=l):
        row = contraction_row(l, eps)
        assert row.ok, row
        assert row.signature == row.expected_signature


def test_su21_example():
    name, p, q = su_pq_name([-1, 1])
    assert name == "su(2,1)" and (p, q) == (2, 1)
    assert killing_signature(real_form_basis(2, [-1, 1])) == (4, 4, 0)


@pytest.mark.parametrize("eps", [(0, 1), (0, 0), (-1, 0)])
def test_two_real_form_routes_agree(eps):
    assert killing_signature(real_form_basis(2, eps)) == killing_signature(real_form_intrinsic(2, eps))


def test_presentation():
    rpt = verify_presentation(1, [-1])
    assert rpt.ok
    g = build_g_eps(1, [-1])
    assert g.bracket({index(g, "X+12"): ONE}, {index(g, "X-12"): ONE}) == {index(g, "H1"): -ONE}
    for eps in itertools.product([-1, 0, 1], repeat=2):
        rpt = verify_presentation(2, eps)
        assert rpt.ok and rpt.generated_dim == 8 and rpt.positive_part_dim == 3


def test_free_positive_part():
    assert free_positive_part_dim([[2]]) == 1
    assert free_positive_part_dim([[2, -1], [-1, 2]]) == 3
    assert free_positive_part_dim([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]) == 6
    # B2 and G2 Cartan matrices: 4 and 6 positive roots
    assert free_positive_part_dim([[2, -1], [-2, 2]]) == 4
    assert free_positive_part_dim([[2, -1], [-3, 2]]) == 6


@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=2, max_size=2),
       st.lists(st.integers(1, 4), min_size=2, max_size=2))
def test_rescaling_isomorphism(eps2, scales):
    a = [Fraction(s, 2) for s in scales]
    eps = [x * x * e for x, e in zip(a, eps2)]
    assert rescaling_isomorphism(2, eps, eps2, a)


def test_rescaling_rejects_bad_data():
    with pytest.raises(ValueError):
        rescaling_isomorphism(1, [2], [1], [1])


def test_type_a_only():
    with pytest.raises(UnsupportedSeries):
        build_g_eps(2, [1, 1], series="B")
