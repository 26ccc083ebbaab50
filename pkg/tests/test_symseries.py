import random

import pytest
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from kpeterson.coeffs import ring, transposition
from kpeterson.omegaform import OmegaForm
from kpeterson.symseries import (
    NonUnitConstantTerm,
    SeriesFrac,
    SymSeries,
    apply_iota,
    apply_sigma,
    apply_sigma_inv,
    coeff_weyl,
    e_series,
    omega_inverse,
    omega_series,
    random_series,
    to_m_basis,
)

from oracles import eval_rt, geometric_product, poly_mul, series_in_vars

GL3 = ring(3, False)


POINT = [Fraction(2), Fraction(-3, 2), Fraction(5, 7)]


def numeric(f):
    return series_in_vars(f, max(f.D, 1), lambda c: eval_rt(c, POINT))


@pytest.mark.parametrize("D", range(0, 7))
def test_omega_series_matches_generating_function(D):
    b = 1 - 1 / POINT[1]
    assert numeric(omega_series(GL3, D, 2)) == geometric_product(b, max(D, 1), D)


def test_omega_series_degree_two():
    b = GL3.b(1)
    want = SymSeries.from_parts(GL3, 2, [((), GL3.one()), ((1,), b), ((2,), b * b)])
    assert omega_series(GL3, 2, 1) == want


def test_omega_series_times_inverse():
    for D in (1, 3, 5):
        assert omega_series(GL3, D, 1) * omega_series(GL3, D, 1).inverse() == SymSeries.const(GL3, D, 1)


def test_omega_inverse_is_signed_e_expansion():
    D = 4
    b = GL3.b(1)
    want = SymSeries(GL3, D)
    for m in range(D + 1):
        want = want + e_series(GL3, D, m).scale((-b) ** m)
    assert omega_series(GL3, D, 1).inverse() == want
    # 1/Omega(b) is prod (1 - b y_j); compare through Omega(b) * (1/Omega(b)) = 1 numerically
    b = 1 - 1 / POINT[0]
    inv = numeric(omega_inverse(GL3, D, 1))
    assert poly_mul(inv, geometric_product(b, D, D), D) == {(0,) * D: 1}


def test_geometric_series_inverse():
    D = 3
    f = SymSeries.const(GL3, D, 1) - SymSeries.h(GL3, D, 1)
    want = SymSeries(GL3, D)
    for k in range(D + 1):
        want = want + SymSeries.h(GL3, D, *([1] * k))
    assert f.inverse() == want


def test_truncated_square_vanishes():
    h1 = SymSeries.h(GL3, 1, 1)
    assert (h1 * h1).is_zero()


def test_inverse_needs_unit_constant_term():
    with pytest.raises(NonUnitConstantTerm):
        (SymSeries.const(GL3, 2, GL3.b(1)) + SymSeries.h(GL3, 2, 1)).inverse()


def test_sigma_on_h2():
    D = 3
    want = SymSeries.const(GL3, D, 1) + SymSeries.h(GL3, D, 1) + SymSeries.h(GL3, D, 2)
    assert apply_sigma(SymSeries.h(GL3, D, 2)) == want
    assert apply_sigma(SymSeries.const(GL3, D, 1)) == SymSeries.const(GL3, D, 1)


def test_sigma_scales_omega_exactly():
    for i in (1, 2, 3):
        got = OmegaForm.omega(GL3, i).sigma().expand(5)
        assert got == omega_series(GL3, 5, i).scale(GL3.ea(i))


def test_iota_on_low_h():
    D = 3
    h1, h2 = SymSeries.h(GL3, D, 1), SymSeries.h(GL3, D, 2)
    assert apply_iota(h1) == h1
    assert apply_iota(h2) == h1 + (SymSeries.h(GL3, D, 1, 1) - h2)


def test_iota_of_omega_is_reversed_inverse():
    got = OmegaForm.omega(GL3, 1).iota().expand(5)
    assert got == omega_series(GL3, 5, 3).inverse()


def test_coeff_weyl_examples():
    D = 3
    f = SymSeries.h(GL3, D, 1, coeff=GL3.b(1))
    assert coeff_weyl(f, [2, 1, 3]) == SymSeries.h(GL3, D, 1, coeff=GL3.b(2))
    assert omega_series(GL3, D, 1).permute(transposition(3, 1, 3)) == omega_series(GL3, D, 3)


def test_coeff_weyl_shift_matches_parameter_shift():
    from kpeterson.demazure import DemazureContext

    ctx = DemazureContext(3, 4, sl=False)
    g = ctx.g_tilde((2, 1))
    assert g.shift(2) == ctx.g_tilde((2, 1), 2)


# -- properties on random polynomial inputs --------------------------------------------

seeds = st.integers(0, 10_000)


@given(seeds)
def test_sigma_inverse_and_iota_involution(seed):
    rng = random.Random(seed)
    f = random_series(GL3, 4, rng)
    assert apply_sigma_inv(apply_sigma(f)) == f
    assert apply_sigma(apply_sigma_inv(f)) == f
    assert apply_iota(apply_iota(f)) == f


@given(seeds)
def test_sigma_commutes_with_iota(seed):
    rng = random.Random(seed)
    f = random_series(GL3, 4, rng)
    assert apply_sigma(apply_iota(f)) == apply_iota(apply_sigma(f))


@given(seeds)
def test_product_agrees_with_deeper_truncation(seed):
    rng = random.Random(seed)
    f, g = random_series(GL3, 5, rng), random_series(GL3, 5, rng)
    assert (f * g).truncate(3) == f.truncate(3) * g.truncate(3)
    if f.constant_term().is_monomial_unit():
        assert f.inverse().truncate(3) == f.truncate(3).inverse()


def test_truncation_consistency_of_exact_forms():
    x = OmegaForm.omega(GL3, 1) * OmegaForm.omega(GL3, 3, -1)
    for op in (lambda t: t, lambda t: t.sigma(), lambda t: t.iota(), lambda t: t.sigma_inv()):
        assert op(x).expand(6).truncate(3) == op(x).expand(3)


def test_m_basis_debug_expander():
    D = 3
    m = to_m_basis(SymSeries.h(GL3, D, 2))
    assert m == {(2,): GL3.one(), (1, 1): GL3.one()}


def test_series_fraction_equality():
    D = 4
    a = omega_series(GL3, D, 1)
    b = omega_series(GL3, D, 2)
    assert SeriesFrac(a * b, b) == SeriesFrac(a)
    assert SeriesFrac(a, b) * SeriesFrac(b, a) == SeriesFrac(SymSeries.const(GL3, D, 1))
    assert SeriesFrac(a, b).normal() == a * b.inverse()


def test_json_roundtrip():
    f = omega_series(GL3, 3, 2)
    assert SymSeries.from_json(f.to_json()) == f
