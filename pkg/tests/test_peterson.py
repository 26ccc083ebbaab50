from functools import lru_cache

import pytest

from kpeterson.affine import AffinePerm, grassmannian_elements, is_k_small, k_rect, perm_of_partition
from kpeterson.coeffs import e_poly, ring
from kpeterson.quantum import F_conserved, QRing, all_perms, q_power, s_theta_perm
from kpeterson.peterson import (
    NotKSmall,
    PetersonContext,
    _d_set,
    det_M_lambda,
    det_M_prime_rect,
    det_N_lambda,
    f_entry,
    frac_equal,
    g_prefactor_vec,
    groth_image_check,
    krect_factor_check,
    max_factor_check,
    phi_inverse_check,
    psi_image_check,
    xi_vector,
)
from kpeterson.symseries import SeriesFrac, SymSeries, omega_product


@lru_cache(maxsize=None)
def ctx(n, D, sl=True):
    return PetersonContext(n, D, sl)


# -- the substitution on generators ------------------------------------------------------------------

def test_generator_images():
    c = ctx(3, 4)
    gens = c.phi_generators(twisted=False)
    t, s = c.cent.tau_list(), c.cent.sigma_list()
    assert frac_equal(gens["Q1"], SeriesFrac.unchecked(t[2], t[1] * t[1]))
    assert frac_equal(gens["z1"], SeriesFrac.unchecked(t[1], s[1]))


@pytest.mark.parametrize("sl", [True, False])
def test_product_of_all_z(sl):
    c = ctx(3, 4, sl)
    qr = c.qring
    img = c.phi_apply(qr.z(1) * qr.z(2) * qr.z(3))
    # tau_n / sigma_n = det A
    want = SymSeries.const(c.ring, 4, c.ring.mono([-1, -1, -1]))
    assert frac_equal(img, want)


def test_phi_tilde_of_one():
    c = ctx(3, 4)
    assert frac_equal(c.phi_tilde_apply(c.qring.one()), SymSeries.const(c.ring, 4, 1))


@pytest.mark.parametrize("n", [2, 3])
def test_conserved_quantities_map_to_constants(n):
    c = ctx(n, 4)
    xs = [c.ring.ea(k, -1) for k in range(1, n + 1)]
    for i in range(n + 1):
        want = SymSeries.const(c.ring, 4, e_poly(i, xs, c.ring))
        assert frac_equal(c.phi_apply(F_conserved(c.qring, n, i)), want)
    assert c.ideal_check()


@pytest.mark.parametrize("n", [2, 3])
def test_substitution_commutes_with_iota(n):
    assert ctx(n, 4).phi_iota_check()


def test_zeta_and_eta_rejected():
    c = ctx(2, 2)
    with pytest.raises(ValueError):
        c.phi_apply(c.qring.zeta())


# -- the main identity ----------------------------------------------------------------------------------

def test_identity_element():
    rep = ctx(3, 4).verify_main(AffinePerm.identity(3))
    assert rep["status"] == "pass"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_key_base_case(n):
    c = ctx(n, 4)
    assert c.key_base_case()
    # the quantum side of s_0 is Q^{-theta} G_{s_theta}
    qs = c.quantum_side(AffinePerm.s(n, 0))
    assert qs == q_power(c.groth.qring, [-1] * (n - 1)) * c.groth[s_theta_perm(n)]


def test_rho2_degree_six():
    c = ctx(3, 6)
    x = AffinePerm.from_word(3, [1, 0])
    assert c.verify_main(x)["status"] == "pass"


@pytest.mark.parametrize("n,L", [(2, 4), (3, 4)])
def test_main_identity_all_small_elements(n, L):
    reps = ctx(n, 4).verify_main_all(L)
    assert [r["status"] for r in reps] == ["pass"] * len(reps)


def test_main_rejects_non_grassmannian():
    with pytest.raises(ValueError):
        ctx(3, 3).verify_main(AffinePerm.s(3, 1))


# -- determinantal formulas ---------------------------------------------------------------------------

def test_example_entries_n6():
    r = ring(6, False)
    lam = (3, 3, 1)
    assert _d_set(lam, 2, 1, 6, r) == [r.ea(5, -1), r.ea(4, -1)]
    assert f_entry(lam, 1, 1, 6, r) == r.ea(6, -1) + r.ea(5, -1) + r.ea(4, -1)
    assert xi_vector(lam, 6) == [0, 0, 0, 1, 1, 1]
    # e(lambda) times xi: e^{a2 + a3 + a5}
    assert g_prefactor_vec(lam, 6) == [0, 1, 1, 0, 1, 0]


@pytest.mark.parametrize("n", [3, 4])
def test_k_small_determinants(n):
    c = ctx(n, 4)
    for lam in grassmannian_elements(n, 4):
        if lam and is_k_small(lam, n):
            assert det_M_lambda(c, lam) == c.demazure.g_tilde(lam), lam
            assert det_N_lambda(c, lam) == c.demazure.g(lam), lam


def test_determinant_needs_k_small():
    with pytest.raises(NotKSmall):
        det_M_lambda(ctx(3, 2), (2, 1))


def test_rectangle_determinants():
    c4 = ctx(4, 5)
    assert det_M_prime_rect(c4, 2, 2) == c4.demazure.g_tilde((2, 2))
    c3 = ctx(3, 4)
    assert det_M_prime_rect(c3, 1, 1) == c3.demazure.g_tilde((1,))
    for i in (1, 2):
        want = c3.cent.sigma_list()[3 - i] * omega_product(c3.ring, 4, xi_vector(k_rect(i, 3), 3)).inverse()
        assert det_M_prime_rect(c3, i, 3 - i) == want
    with pytest.raises(ValueError):
        det_M_prime_rect(c3, 2, 2)


# -- factorizations ---------------------------------------------------------------------------------------

@pytest.mark.parametrize("lam,i", [((), 1), ((), 2), ((1,), 1), ((2,), 2), ((1, 1), 1)])
def test_krect_factorization_n3(lam, i):
    assert krect_factor_check(ctx(3, 6), lam, i)["status"] == "pass"


def test_empty_krect_is_the_rectangle():
    c = ctx(3, 4)
    assert c.demazure.g_tilde(k_rect(1, 3)) == c.demazure.g_tilde(()) * c.demazure.g_tilde(k_rect(1, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_psi_and_longest_images(n):
    c = ctx(n, 4)
    for i in range(1, n):
        assert psi_image_check(c, i)
    assert groth_image_check(c)


@pytest.mark.parametrize("n,D", [(3, 6), (4, 5)])
def test_max_factorization(n, D):
    assert max_factor_check(ctx(n, D))["status"] == "pass"


def test_max_factorization_n3_is_a_shift_identity():
    c = ctx(3, 4)
    assert c.demazure.g_tilde((1,)) == c.demazure.g_tilde((1,), 3)


# -- inverse map, intertwining and the star involution ---------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_phi_inverse_fixtures(n):
    got = phi_inverse_check(ctx(n, 6))
    assert all(got.values()), got


def test_intertwining_n3():
    c = ctx(3, 4)
    got = c.intertwining_check(all_perms(3))
    assert all(got.values()), [k for k, v in got.items() if not v]


@pytest.mark.parametrize("n", [2, 3])
def test_star_involution(n):
    got = ctx(n, 4).star_check()
    assert all(got.values()), got


def test_q_rho_closed_form_n3():
    assert ctx(3, 4).phi_tilde_Q_rho_check()


def test_sf_to_c_n3():
    assert ctx(3, 4).sf_to_c_check()
