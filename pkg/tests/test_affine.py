from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kpeterson.affine import (
    AffineGrassElt,
    AffinePerm,
    BoundExceeded,
    NotGrassmannian,
    NotReduced,
    bruhat_lower_set,
    core_from_word,
    diag_stats,
    e_lambda_vec,
    grassmannian_elements,
    is_k_small,
    is_reduced,
    k_bounded_partitions,
    k_rect,
    k_rect_union,
    nu,
    omega_k_word,
    partition_from_word,
    perm_of_partition,
    residue,
    word_from_partition,
)

from oracles import affine_compose, affine_simple, shi_length


def bfs_lengths(n, depth):
    """Cayley-graph distance from the identity, by breadth-first search on windows."""
    start = tuple(range(1, n + 1))
    dist = {start: 0}
    frontier = [start]
    for d in range(1, depth + 1):
        nxt = []
        for w in frontier:
            for i in range(n):
                v = tuple(affine_compose(list(w), affine_simple(n, i)))
                if v not in dist:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


# -- words and residues ---------------------------------------------------------------

def test_empty_and_single_box_words():
    assert word_from_partition((), 3) == []
    assert word_from_partition((1,), 3) == [0]


@pytest.mark.parametrize("n,l", [(3, 1), (3, 2), (4, 3), (5, 4)])
def test_single_row_gives_rho(n, l):
    assert word_from_partition((l,), n) == list(range(l - 1, -1, -1))


def test_residues():
    assert residue(1, 1, 3) == 0
    assert residue(1, 2, 3) == 1
    assert residue(2, 1, 3) == 2
    assert residue(3, 1, 6) == 4


def test_word_of_two_rows():
    # rows (2,1) for n=3: residues 0,1 then 2; read in reverse
    assert word_from_partition((2, 1), 3) == [2, 1, 0]


def test_non_bounded_partition_rejected():
    with pytest.raises(ValueError):
        word_from_partition((3,), 3)


@pytest.mark.parametrize("n", [3, 4])
def test_partition_word_roundtrip(n):
    for lam in grassmannian_elements(n, 6):
        word = word_from_partition(lam, n)
        assert is_reduced(word, n)
        x = AffinePerm.from_word(n, word)
        assert x.is_grassmannian()
        assert partition_from_word(word, n) == lam


def test_partition_from_word_errors():
    with pytest.raises(NotReduced):
        partition_from_word([0, 0], 3)
    with pytest.raises(NotGrassmannian):
        partition_from_word([1], 3)


def test_core_of_single_row():
    assert core_from_word([1, 0], 3) == (2,)


# -- length and enumeration ------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_length_is_cayley_distance(n):
    for window, d in bfs_lengths(n, 6).items():
        x = AffinePerm(n, window)
        assert x.length() == d
        assert shi_length(list(window)) == d


@pytest.mark.parametrize("n", [3, 4])
def test_grassmannian_count_matches_bounded_partitions(n):
    dist = bfs_lengths(n, 6)
    for l in range(7):
        grass = [w for w, d in dist.items() if d == l and AffinePerm(n, w).is_grassmannian()]
        assert len(grass) == len(k_bounded_partitions(l, n))


def test_reduced_word_reproduces_element():
    for word in product(range(3), repeat=5):
        x = AffinePerm.from_word(3, word)
        w = x.reduced_word()
        assert len(w) == x.length()
        assert AffinePerm.from_word(3, w) == x


@given(st.lists(st.integers(0, 3), max_size=8))
def test_inverse_and_descents(word):
    x = AffinePerm.from_word(4, word)
    assert x * x.inverse() == AffinePerm.identity(4)
    for i in x.right_descents():
        assert (x * AffinePerm.s(4, i)).length() == x.length() - 1
    for i in set(range(4)) - set(x.right_descents()):
        assert (x * AffinePerm.s(4, i)).length() == x.length() + 1


# -- translations ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4])
def test_decompose_remultiplies(n):
    for window in bfs_lengths(n, 6):
        x = AffinePerm(n, window)
        w, xi, coords = x.decompose()
        assert AffinePerm.finite(w) * AffinePerm.translation(xi) == x
        assert sum(xi) == 0
        assert len(coords) == n - 1


def test_s0_is_s_theta_times_negative_coroot():
    n = 3
    w, xi, _ = AffinePerm.s(n, 0).decompose()
    assert w == (3, 2, 1)
    assert xi == (-1, 0, 1)


# -- omega_k ---------------------------------------------------------------------------

def test_omega_k_word():
    assert omega_k_word([0, 1, 2], 3) == [0, 2, 1]


@given(st.lists(st.integers(0, 3), max_size=8))
def test_omega_k_is_involutive_automorphism(word):
    x = AffinePerm.from_word(4, word)
    assert x.omega_k().omega_k() == x
    assert x.omega_k() == AffinePerm.from_word(4, omega_k_word(word, 4))
    assert x.omega_k().length() == x.length()


def test_nu4_is_fixed_by_omega_k():
    assert nu(4) == (2, 1, 1)
    e = AffineGrassElt.from_partition(nu(4), 4)
    assert e.omega_k().partition == nu(4)


def test_omega_k_on_grassmannian_examples():
    # omega_k conjugates k-bounded partitions for small shapes
    assert AffineGrassElt.from_partition((1,), 3).omega_k().partition == (1,)
    assert AffineGrassElt.from_partition((2,), 3).omega_k().partition == (1, 1)
    assert AffineGrassElt.from_partition((2, 1), 4).omega_k().partition == (2, 1)


# -- rectangles and diagonals ------------------------------------------------------------

def test_k_rectangles():
    assert k_rect(1, 3) == (1, 1)
    assert k_rect(2, 3) == (2,)
    assert k_rect(2, 4) == (2, 2)
    assert k_rect_union(k_rect(1, 3), (1,)) == (1, 1, 1)
    with pytest.raises(ValueError):
        k_rect(3, 3)


def test_diag_stats_example():
    assert diag_stats((3, 3, 1), 6) == [(2, 4), (1, 0)]
    # e^{a_3 - a_4} e^{a_2 - a_6}
    assert e_lambda_vec((3, 3, 1), 6) == [0, 1, 1, -1, 0, -1]


def test_k_small():
    assert is_k_small((1,), 2)
    assert is_k_small((2, 1), 4)
    assert not is_k_small((2, 1), 3)
    with pytest.raises(ValueError):
        diag_stats((2, 1), 3)


# -- Bruhat order ---------------------------------------------------------------------------

def subword_oracle(x):
    """All z <= x: every subword of every reduced word of x (brute force over words)."""
    n, l = x.n, x.length()
    words = [w for w in product(range(n), repeat=l) if AffinePerm.from_word(n, w) == x]
    out = set()
    for w in words:
        for mask in product([0, 1], repeat=l):
            out.add(AffinePerm.from_word(n, [a for a, m in zip(w, mask) if m]).window)
    return out


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (2, 2)])
def test_bruhat_lower_set_matches_subwords(lam):
    x = perm_of_partition(lam, 3)
    got = {z.window for z in bruhat_lower_set(x, grassmannian=False)}
    assert got == subword_oracle(x)
    grass = bruhat_lower_set(x)
    assert all(z.is_grassmannian() for z in grass)
    assert {z.window for z in grass} == {w for w in got if AffinePerm(3, w).is_grassmannian()}


def test_bruhat_bound():
    with pytest.raises(BoundExceeded):
        bruhat_lower_set(perm_of_partition((2, 2, 2, 2), 3), bound=4)
