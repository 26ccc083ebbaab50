"""Affine symmetric group of type A_{n-1}^{(1)} in window notation,
affine Grassmannian elements and k-bounded partitions (k = n - 1)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple


class NotReduced(ValueError):
    pass


class NotGrassmannian(ValueError):
    pass


class BoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class AffinePerm:
    """Bijection f of Z with f(i+n) = f(i)+n, stored as [f(1), ..., f(n)]."""

    n: int
    window: Tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if len(self.window) != n:
            raise ValueError("window length must equal n")
        if sorted(x % n for x in self.window) != list(range(n)):
            raise ValueError("window entries must be distinct modulo n")
        if sum(self.window) != n * (n + 1) // 2:
            raise ValueError("window sum condition violated")

    @classmethod
    def identity(cls, n: int) -> "AffinePerm":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def s(cls, n: int, i: int) -> "AffinePerm":
        i %= n
        w = list(range(1, n + 1))
        if i == 0:
            w[0], w[-1] = 0, n + 1
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return cls(n, tuple(w))

    @classmethod
    def from_word(cls, n: int, word: Sequence[int]) -> "AffinePerm":
        x = cls.identity(n)
        for i in word:
            x = x * cls.s(n, i)
        return x

    @classmethod
    def translation(cls, xi: Sequence[int]) -> "AffinePerm":
        n = len(xi)
        return cls(n, tuple(i + 1 + n * x for i, x in enumerate(xi)))

    @classmethod
    def finite(cls, perm: Sequence[int]) -> "AffinePerm":
        return cls(len(perm), tuple(perm))

    def __call__(self, m: int) -> int:
        q, r = divmod(m - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "AffinePerm") -> "AffinePerm":
        # composition: (self * other)(i) = self(other(i))
        return AffinePerm(self.n, tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "AffinePerm":
        n = self.n
        out = [0] * n
        for i, v in enumerate(self.window, start=1):
            q, r = divmod(v - 1, n)
            out[r] = i - q * n
        return AffinePerm(n, tuple(out))

    def length(self) -> int:
        w, n = self.window, self.n
        total = 0
        for a in range(n):
            for b in range(a + 1, n):
                total += abs((w[b] - w[a]) // n)
        return total

    def right_descents(self) -> List[int]:
        w, n = self.window, self.n
        out = []
        if w[-1] - n > w[0]:
            out.append(0)
        for i in range(1, n):
            if w[i - 1] > w[i]:
                out.append(i)
        return out

    def left_descents(self) -> List[int]:
        return self.inverse().right_descents()

    def is_grassmannian(self) -> bool:
        return all(d == 0 for d in self.right_descents())

    def reduced_word(self, choose=min) -> List[int]:
        """Reduced word obtained by repeatedly stripping a left descent."""
        word = []
        x = self
        n = self.n
        while True:
            desc = x.left_descents()
            if not desc:
                break
            i = choose(desc)
            word.append(i)
            x = AffinePerm.s(n, i) * x
        return word

    def decompose(self):
        """Write self = w * t_xi; return (w one-line, xi vector, coroot coords)."""
        n = self.n
        w = tuple((v - 1) % n + 1 for v in self.window)
        xi = tuple((v - wv) // n for v, wv in zip(self.window, w))
        coords = tuple(sum(xi[: i + 1]) for i in range(n - 1))
        return w, xi, coords

    def omega_k(self) -> "AffinePerm":
        """Conjugation by i -> 1 - i, which sends s_i to s_{-i}."""
        return AffinePerm(self.n, tuple(1 - self(1 - i) for i in range(1, self.n + 1)))

    def __repr__(self):
        return f"AffinePerm({list(self.window)})"


def translation_decompose(x: AffinePerm):
    return x.decompose()


def omega_k_word(word: Sequence[int], n: int) -> List[int]:
    return [(-i) % n for i in word]


def omega_k_conj(x: AffinePerm) -> AffinePerm:
    return x.omega_k()


def is_reduced(word: Sequence[int], n: int) -> bool:
    return AffinePerm.from_word(n, word).length() == len(word)


# -- partitions ---------------------------------------------------------------

def conjugate(lam: Sequence[int]) -> Tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def canonical(lam: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted((p for p in lam if p > 0), reverse=True))


def is_k_bounded(lam: Sequence[int], n: int) -> bool:
    return all(0 < p <= n - 1 for p in lam)


def is_k_small(lam: Sequence[int], n: int) -> bool:
    lam = canonical(lam)
    if not lam:
        return True
    return lam[0] + len(lam) <= n


def residue(i: int, j: int, n: int) -> int:
    """n-residue (j - i) mod n of the box in row i, column j."""
    return (j - i) % n


def res_index(r: int, n: int) -> int:
    """Parameter index of a residue: residue 0 is read as index n."""
    r %= n
    return r if r else n


def k_bounded_partitions(size: int, n: int):
    from .symseries import partitions_of

    return [p for p in partitions_of(size, n - 1)]


def word_from_partition(lam: Sequence[int], n: int) -> List[int]:
    """Reduced word of x_lambda.

    Boxes are added row by row from the top, left to right within a row, and
    each box of residue r contributes s_r on the left; the word is returned
    leftmost letter first (so the box (1,1) gives the final letter s_0).
    """
    lam = canonical(lam)
    if not is_k_bounded(lam, n):
        raise ValueError(f"{lam} is not {n - 1}-bounded")
    added = [residue(r, c, n) for r, row in enumerate(lam, start=1) for c in range(1, row + 1)]
    return list(reversed(added))


def _core_apply(core: List[int], i: int, n: int) -> List[int]:
    """Action of s_i on an n-core: add every addable box of residue i."""
    core = list(core)
    rows = len(core)
    adds = []
    for r in range(rows + 1):
        length = core[r] if r < rows else 0
        above = core[r - 1] if r > 0 else None
        if above is not None and above <= length:
            continue
        if residue(r + 1, length + 1, n) == i:
            adds.append(r)
    if not adds:
        raise NotReduced(f"s_{i} adds no box")
    for r in adds:
        if r < len(core):
            core[r] += 1
        else:
            core.append(1)
    return core


def core_from_word(word: Sequence[int], n: int) -> Tuple[int, ...]:
    core: List[int] = []
    for i in reversed(list(word)):
        core = _core_apply(core, i, n)
    return tuple(core)


def core_to_kbounded(core: Sequence[int], n: int) -> Tuple[int, ...]:
    k = n - 1
    conj = conjugate(core)
    out = []
    for r, row in enumerate(core, start=1):
        out.append(sum(1 for c in range(1, row + 1) if row - c + conj[c - 1] - r + 1 <= k))
    return canonical(out)


def partition_from_word(word: Sequence[int], n: int) -> Tuple[int, ...]:
    x = AffinePerm.from_word(n, word)
    if x.length() != len(word):
        raise NotReduced(f"word {list(word)} is not reduced")
    if not x.is_grassmannian():
        raise NotGrassmannian(f"word {list(word)} is not affine Grassmannian")
    return core_to_kbounded(core_from_word(word, n), n)


def partition_from_perm(x: AffinePerm) -> Tuple[int, ...]:
    if not x.is_grassmannian():
        raise NotGrassmannian(repr(x))
    return partition_from_word(x.reduced_word(), x.n)


def perm_of_partition(lam: Sequence[int], n: int) -> AffinePerm:
    return AffinePerm.from_word(n, word_from_partition(lam, n))


def grassmannian_elements(n: int, max_length: int) -> List[Tuple[int, ...]]:
    """All k-bounded partitions of size <= max_length (one per element of W^0)."""
    out = []
    for size in range(max_length + 1):
        out.extend(k_bounded_partitions(size, n))
    return out


# -- k-rectangles, nu_n and diagonal statistics -------------------------------

def k_rect(i: int, n: int) -> Tuple[int, ...]:
    """R_i = (i)^{n-i}."""
    if not 1 <= i <= n - 1:
        raise ValueError("k-rectangle index out of range")
    return (i,) * (n - i)


def rectangle(i: int, j: int) -> Tuple[int, ...]:
    """The partition (i^j): j rows of length i."""
    return (i,) * j


def k_rect_union(lam: Sequence[int], mu: Sequence[int]) -> Tuple[int, ...]:
    return canonical(tuple(lam) + tuple(mu))


def nu(n: int) -> Tuple[int, ...]:
    """Union over i = 1..n-2 of the rectangles (n-i-1)^i."""
    parts: List[int] = []
    for i in range(1, n - 1):
        parts.extend([n - i - 1] * i)
    return canonical(parts)


def diag_stats(lam: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """For each diagonal box (d, d): residues of the row end and column bottom."""
    lam = canonical(lam)
    if not is_k_small(lam, n):
        raise ValueError(f"{lam} is not k-small for n={n}")
    conj = conjugate(lam)
    out = []
    d = 1
    while d <= len(lam) and lam[d - 1] >= d:
        out.append((residue(d, lam[d - 1], n), residue(conj[d - 1], d, n)))
        d += 1
    return out


def e_lambda_vec(lam: Sequence[int], n: int) -> List[int]:
    """Exponent vector of e(lambda) = prod e^{a_{r(x)+1} - a_{b(x)}}."""
    v = [0] * n
    for r, b in diag_stats(lam, n):
        v[res_index(r + 1, n) - 1] += 1
        v[res_index(b, n) - 1] -= 1
    return v


# -- Bruhat order ----------------------------------------------------------------

def bruhat_lower_set(x: AffinePerm, bound: int = 14, grassmannian: bool = True):
    """Elements z <= x, from products of subwords of one reduced word of x."""
    word = x.reduced_word()
    if len(word) > bound:
        raise BoundExceeded(f"length {len(word)} exceeds bound {bound}")
    n = x.n
    gens = [AffinePerm.s(n, i) for i in word]
    seen = {}
    for r in range(len(word) + 1):
        for idx in combinations(range(len(word)), r):
            z = AffinePerm.identity(n)
            for t in idx:
                z = z * gens[t]
            if grassmannian and not z.is_grassmannian():
                continue
            seen[z.window] = z
    return sorted(seen.values(), key=lambda z: (z.length(), z.window))


@dataclass(frozen=True)
class AffineGrassElt:
    n: int
    partition: Tuple[int, ...]
    word: Tuple[int, ...] = field(default=())

    @classmethod
    def from_partition(cls, lam: Sequence[int], n: int) -> "AffineGrassElt":
        lam = canonical(lam)
        return cls(n, lam, tuple(word_from_partition(lam, n)))

    @classmethod
    def from_perm(cls, x: AffinePerm) -> "AffineGrassElt":
        return cls.from_partition(partition_from_perm(x), x.n)

    @property
    def perm(self) -> AffinePerm:
        return AffinePerm.from_word(self.n, self.word)

    def length(self) -> int:
        return len(self.word)

    def omega_k(self) -> "AffineGrassElt":
        return AffineGrassElt.from_perm(self.perm.omega_k())
