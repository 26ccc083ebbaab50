"""Degree-truncated symmetric series in the h-basis over R(T)."""
from __future__ import annotations

import threading
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence

from .coeffs import (
    NotDivisible,
    RTPoly,
    RTRing,
    add_into,
    cyclic_perm,
    div_binomial,
    mul_into,
    transposition,
)


class NonUnitConstantTerm(ArithmeticError):
    pass


def partitions_of(d: int, maxpart: Optional[int] = None):
    if maxpart is None:
        maxpart = d
    if d == 0:
        yield ()
        return
    for first in range(min(d, maxpart), 0, -1):
        for rest in partitions_of(d - first, first):
            yield (first,) + rest


def _merge(p: tuple, q: tuple) -> tuple:
    return tuple(sorted(p + q, reverse=True))


class HBasis:
    """Index of h-monomials h_mu with |mu| <= D, ordered by (degree, parts).

    The list for a smaller D is a prefix of the list for a larger D, so
    truncation is a filter on the index.
    """

    def __init__(self, D: int):
        self.D = D
        self.parts: List[tuple] = []
        self.deg: List[int] = []
        self.start: List[int] = []
        for d in range(D + 1):
            self.start.append(len(self.parts))
            for mu in sorted(partitions_of(d)):
                self.parts.append(mu)
                self.deg.append(d)
        self.start.append(len(self.parts))
        self.index = {mu: i for i, mu in enumerate(self.parts)}
        size = len(self.parts)
        self.table: List[List[int]] = []
        for i in range(size):
            row = []
            di = self.deg[i]
            for j in range(size):
                if di + self.deg[j] > D:
                    break
                row.append(self.index[_merge(self.parts[i], self.parts[j])])
            self.table.append(row)

    def size(self, d: Optional[int] = None) -> int:
        """Number of h-monomials of degree <= d."""
        if d is None:
            d = self.D
        return self.start[d + 1]


_basis_lock = threading.Lock()


@lru_cache(maxsize=None)
def _hbasis_cached(D: int) -> HBasis:
    return HBasis(D)


def hbasis(D: int) -> HBasis:
    with _basis_lock:
        return _hbasis_cached(D)


class SymSeries:
    """Symmetric formal power series truncated at degree D.

    ``terms`` maps the HBasis index of h_mu to an RTPoly coefficient.
    """

    __slots__ = ("ring", "D", "terms")

    def __init__(self, ring_: RTRing, D: int, terms: Optional[Dict[int, RTPoly]] = None):
        self.ring = ring_
        self.D = D
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, ring_: RTRing, D: int, c=1) -> "SymSeries":
        if isinstance(c, int):
            c = ring_.const(c)
        return cls(ring_, D, {0: c} if c else {})

    @classmethod
    def h(cls, ring_: RTRing, D: int, *parts: int, coeff=1) -> "SymSeries":
        """The single term coeff * h_{parts}."""
        mu = tuple(sorted((p for p in parts if p), reverse=True))
        if sum(mu) > D:
            return cls(ring_, D)
        if isinstance(coeff, int):
            coeff = ring_.const(coeff)
        return cls(ring_, D, {hbasis(D).index[mu]: coeff} if coeff else {})

    @classmethod
    def from_parts(cls, ring_: RTRing, D: int, items) -> "SymSeries":
        """Build from (partition, coefficient) pairs, dropping degree > D."""
        hb = hbasis(D)
        out: Dict[int, Dict[int, int]] = {}
        for mu, c in items:
            mu = tuple(sorted(mu, reverse=True))
            if sum(mu) > D:
                continue
            if isinstance(c, int):
                c = ring_.const(c)
            add_into(out.setdefault(hb.index[mu], {}), c.terms)
        return cls._from_raw(ring_, D, out)

    @classmethod
    def _from_raw(cls, ring_, D, raw: Dict[int, Dict[int, int]]) -> "SymSeries":
        return cls(ring_, D, {i: RTPoly(ring_, t) for i, t in raw.items() if t})

    # -- protocol -------------------------------------------------------------
    def _check(self, other: "SymSeries"):
        if other.ring is not self.ring or other.D != self.D:
            raise ValueError(
                f"incompatible series: ({self.ring}, D={self.D}) vs ({other.ring}, D={other.D})"
            )

    def items(self):
        hb = hbasis(self.D)
        for i in sorted(self.terms):
            yield hb.parts[i], self.terms[i]

    def coeff(self, *parts: int) -> RTPoly:
        mu = tuple(sorted(parts, reverse=True))
        idx = hbasis(self.D).index.get(mu)
        return self.terms.get(idx, self.ring.zero())

    def constant_term(self) -> RTPoly:
        return self.terms.get(0, self.ring.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = SymSeries.const(self.ring, self.D, other)
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.ring is other.ring and self.D == other.D and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, RTPoly)):
            other = SymSeries.const(self.ring, self.D, other)
        self._check(other)
        out = dict(self.terms)
        for i, c in other.terms.items():
            s = out.get(i)
            s = c if s is None else s + c
            if s.terms:
                out[i] = s
            else:
                out.pop(i, None)
        return SymSeries(self.ring, self.D, out)

    __radd__ = __add__

    def __neg__(self):
        return SymSeries(self.ring, self.D, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, RTPoly)):
            other = SymSeries.const(self.ring, self.D, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymSeries":
        if isinstance(c, int):
            if c == 0:
                return SymSeries(self.ring, self.D)
            return SymSeries(self.ring, self.D, {i: x * c for i, x in self.terms.items()})
        if c.is_zero():
            return SymSeries(self.ring, self.D)
        out = {}
        for i, x in self.terms.items():
            y = x * c
            if y.terms:
                out[i] = y
        return SymSeries(self.ring, self.D, out)

    def __mul__(self, other):
        if isinstance(other, (int, RTPoly)):
            return self.scale(other)
        if not isinstance(other, SymSeries):
            return NotImplemented
        self._check(other)
        table = hbasis(self.D).table
        out: Dict[int, Dict[int, int]] = {}
        b_items = sorted(other.terms.items())
        for i, ci in self.terms.items():
            row = table[i]
            lim = len(row)
            ct = ci.terms
            for j, cj in b_items:
                if j >= lim:
                    break
                k = row[j]
                acc = out.get(k)
                if acc is None:
                    acc = out[k] = {}
                a, b = (ct, cj.terms) if len(ct) <= len(cj.terms) else (cj.terms, ct)
                mul_into(acc, a, b)
        return SymSeries._from_raw(self.ring, self.D, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = SymSeries.const(self.ring, self.D, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def components(self) -> List["SymSeries"]:
        """Homogeneous components by degree."""
        hb = hbasis(self.D)
        comps: List[Dict[int, RTPoly]] = [dict() for _ in range(self.D + 1)]
        for i, c in self.terms.items():
            comps[hb.deg[i]][i] = c
        return [SymSeries(self.ring, self.D, t) for t in comps]

    def inverse(self) -> "SymSeries":
        c0 = self.constant_term()
        if not c0.is_monomial_unit():
            raise NonUnitConstantTerm(f"constant term {c0!r} is not a unit of R(T)")
        u = c0.unit_inverse()
        comps = self.scale(u).components()
        # inv_0 = 1, inv_d = -sum_{j=1}^{d} f_j inv_{d-j}
        inv = [SymSeries.const(self.ring, self.D, 1)]
        for d in range(1, self.D + 1):
            acc = SymSeries(self.ring, self.D)
            for j in range(1, d + 1):
                if comps[j].terms and inv[d - j].terms:
                    acc = acc + comps[j] * inv[d - j]
            inv.append(-acc)
        total = SymSeries(self.ring, self.D)
        for piece in inv:
            total = total + piece
        return total.scale(u)

    def __truediv__(self, other):
        if isinstance(other, SymSeries):
            return self * other.inverse()
        if isinstance(other, RTPoly):
            return self.coeff_map(lambda c: c / other)
        if isinstance(other, int):
            return self.coeff_map(lambda c: c / self.ring.const(other))
        return NotImplemented

    # -- coefficient-wise operations ------------------------------------------
    def coeff_map(self, fn) -> "SymSeries":
        out = {}
        for i, c in self.terms.items():
            y = fn(c)
            if y.terms:
                out[i] = y
        return SymSeries(self.ring, self.D, out)

    def permute(self, perm: tuple) -> "SymSeries":
        """Coefficient action e^{a_i} -> e^{a_perm[i]} (0-based)."""
        if all(i == p for i, p in enumerate(perm)):
            return self
        return SymSeries(self.ring, self.D, {i: c.permute(perm) for i, c in self.terms.items()})

    def iota_coeff(self) -> "SymSeries":
        return SymSeries(self.ring, self.D, {i: c.iota() for i, c in self.terms.items()})

    def shift(self, j: int) -> "SymSeries":
        """Parameter shift b -> omega^j b applied to the coefficients."""
        if j % self.ring.n == 0:
            return self
        return self.permute(cyclic_perm(self.ring.n, j))

    def div_binomial(self, vkey: int) -> "SymSeries":
        return SymSeries(
            self.ring, self.D, {i: div_binomial(c, vkey) for i, c in self.terms.items()}
        )

    # -- level-zero affine action hooks used by the Demazure engine ----------
    def reflect(self, i: int) -> "SymSeries":
        n = self.ring.n
        if i % n:
            i %= n
            return self.permute(transposition(n, i, i + 1))
        return omega_ratio(self.ring, self.D) * self.permute(transposition(n, 1, n))

    def div_root(self, vec: Sequence[int]) -> "SymSeries":
        return self.div_binomial(self.ring.key(vec))

    def mul_scalar(self, c) -> "SymSeries":
        return self.scale(c)

    # -- truncation / modes ---------------------------------------------------
    def truncate(self, D: int) -> "SymSeries":
        if D > self.D:
            raise ValueError("cannot raise the truncation degree")
        lim = hbasis(D).size()
        return SymSeries(self.ring, D, {i: c for i, c in self.terms.items() if i < lim})

    def to_ring(self, target: RTRing) -> "SymSeries":
        out = {}
        for i, c in self.terms.items():
            y = c.to_ring(target)
            if y.terms:
                out[i] = y
        return SymSeries(target, self.D, out)

    def first_difference(self, other: "SymSeries"):
        """Lowest (degree, parts) h-monomial where the two series differ."""
        hb = hbasis(self.D)
        keys = sorted(set(self.terms) | set(other.terms))
        z = self.ring.zero()
        for i in keys:
            a = self.terms.get(i, z)
            b = other.terms.get(i, z)
            if a != b:
                return {"h": list(hb.parts[i]), "lhs": repr(a), "rhs": repr(b)}
        return None

    # -- serialization --------------------------------------------------------
    def to_json(self):
        return {
            "n": self.ring.n,
            "mode": self.ring.mode,
            "D": self.D,
            "terms": [{"h": list(mu), "coeff": c.to_json()} for mu, c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "SymSeries":
        from .coeffs import ring

        r = ring(data["n"], data.get("mode", "SL") == "SL")
        items = [(tuple(t["h"]), RTPoly.from_json(r, t["coeff"])) for t in data["terms"]]
        return cls.from_parts(r, data["D"], items)

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for mu, c in self.items():
            mono = "*".join(f"h{p}" for p in mu) or "1"
            out.append(f"({c!r})*{mono}")
        return " + ".join(out)


class DegenerateDenominator(ArithmeticError):
    pass


class SeriesFrac:
    """Quotient num/den of truncated series.

    The denominator must have a nonzero constant term, so that it is not a
    zero divisor and cross-multiplied equality to degree D is equivalent to
    equality of the quotients to degree D (over the fraction field of R(T)).
    When that constant term is a monomial unit, ``normal`` gives the series.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SymSeries, den: Optional[SymSeries] = None):
        if den is None:
            den = SymSeries.const(num.ring, num.D, 1)
        if den.constant_term().is_zero():
            raise DegenerateDenominator("denominator has zero constant term")
        self.num = num
        self.den = den

    @classmethod
    def unchecked(cls, num: SymSeries, den: SymSeries) -> "SeriesFrac":
        """A formal pair; equality is then only the cross-multiplied identity."""
        out = object.__new__(cls)
        out.num = num
        out.den = den
        return out

    def truncate(self, D: int) -> "SeriesFrac":
        return SeriesFrac.unchecked(self.num.truncate(D), self.den.truncate(D))

    def has_unit_den(self) -> bool:
        return self.den.constant_term().is_monomial_unit()

    def normal(self) -> SymSeries:
        return self.num * self.den.inverse()

    def first_difference(self, other):
        """Lowest h-monomial where self and other differ after cross-multiplying."""
        if isinstance(other, SymSeries):
            other = SeriesFrac(other)
        return (self.num * other.den).first_difference(other.num * self.den)

    def __mul__(self, other):
        if isinstance(other, SeriesFrac):
            return SeriesFrac(self.num * other.num, self.den * other.den)
        return SeriesFrac(self.num * other, self.den)

    def __truediv__(self, other):
        if isinstance(other, SeriesFrac):
            return SeriesFrac(self.num * other.den, self.den * other.num)
        return SeriesFrac(self.num, self.den * other)

    def __add__(self, other):
        if not isinstance(other, SeriesFrac):
            other = SeriesFrac(other)
        return SeriesFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __eq__(self, other):
        if isinstance(other, SymSeries):
            other = SeriesFrac(other)
        if not isinstance(other, SeriesFrac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None


# -- standard series ----------------------------------------------------------

@lru_cache(maxsize=None)
def e_in_h(D: int) -> tuple:
    """e_m for m <= D as integer-coefficient {partition: coeff} maps in the h-basis."""
    es = [{(): 1}]
    for m in range(1, D + 1):
        # sum_{j=0}^{m} (-1)^j e_j h_{m-j} = 0
        acc: Dict[tuple, int] = {}
        for j in range(m):
            for mu, c in es[j].items():
                nu = _merge(mu, (m - j,))
                acc[nu] = acc.get(nu, 0) + (-1) ** j * c
        sign = (-1) ** (m + 1)
        es.append({mu: sign * c for mu, c in acc.items() if c})
    return tuple(es)


def e_series(ring_: RTRing, D: int, m: int) -> SymSeries:
    if m > D:
        return SymSeries(ring_, D)
    return SymSeries.from_parts(ring_, D, e_in_h(D)[m].items())


@lru_cache(maxsize=None)
def omega_series(ring_: RTRing, D: int, i: int) -> SymSeries:
    """Omega(b_i|y) = sum_m b_i^m h_m truncated at degree D."""
    b = ring_.b(i)
    items = []
    p = ring_.one()
    for m in range(D + 1):
        items.append(((m,) if m else (), p))
        p = p * b
    return SymSeries.from_parts(ring_, D, items)


@lru_cache(maxsize=None)
def omega_inverse(ring_: RTRing, D: int, i: int) -> SymSeries:
    """Omega(b_i|y)^{-1} = sum_m (-b_i)^m e_m."""
    b = -ring_.b(i)
    out = SymSeries(ring_, D)
    p = ring_.one()
    for m in range(D + 1):
        out = out + e_series(ring_, D, m).scale(p)
        p = p * b
    return out


@lru_cache(maxsize=None)
def omega_ratio(ring_: RTRing, D: int) -> SymSeries:
    """Omega(b_1|y) / Omega(b_n|y), the multiplier in the level-zero s_0."""
    return omega_series(ring_, D, 1) * omega_inverse(ring_, D, ring_.n)


def omega_product(ring_: RTRing, D: int, exps: Sequence[int]) -> SymSeries:
    """prod_i Omega(b_i)^{exps[i-1]}."""
    out = SymSeries.const(ring_, D, 1)
    for i, k in enumerate(exps, start=1):
        if k > 0:
            out = out * omega_series(ring_, D, i) ** k
        elif k < 0:
            out = out * omega_inverse(ring_, D, i) ** (-k)
    return out


# -- sigma and iota on polynomial series -------------------------------------
#
# These act on the stored terms as an honest polynomial in the h's.  Both maps
# lower degrees, so on the truncation of an infinite series the low-degree
# output would need the discarded tail; such inputs go through OmegaForm.

def _substitute(f: SymSeries, images: Sequence[SymSeries]) -> SymSeries:
    """Ring map h_k -> images[k] applied to a series viewed as a polynomial."""
    hb = hbasis(f.D)
    cache: Dict[tuple, SymSeries] = {(): SymSeries.const(f.ring, f.D, 1)}

    def image(mu):
        got = cache.get(mu)
        if got is None:
            got = cache[mu] = image(mu[1:]) * images[mu[0]]
        return got

    out = SymSeries(f.ring, f.D)
    for i, c in f.terms.items():
        out = out + image(hb.parts[i]).scale(c)
    return out


def apply_sigma(f: SymSeries) -> SymSeries:
    one = SymSeries.const(f.ring, f.D, 1)
    images = [one]
    for k in range(1, f.D + 1):
        images.append(images[-1] + SymSeries.h(f.ring, f.D, k))
    return _substitute(f, images)


def apply_sigma_inv(f: SymSeries) -> SymSeries:
    one = SymSeries.const(f.ring, f.D, 1)
    images = [one]
    for k in range(1, f.D + 1):
        prev = SymSeries.h(f.ring, f.D, k - 1) if k > 1 else one
        images.append(SymSeries.h(f.ring, f.D, k) - prev)
    return _substitute(f, images)


def iota_h_image(ring_: RTRing, D: int, k: int) -> SymSeries:
    out = SymSeries(ring_, D)
    for r in range(k):
        out = out + e_series(ring_, D, r + 1).scale(comb(k - 1, r))
    return out


def apply_iota(f: SymSeries) -> SymSeries:
    images = [SymSeries.const(f.ring, f.D, 1)]
    for k in range(1, f.D + 1):
        images.append(iota_h_image(f.ring, f.D, k))
    return _substitute(f.iota_coeff(), images)


def coeff_weyl(f: SymSeries, perm: Sequence[int]) -> SymSeries:
    """Permute parameters; ``perm`` in 1-based one-line notation."""
    return f.permute(tuple(x - 1 for x in perm))


def random_series(ring_: RTRing, D: int, rng, density: float = 0.5, nterms: int = 3) -> SymSeries:
    hb = hbasis(D)
    items = []
    for mu in hb.parts:
        if rng.random() < density:
            items.append((mu, ring_.random(rng, nterms)))
    return SymSeries.from_parts(ring_, D, items)


# -- debug m-basis expander -------------------------------------------------

def _poly_mul(a: Dict[tuple, object], b: Dict[tuple, object], D: int, nvars: int):
    out: Dict[tuple, object] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(e) > D:
                continue
            c = out.get(e)
            out[e] = ca * cb if c is None else c + ca * cb
    return out


@lru_cache(maxsize=None)
def _h_in_vars(k: int, nvars: int) -> tuple:
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for x in range(left, -1, -1):
            rec(prefix + (x,), left - x, slots - 1)

    rec((), k, nvars)
    return tuple(out)


def to_m_basis(f: SymSeries, max_degree: int = 6) -> Dict[tuple, RTPoly]:
    """Expand in monomial symmetric functions m_lambda (small D only).

    Works in D variables, which is faithful in degrees <= D.
    """
    D = f.D
    if D > max_degree:
        raise ValueError("m-basis expander is limited to small degrees")
    nv = max(D, 1)
    one = f.ring.one()
    acc: Dict[tuple, RTPoly] = {}
    for mu, c in f.items():
        poly = {tuple([0] * nv): one}
        for part in mu:
            hk = {e: one for e in _h_in_vars(part, nv)}
            poly = _poly_mul(poly, hk, D, nv)
        for e, v in poly.items():
            if list(e) == sorted(e, reverse=True):
                lam = tuple(x for x in e if x)
                x = acc.get(lam)
                acc[lam] = v * c if x is None else x + v * c
    return {lam: v for lam, v in acc.items() if not v.is_zero()}
