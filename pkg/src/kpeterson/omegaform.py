"""Exact (untruncated) symmetric series built from Omega factors.

An OmegaForm is a finite sum

    sum c_{v,mu} * prod_i Omega(b_i|y)^{v_i} * h_mu(y)   /   prod_r (1 - e^r)^{m_r}

with c in R(T), v in Z^n and h_mu an honest polynomial in the h's.  The
level-zero Weyl action, Demazure operators, sigma and iota all act on this
form without truncation (sigma scales Omega(b_i) by e^{a_i}; iota sends
Omega(b_i) to Omega(b_{n+1-i})^{-1}).  ``expand(D)`` produces the truncated
h-basis series, dividing out the root denominators exactly.
"""
from __future__ import annotations

from math import comb
from typing import Dict, Optional, Tuple

from .coeffs import NotDivisible, RTPoly, RTRing, _decode, div_binomial, transposition
from .symseries import SymSeries, _merge, e_in_h, hbasis, omega_product

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


# integer polynomials in the h's: {partition: int}

def _hp_mul(a: Dict[tuple, int], b: Dict[tuple, int]) -> Dict[tuple, int]:
    out: Dict[tuple, int] = {}
    for mu, c in a.items():
        for nu, d in b.items():
            k = _merge(mu, nu)
            out[k] = out.get(k, 0) + c * d
    return {k: c for k, c in out.items() if c}


def _hp_map(mu: tuple, image) -> Dict[tuple, int]:
    out = {(): 1}
    for p in mu:
        out = _hp_mul(out, image(p))
    return out


def _sigma_h(k: int) -> Dict[tuple, int]:
    return {((j,) if j else ()): 1 for j in range(k + 1)}


def _sigma_inv_h(k: int) -> Dict[tuple, int]:
    out = {(k,): 1}
    prev = (k - 1,) if k > 1 else ()
    out[prev] = out.get(prev, 0) - 1
    return out


def _iota_h(k: int) -> Dict[tuple, int]:
    es = e_in_h(k)
    out: Dict[tuple, int] = {}
    for r in range(k):
        for mu, c in es[r + 1].items():
            out[mu] = out.get(mu, 0) + comb(k - 1, r) * c
    return {m: c for m, c in out.items() if c}


class OmegaForm:
    __slots__ = ("ring", "num", "den")

    def __init__(self, ring_: RTRing, num: Dict[Key, RTPoly], den: Optional[Dict[int, int]] = None):
        self.ring = ring_
        self.num = {k: c for k, c in num.items() if c.terms}
        self.den = dict(den or {})

    # -- constructors -----------------------------------------------------------
    @classmethod
    def const(cls, ring_: RTRing, c=1) -> "OmegaForm":
        if isinstance(c, int):
            c = ring_.const(c)
        return cls(ring_, {((0,) * ring_.n, ()): c})

    @classmethod
    def omega(cls, ring_: RTRing, i: int, power: int = 1) -> "OmegaForm":
        v = [0] * ring_.n
        v[i - 1] = power
        return cls(ring_, {(tuple(v), ()): ring_.one()})

    @classmethod
    def from_series(cls, f: SymSeries) -> "OmegaForm":
        """Read a truncated series as a polynomial in the h's."""
        z = (0,) * f.ring.n
        return cls(f.ring, {(z, mu): c for mu, c in f.items()})

    # -- denominators -------------------------------------------------------------
    def _canon_root(self, key: int):
        """Return (canonical key, unit multiplier key, sign) for 1/(1 - e^key)."""
        v = _decode(key, self.ring.dim)
        lead = next(x for x in v if x)
        if lead > 0:
            return key, 0, 1
        # 1/(1 - x^k) = -x^{-k} / (1 - x^{-k})
        return -key, -key, -1

    def _scaled_num(self, factor: RTPoly) -> Dict[Key, RTPoly]:
        return {k: c * factor for k, c in self.num.items()}

    def _with_den(self, den: Dict[int, int]) -> Dict[Key, RTPoly]:
        """Numerator rewritten over the (larger) denominator ``den``."""
        factor = self.ring.one()
        for r, m in den.items():
            extra = m - self.den.get(r, 0)
            if extra < 0:
                raise ValueError("target denominator does not contain ours")
            if extra:
                factor = factor * (self.ring.one() - RTPoly(self.ring, {r: 1})) ** extra
        return self._scaled_num(factor)

    def reduce(self) -> "OmegaForm":
        num = self.num
        den = dict(self.den)
        for r in sorted(den):
            while den.get(r):
                try:
                    trial = {k: div_binomial(c, r) for k, c in num.items()}
                except NotDivisible:
                    break
                num = trial
                den[r] -= 1
                if not den[r]:
                    del den[r]
        return OmegaForm(self.ring, num, den)

    # -- arithmetic ---------------------------------------------------------------
    def _lift(self, other) -> "OmegaForm":
        if isinstance(other, OmegaForm):
            return other
        if isinstance(other, (int, RTPoly)):
            return OmegaForm.const(self.ring, other)
        raise TypeError(type(other))

    def __add__(self, other):
        o = self._lift(other)
        den = dict(self.den)
        for r, m in o.den.items():
            den[r] = max(den.get(r, 0), m)
        a = self._with_den(den)
        for k, c in o._with_den(den).items():
            s = a.get(k)
            a[k] = c if s is None else s + c
        return OmegaForm(self.ring, a, den)

    __radd__ = __add__

    def __neg__(self):
        return OmegaForm(self.ring, {k: -c for k, c in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, RTPoly)):
            return self.mul_scalar(other)
        o = self._lift(other)
        out: Dict[Key, RTPoly] = {}
        for (v1, m1), c1 in self.num.items():
            for (v2, m2), c2 in o.num.items():
                k = (tuple(x + y for x, y in zip(v1, v2)), _merge(m1, m2))
                s = out.get(k)
                out[k] = c1 * c2 if s is None else s + c1 * c2
        den = dict(self.den)
        for r, m in o.den.items():
            den[r] = den.get(r, 0) + m
        return OmegaForm(self.ring, out, den).reduce()

    __rmul__ = __mul__

    def mul_scalar(self, c) -> "OmegaForm":
        if isinstance(c, int):
            c = self.ring.const(c)
        return OmegaForm(self.ring, self._scaled_num(c), self.den)

    def times_omega(self, vec) -> "OmegaForm":
        out = {}
        for (v, mu), c in self.num.items():
            out[(tuple(x + y for x, y in zip(v, vec)), mu)] = c
        return OmegaForm(self.ring, out, self.den)

    def div_root(self, vec) -> "OmegaForm":
        key = self.ring.key(vec)
        ck, unit, sign = self._canon_root(key)
        out = self
        if unit or sign != 1:
            out = out.mul_scalar(RTPoly(self.ring, {unit: sign}))
        den = dict(out.den)
        den[ck] = den.get(ck, 0) + 1
        return OmegaForm(self.ring, out.num, den).reduce()

    # -- actions ------------------------------------------------------------------
    def permute(self, perm: tuple) -> "OmegaForm":
        n = self.ring.n
        out = {}
        for (v, mu), c in self.num.items():
            w = [0] * n
            for i, x in enumerate(v):
                w[perm[i]] = x
            out[(tuple(w), mu)] = c.permute(perm)
        res = OmegaForm(self.ring, out)
        for r, m in self.den.items():
            vec = self.ring.vec(self.ring.perm_key(r, perm))
            for _ in range(m):
                res = res.div_root(vec)
        return res

    def reflect(self, i: int) -> "OmegaForm":
        n = self.ring.n
        if i % n:
            i %= n
            return self.permute(transposition(n, i, i + 1))
        shift = [0] * n
        shift[0] += 1
        shift[-1] -= 1
        return self.permute(transposition(n, 1, n)).times_omega(shift)

    def shift(self, j: int) -> "OmegaForm":
        from .coeffs import cyclic_perm

        return self.permute(cyclic_perm(self.ring.n, j))

    def _h_action(self, image, coeff_map, omega_map):
        out: Dict[Key, RTPoly] = {}
        for (v, mu), c in self.num.items():
            c = coeff_map(c)
            v2, unit = omega_map(v)
            if unit is not None:
                c = c * unit
            for nu, d in _hp_map(mu, image).items():
                k = (v2, nu)
                s = out.get(k)
                out[k] = c * d if s is None else s + c * d
        return out

    def sigma(self) -> "OmegaForm":
        ring_ = self.ring

        def om(v):
            return v, ring_.mono(list(v))

        return OmegaForm(ring_, self._h_action(_sigma_h, lambda c: c, om), self.den)

    def sigma_inv(self) -> "OmegaForm":
        ring_ = self.ring

        def om(v):
            return v, ring_.mono([-x for x in v])

        return OmegaForm(ring_, self._h_action(_sigma_inv_h, lambda c: c, om), self.den)

    def iota(self) -> "OmegaForm":
        ring_ = self.ring

        def om(v):
            return tuple(-x for x in reversed(v)), None

        res = OmegaForm(ring_, self._h_action(_iota_h, lambda c: c.iota(), om))
        for r, m in self.den.items():
            vec = ring_.vec(ring_.iota_key(r))
            for _ in range(m):
                res = res.div_root(vec)
        return res

    # -- truncation ---------------------------------------------------------------
    def expand(self, D: int) -> SymSeries:
        ring_ = self.ring
        hb = hbasis(D)
        out = SymSeries(ring_, D)
        for (v, mu), c in self.num.items():
            if sum(mu) > D:
                continue
            term = omega_product(ring_, D, v)
            if mu:
                term = term * SymSeries(ring_, D, {hb.index[mu]: ring_.one()})
            out = out + term.scale(c)
        for r, m in self.den.items():
            for _ in range(m):
                out = out.div_binomial(r)
        return out

    def __repr__(self):
        return f"OmegaForm({len(self.num)} terms, den={self.den})"
