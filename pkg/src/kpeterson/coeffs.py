"""Exact arithmetic in the representation ring R(T).

R(T) is the Laurent polynomial ring Z[e^{+-a_1}, ..., e^{+-a_n}], optionally
taken modulo e^{a_1+...+a_n} - 1 ("SL mode").  Exponent vectors are packed
into a single Python integer with signed base-2^BITS digits, so that the
product of two monomials is the sum of their keys.  In SL mode the last
coordinate is eliminated, i.e. the canonical vector is v - v_n * (1,...,1).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, Sequence

BITS = 24
BASE = 1 << BITS
HALF = BASE >> 1
MASK = BASE - 1


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


def _decode(key: int, dim: int) -> list:
    out = []
    for _ in range(dim):
        d = ((key + HALF) & MASK) - HALF
        out.append(d)
        key = (key - d) >> BITS
    return out


def _encode(vec: Sequence[int]) -> int:
    key = 0
    for i, x in enumerate(vec):
        key += x << (BITS * i)
    return key


class RTRing:
    """Parent object: number of parameters and GL/SL mode."""

    def __init__(self, n: int, sl: bool = True):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.sl = sl
        self.dim = n - 1 if sl else n
        self._perm_cache: Dict[tuple, Dict[int, int]] = {}
        self._iota_cache: Dict[int, int] = {}
        self._ones = _encode([1] * self.dim)

    def __repr__(self):
        return f"RTRing(n={self.n}, {'SL' if self.sl else 'GL'})"

    def __reduce__(self):
        return (ring, (self.n, self.sl))

    @property
    def mode(self) -> str:
        return "SL" if self.sl else "GL"

    # -- keys --------------------------------------------------------------
    def key(self, vec: Sequence[int]) -> int:
        """Key of e^{sum vec_i a_i} for a length-n vector."""
        if len(vec) != self.n:
            raise ValueError(f"expected exponent vector of length {self.n}")
        if self.sl:
            last = vec[-1]
            return _encode([x - last for x in vec[:-1]])
        return _encode(vec)

    def vec(self, key: int) -> list:
        """Canonical length-n exponent vector of a key."""
        v = _decode(key, self.dim)
        if self.sl:
            v.append(0)
        return v

    def perm_key(self, key: int, perm: tuple) -> int:
        """Image of a monomial key under e^{a_i} -> e^{a_perm[i]} (0-based)."""
        cache = self._perm_cache.get(perm)
        if cache is None:
            cache = self._perm_cache[perm] = {}
        k = cache.get(key)
        if k is None:
            v = self.vec(key)
            w = [0] * self.n
            for i, x in enumerate(v):
                w[perm[i]] = x
            k = cache[key] = self.key(w)
        return k

    def iota_key(self, key: int) -> int:
        k = self._iota_cache.get(key)
        if k is None:
            v = self.vec(key)
            k = self._iota_cache[key] = self.key([-x for x in reversed(v)])
        return k

    def sort_key(self, key: int):
        # graded lexicographic order on canonical vectors
        v = _decode(key, self.dim)
        return (sum(v), v)

    # -- constructors ------------------------------------------------------
    def zero(self) -> "RTPoly":
        return RTPoly(self, {})

    def one(self) -> "RTPoly":
        return RTPoly(self, {0: 1})

    def const(self, c: int) -> "RTPoly":
        return RTPoly(self, {0: c} if c else {})

    def mono(self, vec: Sequence[int], coeff: int = 1) -> "RTPoly":
        return RTPoly(self, {self.key(vec): coeff} if coeff else {})

    def unit_vec(self, i: int, k: int = 1) -> list:
        v = [0] * self.n
        v[i - 1] = k
        return v

    def ea(self, i: int, k: int = 1) -> "RTPoly":
        """e^{k a_i} (1-based index)."""
        return self.mono(self.unit_vec(i, k))

    def b(self, i: int) -> "RTPoly":
        """b_i = 1 - e^{-a_i}; indices are read modulo n with b_0 = b_n."""
        i = (i - 1) % self.n + 1
        return self.one() - self.ea(i, -1)

    def bbar(self, i: int) -> "RTPoly":
        """1 - e^{a_i}, the image of b_i under x -> -x/(1-x)."""
        i = (i - 1) % self.n + 1
        return self.one() - self.ea(i, 1)

    def root_vec(self, i: int, j: int) -> list:
        """Exponent vector of a_i - a_j."""
        v = [0] * self.n
        v[i - 1] += 1
        v[j - 1] -= 1
        return v

    def from_dict(self, terms: Dict[tuple, int]) -> "RTPoly":
        out: Dict[int, int] = {}
        for v, c in terms.items():
            k = self.key(v)
            c = out.get(k, 0) + c
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return RTPoly(self, out)

    def random(self, rng, nterms: int = 4, spread: int = 2, cmax: int = 3) -> "RTPoly":
        terms = {}
        for _ in range(nterms):
            v = tuple(rng.randint(-spread, spread) for _ in range(self.n))
            terms[v] = terms.get(v, 0) + rng.randint(-cmax, cmax)
        return self.from_dict(terms)

    def to_sl(self) -> "RTRing":
        return ring(self.n, True)


@lru_cache(maxsize=None)
def _ring(n: int, sl: bool) -> RTRing:
    return RTRing(n, sl)


def ring(n: int, sl: bool = True) -> RTRing:
    """Shared parent for (n, mode); identical arguments give the same object."""
    return _ring(int(n), bool(sl))


def cyclic_perm(n: int, shift: int = 1) -> tuple:
    """0-based tuple for omega^shift: e^{a_i} -> e^{a_{i+shift}} (indices mod n)."""
    return tuple((i + shift) % n for i in range(n))


def transposition(n: int, i: int, j: int) -> tuple:
    p = list(range(n))
    p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
    return tuple(p)


class RTPoly:
    """Element of R(T).  Immutable; ``terms`` maps packed keys to ints."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring_: RTRing, terms: Dict[int, int]):
        self.ring = ring_
        self.terms = terms
        self._hash = None

    # -- basic protocol ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self.terms
            return self.terms == {0: other}
        if isinstance(other, RTPoly):
            return self.ring is other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.n, self.ring.sl, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def _coerce(self, other) -> "RTPoly":
        if isinstance(other, RTPoly):
            if other.ring is not self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        raise TypeError(type(other))

    def __add__(self, other):
        if not isinstance(other, (int, RTPoly)):
            return NotImplemented
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            c = out.get(k, 0) + c
            if c:
                out[k] = c
            else:
                del out[k]
        return RTPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RTPoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (int, RTPoly)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return RTPoly(self.ring, {})
            return RTPoly(self.ring, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, RTPoly):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[int, int] = {}
        mul_into(out, a, b)
        return RTPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            inv = self.unit_inverse()
            return inv ** (-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if isinstance(other, RTFrac):
            return RTFrac(self, self.ring.one()) / other
        return exact_div(self, other)

    # -- structure ---------------------------------------------------------
    def is_monomial_unit(self) -> bool:
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def unit_inverse(self) -> "RTPoly":
        if not self.is_monomial_unit():
            raise NotDivisible("not a unit of R(T)")
        (k, c), = self.terms.items()
        return RTPoly(self.ring, {-k: c})

    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def leading(self):
        """(key, coeff) of the graded-lex largest term."""
        k = max(self.terms, key=self.ring.sort_key)
        return k, self.terms[k]

    def trailing(self):
        k = min(self.terms, key=self.ring.sort_key)
        return k, self.terms[k]

    def items_vec(self):
        """Yield (exponent vector, coefficient) pairs sorted by vector."""
        vecs = [(self.ring.vec(k), c) for k, c in self.terms.items()]
        vecs.sort()
        return vecs

    # -- group actions -----------------------------------------------------
    def permute(self, perm: tuple) -> "RTPoly":
        """Apply e^{a_i} -> e^{a_perm[i]} with a 0-based permutation tuple."""
        if all(i == p for i, p in enumerate(perm)):
            return self
        pk = self.ring.perm_key
        return RTPoly(self.ring, {pk(k, perm): c for k, c in self.terms.items()})

    def iota(self) -> "RTPoly":
        ik = self.ring.iota_key
        return RTPoly(self.ring, {ik(k): c for k, c in self.terms.items()})

    def to_ring(self, target: RTRing) -> "RTPoly":
        """Map into another mode (GL -> SL is the quotient map)."""
        if target is self.ring:
            return self
        if target.n != self.ring.n or (self.ring.sl and not target.sl):
            raise ValueError("only GL -> SL reduction is supported")
        out: Dict[int, int] = {}
        for k, c in self.terms.items():
            kk = target.key(self.ring.vec(k))
            c = out.get(kk, 0) + c
            if c:
                out[kk] = c
            else:
                del out[kk]
        return RTPoly(target, out)

    def times_mono(self, key: int, coeff: int = 1) -> "RTPoly":
        return RTPoly(self.ring, {k + key: c * coeff for k, c in self.terms.items()})

    def div_binomial(self, vkey: int) -> "RTPoly":
        """Exact quotient by (1 - e^{v}) where v has key ``vkey``."""
        return div_binomial(self, vkey)

    # -- output ------------------------------------------------------------
    def to_json(self):
        return [{"exps": v, "coeff": str(c)} for v, c in self.items_vec()]

    @classmethod
    def from_json(cls, ring_: RTRing, data) -> "RTPoly":
        return ring_.from_dict({tuple(t["exps"]): int(t["coeff"]) for t in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for v, c in reversed(self.items_vec()):
            mono = "*".join(
                f"e^({x}a{i + 1})" if x != 1 else f"e^(a{i + 1})" for i, x in enumerate(v) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def mul_into(out: Dict[int, int], a: Dict[int, int], b: Dict[int, int], scale: int = 1) -> None:
    """out += scale * a * b, in place on raw term dicts."""
    get = out.get
    for ka, ca in a.items():
        if scale != 1:
            ca *= scale
        for kb, cb in b.items():
            k = ka + kb
            c = get(k, 0) + ca * cb
            if c:
                out[k] = c
            else:
                del out[k]


def add_into(out: Dict[int, int], a: Dict[int, int], scale: int = 1) -> None:
    get = out.get
    for k, c in a.items():
        c = get(k, 0) + scale * c
        if c:
            out[k] = c
        else:
            del out[k]


def div_binomial(p: RTPoly, vkey: int) -> RTPoly:
    """Divide by 1 - e^v exactly.

    Writing p = (1 - x^v) q gives q_u = sum_{t >= 0} p_{u - t v}, so q is a
    running sum along each coset u + Z v, and that sum must vanish at the
    top of the chain.
    """
    if vkey == 0:
        raise ZeroDivisionError("division by 1 - 1")
    ring_ = p.ring
    v = _decode(vkey, ring_.dim)
    j = next(i for i, x in enumerate(v) if x)
    vj = v[j]
    chains: Dict[int, Dict[int, int]] = {}
    for k, c in p.terms.items():
        pos = _decode(k, j + 1)[j] // vj
        base = k - pos * vkey
        chains.setdefault(base, {})[pos] = c
    out: Dict[int, int] = {}
    for base, ch in chains.items():
        positions = sorted(ch)
        run = 0
        for idx, pos in enumerate(positions):
            run += ch[pos]
            nxt = positions[idx + 1] if idx + 1 < len(positions) else None
            if nxt is None:
                if run:
                    raise NotDivisible("binomial division leaves a remainder")
                break
            if run:
                for t in range(pos, nxt):
                    out[base + t * vkey] = run
    return RTPoly(ring_, out)


def exact_div(p: RTPoly, d: RTPoly) -> RTPoly:
    """Return q with q*d == p, or raise NotDivisible."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero in R(T)")
    if p.is_zero():
        return p
    if len(d.terms) == 1:
        (k, c), = d.terms.items()
        out = {}
        for kk, cc in p.terms.items():
            q, r = divmod(cc, c)
            if r:
                raise NotDivisible("integer coefficient not divisible")
            out[kk - k] = q
        return RTPoly(p.ring, out)
    if len(d.terms) == 2:
        (k1, c1), (k2, c2) = d.terms.items()
        if c1 == -c2:
            # d = c1 x^{k1} (1 - x^{k2-k1})
            q = exact_div(p, RTPoly(p.ring, {k1: c1}))
            return div_binomial(q, k2 - k1)
    return _long_div(p, d)


def _long_div(p: RTPoly, d: RTPoly) -> RTPoly:
    sk = p.ring.sort_key
    dl, dlc = d.leading()
    dt, _ = d.trailing()
    pt, _ = p.trailing()
    floor = sk(pt - dt)
    rem = dict(p.terms)
    out: Dict[int, int] = {}
    while rem:
        k = max(rem, key=sk)
        c = rem[k]
        if sk(k - dl) < floor:
            raise NotDivisible("remainder below Newton bound")
        qc, r = divmod(c, dlc)
        if r:
            raise NotDivisible("integer coefficient not divisible")
        qk = k - dl
        out[qk] = qc
        for kd, cd in d.terms.items():
            kk = qk + kd
            cc = rem.get(kk, 0) - qc * cd
            if cc:
                rem[kk] = cc
            else:
                rem.pop(kk, None)
    return RTPoly(p.ring, out)


def h_poly(m: int, xs: Sequence[RTPoly], ring_: RTRing) -> RTPoly:
    """Complete homogeneous symmetric polynomial h_m(xs)."""
    if m < 0:
        return ring_.zero()
    # h_m(x_1..x_k) = sum_j x_k^j h_{m-j}(x_1..x_{k-1})
    row = [ring_.one()] + [ring_.zero()] * m
    for x in xs:
        new = [ring_.zero()] * (m + 1)
        for d in range(m + 1):
            acc = row[d]
            if d:
                acc = acc + x * new[d - 1]
            new[d] = acc
        row = new
    return row[m]


def e_poly(m: int, xs: Sequence[RTPoly], ring_: RTRing) -> RTPoly:
    """Elementary symmetric polynomial e_m(xs)."""
    if m < 0 or m > len(xs):
        return ring_.zero()
    row = [ring_.one()] + [ring_.zero()] * m
    for x in xs:
        for d in range(m, 0, -1):
            row[d] = row[d] + x * row[d - 1]
    return row[m]


# -- fractions ----------------------------------------------------------------

def _to_sympy(p: RTPoly, shift: Sequence[int], gens):
    import sympy

    expr = 0
    for k, c in p.terms.items():
        v = _decode(k, p.ring.dim)
        term = sympy.Integer(c)
        for g, x, s in zip(gens, v, shift):
            term *= g ** (x - s)
        expr += term
    return sympy.Poly(expr, *gens, domain="ZZ")


def _from_sympy(poly, shift: Sequence[int], ring_: RTRing) -> RTPoly:
    out = {}
    for mon, c in poly.terms():
        out[_encode([m + s for m, s in zip(mon, shift)])] = int(c)
    return RTPoly(ring_, out)


def rt_gcd(p: RTPoly, q: RTPoly) -> RTPoly:
    """Gcd in the Laurent ring, normalized to have no monomial content."""
    import sympy

    ring_ = p.ring
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    gens = sympy.symbols(f"x1:{ring_.dim + 1}")
    if not gens:
        return ring_.one()
    vp = [_decode(k, ring_.dim) for k in p.terms]
    vq = [_decode(k, ring_.dim) for k in q.terms]
    sp = [min(v[i] for v in vp) for i in range(ring_.dim)]
    sq = [min(v[i] for v in vq) for i in range(ring_.dim)]
    g = sympy.gcd(_to_sympy(p, sp, gens), _to_sympy(q, sq, gens))
    return _from_sympy(sympy.Poly(g, *gens, domain="ZZ"), [0] * ring_.dim, ring_)


class RTFrac:
    """Fraction num/den over R(T).  Reduction by gcd is lazy."""

    __slots__ = ("num", "den")

    def __init__(self, num: RTPoly, den: RTPoly = None):
        if den is None:
            den = num.ring.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        # clear monomial content of the denominator into the numerator
        dvecs = [_decode(k, den.ring.dim) for k in den.terms]
        shift = _encode([min(v[i] for v in dvecs) for i in range(den.ring.dim)])
        if shift:
            den = den.times_mono(-shift)
            num = num.times_mono(-shift)
        if den.leading()[1] < 0:
            den, num = -den, -num
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    @staticmethod
    def lift(x) -> "RTFrac":
        if isinstance(x, RTFrac):
            return x
        return RTFrac(x)

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        o = RTFrac.lift(other)
        if o.den == self.den:
            return RTFrac(self.num + o.num, self.den)
        return RTFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RTFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RTFrac.lift(other if not isinstance(other, int) else self.ring.const(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RTFrac(self.num * other, self.den)
        o = RTFrac.lift(other)
        return RTFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        o = RTFrac.lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return RTFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RTFrac.lift(other) / self

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if isinstance(other, (RTPoly, RTFrac)):
            o = RTFrac.lift(other)
            return self.num * o.den == o.num * self.den
        return NotImplemented

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reduced(self) -> "RTFrac":
        if self.den.is_monomial_unit():
            return RTFrac(self.num * self.den.unit_inverse())
        g = rt_gcd(self.num, self.den)
        if len(g.terms) == 1:
            return self
        return RTFrac(exact_div(self.num, g), exact_div(self.den, g))

    def is_polynomial(self) -> bool:
        return self.reduced().den.is_monomial_unit()

    def to_poly(self) -> RTPoly:
        """Return the fraction as an element of R(T); NotDivisible otherwise."""
        if self.den.is_monomial_unit():
            return self.num * self.den.unit_inverse()
        return exact_div(self.num, self.den)

    def permute(self, perm: tuple) -> "RTFrac":
        return RTFrac(self.num.permute(perm), self.den.permute(perm))

    def iota(self) -> "RTFrac":
        return RTFrac(self.num.iota(), self.den.iota())

    def to_json(self):
        r = self.reduced()
        return {"num": r.num.to_json(), "den": r.den.to_json()}

    @classmethod
    def from_json(cls, ring_: RTRing, data) -> "RTFrac":
        return cls(RTPoly.from_json(ring_, data["num"]), RTPoly.from_json(ring_, data["den"]))

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


def normalize(p: RTPoly) -> RTPoly:
    """Canonical representative in the SL quotient."""
    return p.to_ring(ring(p.ring.n, True))


def permute_params(p, perm: Sequence[int]):
    """Apply e^{a_i} -> e^{a_{perm(i)}}; ``perm`` is 1-based one-line notation."""
    return p.permute(tuple(x - 1 for x in perm))


def iota_coeff(p):
    return p.iota()


def all_perms(n: int) -> Iterable[tuple]:
    return permutations(range(n))
