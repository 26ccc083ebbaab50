"""Relativistic Toda matrices, the centralizer family Z and tau functions.

Scalar matrices (A, P, P^{-1}, C_A) have RTPoly entries; Z and everything
built from it has SymSeries entries truncated at degree D.  Each z_ij is
also kept as an exact OmegaForm so that sigma, sigma^{-1} and iota can be
applied entry-wise without truncation error.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .coeffs import RTPoly, RTRing, e_poly, h_poly, ring
from .demazure import apply_T, apply_word
from .omegaform import OmegaForm
from .quantum import F_conserved, QPoly, QRing
from .symseries import SymSeries


class SingularSystem(ArithmeticError):
    pass


class DegeneratePoint(ArithmeticError):
    pass


# -- generic matrix helpers -------------------------------------------------------

def _is_zero(x) -> bool:
    if isinstance(x, int):
        return x == 0
    return x.is_zero()


def mat_mul(X, Y, zero):
    """Product of two matrices over any commutative ring; zero entries skipped."""
    rows, inner, cols = len(X), len(Y), len(Y[0])
    out = []
    for i in range(rows):
        row = []
        for k in range(cols):
            acc = zero
            for j in range(inner):
                a, b = X[i][j], Y[j][k]
                if _is_zero(a) or _is_zero(b):
                    continue
                acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def identity(r: RTRing) -> List[List[RTPoly]]:
    n = r.n
    return [[r.one() if i == j else r.zero() for j in range(n)] for i in range(n)]


def berkowitz(M, one, zero) -> List:
    """Characteristic polynomials of all leading principal blocks, division-free.

    Returns [c^(1), ..., c^(m)] where c^(r) lists the coefficients of
    det(x E - M_[1,r]) from x^r down to x^0.
    """
    m = len(M)
    out = []
    if m == 0:
        return out
    C = [one, -M[0][0]]
    out.append(C)
    for r in range(1, m):
        R = [M[r][j] for j in range(r)]
        S = [M[j][r] for j in range(r)]
        # Toeplitz column: 1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S
        col = [one, -M[r][r]]
        vec = S
        for _ in range(r):
            acc = zero
            for a, b in zip(R, vec):
                if _is_zero(a) or _is_zero(b):
                    continue
                acc = acc + a * b
            col.append(-acc)
            nxt = []
            for i in range(r):
                s = zero
                for j in range(r):
                    a, b = M[i][j], vec[j]
                    if _is_zero(a) or _is_zero(b):
                        continue
                    s = s + a * b
                nxt.append(s)
            vec = nxt
        newC = []
        for k in range(r + 2):
            acc = zero
            for j in range(min(k, r) + 1):
                t, c = col[k - j], C[j]
                if _is_zero(t) or _is_zero(c):
                    continue
                acc = acc + t * c
            newC.append(acc)
        C = newC
        out.append(C)
    return out


def leading_minors(M, one, zero) -> List:
    """[det M_[1,1], ..., det M_[1,m]]."""
    polys = berkowitz(M, one, zero)
    return [c[-1] if r % 2 == 0 else -c[-1] for r, c in enumerate(polys, start=1)]


def det(M, one, zero):
    if not M:
        return one
    return leading_minors(M, one, zero)[-1]


def submatrix(M, rows: Sequence[int], cols: Sequence[int]):
    """0-based row/column selection."""
    return [[M[i][j] for j in cols] for i in rows]


# -- scalar matrices ----------------------------------------------------------------

def toda_A(r: RTRing):
    n = r.n
    A = [[r.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        A[i][i] = r.ea(i + 1, -1)
        if i + 1 < n:
            A[i][i + 1] = r.const(-1)
    return A


def toda_A_inv(r: RTRing):
    n = r.n
    out = [[r.zero() for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for j in range(k, n):
            vec = [0] * n
            for t in range(k, j + 1):
                vec[t] = 1
            out[k][j] = r.mono(vec)
    return out


def mat_power(r: RTRing, j: int):
    base = toda_A(r) if j >= 0 else toda_A_inv(r)
    out = identity(r)
    for _ in range(abs(j)):
        out = mat_mul(out, base, r.zero())
    return out


def toda_P(r: RTRing):
    """P_ij = e_{i-j}(e^{-a_1}, ..., e^{-a_{i-1}}) for i >= j."""
    n = r.n
    xs = [r.ea(k, -1) for k in range(1, n + 1)]
    return [
        [e_poly(i - j, xs[:i], r) if i >= j else r.zero() for j in range(n)]
        for i in range(n)
    ]


def toda_P_inv(r: RTRing):
    """(P^{-1})_ij = (-1)^{i-j} h_{i-j}(e^{-a_1}, ..., e^{-a_j}) for i >= j (1-based)."""
    n = r.n
    xs = [r.ea(k, -1) for k in range(1, n + 1)]
    return [
        [h_poly(i - j, xs[: j + 1], r) * (-1) ** (i - j) if i >= j else r.zero() for j in range(n)]
        for i in range(n)
    ]


def companion(r: RTRing):
    z = r.zero()
    return mat_mul(mat_mul(toda_P_inv(r), toda_A(r), z), toda_P(r), z)


def iota_matrix(M):
    return [[x.iota() for x in row] for row in M]


# -- the centralizer -----------------------------------------------------------------

def _series_times_scalar(Z, C, r: RTRing, D: int):
    n = len(Z)
    out = []
    for i in range(n):
        row = []
        for k in range(len(C[0])):
            acc = SymSeries(r, D)
            for j in range(len(C)):
                a, c = Z[i][j], C[j][k]
                if a.is_zero() or c.is_zero():
                    continue
                acc = acc + a.scale(c)
            row.append(acc)
        out.append(row)
    return out


class CentralizerData:
    """z_ij for 1 <= i <= j <= i + n - 1, exact and truncated at degree D."""

    def __init__(self, n: int, D: int, sl: bool = True):
        self.n = n
        self.D = D
        self.ring: RTRing = ring(n, sl)
        self._rho: Dict[int, OmegaForm] = {}
        self._exact: Dict[Tuple[int, int], OmegaForm] = {}
        self._series: Dict[tuple, SymSeries] = {}
        self._minors: Dict[str, list] = {}
        self._lock = threading.RLock()

    # -- entries ---------------------------------------------------------------------
    def _g_rho(self, l: int) -> OmegaForm:
        """g_{rho_l} = T_{l-1} ... T_1 T_0 (1), exactly."""
        got = self._rho.get(l)
        if got is None:
            got = apply_word(list(range(l - 1, -1, -1)), OmegaForm.const(self.ring), closed=False)
            self._rho[l] = got
        return got

    def _normalize(self, i: int, j: int) -> Tuple[int, int]:
        q = (i - 1) // self.n
        return i - q * self.n, j - q * self.n

    def exact(self, i: int, j: int) -> OmegaForm:
        """z_ij = e^{a_i + ... + a_{j-1}} Omega(b_i) g_{rho_{j-i}}(y | omega^i b)."""
        n, r = self.n, self.ring
        if j < i:
            return OmegaForm(r, {})
        if j - i >= n:
            raise ValueError("z_ij is only defined for j - i <= n - 1 (the recurrence divides by zero)")
        i, j = self._normalize(i, j)
        with self._lock:
            got = self._exact.get((i, j))
            if got is not None:
                return got
            vec = [0] * n
            for k in range(i, j):
                vec[(k - 1) % n] += 1
            val = OmegaForm.omega(r, i).mul_scalar(r.mono(vec))
            if j > i:
                val = val * self._g_rho(j - i).shift(i)
            self._exact[(i, j)] = val
            return val

    def entry(self, i: int, j: int, twist: str = "") -> SymSeries:
        """Truncated z_ij; twist in {'', 'sigma', 'sigma_inv', 'iota'}."""
        if j < i:
            return SymSeries(self.ring, self.D)
        key = (self._normalize(i, j), twist)
        with self._lock:
            got = self._series.get(key)
        if got is not None:
            return got
        f = self.exact(i, j)
        if twist == "sigma":
            f = f.sigma()
        elif twist == "sigma_inv":
            f = f.sigma_inv()
        elif twist == "iota":
            f = f.iota()
        elif twist:
            raise ValueError(twist)
        val = f.expand(self.D)
        with self._lock:
            self._series[key] = val
        return val

    def matrix(self, twist: str = "") -> List[List[SymSeries]]:
        n = self.n
        return [[self.entry(i, j, twist) for j in range(1, n + 1)] for i in range(1, n + 1)]

    # -- minors ---------------------------------------------------------------------
    def _series_minors(self, name: str, build: Callable[[], list]) -> list:
        with self._lock:
            got = self._minors.get(name)
        if got is None:
            M = build()
            r, D = self.ring, self.D
            got = [SymSeries.const(r, D, 1)] + leading_minors(
                M, SymSeries.const(r, D, 1), SymSeries(r, D)
            )
            with self._lock:
                self._minors[name] = got
        return got

    def product(self, twist: str, right) -> List[List[SymSeries]]:
        return _series_times_scalar(self.matrix(twist), right, self.ring, self.D)

    def AP(self):
        z = self.ring.zero()
        return mat_mul(toda_A(self.ring), toda_P(self.ring), z)

    def tau_list(self) -> List[SymSeries]:
        return self._series_minors("tau", lambda: self.product("", self.AP()))

    def sigma_list(self) -> List[SymSeries]:
        return self._series_minors("sigma", lambda: self.product("", toda_P(self.ring)))

    def sigma_prime_list(self) -> List[SymSeries]:
        """sigma(sigma_i), via the exact sigma of every entry of Z."""
        return self._series_minors("sigma'", lambda: self.product("sigma", toda_P(self.ring)))

    def sigma_tau_list(self) -> List[SymSeries]:
        return self._series_minors("sigma(tau)", lambda: self.product("sigma", self.AP()))

    def sigma_inv_tau_list(self) -> List[SymSeries]:
        return self._series_minors("sigma^-1(tau)", lambda: self.product("sigma_inv", self.AP()))

    def iota_tau_list(self) -> List[SymSeries]:
        r = self.ring
        right = iota_matrix(self.AP())
        return self._series_minors("iota(tau)", lambda: self.product("iota", right))

    def iota_sigma_list(self) -> List[SymSeries]:
        right = iota_matrix(toda_P(self.ring))
        return self._series_minors("iota(sigma)", lambda: self.product("iota", right))


def build_Z(n: int, D: int, sl: bool = True) -> CentralizerData:
    return CentralizerData(n, D, sl)


def tau(data: CentralizerData, i: int) -> SymSeries:
    return data.tau_list()[i]


def sigma_minor(data: CentralizerData, i: int) -> SymSeries:
    return data.sigma_list()[i]


# -- c-coefficients -----------------------------------------------------------------

def c_coeffs(data: CentralizerData, j: int) -> List[SymSeries]:
    """(c_0^{(j)}, ..., c_{n-1}^{(j)}) with A^j Z = sum_m c_m^{(j)} A^m."""
    r, n, D = data.ring, data.n, data.D
    Aj = mat_power(r, j)
    first = []
    for k in range(n):
        acc = SymSeries(r, D)
        for t in range(n):
            if Aj[0][t].is_zero():
                continue
            acc = acc + data.entry(t + 1, k + 1).scale(Aj[0][t])
        first.append(acc)
    powers = [mat_power(r, m)[0] for m in range(n)]
    c: List[Optional[SymSeries]] = [None] * n
    # (A^m)_{1,m+1} = (-1)^m and (A^m)_{1,k} = 0 for k > m+1: back substitution
    for m in range(n - 1, -1, -1):
        acc = first[m]
        for t in range(m + 1, n):
            coeff = powers[t][m]
            if not coeff.is_zero():
                acc = acc - c[t].scale(coeff)
        pivot = powers[m][m]
        if pivot not in (r.const(1), r.const(-1)):
            raise SingularSystem("unexpected pivot")
        c[m] = acc.scale(pivot)
    return c


def zii_c_check(data: CentralizerData, j: int) -> bool:
    """e^{-j a_i} z_ii = sum_m c_m^{(j)} e^{-m a_i} for every i."""
    r = data.ring
    c = c_coeffs(data, j)
    for i in range(1, data.n + 1):
        lhs = data.entry(i, i).scale(r.ea(i, -j))
        rhs = SymSeries(r, data.D)
        for m, cm in enumerate(c):
            rhs = rhs + cm.scale(r.ea(i, -m))
        if lhs != rhs:
            return False
    return True


def det_c_matrix(data: CentralizerData, i: int, offset: int) -> List[List[SymSeries]]:
    """Rows c^{(offset)}, ..., c^{(offset+i-1)} restricted to columns 0..i-1."""
    rows = [c_coeffs(data, offset + t) for t in range(i)]
    return [row[:i] for row in rows]


def det_c_identity_check(data: CentralizerData, i: int) -> Dict[str, bool]:
    r, D = data.ring, data.D
    one, zero = SymSeries.const(r, D, 1), SymSeries(r, D)
    sig = det(det_c_matrix(data, i, 0), one, zero)
    ta = det(det_c_matrix(data, i, 1), one, zero)
    return {"sigma": sig == data.sigma_list()[i], "tau": ta == data.tau_list()[i]}


# -- structural checks on Z ------------------------------------------------------------

def commutation_check(data: CentralizerData) -> bool:
    """[A, Z] = 0 entry-wise."""
    r, D = data.ring, data.D
    A = toda_A(r)
    Z = data.matrix()
    n = data.n
    for i in range(n):
        for k in range(n):
            acc = SymSeries(r, D)
            for j in range(n):
                if not A[i][j].is_zero():
                    acc = acc + Z[j][k].scale(A[i][j])
                if not A[j][k].is_zero():
                    acc = acc - Z[i][j].scale(A[j][k])
            if not acc.is_zero():
                return False
    return True


def recurrence_check(data: CentralizerData) -> bool:
    """(b_i - b_j) z_ij = z_{i,j-1} - z_{i+1,j} for the extended entries."""
    r, n = data.ring, data.n
    for i in range(1, n + 1):
        for j in range(i + 1, i + n):
            bi, bj = r.b((i - 1) % n + 1), r.b((j - 1) % n + 1)
            if data.entry(i, j).scale(bi - bj) != data.entry(i, j - 1) - data.entry(i + 1, j):
                return False
    return True


def sigma_on_Z_check(data: CentralizerData) -> Dict[str, bool]:
    """sigma(Z) = Z A^{-1} entry-wise, sigma(tau_i) = sigma_i, and iota on tau, sigma."""
    r, n = data.ring, data.n
    ZAinv = data.product("", toda_A_inv(r))
    entries = all(
        data.entry(i + 1, j + 1, "sigma") == ZAinv[i][j] for i in range(n) for j in range(n)
    )
    diag = all(
        data.entry(i, i, "sigma") == data.entry(i, i).scale(r.ea(i)) for i in range(1, n + 1)
    )
    st = data.sigma_tau_list() == data.sigma_list()
    taus, sigs = data.tau_list(), data.sigma_list()
    it, isg = data.iota_tau_list(), data.iota_sigma_list()
    iota_tau = all(it[i] * taus[n] == taus[n - i] for i in range(n + 1))
    iota_sigma = all(isg[i] * sigs[n] == sigs[n - i] for i in range(n + 1))
    return {
        "sigma_entries": entries,
        "sigma_diagonal": diag,
        "sigma_tau": st,
        "iota_tau": iota_tau,
        "iota_sigma": iota_sigma,
    }


def T_action_check(data: CentralizerData) -> bool:
    """T_i(z_ki) = e^{-a_i} z_{k,i+1}, T_i(z_{i+1,j}) = -e^{-a_i} z_ij, other entries killed."""
    r, n = data.ring, data.n
    for i in range(1, n):
        for k in range(1, n + 1):
            for j in range(k, n + 1):
                got = apply_T(i, data.exact(k, j)).expand(data.D)
                if j == i and k <= i:
                    want = data.entry(k, i + 1).scale(r.ea(i, -1))
                elif k == i + 1:
                    want = data.entry(i, j).scale(r.ea(i, -1)) * -1
                else:
                    want = SymSeries(r, data.D)
                if got != want:
                    return False
    return True


def hirota_check(data: CentralizerData, i: int) -> Dict[str, object]:
    """tau_i^2 - tau_{i+1} tau_{i-1} = sigma(tau_i) sigma^{-1}(tau_i)."""
    t = data.tau_list()
    lhs = t[i] * t[i] - t[i + 1] * t[i - 1]
    rhs = data.sigma_tau_list()[i] * data.sigma_inv_tau_list()[i]
    ok = lhs == rhs
    out = {"identity": "hirota", "i": i, "n": data.n, "D": data.D, "status": "pass" if ok else "fail"}
    if not ok:
        out["witness"] = lhs.first_difference(rhs)
    return out


# -- Lax matrices and conserved quantities ----------------------------------------------

def lax_M(qr: QRing):
    n = qr.n
    return [
        [qr.z(i + 1) if i == j else (qr.const(-1) if j == i + 1 else qr.zero()) for j in range(n)]
        for i in range(n)
    ]


def lax_N(qr: QRing):
    n = qr.n
    out = [[qr.one() if i == j else qr.zero() for j in range(n)] for i in range(n)]
    for i in range(1, n):
        out[i][i - 1] = -(qr.Q(i) * qr.z(i))
    return out


def lax_N_inv(qr: QRing):
    """N is unipotent lower bidiagonal: (N^{-1})_{ij} = prod_{j<=t<i} Q_t z_t."""
    n = qr.n
    out = [[qr.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        acc = qr.one()
        out[i][i] = acc
        for j in range(i - 1, -1, -1):
            acc = acc * qr.Q(j + 1) * qr.z(j + 1)
            out[i][j] = acc
    return out


def lax_L(qr: QRing):
    return mat_mul(lax_M(qr), lax_N_inv(qr), qr.zero())


def charpoly_F(n: int) -> List[QPoly]:
    """F_0..F_n read off det(zeta N - M) = sum_i (-1)^i F_i zeta^{n-i}."""
    qr = QRing(n)
    zeta = qr.zeta()
    M, N = lax_M(qr), lax_N(qr)
    X = [[N[i][j] * zeta - M[i][j] for j in range(n)] for i in range(n)]
    d = det(X, qr.one(), qr.zero())
    return [d.coefficient_in(qr.izeta, n - i) * (-1) ** i for i in range(n + 1)]


def closed_F_check(n: int) -> Dict[str, bool]:
    qr = QRing(n)
    F = charpoly_F(n)
    full = all(F[i] == F_conserved(qr, n, i) for i in range(n + 1))
    # leading principal blocks of zeta E - L against F^{(i)}
    L = lax_L(qr)
    zeta = qr.zeta()
    X = [[(zeta if i == j else qr.zero()) - L[i][j] for j in range(n)] for i in range(n)]
    polys = leading_minors(X, qr.one(), qr.zero())
    blocks = True
    for i, chi in enumerate(polys, start=1):
        for m in range(i + 1):
            if chi.coefficient_in(qr.izeta, i - m) * (-1) ** m != F_conserved(qr, i, m):
                blocks = False
    # det L^{[a,b]}_{[a,b]} = (1 - Q_b) z_a ... z_b
    interval = True
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            sub = submatrix(L, range(a - 1, b), range(a - 1, b))
            want = qr.one() - qr.Q(b)
            for t in range(a, b + 1):
                want = want * qr.z(t)
            if det(sub, qr.one(), qr.zero()) != want:
                interval = False
    return {"charpoly": full, "principal_blocks": blocks, "interval_minors": interval}


# -- discrete Toda -------------------------------------------------------------------------

@dataclass
class TodaState:
    z: List[object]
    Q: List[object] = field(default_factory=list)  # Q_1..Q_{n-1}


def dtoda_step(state: TodaState, simplify: Optional[Callable] = None) -> TodaState:
    """Q_i^+ = (z_i / z_{i+1}) Q_i, z_i^+ = (1 - Q^+_{i-1}) / (1 - Q^+_i) z_i with Q^+_0 = Q^+_n = 0.

    Works on any field elements (Fraction, sympy expressions).
    """
    z, Q = list(state.z), list(state.Q)
    n = len(z)
    if len(Q) != n - 1:
        raise ValueError("need n - 1 Q-values")
    Qp = []
    for i in range(n - 1):
        if z[i + 1] == 0:
            raise DegeneratePoint(f"z_{i + 2} vanishes")
        Qp.append(z[i] / z[i + 1] * Q[i])
    ext = [0] + Qp + [0]
    zp = []
    for i in range(n):
        den = 1 - ext[i + 1]
        if den == 0:
            raise DegeneratePoint(f"1 - Q^+_{i + 1} vanishes")
        zp.append((1 - ext[i]) / den * z[i])
    if simplify:
        zp = [simplify(x) for x in zp]
        Qp = [simplify(x) for x in Qp]
    return TodaState(zp, Qp)


def F_values(state: TodaState) -> List[object]:
    """F_i evaluated at a point, with the boundary Q_n = 0."""
    from itertools import combinations

    z, Q = state.z, list(state.Q) + [0]
    n = len(z)
    out = []
    for m in range(n + 1):
        total = 0
        for J in combinations(range(n), m):
            Js = set(J)
            term = 1
            for j in J:
                term = term * z[j]
                if j + 1 not in Js:
                    term = term * (1 - Q[j])
            total = total + term
        out.append(total)
    return out


def dtoda_symbolic_check(n: int) -> bool:
    """F_i(z^+, Q^+) - F_i(z, Q) cancels to 0 as a rational function."""
    import sympy

    zs = sympy.symbols(f"z1:{n + 1}")
    Qs = sympy.symbols(f"Q1:{n}")
    st = TodaState(list(zs), list(Qs))
    nxt = dtoda_step(st)
    before, after = F_values(st), F_values(nxt)
    return all(sympy.cancel(sympy.together(a - b)) == 0 for a, b in zip(after, before))


def dtoda_orbit(z: Sequence[Fraction], Q: Sequence[Fraction], steps: int) -> List[TodaState]:
    st = TodaState([Fraction(x) for x in z], [Fraction(x) for x in Q])
    out = [st]
    for _ in range(steps):
        st = dtoda_step(st)
        out.append(st)
    return out


def sigma_dtoda_check(data: CentralizerData) -> bool:
    """sigma o Phi agrees with Phi o (discrete Toda step) on z_i and Q_i.

    With Phi(z_i) = tau_i s_{i-1}/(s_i tau_{i-1}) and Phi(Q_i) = tau_{i-1} tau_{i+1}/tau_i^2
    (s = sigma-minors), both identities are compared after clearing
    denominators, so no series division is needed.
    """
    n = data.n
    t, s, sp = data.tau_list(), data.sigma_list(), data.sigma_prime_list()

    def S(k):
        return s[k] if 0 <= k <= n else None

    for i in range(1, n + 1):
        # 1 - sigma(Phi(Q_k)) = (s_k^2 - s_{k-1} s_{k+1}) / s_k^2, and 1 when k in {0, n}
        def one_minus(k):
            if k <= 0 or k >= n:
                return s[0], s[0]
            return s[k] * s[k] - s[k - 1] * s[k + 1], s[k] * s[k]

        a_num, a_den = one_minus(i - 1)
        b_num, b_den = one_minus(i)
        # Phi(z_i^+) = (a_num/a_den) / (b_num/b_den) * tau_i s_{i-1} / (s_i tau_{i-1})
        lhs_num = a_num * b_den * t[i] * s[i - 1]
        lhs_den = a_den * b_num * s[i] * t[i - 1]
        # sigma(Phi(z_i)) = s_i sp_{i-1} / (sp_i s_{i-1})
        rhs_num = s[i] * sp[i - 1]
        rhs_den = sp[i] * s[i - 1]
        if lhs_num * rhs_den != rhs_num * lhs_den:
            return False
    return True


# -- determinant identities used internally ----------------------------------------------

def noumi_check(A, B, one, zero) -> bool:
    """Leading minors are multiplicative when A is lower or B is upper triangular."""
    AB = mat_mul(A, B, zero)
    la, lb, lab = (leading_minors(X, one, zero) for X in (A, B, AB))
    return all(x * y == z for x, y, z in zip(la, lb, lab))


def det_AB_partial_check(A, B, Binv, i: int, one, zero) -> bool:
    """det(AB)_{[i+1,n]} = det( (B^{-1}) rows [1,i] over A rows [i+1,n] ) * det B."""
    n = len(A)
    AB = mat_mul(A, B, zero)
    lhs = det(submatrix(AB, range(i, n), range(i, n)), one, zero)
    stacked = [list(Binv[k]) for k in range(i)] + [list(A[k]) for k in range(i, n)]
    return lhs == det(stacked, one, zero) * det(B, one, zero)
