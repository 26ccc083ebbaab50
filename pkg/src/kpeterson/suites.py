"""Verification suites: plans of named cases, a runner, and report assembly.

A plan is a list of ``Case`` records naming a module-level check function,
so cases can be shipped to worker processes.  Each worker keeps its own
contexts.  Execution order is shuffled under the seed; the report is
sorted by case key, so scheduling never shows up in the output.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .affine import (
    BoundExceeded,
    AffinePerm,
    canonical,
    grassmannian_elements,
    is_k_small,
    k_bounded_partitions,
    k_rect,
    k_rect_union,
    nu,
    perm_of_partition,
)
from .config import RunConfig
from .demazure import BudgetExceeded, apply_D, apply_T
from .peterson import (
    NotKSmall,
    PetersonContext,
    _d_set,
    closed_sum_check,
    det_M_lambda,
    det_N_lambda,
    frac_equal,
    krect_factor_check,
    max_factor_check,
    phi_inverse_check,
    rect_tau_check,
    xi_vector,
)
from .quantum import (
    GrothTable,
    all_perms,
    classical_dominant_check,
    coxeter_check,
    gtheta_product_check,
    iota_equivariance_check,
    iota_F_check,
    iota_square_check,
    operator_relations_check,
    q_power,
)
from .symseries import random_series
from .toda import (
    closed_F_check,
    commutation_check,
    dtoda_symbolic_check,
    hirota_check,
    recurrence_check,
    sigma_dtoda_check,
    sigma_on_Z_check,
)

SUITES = ("main", "det", "krect", "maxfactor", "toda", "groth-props", "operators", "fixtures", "consistency")
PRIMARY_SUITES = ("main", "det", "krect", "maxfactor", "toda", "groth-props")

Outcome = Tuple[bool, Dict[str, object]]


@dataclass(frozen=True)
class Case:
    key: str
    identity: str
    fn: Callable[..., Outcome]
    args: tuple = ()


# -- contexts (one set per process) -------------------------------------------------

@lru_cache(maxsize=None)
def context(n: int, D: int, sl: bool, budget: int) -> PetersonContext:
    return PetersonContext(n, D, sl, max_length=budget)


@lru_cache(maxsize=None)
def groth_table(n: int) -> GrothTable:
    t = GrothTable(n)
    t.fill()
    return t


def _budget(cfg: RunConfig) -> int:
    # k-rectangle unions and closed sums reach past L
    return max(12, cfg.L + cfg.n * cfg.n // 4 + cfg.n)


def ctx_of(cfg: RunConfig, D: Optional[int] = None) -> PetersonContext:
    return context(cfg.n, cfg.D if D is None else D, cfg.sl, _budget(cfg))


def k_small_partitions(n: int) -> List[tuple]:
    out = []
    for size in range(1, n * n):
        out.extend(lam for lam in k_bounded_partitions(size, n) if is_k_small(lam, n))
    return sorted(set(canonical(l) for l in out))


def _flag(d: Dict[str, bool]) -> Outcome:
    return all(d.values()), {"checks": dict(sorted(d.items()))}


# -- case functions ------------------------------------------------------------------

def case_main(cfg: RunConfig, lam) -> Outcome:
    rep = ctx_of(cfg).verify_main(perm_of_partition(lam, cfg.n))
    extra = {k: rep[k] for k in ("w", "xi")}
    if "witness" in rep:
        extra["witness"] = rep["witness"]
    return rep["status"] == "pass", extra


def case_key_base(cfg: RunConfig) -> Outcome:
    rep = ctx_of(cfg).verify_main(AffinePerm.s(cfg.n, 0))
    return rep["status"] == "pass", {k: v for k, v in rep.items() if k in ("w", "xi", "witness")}


def case_det_M(cfg: RunConfig, lam) -> Outcome:
    ctx = ctx_of(cfg)
    lhs, rhs = det_M_lambda(ctx, lam), ctx.demazure.g_tilde(lam)
    return lhs == rhs, ({} if lhs == rhs else {"witness": lhs.first_difference(rhs)})


def case_det_N(cfg: RunConfig, lam) -> Outcome:
    ctx = ctx_of(cfg)
    lhs, rhs = det_N_lambda(ctx, lam), ctx.demazure.g(lam)
    return lhs == rhs, ({} if lhs == rhs else {"witness": lhs.first_difference(rhs)})


def case_rect(cfg: RunConfig, i) -> Outcome:
    return _flag(rect_tau_check(ctx_of(cfg), i))


def case_krect(cfg: RunConfig, lam, i) -> Outcome:
    rep = krect_factor_check(ctx_of(cfg), lam, i)
    return rep["status"] == "pass", {k: v for k, v in rep.items() if k == "witness"}


def case_maxfactor(cfg: RunConfig) -> Outcome:
    rep = max_factor_check(ctx_of(cfg))
    return rep["status"] == "pass", {"nu": list(nu(cfg.n)), **{k: v for k, v in rep.items() if k == "witness"}}


def case_closed_F(cfg: RunConfig) -> Outcome:
    return _flag(closed_F_check(cfg.n))


def case_dtoda(cfg: RunConfig) -> Outcome:
    return dtoda_symbolic_check(cfg.n), {}


def case_hirota(cfg: RunConfig, i) -> Outcome:
    rep = hirota_check(ctx_of(cfg).cent, i)
    return rep["status"] == "pass", {k: v for k, v in rep.items() if k == "witness"}


def case_centralizer(cfg: RunConfig) -> Outcome:
    cent = ctx_of(cfg).cent
    checks = {"commutation": commutation_check(cent), "recurrence": recurrence_check(cent)}
    checks.update(sigma_on_Z_check(cent))
    checks["sigma_vs_dtoda"] = sigma_dtoda_check(cent)
    return _flag(checks)


def case_path_independence(cfg: RunConfig) -> Outcome:
    bad = groth_table(cfg.n).path_independence()
    return not bad, ({"bad_edges": [[list(w), i] for w, i in bad]} if bad else {})


def case_groth_closed_forms(cfg: RunConfig) -> Outcome:
    t = groth_table(cfg.n)
    checks = {"theta_product": gtheta_product_check(cfg.n, t), "coxeter_closed_form": coxeter_check(cfg.n, t)}
    checks.update({f"q0:{k}": v for k, v in classical_dominant_check(cfg.n, t).items()})
    return _flag(checks)


def case_groth_operators(cfg: RunConfig) -> Outcome:
    t = groth_table(cfg.n)
    checks = operator_relations_check(cfg.n, t)
    checks["iota_equivariance"] = not iota_equivariance_check(cfg.n, t)
    checks["iota_square"] = iota_square_check(cfg.n, t)
    checks["iota_conserved"] = iota_F_check(cfg.n)
    return _flag(checks)


def case_star(cfg: RunConfig, w) -> Outcome:
    got = ctx_of(cfg).star_check([w])
    return all(got.values()), {}


def case_intertwining(cfg: RunConfig, w) -> Outcome:
    return _flag(ctx_of(cfg).intertwining_check([w]))


def case_ideal(cfg: RunConfig) -> Outcome:
    ctx = ctx_of(cfg)
    return _flag({"conserved_to_elementary": ctx.ideal_check(), "iota_compatible": ctx.phi_iota_check()})


def case_random_operators(cfg: RunConfig, k) -> Outcome:
    ctx = ctx_of(cfg)
    rng = random.Random(cfg.seed * 7919 + k)
    f = random_series(ctx.ring, cfg.D, rng)
    n = cfg.n
    checks = {}
    for i in range(n):
        Df = apply_D(i, f)
        Tf = apply_T(i, f)
        checks[f"D{i}^2"] = apply_D(i, Df) == Df
        checks[f"T{i}^2"] = apply_T(i, Tf) == -Tf
        j = (i + 1) % n
        if n > 2:
            checks[f"braid{i}{j}"] = apply_D(i, apply_D(j, Df)) == apply_D(j, apply_D(i, apply_D(j, f)))
        for j in range(n):
            if n > 3 and (j - i) % n not in (0, 1, n - 1) and i < j:
                checks[f"commute{i}{j}"] = apply_D(i, apply_D(j, f)) == apply_D(j, Df)
    return _flag(checks)


def case_closed_sum(cfg: RunConfig, lam) -> Outcome:
    return closed_sum_check(ctx_of(cfg), lam), {}


def case_phi_inverse(cfg: RunConfig) -> Outcome:
    return _flag(phi_inverse_check(ctx_of(cfg)))


def case_example_residues(cfg: RunConfig) -> Outcome:
    """The six-strand example with lambda = (3, 3, 1)."""
    from .affine import e_lambda_vec
    from .coeffs import ring

    r = ring(6, False)
    lam = (3, 3, 1)
    checks = {
        "d(2,1)": _d_set(lam, 2, 1, 6, r) == [r.ea(5, -1), r.ea(4, -1)],
        "d(1,1)": _d_set(lam, 1, 1, 6, r) == [r.ea(6, -1), r.ea(5, -1), r.ea(4, -1)],
        "xi": xi_vector(lam, 6) == [0, 0, 0, 1, 1, 1],
        # e^{(a3 - a4) + (a2 - a6)}
        "e_prefactor": e_lambda_vec(lam, 6) == [0, 1, 1, -1, 0, -1],
    }
    return _flag(checks)


def _lo(cfg: RunConfig) -> int:
    return 4 if cfg.D > 4 else max(cfg.D - 1, 0)


def case_consistency(cfg: RunConfig, kind) -> Outcome:
    lo = _lo(cfg)
    hi_ctx, lo_ctx = ctx_of(cfg), ctx_of(cfg, lo)
    n = cfg.n
    pairs = []
    if kind == "kschur":
        for lam in grassmannian_elements(n, cfg.L):
            pairs.append((str(list(lam)) + "~", hi_ctx.demazure.g_tilde(lam), lo_ctx.demazure.g_tilde(lam)))
            pairs.append((str(list(lam)), hi_ctx.demazure.g(lam), lo_ctx.demazure.g(lam)))
    elif kind == "centralizer":
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                pairs.append((f"z{i}{j}", hi_ctx.cent.entry(i, j), lo_ctx.cent.entry(i, j)))
        for name in ("tau_list", "sigma_list", "sigma_prime_list"):
            hs, ls = getattr(hi_ctx.cent, name)(), getattr(lo_ctx.cent, name)()
            pairs.extend((f"{name}[{i}]", a, b) for i, (a, b) in enumerate(zip(hs, ls)))
    elif kind == "determinants":
        for lam in k_small_partitions(n):
            pairs.append((f"M{list(lam)}", det_M_lambda(hi_ctx, lam), det_M_lambda(lo_ctx, lam)))
            pairs.append((f"N{list(lam)}", det_N_lambda(hi_ctx, lam), det_N_lambda(lo_ctx, lam)))
    elif kind == "factorizations":
        for i in range(1, n):
            big = k_rect_union((1,), k_rect(i, n))
            pairs.append((f"R{i}u(1)", hi_ctx.demazure.g_tilde(big), lo_ctx.demazure.g_tilde(big)))
        if n >= 3:
            pairs.append(("nu", hi_ctx.demazure.g_tilde(nu(n)), lo_ctx.demazure.g_tilde(nu(n))))
    elif kind == "peterson":
        for lam in grassmannian_elements(n, cfg.L):
            x = perm_of_partition(lam, n)
            a = hi_ctx.phi_tilde_apply(hi_ctx.quantum_side(x))
            b = lo_ctx.phi_tilde_apply(lo_ctx.quantum_side(x))
            pairs.append((f"num{list(lam)}", a.num, b.num))
            pairs.append((f"den{list(lam)}", a.den, b.den))
    else:
        raise ValueError(kind)
    bad = [name for name, a, b in pairs if a.truncate(lo) != b]
    return not bad, {"compared": len(pairs), "lo": lo, **({"mismatch": bad} if bad else {})}


# -- plans -----------------------------------------------------------------------------

def plan(suite: str, cfg: RunConfig) -> List[Case]:
    n = cfg.n
    if suite == "main":
        cases = [Case(f"main:{list(lam)}", "Peterson image of a quantum Grothendieck class", case_main, (lam,))
                 for lam in grassmannian_elements(n, cfg.L)]
        cases.append(Case("main:key-base-case", "image of Q^{-theta} G_{s_theta} is the closed class of s_0",
                          case_key_base))
        return cases
    if suite == "det":
        cases = []
        for lam in k_small_partitions(n):
            cases.append(Case(f"det:M:{list(lam)}", "det(M)/xi is the closed k-Schur function", case_det_M, (lam,)))
            cases.append(Case(f"det:N:{list(lam)}", "scaled det(N)/xi is the k-Schur function", case_det_N, (lam,)))
        for i in range(1, n):
            cases.append(Case(f"det:rect:R{i}", "k-rectangles are tau and sigma minors over xi", case_rect, (i,)))
        return cases
    if suite == "krect":
        size = min(cfg.L, 3) if "krect_size" not in cfg.extra else cfg.extra["krect_size"]
        lams = [()] + [l for s in range(1, size + 1) for l in k_bounded_partitions(s, n)]
        return [Case(f"krect:{list(l)}:R{i}", "k-rectangle factorization", case_krect, (canonical(l), i))
                for l in sorted(set(canonical(l) for l in lams)) for i in range(1, n)]
    if suite == "maxfactor":
        if n < 3:
            return []
        return [Case(f"maxfactor:{list(nu(n))}", "factorization of the maximal k-small class", case_maxfactor)]
    if suite == "toda":
        cases = [Case("toda:closed-F", "conserved quantities from the characteristic polynomial", case_closed_F),
                 Case("toda:centralizer", "centralizer relations and the sigma action", case_centralizer)]
        if n <= 4:
            cases.append(Case("toda:dtoda-conserves-F", "discrete Toda preserves every F_i", case_dtoda))
        cases.extend(Case(f"toda:hirota:{i}", "Hirota bilinear identity", case_hirota, (i,)) for i in range(1, n))
        return cases
    if suite == "groth-props":
        cases = [Case("groth:path-independence", "descent paths give the same polynomial", case_path_independence),
                 Case("groth:closed-forms", "theta product, Coxeter closed form, Q = 0 dominant forms",
                      case_groth_closed_forms),
                 Case("groth:operators", "operator relations and iota on the quantum side", case_groth_operators),
                 Case("groth:ideal", "conserved quantities map to elementary symmetric values", case_ideal)]
        if n <= 3:
            cases.extend(Case(f"groth:star:{list(w)}", "iota(G_w) matches G_{w*} after the substitution",
                              case_star, (w,)) for w in all_perms(n))
            cases.extend(Case(f"groth:intertwining:{list(w)}", "substitution intertwines the Demazure operators",
                              case_intertwining, (w,)) for w in all_perms(n))
        return cases
    if suite == "operators":
        count = cfg.extra.get("random_inputs", 20)
        cases = [Case(f"operators:random:{k:02d}", "idempotence, T^2 = -T and braid relations",
                      case_random_operators, (k,)) for k in range(count)]
        cases.extend(Case(f"operators:closed-sum:{list(lam)}", "closed class is the sum over the lower interval",
                          case_closed_sum, (lam,)) for lam in grassmannian_elements(n, cfg.L))
        return cases
    if suite == "fixtures":
        cases = [Case("fixtures:example-residues", "residues, xi and prefactor of the (3,3,1) example",
                      case_example_residues)]
        if n in (2, 3):
            cases.append(Case("fixtures:phi-inverse", "tabulated inverse images reproduce Z", case_phi_inverse))
        return cases
    if suite == "consistency":
        return [Case(f"consistency:{k}", "truncation of the deep computation equals the shallow one",
                     case_consistency, (k,))
                for k in ("kschur", "centralizer", "determinants", "factorizations", "peterson")]
    raise ValueError(f"unknown suite {suite!r}")


# -- execution -------------------------------------------------------------------------

def run_case(case: Case, cfg: RunConfig) -> Dict[str, object]:
    rep: Dict[str, object] = {"case": case.key, "identity": case.identity, "n": cfg.n, "D": cfg.D}
    try:
        ok, extra = case.fn(cfg, *case.args)
        rep["status"] = "pass" if ok else "fail"
        rep.update(extra)
    except (BudgetExceeded, BoundExceeded) as exc:
        rep["status"] = "budget"
        rep["error"] = str(exc)
    except NotKSmall as exc:
        rep["status"] = "skip"
        rep["error"] = str(exc)
    return rep


def _run_packed(args):
    case, cfg = args
    return run_case(case, cfg)


def run_suites(suites, cfg: RunConfig) -> Dict[str, object]:
    names = list(SUITES) if "all" in suites else list(suites)
    cases = [c for s in names for c in plan(s, cfg)]
    order = list(cases)
    random.Random(cfg.seed).shuffle(order)
    if cfg.jobs > 1 and len(order) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_packed, [(c, cfg) for c in order]))
    else:
        results = [run_case(c, cfg) for c in order]
    results.sort(key=lambda r: r["case"])
    summary = {s: sum(1 for r in results if r["status"] == s) for s in ("pass", "fail", "budget", "skip")}
    return {
        "config": cfg.as_dict(),
        "suites": names,
        "cases": results,
        "summary": summary,
        "ok": summary["fail"] == 0 and summary["budget"] == 0,
    }


def exit_code(report: Dict[str, object]) -> int:
    s = report["summary"]
    if s["fail"]:
        return 1
    if s["budget"]:
        return 3
    return 0
