"""Acceptance criteria, one test per criterion.

Each criterion is a plain function returning ``(ok, detail)``; the test
records a ``PASS``/``FAIL`` line that is printed in the terminal summary.
Run this file directly to get the same lines without pytest.
"""
import sys
import time

import pytest

from kpeterson.affine import e_lambda_vec
from kpeterson.coeffs import ring
from kpeterson.config import RunConfig
from kpeterson.peterson import PetersonContext, _d_set, phi_inverse_check, xi_vector
from kpeterson.quantum import GrothTable, all_perms, coxeter_check, gtheta_product_check
from kpeterson.suites import run_suites
from kpeterson.toda import closed_F_check, dtoda_symbolic_check, hirota_check


def suite_ok(names, **cfg):
    rep = run_suites(names, RunConfig(**cfg))
    bad = [c["case"] for c in rep["cases"] if c["status"] != "pass"]
    return rep["ok"] and not bad, f"{len(rep['cases'])} cases" + (f", not passing: {bad}" if bad else "")


def merge(*parts):
    return all(ok for ok, _ in parts), "; ".join(d for _, d in parts)


def c1_main_identity():
    return merge(suite_ok(["main"], n=2, D=6, L=4), suite_ok(["main"], n=3, D=5, L=4))


def c2_key_base_case():
    got = {n: PetersonContext(n, 6).key_base_case() for n in (2, 3, 4)}
    return all(got.values()), f"n -> ok: {got}"


def c3_determinants():
    return merge(suite_ok(["det"], n=3, D=5), suite_ok(["det"], n=4, D=5))


def c4_krect():
    return suite_ok(["krect"], n=3, D=6, extra={"krect_size": 3})


def c5_maxfactor():
    return merge(suite_ok(["maxfactor"], n=3, D=6), suite_ok(["maxfactor"], n=4, D=5))


def c6_toda():
    closed = {n: all(closed_F_check(n).values()) for n in (2, 3, 4, 5)}
    dtoda = {n: dtoda_symbolic_check(n) for n in (2, 3, 4)}
    cent = PetersonContext(3, 8).cent
    hirota = {i: hirota_check(cent, i)["status"] == "pass" for i in (1, 2)}
    ok = all(closed.values()) and all(dtoda.values()) and all(hirota.values())
    return ok, f"closed F {closed}; dToda {dtoda}; Hirota D=8 {hirota}"


def c7_grothendieck():
    tables = {n: GrothTable(n) for n in (2, 3, 4)}
    path = not tables[4].path_independence() and len(tables[4].fill()) == 24
    star = PetersonContext(3, 4).star_check(all_perms(3))
    gtheta = {n: gtheta_product_check(n, tables[n]) for n in (3, 4)}
    cox = {n: coxeter_check(n, tables[n]) for n in (2, 3, 4)}
    ok = path and all(star.values()) and all(gtheta.values()) and all(cox.values())
    return ok, f"S4 paths {path}; star over S3 {sum(star.values())}/6; theta product {gtheta}; Coxeter {cox}"


def c8_operators():
    return suite_ok(["operators"], n=3, D=4, L=4, seed=0, extra={"random_inputs": 20})


def c9_consistency():
    return merge(suite_ok(["consistency"], n=2, D=6, L=4), suite_ok(["consistency"], n=3, D=6, L=4))


def c10_fixtures():
    inv = {n: all(phi_inverse_check(PetersonContext(n, 6)).values()) for n in (2, 3)}
    r = ring(6, False)
    lam = (3, 3, 1)
    example = (
        _d_set(lam, 2, 1, 6, r) == [r.ea(5, -1), r.ea(4, -1)]
        and xi_vector(lam, 6) == [0, 0, 0, 1, 1, 1]
        and e_lambda_vec(lam, 6) == [0, 1, 1, -1, 0, -1]
    )
    return all(inv.values()) and example, f"inverse entries {inv}; (3,3,1) residues, xi, prefactor {example}"


CRITERIA = [
    (1, "main identity, n=2 D=6 and n=3 D=5, length <= 4", c1_main_identity),
    (2, "key base case at degree 6, n=2,3,4", c2_key_base_case),
    (3, "k-small determinants and rectangle minors, n=3,4 D=5", c3_determinants),
    (4, "k-rectangle factorization, n=3 |lambda| <= 3 D=6", c4_krect),
    (5, "maximal k-small factorization, n=3 D=6 and n=4 D=5", c5_maxfactor),
    (6, "Toda: closed F n<=5, dToda n<=4, Hirota n=3 D=8", c6_toda),
    (7, "Grothendieck layer: S4 paths, star on S3, theta product, Coxeter", c7_grothendieck),
    (8, "operator algebra on 20 seeded inputs and closed sums, n=3", c8_operators),
    (9, "consistency of D=6 truncated to D=4", c9_consistency),
    (10, "inverse-map fixtures and the (3,3,1) example", c10_fixtures),
]


def evaluate(fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure with its reason
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ok, detail, time.perf_counter() - t0


def line(num, title, ok, detail, secs):
    return f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}  [{secs:.1f}s] {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, acceptance_log):
    ok, detail, secs = evaluate(fn)
    text = line(num, title, ok, detail, secs)
    acceptance_log.append(text)
    print(text)
    assert ok, text


if __name__ == "__main__":
    results = [evaluate(fn) for _, _, fn in CRITERIA]
    for (num, title, _), (ok, detail, secs) in zip(CRITERIA, results):
        print(line(num, title, ok, detail, secs))
    sys.exit(0 if all(r[0] for r in results) else 1)
