"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run alone with `pytest tests/test_acceptance.py`; the lines are repeated in
the "acceptance criteria" section at the end of the run.
"""

import json
import os
import random
import subprocess
import sys
from itertools import product
from math import comb

import numpy as np

from hitprob import fixtures as fx
from hitprob.algebra import Monomial, Polynomial, monomials_of_degree, poly_sum
from hitprob.gf2 import EchelonBasis, pack_supports
from hitprob.invariants import invariants, is_invariant_class, orbit_sum, submodule_sum
from hitprob.kameko import kameko_down
from hitprob.solver import (admissible_basis, brute_force_admissible, column_index, hit_space,
                            split_zero_plus, weight_quotient, zero_part_from_embeddings)
from hitprob.steenrod import sq, total_square
from hitprob.verify import strip_timing
from hitprob.weights import mu, realized_weights, singer_filter, spikes

OMEGA_1 = (3, 2, 2, 1)
OMEGA_2 = (3, 4, 1, 1)
OMEGA_3 = (3, 4, 3)


def plus_block(omega):
    return {m for m in weight_quotient(5, omega).admissible if 0 not in m}


def test_criterion_1_admissible_sets_p4(acceptance):
    checks = []
    for n, size in ((9, 46), (10, 70), (23, 155)):
        got = admissible_basis(4, n).monomial_set()
        checks.append((f"|B4({n})|={size}", len(got) == size))
        checks.append((f"B4({n}) equals fixture", got == fx.load(f"B4_{n}").as_set()))
    acceptance(1, "admissible monomials of P4 in degrees 9, 10, 23", checks)


def test_criterion_2_dimensions_p5(acceptance):
    checks = [(f"dim(QP5)_{n}={d}", admissible_basis(5, n).dim == d)
              for n, d in ((2, 10), (9, 191), (10, 280), (23, 1245))]
    acceptance(2, "dimensions of (QP5)_n for n = 2, 9, 10, 23", checks)


def test_criterion_3_zero_plus_split(acceptance):
    checks = []
    for n, split in ((9, (160, 31)), (10, (230, 50)), (23, (635, 610))):
        zero, plus = split_zero_plus(admissible_basis(5, n))
        checks.append((f"split({n})={split}", (len(zero), len(plus)) == split))
        checks.append((f"B5_0({n}) from embeddings", set(zero) == zero_part_from_embeddings(5, n)))
    acceptance(3, "zero/plus split and B0 from the f_i images", checks)


def test_criterion_4_weight_blocks(acceptance):
    checks = []
    for fid, w, size in (("B5_plus_311", (3, 1, 1), 6), ("B5_plus_33", (3, 3), 15),
                         ("B5_23_plus_3221", OMEGA_1, 290), ("B5_23_plus_3411", OMEGA_2, 105),
                         ("B5_23_plus_343", OMEGA_3, 24)):
        got = plus_block(w)
        checks.append((f"|B5+{w}|={size}", len(got) == size))
        checks.append((f"B5+{w} equals fixture", got == fx.load(fid).as_set()))
    b52 = set(weight_quotient(5, (5, 2)).admissible)
    checks.append(("|B5(5,2)|=10", len(b52) == 10))
    checks.append(("B5(5,2) equals fixture", b52 == fx.load("B5_52").as_set()))
    checks.append(("QP5(3,2,4)=0", weight_quotient(5, (3, 2, 4)).dim == 0))
    for w, d in ((OMEGA_1, 925), (OMEGA_2, 105), (OMEGA_3, 24)):
        checks.append((f"dim QP5{w}={d}", weight_quotient(5, w).dim == d))
        checks.append((f"block route QP5{w}", weight_quotient(5, w, method="block").dim == d))
    for n in (9, 10, 23):
        total = sum(weight_quotient(5, w).dim for w in realized_weights(5, n))
        checks.append((f"block sum {n}", total == admissible_basis(5, n).dim))
    acceptance(4, "weight blocks, their dimensions and block sums", checks)


def test_criterion_5_kameko(acceptance):
    checks = []
    for d, ker in ((2, 181), (9, 1054)):
        km = kameko_down(5, d)
        checks.append((f"kernel({d})={ker}", km.kernel_dim == ker))
        checks.append((f"surjective({d})", km.is_surjective))
        checks.append((f"down.section=id ({d})",
                       bool((km.composite() == np.eye(km.lower.dim, dtype=np.uint8)).all())))
    acceptance(5, "Kameko down map kernels, surjectivity and section", checks)


def test_criterion_6_invariants(acceptance):
    checks = []
    q2, q9, q23 = (admissible_basis(5, n) for n in (2, 9, 23))
    for n, q in ((2, q2), (9, q9), (23, q23)):
        checks.append((f"GL5 invariants of (QP5)_{n}=0", invariants(q, "gl").rank == 0))
    ker = kameko_down(5, 2).matrix
    checks.append(("Sigma5 invariants of degree-9 kernel=6", invariants(q9, "sigma", within=ker).rank == 6))
    w2, w3 = weight_quotient(5, OMEGA_2), weight_quotient(5, OMEGA_3)
    w1 = weight_quotient(5, OMEGA_1)
    checks.append(("QP5(w2)^Sigma5=4", invariants(w2, "sigma").rank == 4))
    checks.append(("QP5(w3)^Sigma5=1", invariants(w3, "sigma").rank == 1))
    p = {f"p{i}": fx.load(f"p{i}").as_polynomial() for i in range(1, 8)}
    for name in ("p1", "p2", "p3"):
        checks.append((f"{name} invariant in (QP5)_9", is_invariant_class(p[name], q9, "sigma")))
    checks.append(("p4 invariant in QP5(w2)", is_invariant_class(p["p4"], w2, "sigma")))
    # p5, p6, p7 enter only through p5+p6 and p6+p7
    checks.append(("p5+p6 invariant in QP5(w1)", is_invariant_class(p["p5"] + p["p6"], w1, "sigma")))
    checks.append(("p6+p7 invariant in QP5(w1)", is_invariant_class(p["p6"] + p["p7"], w1, "sigma")))
    u = fx.load("named_u_deg9").named()
    for i in (1, 2, 3):
        checks.append((f"p(u{i}) invariant", is_invariant_class(orbit_sum(u[f"u{i}"], q9), q9, "sigma")))
    bbar1 = fx.load("named_bbar_343").named()["bbar1"]
    checks.append(("p(bbar1) invariant (submodule sum)",
                   is_invariant_class(submodule_sum(bbar1, w3), w3, "sigma")))
    acceptance(6, "GL5 and Sigma5 invariants and invariant polynomials", checks)


def _naive_sq(i, x):
    acc = set()
    for t in product(*(range(a + 1) for a in x)):
        if sum(t) == i and all(comb(a, s) % 2 for a, s in zip(x, t)):
            acc ^= {tuple(a + s for a, s in zip(x, t))}
    return acc


def _cartan_ok():
    rng = random.Random(1234)
    for _ in range(200):
        k = rng.randint(1, 3)
        f, g = (Polynomial(k, d, rng.sample(list(monomials_of_degree(k, d)),
                                            min(3, len(list(monomials_of_degree(k, d))))))
                for d in (rng.randint(0, 6), rng.randint(0, 6)))
        sf, sg = total_square(f), total_square(g)
        for n in range(f.degree + g.degree + 1):
            rhs = poly_sum(k, f.degree + g.degree + n,
                           [sf[i] * sg[n - i] for i in range(n + 1) if i < len(sf) and n - i < len(sg)])
            if sq(n, f * g) != rhs:
                return False
    return True


def _instability_ok():
    for k in (1, 2, 3):
        for d in range(9):
            for x in monomials_of_degree(k, d):
                f = Polynomial.from_monomial(x)
                if sq(d, f) != f * f or not sq(d + 1, f).is_zero():
                    return False
                if sq(1, f).terms != _naive_sq(1, x):
                    return False
    return True


def _spikes_ok():
    for k in range(1, 6):
        for n in range(1, 24):
            if mu(n) > k:
                continue
            ci = column_index(k, n)
            R = hit_space(k, n).reduce_packed_rows(pack_supports([[ci.index(s)] for s in spikes(n, k)], len(ci)))
            if not R.any(axis=1).all():
                return False
    return True


def _singer_ok():
    for n in (9, 10, 23):
        ci = column_index(5, n)
        cols = [[c] for c, m in enumerate(ci.columns) if singer_filter(m)]
        if hit_space(5, n).reduce_packed_rows(pack_supports(cols, len(ci))).any():
            return False
    return True


def _wood_ok():
    return all(admissible_basis(k, n, use_wood=False).dim == 0
               for k in (1, 2, 3) for n in range(1, 21) if mu(n) > k)


def _canonical_ok():
    rng = np.random.default_rng(99)
    for _ in range(50):
        A = rng.integers(0, 2, size=(rng.integers(1, 30), 70), dtype=np.uint8)
        ref = EchelonBasis.from_rows(A, 70)
        B = A[rng.permutation(len(A))]
        # mix rows: the span is unchanged
        for _ in range(len(B)):
            i, j = rng.integers(0, len(B), 2)
            if i != j:
                B[i] ^= B[j]
        if EchelonBasis.from_rows(B, 70) != ref:
            return False
    return True


def _oracle_ok():
    return all(admissible_basis(k, n).monomial_set() == set(brute_force_admissible(k, n))
               for k in (1, 2) for n in range(11))


def test_criterion_7_property_suites(acceptance):
    checks = [("Cartan total square, 200 pairs", _cartan_ok()),
              ("instability and top square", _instability_ok()),
              ("spikes never hit", _spikes_ok()),
              ("Singer filter soundness", _singer_ok()),
              ("Wood vanishing", _wood_ok()),
              ("echelon canonical under shuffles", _canonical_ok()),
              ("brute-force oracle k<=2, n<=10", _oracle_ok())]
    acceptance(7, "property suites", checks)


def _verify_json(jobs):
    env = {k: v for k, v in os.environ.items() if k != "HITPROB_CACHE"}
    out = subprocess.run([sys.executable, "-m", "hitprob.cli", "verify-paper", "--json", "--jobs", str(jobs)],
                         capture_output=True, text=True, env=env, check=False)
    return out.returncode, out.stdout


def test_criterion_8_determinism(acceptance):
    rc1, a = _verify_json(1)
    rc2, b = _verify_json(3)
    sa = json.dumps(strip_timing(json.loads(a)), sort_keys=True)
    sb = json.dumps(strip_timing(json.loads(b)), sort_keys=True)
    checks = [("verify-paper --jobs 1 passes", rc1 == 0), ("verify-paper --jobs 3 passes", rc2 == 0),
              ("reports identical modulo timing", sa == sb)]
    acceptance(8, "verify-paper output independent of --jobs", checks)
