"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the report lines.
"""

import random
import time
from fractions import Fraction

import pytest

from qmob import corpus
from qmob.exactmath import FieldSpec, gaussian_binomial, s_number
from qmob.finiteness import Verdict, decide_finiteness
from qmob.lattice import (enumerate_subreps, is_orthocyclic, is_poset_orthogonal, mobius_bruteforce,
                          weisner_verify)
from qmob.mobius import downward_sums, mobius_inversion_module, mobius_semisimple
from qmob.quiver import Quiver
from qmob.rep import (Representation, direct_sum, hom_dim, is_semisimple, is_thin, quotient, restrict_sinking,
                      socle)

from conftest import oracle_subreps

QQ = FieldSpec.infinite()


def report(n, label, ok, detail=""):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {label}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {n} failed: {label} {detail}"


def enumerable_corpus():
    out = []
    for name in corpus.names():
        M = corpus.load(name).representation
        if M.field.is_finite or is_thin(M):
            out.append((name, M))
    return out


def test_criterion_1_closed_form_vs_oracle():
    start = time.perf_counter()
    bad = []
    for q in (2, 3, 5):
        for t in (1, 2, 3, 4):
            M = corpus.load(corpus.simple_power_name(t, q)).representation
            mu = mobius_bruteforce(M)
            if mu != (-1) ** t * q ** (t * (t - 1) // 2):
                bad.append((q, t, mu))
    elapsed = time.perf_counter() - start
    report(1, "brute-force mu of S(1)^t equals (-1)^t q^(t(t-1)/2)", not bad and elapsed < 60,
           f"{elapsed:.1f}s, mismatches={bad}")


def test_criterion_2_counting():
    bad = []
    for q in (2, 3, 5):
        for t in (1, 2, 3, 4):
            lat = enumerate_subreps(corpus.load(corpus.simple_power_name(t, q)).representation)
            if len(lat.atoms()) != s_number(t, q) or len(lat.coatoms()) != s_number(t, q):
                bad.append((q, t, "atoms/coatoms"))
            by_len = lat.count_by_length()
            if any(by_len.get(l, 0) != gaussian_binomial(t, l, q) for l in range(t + 1)):
                bad.append((q, t, "by length"))
    report(2, "atom, coatom and per-length counts match s-numbers and Gaussian binomials", not bad, f"{bad}")


def test_criterion_3_non_semisimple_mu_zero():
    bad = []
    for name, M in enumerable_corpus():
        mu = mobius_bruteforce(M)
        if not is_semisimple(M):
            if mu != 0:
                bad.append((name, mu))
        elif M.field.is_finite and mu != mobius_semisimple(M.dims, M.field.p):
            bad.append((name, mu))
    report(3, "mu = 0 for non-semisimple corpus reps, product formula for semisimple ones", not bad, f"{bad}")


def test_criterion_4_weisner():
    bad = []
    for name, M in enumerable_corpus():
        lat = enumerate_subreps(M)
        if len(lat) == 1:
            continue
        for T in lat.atoms():
            if not weisner_verify(lat, T):
                bad.append((name, str(T)))
    report(4, "Weisner identity at every atom of every corpus lattice", not bad, f"{bad}")


def test_criterion_5_product_and_orthogonality():
    reps = {k: corpus.load(f"orth_{k}").representation for k in ("L", "M", "N", "Mprime")}
    L, M, N, Mp = reps["L"], reps["M"], reps["N"], reps["Mprime"]
    results = {}
    ok_lm, _ = is_poset_orthogonal(L, M)
    results["L,M poset-orthogonal"] = ok_lm
    size = len(enumerate_subreps(direct_sum(L, M)))
    prod = len(enumerate_subreps(L)) * len(enumerate_subreps(M))
    results[f"|L(L+M)| = {size} equals 9 = {prod}"] = size == prod == 9
    results["mu(L+M) = mu(L) mu(M)"] = mobius_bruteforce(direct_sum(L, M)) == mobius_bruteforce(L) * mobius_bruteforce(M)
    ok_mn, witness = is_poset_orthogonal(M, N)
    results["M,N not poset-orthogonal with witness"] = (not ok_mn) and witness is not None
    results["hom_dim(M',N) = 1"] = hom_dim(Mp, N) == 1
    results["M,N not orthocyclic"] = not is_orthocyclic(M, N)
    failed = [k for k, v in results.items() if not v]
    report(5, "product rule and orthogonality on the L, M, N examples", not failed, f"failed: {failed}")


def test_criterion_6_example_a3():
    M = corpus.load("a3_example").representation
    soc = socle(M)
    quot, _ = quotient(M, soc)
    w_quot, _ = quotient(M, restrict_sinking(M, {2, 3, 4}))
    verdict = decide_finiteness(M, enumerate_thin=False)
    size = len(enumerate_subreps(corpus.load("a3_example_f2").representation))
    oracle = len(oracle_subreps(corpus.load("a3_example_f2").representation))
    checks = {
        "socle [0,1,1,1]": list(soc.dims) == [0, 1, 1, 1],
        "M/Soc M [2,1,1,0]": list(quot.dims) == [2, 1, 1, 0],
        "witness quotient [2,0,0,0]": list(w_quot.dims) == [2, 0, 0, 0],
        "verdict Infinite": verdict.verdict is Verdict.Infinite,
        f"F_2 lattice size {size} = oracle {oracle} = 42": size == oracle == 42,
    }
    failed = [k for k, v in checks.items() if not v]
    report(6, "worked A3 example end to end", not failed, f"failed: {failed}")


def test_criterion_7_counterexample():
    bad = []
    for p in (2, 3):
        M = corpus.load("counterex_f2").representation.with_field(FieldSpec(p))
        lat = enumerate_subreps(M)
        chain = all(lat.poset.leq(i, j) or lat.poset.leq(j, i) for i in range(len(lat)) for j in range(len(lat)))
        if len(lat) != 4 or not chain:
            bad.append((p, "not a 4-chain"))
        if any(list(U.dims) == [1, 0] for U in lat):
            bad.append((p, "has [1,0]"))
        if lat.mobius() != 0:
            bad.append((p, "mu"))
    report(7, "corrected counterexample is a 4-chain with mu = 0 and no [1,0]", not bad, f"{bad}")


def random_acyclic_quiver(rng, n):
    order = list(range(1, n + 1))
    rng.shuffle(order)
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(rng.choice((0, 0, 1, 1, 2))):
                arrows.append((f"a{len(arrows)}", order[i], order[j]))
    return Quiver(n, arrows)


def random_rep(rng, thin):
    n = rng.randint(1, 5)
    Q = random_acyclic_quiver(rng, n)
    if thin:
        dims = [rng.randint(0, 1) for _ in range(n)]
    else:
        dims = [rng.randint(0, 3) for _ in range(n)]
        dims[rng.randrange(n)] = rng.randint(2, 3)
    maps = {a.name: [[Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(dims[a.source - 1])]
                     for _ in range(dims[a.target - 1])] for a in Q.arrows}
    return Representation(QQ, Q, dims, maps)


def test_criterion_8_thin_iff_finite():
    rng = random.Random(20240917)
    start = time.perf_counter()
    bad = []
    for i in range(50):
        M = random_rep(rng, thin=True)
        v = decide_finiteness(M)
        if v.verdict is not Verdict.Finite or v.lattice is None or len(v.lattice) < 1:
            bad.append(("thin", i))
    for i in range(50):
        M = random_rep(rng, thin=False)
        v = decide_finiteness(M)
        if v.verdict is not Verdict.Infinite or v.witness.socle_dim < 2:
            bad.append(("non-thin", i))
    elapsed = time.perf_counter() - start
    report(8, "thin reps are Finite, non-thin reps are Infinite with a witness", not bad and elapsed < 60,
           f"{elapsed:.1f}s, bad={bad}")


def test_criterion_9_inversion_round_trip():
    rng = random.Random(7)
    bad = []
    for name, M in enumerable_corpus():
        lat = enumerate_subreps(M)
        f = {U.key(): Fraction(rng.randint(-9, 9)) for U in lat}
        g = downward_sums(lat, f)
        expected = f[lat.elements[lat.top].key()]
        full = mobius_inversion_module(M, g, over="full")
        rad = mobius_inversion_module(M, g, over="radical")
        if not full == rad == expected:
            bad.append((name, expected, full, rad))
    report(9, "Möbius inversion recovers f(M) over the full lattice and over [rad M, M]", not bad, f"{bad}")
