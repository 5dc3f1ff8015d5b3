"""The ten acceptance criteria; each prints one PASS/FAIL line."""

import random
import time

import pytest

from qgalois import make_params, preset
from qgalois.checks import (
    Setting,
    check_classification,
    check_cocycle,
    check_comodule,
    check_exponent_law,
    check_hopf,
    check_hygiene,
    check_lemma1,
    check_oracle,
    check_serre_transport,
    check_sigma_rho_table,
    random_params,
)

pytestmark = pytest.mark.acceptance


def report(number, title, results, elapsed, limit=None):
    ok = all(r.ok for r in results) and (limit is None or elapsed < limit)
    cases = sum(r.cases for r in results)
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {cases} exact checks in {elapsed:.2f}s"
    failures = [r.failure for r in results if not r.ok]
    if failures:
        line += f"; first counterexample: {failures[0]}"
    if limit is not None and elapsed >= limit:
        line += f"; over the {limit}s budget"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def a2():
    c = preset("A", 2)
    return Setting(c, make_params(2, {(0, 1): 3}, c))


def test_criterion_01_serre_transport():
    t0 = time.perf_counter()
    rng = random.Random(101)
    results = []
    for fam in ("A2", "B2", "G2"):
        c = preset(fam[0], 2)
        for _ in range(3):
            results.append(check_serre_transport(Setting(c, random_params(rng, c))))
    report(1, "Serre transport on A2, B2, G2", results, time.perf_counter() - t0, limit=10)


def test_criterion_02_exponent_law(a2):
    t0 = time.perf_counter()
    results = [check_exponent_law(a2, top=3)]
    report(2, "E-letter exponent law, a,b,c <= 3", results, time.perf_counter() - t0)


def test_criterion_03_sigma_rho_table():
    t0 = time.perf_counter()
    rng = random.Random(303)
    c = preset("A", 2)
    results = [check_sigma_rho_table(Setting(c, random_params(rng, c))) for _ in range(5)]
    report(3, "sigma~ * rho^-1 reproduces the sigma_rho table", results, time.perf_counter() - t0)


def test_criterion_04_cocycle(a2):
    t0 = time.perf_counter()
    results = [check_cocycle(a2, random.Random(404), triples=500, norms=100)]
    report(4, "sigma~_lambda cocycle and normalization", results, time.perf_counter() - t0)


def test_criterion_05_hopf(a2):
    t0 = time.perf_counter()
    results = [check_hopf(a2, random.Random(505), max_len=3, pairs=200)]
    report(5, "Hopf axioms of U", results, time.perf_counter() - t0, limit=30)


def test_criterion_06_comodule(a2):
    t0 = time.perf_counter()
    results = [check_comodule(a2, random.Random(606), words=100)]
    report(6, "A_lambda comodule algebra, covariants, phi colinear", results, time.perf_counter() - t0)


def test_criterion_07_oracle(a2):
    t0 = time.perf_counter()
    results = [check_oracle(a2, random.Random(707), pairs=300)]
    report(7, "Sweedler oracle vs A_lambda products, rho-twist of gr U", results, time.perf_counter() - t0)


def test_criterion_08_lemma1(a2):
    t0 = time.perf_counter()
    results = [check_lemma1(a2, random.Random(808), pairs=200, ranks=(1, 2), caps=(1, 2))]
    report(8, "mu multiplicative, cotensor dimensions (2n+1)^t", results, time.perf_counter() - t0)


def test_criterion_09_classification(a2):
    t0 = time.perf_counter()
    results = [check_classification(a2, random.Random(909), pairs=50)]
    report(9, "homotopy invariant separates lambda^2 families", results, time.perf_counter() - t0)


def test_criterion_10_hygiene(a2):
    t0 = time.perf_counter()
    results = [check_hygiene(a2, random.Random(1010), nf_cases=500, triples=300, prints=500)]
    report(10, "normal form, associativity, confluence, parser round trip", results, time.perf_counter() - t0, limit=120)
