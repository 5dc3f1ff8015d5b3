import random
from fractions import Fraction as Fr

import pytest

from qgalois import NormalWord, preset
from qgalois.algebra import group_algebra
from qgalois.checks import (
    Setting,
    _random_in_domain_pair,
    check_cocycle,
    check_ms_twist,
    check_rho_inverse_random,
    check_sigma_rho_table,
    random_params,
    random_word,
)
from qgalois.cocycle import (
    Bicharacter,
    CounitForm,
    OutsideDomain,
    TabulatedForm,
    cocycle_condition_check,
    convolution_inverse,
    convolve,
    generators,
    inverse_table,
    normalization_check,
    raw_coproduct,
    rho,
    rho_eval,
    rho_inverse,
    sigma_lambda_eval,
    sigma_rho,
    sigma_rho_eval,
    sigma_tilde,
    sigma_tilde_eval,
    twisted_product_oracle,
)

E1, E2, F1, F2 = ("U", 0), ("U", 1), ("L", 0), ("L", 1)
K1, K2, K1i = ("T", 0, 1), ("T", 1, 1), ("T", 0, -1)


def test_sigma_lambda(a2):
    p = a2.params
    assert sigma_lambda_eval((1, 0), (0, 1), p) == 3
    assert sigma_lambda_eval((0, 1), (1, 0), p) == Fr(1, 3)
    assert sigma_lambda_eval((0, 0), (4, -2), p) == 1
    assert sigma_lambda_eval((4, -2), (0, 0), p) == 1
    assert sigma_lambda_eval((2, 0), (0, 1), p) == 9


def test_sigma_tilde(a2, U):
    p = a2.params
    assert sigma_tilde_eval(U.upper(0), U.lower(0), p) == 0
    assert sigma_tilde_eval(U.torus(0), U.torus(1), p) == 3
    assert sigma_tilde_eval(U.torus(0) + U.upper(0), U.torus(1), p) == 3


def test_rho_values(a2, U):
    p = a2.params
    assert rho_eval((E1,), (F1,), p) == Fr(-2, 3)
    assert rho_eval((F1,), (E1,), p) == 0
    assert rho_eval((E1,), (F2,), p) == 0
    assert rho_eval((K1, K2), (K1,), p) == 1
    assert rho_eval(U.upper(0), U.lower(0), p) == Fr(-2, 3)


def test_rho_inverse_table_is_derived(a2):
    p = a2.params
    solved = rho_inverse(p).table
    # frozen from solving the generator equations: +1/(q^d - q^-d) on (E_i, F_i), 1 on torus pairs
    expected = {}
    for i in range(2):
        expected[(("U", i), ("L", i))] = 1 / p.bracket(i)
        for j in range(2):
            for e in (1, -1):
                for f in (1, -1):
                    expected[(("T", i, e), ("T", j, f))] = Fr(1)
    assert solved == expected
    assert rho_inverse(p).value((E1,), (F1,)) == Fr(2, 3)


def test_bicharacter_inverse(a2):
    p = a2.params
    s = sigma_tilde(p)
    inv = convolution_inverse(s)
    assert isinstance(inv, Bicharacter)
    assert convolve(s, inv).value((K1,), (K2,)) == 1
    assert convolve(s, inv).value((K1, K1), (K2, K1i)) == 1


def test_convolution_inverse_of_table_matches_rho_inverse(a2):
    p = a2.params
    assert convolution_inverse(rho(p)).table == rho_inverse(p).table
    assert convolution_inverse(CounitForm()).value((K1,), (E1,)) == 0
    with pytest.raises(NotImplementedError):
        convolution_inverse(convolve(rho(p), rho(p)))


def test_counit_is_convolution_unit(a2):
    rng = random.Random(4)
    p = a2.params
    for f in (rho(p), sigma_rho(p), rho_inverse(p)):
        left, right = convolve(f, CounitForm()), convolve(CounitForm(), f)
        for _ in range(100):
            x, y = _random_in_domain_pair(rng, 2, 3)
            v = f(x, y)
            assert left(x, y) == v == right(x, y)


def test_sigma_rho_values(a2):
    p = a2.params
    assert sigma_rho_eval((E1,), (F1,), p) == Fr(2, 3)
    assert sigma_rho_eval((K1,), (K2,), p) == 3
    assert sigma_rho_eval((K1, K2), (K2,), p) == 3
    assert sigma_rho_eval((F1,), (E1,), p) == 0
    assert sigma_rho_eval((), (K1, E1), p) == 0
    assert sigma_rho_eval((), (K1, K2), p) == 1


def test_outside_domain(a2, U):
    p = a2.params
    with pytest.raises(OutsideDomain):
        rho_eval((E1, E2), (F1,), p)
    with pytest.raises(OutsideDomain):
        rho_eval((E1, F1), (K1,), p)
    with pytest.raises(OutsideDomain):
        sigma_rho_eval((K1,), (F1, E2), p)
    with pytest.raises(OutsideDomain):
        twisted_product_oracle(U.upper(0) * U.upper(1), U.lower(0), sigma_rho(p))
    # the bicharacter is total
    assert sigma_tilde_eval(U.upper(0) * U.lower(0), U.upper(1), p) == 0


def test_stated_patterns_are_evaluable(a2):
    p = a2.params
    r = rho(p)
    assert r.value((F1, F2), (E1, E2)) is not None
    assert r.value((E1, K1), (E2, E1)) is not None
    assert r.value((F1, K2), (F2, F1)) is not None


def test_raw_coproduct():
    assert raw_coproduct((E1,)) == (((E1,), ()), ((K1,), (E1,)))
    assert raw_coproduct((F1,)) == (((F1,), (K1i,)), ((), (F1,)))
    assert len(raw_coproduct((E1, F2, K1))) == 4


def test_oracle_commutator(a2, U):
    sr = sigma_rho(a2.params)
    e, f = U.upper(0), U.lower(0)
    com = twisted_product_oracle(e, f, sr) - twisted_product_oracle(f, e, sr)
    assert com == Fr(2, 3) * U.torus(0)
    com12 = twisted_product_oracle(e, U.lower(1), sr) - twisted_product_oracle(U.lower(1), e, sr)
    assert not com12


def test_oracle_e_e(a2, U):
    sr = sigma_rho(a2.params)
    assert twisted_product_oracle(U.upper(0), U.upper(1), sr) == 3 * (U.upper(0) * U.upper(1))
    assert twisted_product_oracle(U.upper(1), U.upper(0), sr) == Fr(1, 3) * (U.upper(1) * U.upper(0))
    assert twisted_product_oracle(U.lower(0), U.lower(1), sr) == U.lower(0) * U.lower(1)


def test_two_sided_rho_twist_gives_u_relation(a2, grU):
    r = rho(a2.params)
    for i in range(2):
        for j in range(2):
            e, f = grU.upper(i), grU.lower(j)
            com = twisted_product_oracle(e, f, r, "two-sided") - twisted_product_oracle(f, e, r, "two-sided")
            want = (grU.torus(i) - grU.torus(i, -1)) * (1 / a2.params.bracket(i)) if i == j else grU.zero()
            assert com == want


def test_trivial_twists_are_plain_products(U):
    x, y = U.upper(0) * U.torus(1), U.lower(1) * U.upper(0)
    eps = CounitForm()
    assert twisted_product_oracle(x, y, eps) == x * y
    assert twisted_product_oracle(x, y, eps, "right") == x * y
    assert twisted_product_oracle(x, y, eps, "two-sided") == x * y
    with pytest.raises(ValueError):
        twisted_product_oracle(x, y, eps, "middle")


def test_right_and_left_twists_on_torus(a2, U):
    s = sigma_tilde(a2.params)
    k1, k2 = U.torus(0), U.torus(1)
    assert twisted_product_oracle(k1, k2, s) == 3 * (k1 * k2)
    assert twisted_product_oracle(k1, k2, s, "right") == 3 * (k1 * k2)
    assert twisted_product_oracle(k1, k2, s, "two-sided") == k1 * k2


def test_cocycle_condition_examples(a2, grU):
    p = a2.params
    kG = group_algebra(p, a2.cartan)
    f = sigma_tilde(p)
    k1, k2 = NormalWord((), (), (1, 0)), NormalWord((), (), (0, 1))
    k12 = NormalWord((), (), (1, 1))
    assert cocycle_condition_check(f, k1, k2, k12, kG)
    rng = random.Random(9)
    for _ in range(50):
        x = random_word(rng, 2, 3)
        assert normalization_check(f, x, grU)


def test_rho_normalization_in_domain(a2, grU):
    rng = random.Random(10)
    r = rho(a2.params)
    for _ in range(50):
        x = random_word(rng, 2, 3, rng.choice(("LT", "UT")))
        assert normalization_check(r, x, grU)


def test_sigma_rho_in_domain_equals_bicharacter(a2):
    """Away from the single pair (E_i, F_i) the two forms agree on their common domain."""
    rng = random.Random(12)
    p = a2.params
    sr, st = sigma_rho(p), sigma_tilde(p)
    for _ in range(100):
        x, y = _random_in_domain_pair(rng, 2, 3)
        assert sr(x, y) == st(x, y)


@pytest.mark.parametrize("seed", range(3))
def test_suites(seed):
    rng = random.Random(seed)
    c = preset("A", 2) if seed != 2 else preset("B", 2)
    s = Setting(c, random_params(rng, c))
    for res in (
        check_sigma_rho_table(s),
        check_cocycle(s, rng, triples=150, norms=40),
        check_rho_inverse_random(s, rng, 50),
        check_ms_twist(s),
    ):
        assert res.ok, res.failure


def test_inverse_table_of_sigma_rho_is_consistent(a2):
    p = a2.params
    sr = sigma_rho(p)
    inv = TabulatedForm("sr^-1", inverse_table(sr, 2), 2)
    conv = convolve(sr, inv)
    for a in generators(2):
        for b in generators(2):
            assert conv.value((a,), (b,)) == CounitForm().value((a,), (b,))


def test_functional_accepts_words_and_elements(a2, U):
    r = rho(a2.params)
    w_e, w_f = NormalWord((), (0,), (0, 0)), NormalWord((0,), (), (0, 0))
    assert r(w_e, w_f) == r((E1,), (F1,)) == r(U.upper(0), U.lower(0))
    assert r(2 * U.upper(0), U.lower(0) + U.lower(1)) == Fr(-4, 3)
