import random
from fractions import Fraction as Fr

import pytest

from qgalois import (
    CapTooSmall,
    NormalWord,
    Tensor,
    cotensor_truncated,
    homotopy_invariant,
    lemma1_mu_check,
    make_algebra,
    make_params,
    phi_lambda,
    preset,
    psi,
    restrict_i_star,
)
from qgalois.algebra import group_algebra
from qgalois.checks import Setting, check_classification, check_lemma1
from qgalois.galois import cotensor_defect, twisted_group_algebra


def alambda(fam, rank, q=2, lam=None):
    c = preset(fam, rank)
    return make_algebra("Alambda", make_params(q, lam or {}, c), c)


def test_restriction_a2(A):
    T = restrict_i_star(A)
    assert T.kind == "Torus"
    assert T.tt[0][1] == 9 and T.tt[1][0] == Fr(1, 9)
    assert T.torus(0) * T.torus(1) == 9 * (T.torus(1) * T.torus(0))
    assert T == twisted_group_algebra(A)


def test_restriction_trivial_lambda():
    T = restrict_i_star(alambda("A", 2))
    assert T.torus(0) * T.torus(1) == T.torus(1) * T.torus(0)


def test_restriction_rank_one():
    T = restrict_i_star(alambda("A", 1))
    assert T.t == 1 and T.tt == ((1,),)


def test_restriction_requires_alambda(U):
    with pytest.raises(ValueError):
        restrict_i_star(U)


def test_cotensor_torus_only_basis(A):
    basis = cotensor_truncated(A, 1)
    assert len(basis) == 9
    gammas = set()
    for b in basis:
        ((wa, wk), c), = b.terms.items()
        assert wa.torus == wk.torus and not wa.lower and not wa.upper
        gammas.add(wa.torus)
    assert len(gammas) == 9


def test_cotensor_membership(A):
    kG = group_algebra(A.params, A.cartan)
    assert cotensor_defect(Tensor.pure(A.torus(0), kG.torus(1)))
    assert not cotensor_defect(Tensor.pure(A.one(), kG.one()))
    assert not cotensor_defect(Tensor.pure(A.torus(0) * A.torus(1, -1), kG.torus(0) * kG.torus(1, -1)))
    assert cotensor_defect(Tensor.pure(A.upper(0), kG.one()))


@pytest.mark.parametrize("rank", [1, 2])
@pytest.mark.parametrize("n", [1, 2])
def test_cotensor_dimension(rank, n):
    A = alambda("A", rank, 3, {(0, 1): Fr(-2, 5)} if rank == 2 else None)
    assert len(cotensor_truncated(A, n)) == (2 * n + 1) ** rank


def test_cotensor_letters_do_not_contribute(A):
    assert len(cotensor_truncated(A, 1, max_letters=1)) == 9


def test_cap_too_small(A):
    with pytest.raises(CapTooSmall):
        cotensor_truncated(A, -1)


def test_lemma1_examples(A):
    assert lemma1_mu_check((1, 0), (0, 1), A)
    assert lemma1_mu_check((0, 0), (2, -3), A)
    rng = random.Random(0)
    for _ in range(200):
        g = (rng.randint(-3, 3), rng.randint(-3, 3))
        h = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert lemma1_mu_check(g, h, A)


def test_invariant_values(A):
    inv = homotopy_invariant(A)
    assert inv.u(0, 1) == 9 and inv.u(1, 0) == Fr(1, 9)
    assert inv.u(0, 0) == 1
    assert inv.family[0][1] == 3
    trivial = homotopy_invariant(alambda("A", 2))
    assert all(x == 1 for row in trivial.commutators for x in row)


def test_invariant_separation():
    h3 = homotopy_invariant(alambda("A", 2, 2, {(0, 1): 3}))
    h5 = homotopy_invariant(alambda("A", 2, 2, {(0, 1): 5}))
    hm3 = homotopy_invariant(alambda("A", 2, 2, {(0, 1): -3}))
    assert h3 != h5
    assert not h3.commutator_layer_equal(h5)
    assert h3.first_difference(h5) == ("commutators", 0, 1)
    # lambda and -lambda share the commutator layer; only the declared family tells them apart
    assert h3.commutator_layer_equal(hm3)
    assert h3 != hm3
    assert h3.first_difference(hm3) == ("family", 0, 1)
    assert h3 == homotopy_invariant(alambda("A", 2, 2, {(0, 1): 3}))
    assert h3.first_difference(h3) is None


def test_invariant_survives_phi_psi(A):
    back = psi(phi_lambda(A.upper(0)))
    assert homotopy_invariant(back.spec) == homotopy_invariant(A)


def test_invariant_requires_alambda(U):
    with pytest.raises(ValueError):
        homotopy_invariant(U)


def test_suites(a2):
    for res in (check_lemma1(a2, random.Random(3), pairs=50), check_classification(a2, random.Random(4))):
        assert res.ok, res.failure


def test_classification_rank_three():
    c = preset("A", 3)
    s = Setting(c, make_params(2, {(0, 1): 2, (1, 2): 3}, c))
    res = check_classification(s, random.Random(8), pairs=20)
    assert res.ok, res.failure


def test_normal_word_unit():
    assert NormalWord.unit(3).is_unit()
