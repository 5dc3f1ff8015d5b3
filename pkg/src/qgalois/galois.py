"""The torus side: i*, truncated cotensor products, the mu map, and the
invariant separating the Galois objects A_lambda."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import AlgebraSpec, NormalWord, _acc, basis_words, group_algebra, make_algebra
from .cocycle import sigma_lambda_eval, sigma_rho, twisted_product_oracle
from .hopf import Tensor, coact_word


class CapTooSmall(ValueError):
    """The truncation leaves nothing to compute with."""


def _require_alambda(spec: AlgebraSpec) -> None:
    if spec.kind != "Alambda":
        raise ValueError(f"expected A_lambda, got {spec.kind}")


def _commutator_table(spec: AlgebraSpec) -> tuple[tuple[Fraction, ...], ...]:
    """u_ij with ``Z_i Z_j Z_i^-1 Z_j^-1 = u_ij``, read off normal forms."""
    t = spec.t
    rows = []
    for i in range(t):
        row = []
        for j in range(t):
            zi, zj = spec.torus(i), spec.torus(j)
            c = zi * zj * zi.inverse() * zj.inverse()
            if set(c.terms) - {spec.unit_word()}:
                raise ArithmeticError("torus letters do not commute up to a scalar")
            row.append(c.scalar_part())
        rows.append(tuple(row))
    return tuple(rows)


def twisted_group_algebra(spec_or_params, cartan=None) -> AlgebraSpec:
    """The lambda-quantum torus built directly from the parameters."""
    if isinstance(spec_or_params, AlgebraSpec):
        return make_algebra("Torus", spec_or_params.params, spec_or_params.cartan)
    return make_algebra("Torus", spec_or_params, cartan)


def restrict_i_star(spec: AlgebraSpec) -> AlgebraSpec:
    """Subalgebra of A_lambda generated by the Z's, as a torus presentation.

    The commutation constants are measured in A_lambda, not copied from the
    parameters.
    """
    _require_alambda(spec)
    u = _commutator_table(spec)
    t = spec.t
    one = tuple(tuple(Fraction(1) for _ in range(t)) for _ in range(t))
    return AlgebraSpec("Torus", spec.cartan, spec.params, u, one, one, tuple(() for _ in range(t)))


# -- cotensor product --------------------------------------------------------------


def _cotensor_column(A: AlgebraSpec, wa: NormalWord, wk: NormalWord) -> dict:
    """Image of ``a (x) k`` under ``a (x) delta_K(k) - delta_A(a) (x) k``."""
    col: dict = {}
    _acc(col, (wa, wk, wk), Fraction(1))
    for (x, h), c in coact_word(A, wa).terms.items():
        _acc(col, (x, h, wk), -c)
    return col


def cotensor_defect(x: Tensor) -> Tensor:
    """The defining map of the cotensor product applied to ``x`` in A (x) k[G]."""
    A, K = x.specs
    _require_alambda(A)
    H = make_algebra("U", A.params, A.cartan)
    out: dict = {}
    for (wa, wk), c in x.terms.items():
        for key, v in _cotensor_column(A, wa, wk).items():
            _acc(out, key, c * v)
    return Tensor((A, H, K), out)


def cotensor_truncated(spec: AlgebraSpec, torus_cap: int, max_letters: int = 0) -> list[Tensor]:
    """Kernel basis of the cotensor map on a finite piece of A_lambda (x) k[G].

    The piece is spanned by ``a (x) K^g`` with a an A_lambda word of at most
    ``max_letters`` X/Y letters, and all torus exponents in
    ``[-torus_cap, torus_cap]``.
    """
    _require_alambda(spec)
    if torus_cap < 0 or max_letters < 0:
        raise CapTooSmall("the capped span is empty")
    t = spec.t
    K = group_algebra(spec.params, spec.cartan)
    a_words = basis_words(t, max_letters, torus_cap)
    k_words = basis_words(t, 0, torus_cap)
    pairs = [(wa, wk) for wa in a_words for wk in k_words]
    cols = [_cotensor_column(spec, wa, wk) for wa, wk in pairs]
    return [Tensor((spec, K), {pairs[j]: c for j, c in vec.items()}) for vec in linalg.kernel(cols)]


# -- the map mu: k[G] twisted -> A (x) k[G] -------------------------------------------


def lemma1_mu_check(g: Sequence[int], h: Sequence[int], spec: AlgebraSpec) -> bool:
    """``mu(g . h) == mu(g) mu(h)`` for torus monomials g, h.

    ``mu(x) = x (x) x``; the left side uses the bicharacter product of the
    twisted group algebra, the right side multiplies in (twisted U) (x) k[G]
    with the twisted U product computed by the Sweedler oracle.
    """
    p, cartan = spec.params, spec.cartan
    U = make_algebra("U", p, cartan)
    K = group_algebra(p, cartan)
    gh = tuple(a + b for a, b in zip(g, h))
    lhs = sigma_lambda_eval(g, h, p) * Tensor.pure(U.monomial(gh), K.monomial(gh))
    left = twisted_product_oracle(U.monomial(g), U.monomial(h), sigma_rho(p))
    rhs = Tensor.pure(left, K.monomial(g) * K.monomial(h))
    return lhs == rhs


# -- the homotopy invariant ----------------------------------------------------------


@dataclass(frozen=True)
class HomotopyInvariant:
    """``commutators[i][j] = u_ij`` (measured) together with the declared lambda."""

    commutators: tuple[tuple[Fraction, ...], ...]
    family: tuple[tuple[Fraction, ...], ...]

    def u(self, i: int, j: int) -> Fraction:
        return self.commutators[i][j]

    def commutator_layer_equal(self, other: "HomotopyInvariant") -> bool:
        return self.commutators == other.commutators

    def first_difference(self, other: "HomotopyInvariant") -> tuple[str, int, int] | None:
        """First (layer, i, j) where the invariants differ, 0-based."""
        for layer in ("commutators", "family"):
            a, b = getattr(self, layer), getattr(other, layer)
            for i, (ra, rb) in enumerate(zip(a, b)):
                for j, (x, y) in enumerate(zip(ra, rb)):
                    if x != y:
                        return layer, i, j
        return None


def homotopy_invariant(spec: AlgebraSpec) -> HomotopyInvariant:
    _require_alambda(spec)
    u = _commutator_table(spec)
    t = spec.t
    for i in range(t):
        if u[i][i] != 1:
            raise ArithmeticError("diagonal commutator is not 1")
        for j in range(t):
            if u[i][j] == 0 or u[j][i] != 1 / u[i][j]:
                raise ArithmeticError("commutator table is not alternating")
    return HomotopyInvariant(u, spec.params.lam)
