"""Exact coefficients: rationals, parameter sets and balanced q-integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

Scalar = Fraction
Number = Union[int, Fraction]


class ParameterError(ValueError):
    pass


class ZeroParameter(ParameterError):
    pass


class RootOfUnityViolation(ParameterError):
    pass


class DegenerateParameter(ParameterError):
    pass


def scalar(x: Number | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ParamSet:
    """Specialized parameters.

    ``lam`` is the full t x t table with ``lam[j][i] == 1 / lam[i][j]`` and
    ones on the diagonal. Indices are 0-based.
    """

    q: Fraction
    lam: tuple[tuple[Fraction, ...], ...]
    d: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.d)

    def qd(self, i: int) -> Fraction:
        return self.q ** self.d[i]

    def bracket(self, i: int) -> Fraction:
        """``q^{d_i} - q^{-d_i}``, the denominator of the E/F commutator."""
        v = self.qd(i)
        return v - 1 / v

    def inverted(self) -> "ParamSet":
        """Same q, with every lambda replaced by its inverse."""
        lam = tuple(tuple(1 / x for x in row) for row in self.lam)
        return ParamSet(self.q, lam, self.d)

    def trivial(self) -> "ParamSet":
        one = Fraction(1)
        lam = tuple(tuple(one for _ in self.d) for _ in self.d)
        return ParamSet(self.q, lam, self.d)

    def upper_family(self) -> dict[tuple[int, int], Fraction]:
        t = self.t
        return {(i, j): self.lam[i][j] for i in range(t) for j in range(i + 1, t)}


def make_params(
    q: Number,
    lambda_upper: Mapping[tuple[int, int], Number] | None,
    cartan,
) -> ParamSet:
    """Complete the lambda family and check the standing hypotheses on q.

    ``lambda_upper`` maps 0-based pairs ``(i, j)`` with ``i < j`` to nonzero
    rationals; missing pairs default to 1.
    """
    q = scalar(q)
    if q == 0:
        raise ZeroParameter("q must be invertible")
    d = tuple(cartan.d)
    t = len(d)
    for i, di in enumerate(d):
        if q ** (2 * di) == 1:
            raise RootOfUnityViolation(f"q^(2 d_{i + 1}) = 1 for q = {q}")
    table = [[Fraction(1)] * t for _ in range(t)]
    for (i, j), v in (lambda_upper or {}).items():
        v = scalar(v)
        if not (0 <= i < j < t):
            raise ParameterError(f"lambda index ({i}, {j}) must satisfy 0 <= i < j < {t}")
        if v == 0:
            raise ZeroParameter(f"lambda_{i + 1}{j + 1} must be invertible")
        table[i][j] = v
        table[j][i] = 1 / v
    return ParamSet(q, tuple(tuple(r) for r in table), d)


def _check_v(v: Fraction) -> Fraction:
    v = scalar(v)
    if v == 0 or v * v == 1:
        raise DegenerateParameter(f"balanced q-integers need v != 0 and v^2 != 1, got v = {v}")
    return v


def q_int(n: int, v: Number) -> Fraction:
    """Balanced q-integer ``(v^n - v^-n) / (v - v^-1)``."""
    v = _check_v(v)
    return (v ** n - v ** (-n)) / (v - 1 / v)


def q_factorial(n: int, v: Number) -> Fraction:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    v = _check_v(v)
    out = Fraction(1)
    for m in range(1, n + 1):
        out *= q_int(m, v)
    return out


def q_binomial(n: int, r: int, v: Number) -> Fraction:
    """Balanced Gaussian binomial ``[n]! / ([r]! [n-r]!)``."""
    if not 0 <= r <= n:
        raise ValueError(f"q_binomial needs 0 <= r <= n, got n={n}, r={r}")
    v = _check_v(v)
    den = q_factorial(r, v) * q_factorial(n - r, v)
    if den == 0:
        raise DegenerateParameter(f"vanishing q-factorial at v = {v}")
    return q_factorial(n, v) / den

