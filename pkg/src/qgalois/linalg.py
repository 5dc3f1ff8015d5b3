"""Exact kernels of sparse linear maps over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

Vector = Mapping[Hashable, Fraction]


def kernel(columns: Sequence[Vector]) -> list[dict[int, Fraction]]:
    """Basis of ``{c : sum_j c_j columns[j] = 0}``.

    Each column is a sparse vector (row key -> coefficient). Returned kernel
    vectors are sparse maps column index -> coefficient, normalized so that
    the coefficient of their defining free column is 1.
    """
    # pivots: row key -> (reduced vector, combination of original columns)
    pivots: dict[Hashable, tuple[dict, dict[int, Fraction]]] = {}
    order: list[Hashable] = []
    basis = []
    for j, col in enumerate(columns):
        vec = {k: Fraction(v) for k, v in col.items() if v}
        combo = {j: Fraction(1)}
        for key in order:
            c = vec.get(key)
            if not c:
                continue
            pvec, pcombo = pivots[key]
            f = c / pvec[key]
            for k, v in pvec.items():
                nv = vec.get(k, 0) - f * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in pcombo.items():
                nv = combo.get(k, 0) - f * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        if vec:
            key = next(iter(vec))
            pivots[key] = (vec, combo)
            order.append(key)
        else:
            basis.append(combo)
    return basis


def rank(columns: Sequence[Vector]) -> int:
    return len(columns) - len(kernel(columns))


def solve(equations: Sequence[tuple[Vector, Fraction]], unknowns: Sequence[Hashable]) -> dict:
    """Unique solution of ``sum_u eq[u] x_u = rhs`` for every equation.

    Raises ValueError if the system is inconsistent or underdetermined.
    """
    index = {u: n for n, u in enumerate(unknowns)}
    rhs_col = len(unknowns)
    # columns of the augmented matrix, rows are equation numbers
    cols: list[dict[int, Fraction]] = [dict() for _ in range(rhs_col + 1)]
    for r, (eq, rhs) in enumerate(equations):
        for u, c in eq.items():
            if c:
                cols[index[u]][r] = cols[index[u]].get(r, 0) + Fraction(c)
        if rhs:
            cols[rhs_col][r] = -Fraction(rhs)
    ker = kernel(cols)
    if not any(rhs_col in v for v in ker):
        raise ValueError("inconsistent system")
    if len(ker) != 1:
        raise ValueError("underdetermined system")
    sol = ker[0]
    scale = sol[rhs_col]
    return {u: sol.get(index[u], Fraction(0)) / scale for u in unknowns}
