import random
from fractions import Fraction as Fr

import pytest
import sympy

from qgalois import linalg


def random_columns(rng, rows, cols, density=0.5):
    out = []
    for _ in range(cols):
        col = {}
        for r in range(rows):
            if rng.random() < density:
                col[r] = Fr(rng.randint(-3, 3), rng.randint(1, 3))
        out.append(col)
    return out


def to_sympy(columns, rows):
    return sympy.Matrix(rows, len(columns), lambda r, c: sympy.Rational(columns[c].get(r, 0)))


@pytest.mark.parametrize("seed", range(25))
def test_kernel_against_sympy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 6), rng.randint(1, 8)
    columns = random_columns(rng, rows, cols)
    ker = linalg.kernel(columns)
    m = to_sympy(columns, rows)
    assert len(ker) == len(m.nullspace())
    assert linalg.rank(columns) == m.rank()
    for vec in ker:
        v = sympy.Matrix([sympy.Rational(vec.get(j, 0)) for j in range(cols)])
        assert m * v == sympy.zeros(rows, 1)


def test_kernel_hashable_row_keys():
    cols = [{"a": 1, "b": 1}, {"a": 2, "b": 2}, {"c": 1}]
    ker = linalg.kernel(cols)
    assert len(ker) == 1
    assert ker[0] == {1: 1, 0: -2}


def test_solve():
    sol = linalg.solve([({"x": 1, "y": 1}, 3), ({"x": 1, "y": -1}, 1)], ["x", "y"])
    assert sol == {"x": 2, "y": 1}


def test_solve_errors():
    with pytest.raises(ValueError, match="inconsistent"):
        linalg.solve([({"x": 1}, 1), ({"x": 1}, 2)], ["x"])
    with pytest.raises(ValueError, match="underdetermined"):
        linalg.solve([({"x": 1, "y": 1}, 1)], ["x", "y"])
