"""Cartan data: validation and the standard presets."""

from __future__ import annotations

from dataclasses import dataclass


class UnsupportedRank(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(tuple(int(x) for x in row) for row in self.a))
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))

    @property
    def t(self) -> int:
        return len(self.d)


@dataclass(frozen=True)
class CartanReport:
    ok: bool
    index: tuple[int, ...] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(datum: CartanDatum) -> CartanReport:
    """Check shape, diagonal, sign pattern, symmetrizers and symmetrizability.

    Reports the first violation found; indices in the report are 1-based.
    """
    a, d = datum.a, datum.d
    t = len(d)
    if t == 0:
        return CartanReport(False, None, "empty Cartan datum")
    if len(a) != t or any(len(row) != t for row in a):
        return CartanReport(False, None, f"matrix must be {t}x{t}")
    for i in range(t):
        if d[i] not in (1, 2, 3):
            return CartanReport(False, (i + 1,), f"d_{i + 1} = {d[i]} not in {{1,2,3}}")
    for i in range(t):
        if a[i][i] != 2:
            return CartanReport(False, (i + 1, i + 1), f"a_{i + 1}{i + 1} = {a[i][i]} != 2")
    for i in range(t):
        for j in range(t):
            if i != j and a[i][j] > 0:
                return CartanReport(False, (i + 1, j + 1), f"a_{i + 1}{j + 1} = {a[i][j]} > 0")
    for i in range(t):
        for j in range(i + 1, t):
            if d[i] * a[i][j] != d[j] * a[j][i]:
                return CartanReport(
                    False,
                    (i + 1, j + 1),
                    f"d_{i + 1} a_{i + 1}{j + 1} = {d[i]}*({a[i][j]}) != "
                    f"d_{j + 1} a_{j + 1}{i + 1} = {d[j]}*({a[j][i]})",
                )
    return CartanReport(True)


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "G": 2}


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def preset(family: str, rank: int | None = None) -> CartanDatum:
    """Standard Cartan matrix and minimal symmetrizers.

    Convention: ``a_ij = 2 (a_i, a_j) / (a_i, a_i)`` and ``d_i = (a_i, a_i) / 2``
    so that ``d_i a_ij`` is symmetric.
    """
    fam = family.strip().upper()
    if fam == "G2":
        fam, rank = "G", 2 if rank is None else rank
    if fam not in _MIN_RANK:
        raise ValueError(f"unknown Cartan family {family!r}")
    if rank is None or rank < _MIN_RANK[fam] or (fam == "G" and rank != 2):
        raise UnsupportedRank(f"{family} does not exist in rank {rank}")
    n = rank
    if fam == "G":
        return CartanDatum(((2, -1), (-3, 2)), (3, 1))
    a = _chain(n)
    if fam == "A":
        d = [1] * n
    elif fam == "B":
        # last simple root short
        a[n - 1][n - 2] = -2
        d = [2] * (n - 1) + [1]
    elif fam == "C":
        # last simple root long
        a[n - 2][n - 1] = -2
        d = [1] * (n - 1) + [2]
    else:
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        d = [1] * n
    return CartanDatum(tuple(map(tuple, a)), tuple(d))
