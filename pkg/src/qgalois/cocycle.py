"""Bilinear forms on U / gr U / k[G]: the bicharacter, the Kassel-Schneider
cocycle rho, their convolution, and first-principles twisted products.

Forms are evaluated on raw letter sequences (``("U", i)`` = E_i,
``("L", i)`` = F_i, ``("T", i, e)`` = K_i^e).  Forms given by a table on
generator pairs are extended by peeling letters off with

    f(x, yz) = f(x_(1), y) f(x_(2), z)
    f(xy, z) = f(x, z_(2)) f(y, z_(1))

which is only licensed when both arguments lie in the upper subalgebra,
both in the lower one, or the left one is lower and the right one upper.
Anything else raises :class:`OutsideDomain`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from . import linalg
from .algebra import AlgebraSpec, Element, NormalWord, _acc
from .coeffs import ParamSet
from .hopf import comultiply


class OutsideDomain(ValueError):
    """The expansion rules of a form do not cover this argument pattern."""


Word = tuple


@lru_cache(maxsize=None)
def raw_coproduct(word: Word) -> tuple[tuple[Word, Word], ...]:
    """Sweedler legs of a letter sequence; every coefficient is 1."""
    if not word:
        return (((), ()),)
    a = word[0]
    if a[0] == "U":
        legs = (((a,), ()), ((("T", a[1], 1),), (a,)))
    elif a[0] == "L":
        legs = (((a,), (("T", a[1], -1),)), ((), (a,)))
    else:
        legs = (((a,), (a,)),)
    rest = raw_coproduct(word[1:])
    return tuple((l1 + r1, l2 + r2) for l1, l2 in legs for r1, r2 in rest)


def raw_counit(word: Word) -> int:
    return int(all(a[0] == "T" for a in word))


def _as_words(x) -> list[tuple[Word, Fraction]]:
    if isinstance(x, Element):
        return [(w.letters(), c) for w, c in x.terms.items()]
    if isinstance(x, NormalWord):
        return [(x.letters(), Fraction(1))]
    return [(tuple(x), Fraction(1))]


def generators(t: int) -> list[tuple]:
    out = []
    for i in range(t):
        out += [("U", i), ("L", i), ("T", i, 1), ("T", i, -1)]
    return out


def in_split_domain(x: Word, y: Word) -> bool:
    fx = {a[0] for a in x}
    fy = {a[0] for a in y}
    if "L" in fx and "U" in fx:
        return False
    if "L" in fy and "U" in fy:
        return False
    return not ("U" in fx and "L" in fy)


class Functional:
    """A bilinear form; ``f(x, y)`` accepts elements, normal words or letter sequences."""

    name = "form"
    domain = "total"

    def value(self, x: Word, y: Word) -> Fraction:
        raise NotImplementedError

    def __call__(self, x, y) -> Fraction:
        total = Fraction(0)
        for wx, cx in _as_words(x):
            for wy, cy in _as_words(y):
                v = self.value(wx, wy)
                if v:
                    total += cx * cy * v
        return total

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class CounitForm(Functional):
    """epsilon (x) epsilon, the unit for convolution."""

    name = "eps.eps"

    def value(self, x, y):
        return Fraction(raw_counit(x) * raw_counit(y))


class Bicharacter(Functional):
    """``(x, y) -> sigma_lambda(pi x, pi y)``; pi kills every E and F.

    On the group algebra this is sigma_lambda itself; on gr U it is its
    pullback.  Defined everywhere.
    """

    def __init__(self, params: ParamSet, name: str = "sigma~_lambda"):
        self.params = params
        self.name = name

    def value(self, x, y):
        if any(a[0] != "T" for a in x) or any(a[0] != "T" for a in y):
            return Fraction(0)
        t = self.params.t
        g, h = [0] * t, [0] * t
        for a in x:
            g[a[1]] += a[2]
        for a in y:
            h[a[1]] += a[2]
        return sigma_lambda_eval(g, h, self.params)


class TabulatedForm(Functional):
    """Generator-pair table extended by the peeling rules, on the split domain."""

    domain = "split"

    def __init__(self, name: str, table: Mapping[tuple, Fraction], t: int):
        self.name = name
        self.table = {k: Fraction(v) for k, v in table.items() if v}
        self.t = t
        self._memo: dict = {}

    def value(self, x, y):
        if not x:
            return Fraction(raw_counit(y))
        if not y:
            return Fraction(raw_counit(x))
        key = (x, y)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if len(x) == 1 and len(y) == 1:
            out = self.table.get((x[0], y[0]), Fraction(0))
        elif not in_split_domain(x, y):
            raise OutsideDomain(f"{self.name} has no expansion rule for {_fmt(x)} , {_fmt(y)}")
        elif len(y) >= 2:
            head, tail = y[:1], y[1:]
            out = Fraction(0)
            for x1, x2 in raw_coproduct(x):
                a = self.value(x1, head)
                if a:
                    out += a * self.value(x2, tail)
        else:
            head, tail = x[:1], x[1:]
            out = Fraction(0)
            for y1, y2 in raw_coproduct(y):
                a = self.value(head, y2)
                if a:
                    out += a * self.value(tail, y1)
        self._memo[key] = out
        return out


class Convolution(Functional):
    """``(f * g)(x, y) = sum f(x_(1), y_(1)) g(x_(2), y_(2))``."""

    def __init__(self, f: Functional, g: Functional):
        self.f, self.g = f, g
        self.name = f"{f.name} * {g.name}"
        self._memo: dict = {}

    def value(self, x, y):
        key = (x, y)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = Fraction(0)
        for x1, x2 in raw_coproduct(x):
            for y1, y2 in raw_coproduct(y):
                a = self.f.value(x1, y1)
                if a:
                    out += a * self.g.value(x2, y2)
        self._memo[key] = out
        return out


def _fmt(w: Word) -> str:
    names = {"U": "E", "L": "F", "T": "K"}
    parts = []
    for a in w:
        s = f"{names[a[0]]}{a[1] + 1}"
        if a[0] == "T" and a[2] < 0:
            s += "^-1"
        parts.append(s)
    return " ".join(parts) or "1"


# -- the specific forms ---------------------------------------------------------


def sigma_lambda_eval(g: Sequence[int], h: Sequence[int], params: ParamSet) -> Fraction:
    """``sigma_lambda(K^g, K^h) = prod_ij lambda_ij^(g_i h_j)``."""
    s = Fraction(1)
    lam = params.lam
    for i, gi in enumerate(g):
        if not gi:
            continue
        for j, hj in enumerate(h):
            if hj and i != j:
                s *= lam[i][j] ** (gi * hj)
    return s


def sigma_tilde(params: ParamSet) -> Bicharacter:
    return Bicharacter(params)


def sigma_tilde_eval(x, y, params: ParamSet) -> Fraction:
    return sigma_tilde(params)(x, y)


def rho_table(params: ParamSet) -> dict:
    table = {}
    for i in range(params.t):
        table[(("U", i), ("L", i))] = -1 / params.bracket(i)
        for j in range(params.t):
            for e in (1, -1):
                for f in (1, -1):
                    table[(("T", i, e), ("T", j, f))] = Fraction(1)
    return table


def sigma_rho_table(params: ParamSet) -> dict:
    table = {}
    lam = params.lam
    for i in range(params.t):
        table[(("U", i), ("L", i))] = 1 / params.bracket(i)
        for j in range(params.t):
            for e in (1, -1):
                for f in (1, -1):
                    table[(("T", i, e), ("T", j, f))] = lam[i][j] ** (e * f)
    return table


@lru_cache(maxsize=None)
def rho(params: ParamSet) -> TabulatedForm:
    """The normalized cocycle of gr U with rho(E_i, F_j) = -delta_ij / (q^d_i - q^-d_i)."""
    return TabulatedForm("rho", rho_table(params), params.t)


@lru_cache(maxsize=None)
def sigma_rho(params: ParamSet) -> TabulatedForm:
    return TabulatedForm("sigma_rho", sigma_rho_table(params), params.t)


def rho_eval(x, y, params: ParamSet) -> Fraction:
    return rho(params)(x, y)


def sigma_rho_eval(x, y, params: ParamSet) -> Fraction:
    return sigma_rho(params)(x, y)


def inverse_table(f: Functional, t: int) -> dict:
    """Solve ``(f * g)(a, b) = eps(a) eps(b)`` for g on all generator pairs.

    Legs of a generator are generators or 1, and ``g(1, x) = g(x, 1) =
    eps(x)`` by normalization, so the system is linear in the generator-pair
    values of g.
    """
    gens = generators(t)
    unknowns = [(a, b) for a in gens for b in gens]
    equations = []
    for a in gens:
        for b in gens:
            eq: dict = {}
            rhs = Fraction(raw_counit((a,)) * raw_counit((b,)))
            for a1, a2 in raw_coproduct((a,)):
                for b1, b2 in raw_coproduct((b,)):
                    c = f.value(a1, b1)
                    if not c:
                        continue
                    if a2 and b2:
                        _acc(eq, (a2[0], b2[0]), c)
                    else:
                        rhs -= c * raw_counit(a2) * raw_counit(b2)
            equations.append((eq, rhs))
    return linalg.solve(equations, unknowns)


@lru_cache(maxsize=None)
def rho_inverse(params: ParamSet) -> TabulatedForm:
    """Convolution inverse of rho, its table solved from the generator equations."""
    return TabulatedForm("rho^-1", inverse_table(rho(params), params.t), params.t)


def convolve(f: Functional, g: Functional) -> Convolution:
    return Convolution(f, g)


def convolution_inverse(f: Functional) -> Functional:
    if isinstance(f, Bicharacter):
        return Bicharacter(f.params.inverted(), name=f"{f.name}^-1")
    if isinstance(f, CounitForm):
        return f
    if isinstance(f, TabulatedForm):
        return TabulatedForm(f"{f.name}^-1", inverse_table(f, f.t), f.t)
    raise NotImplementedError(f"no inverse construction for {f!r}")


# -- twisted products from first principles --------------------------------------


def _coproduct2(x: Element):
    """Second iterated coproduct as a list of ((a, b, c), coefficient)."""
    d1 = comultiply(x)
    out: dict = {}
    for (a, b), c in d1.terms.items():
        for (b1, b2), v in comultiply(x.spec.word(b)).terms.items():
            _acc(out, (a, b1, b2), c * v)
    return out.items()


def twisted_product_oracle(
    x: Element,
    y: Element,
    f: Functional,
    side: str = "left",
    inverse: Functional | None = None,
) -> Element:
    """Twisted products computed from the coproduct and the form.

    * ``left``:       ``f(x1, y1) x2 y2``
    * ``right``:      ``x1 y1 f(x2, y2)``
    * ``two-sided``:  ``f(x1, y1) x2 y2 g(x3, y3)`` with ``g = inverse``
      (the convolution inverse of f when not given).
    """
    spec = x.spec
    if y.spec != spec:
        raise ValueError("factors live in different algebras")
    out: dict[NormalWord, Fraction] = {}

    def add(c: Fraction, a: NormalWord, b: NormalWord) -> None:
        for w, v in spec.mul_words(a, b).items():
            _acc(out, w, c * v)

    if side in ("left", "right"):
        dx, dy = comultiply(x).terms.items(), comultiply(y).terms.items()
        for (x1, x2), cx in dx:
            for (y1, y2), cy in dy:
                if side == "left":
                    s = f(x1, y1)
                    if s:
                        add(cx * cy * s, x2, y2)
                else:
                    s = f(x2, y2)
                    if s:
                        add(cx * cy * s, x1, y1)
    elif side == "two-sided":
        g = inverse if inverse is not None else convolution_inverse(f)
        dx, dy = list(_coproduct2(x)), list(_coproduct2(y))
        for (x1, x2, x3), cx in dx:
            for (y1, y2, y3), cy in dy:
                s = f(x1, y1)
                if not s:
                    continue
                s2 = g(x3, y3)
                if s2:
                    add(cx * cy * s * s2, x2, y2)
    else:
        raise ValueError("side must be left, right or two-sided")
    return Element(spec, out)


def cocycle_condition_check(f: Functional, x, y, z, spec: AlgebraSpec) -> bool:
    """``f(x1, y1) f(x2 y2, z) == f(y1, z1) f(x, y2 z2)``, products in ``spec``."""
    x, y, z = (_element(spec, a) for a in (x, y, z))
    dx, dy, dz = comultiply(x), comultiply(y), comultiply(z)
    lhs = Fraction(0)
    for (x1, x2), cx in dx.terms.items():
        for (y1, y2), cy in dy.terms.items():
            s = f(x1, y1)
            if s:
                lhs += cx * cy * s * f(spec.word(x2) * spec.word(y2), z)
    rhs = Fraction(0)
    for (y1, y2), cy in dy.terms.items():
        for (z1, z2), cz in dz.terms.items():
            s = f(y1, z1)
            if s:
                rhs += cy * cz * s * f(x, spec.word(y2) * spec.word(z2))
    return lhs == rhs


def normalization_check(f: Functional, x, spec: AlgebraSpec) -> bool:
    """``f(1, x) == f(x, 1) == eps(x)``."""
    from .hopf import counit

    x = _element(spec, x)
    one = spec.one()
    e = counit(x)
    return f(one, x) == e == f(x, one)


def _element(spec: AlgebraSpec, x) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, NormalWord):
        return spec.word(x)
    raise TypeError("expected an Element or a NormalWord")


def functional_from_callable(name: str, fn: Callable[[Word, Word], Fraction]) -> Functional:
    class _F(Functional):
        def value(self, x, y):
            return Fraction(fn(x, y))

    out = _F()
    out.name = name
    return out
