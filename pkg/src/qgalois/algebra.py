"""Block-presented algebras and their normal forms.

Every algebra handled here has the same shape: a free block of *lower*
letters (F in U, Y in A_lambda), a free block of *upper* letters (E / X) and
a Laurent block of *torus* letters (K / Z).  The commutation data are

* ``T_i T_j = tt[i][j] T_j T_i``
* ``T_i U_j = tu[i][j] U_j T_i``
* ``T_i L_j = tl[i][j] L_j T_i``
* ``U_i L_j = L_j U_i + delta_ij C_i`` with ``C_i`` a Laurent polynomial in
  the torus letters.

The basis is ``(lower word) (upper word) T_1^g1 ... T_t^gt``.  Serre
relations are never imposed.

Raw letters are tuples ``("L", i)``, ``("U", i)`` and ``("T", i, e)`` with
``e = +-1``; indices are 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .cartan import CartanDatum
from .coeffs import ParamSet, q_binomial

KINDS = ("U", "grU", "Alambda", "sigmaU", "Torus")

# display names of the (lower, upper, torus) letters
LETTER_NAMES = {
    "U": ("F", "E", "K"),
    "grU": ("F", "E", "K"),
    "sigmaU": ("F", "E", "K"),
    "Alambda": ("Y", "X", "Z"),
    "Torus": (None, None, "Z"),
}

Letter = tuple


@dataclass(frozen=True, order=True)
class NormalWord:
    """One basis monomial: lower word, upper word, torus exponents."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]
    torus: tuple[int, ...]

    @classmethod
    def unit(cls, t: int) -> "NormalWord":
        return cls((), (), (0,) * t)

    def is_unit(self) -> bool:
        return not self.lower and not self.upper and not any(self.torus)

    def length(self) -> int:
        return len(self.lower) + len(self.upper) + sum(abs(g) for g in self.torus)

    def letters(self) -> tuple[Letter, ...]:
        out = [("L", i) for i in self.lower] + [("U", i) for i in self.upper]
        for i, g in enumerate(self.torus):
            e = 1 if g > 0 else -1
            out.extend([("T", i, e)] * abs(g))
        return tuple(out)


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str
    cartan: CartanDatum
    params: ParamSet
    tt: tuple[tuple[Fraction, ...], ...]
    tu: tuple[tuple[Fraction, ...], ...]
    tl: tuple[tuple[Fraction, ...], ...]
    central: tuple[tuple[tuple[tuple[int, ...], Fraction], ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def t(self) -> int:
        return self.cartan.t

    @property
    def names(self) -> tuple:
        return LETTER_NAMES[self.kind]

    @property
    def has_letters(self) -> bool:
        return self.kind != "Torus"

    def unit_word(self) -> NormalWord:
        return NormalWord.unit(self.t)

    def one(self) -> "Element":
        return Element(self, {self.unit_word(): Fraction(1)})

    def zero(self) -> "Element":
        return Element(self, {})

    def lower(self, i: int) -> "Element":
        self._check_letter("L", i)
        return Element(self, {NormalWord((i,), (), (0,) * self.t): Fraction(1)})

    def upper(self, i: int) -> "Element":
        self._check_letter("U", i)
        return Element(self, {NormalWord((), (i,), (0,) * self.t): Fraction(1)})

    def torus(self, i: int, e: int = 1) -> "Element":
        self._check_letter("T", i)
        g = [0] * self.t
        g[i] = e
        return Element(self, {NormalWord((), (), tuple(g)): Fraction(1)})

    def monomial(self, gamma: Sequence[int]) -> "Element":
        """The sorted torus monomial ``T_1^g1 ... T_t^gt``."""
        return Element(self, {NormalWord((), (), tuple(gamma)): Fraction(1)})

    def word(self, w: NormalWord, c=1) -> "Element":
        return Element(self, {w: Fraction(c)})

    def _check_letter(self, fam: str, i: int) -> None:
        if not 0 <= i < self.t:
            raise IndexError(f"generator index {i + 1} outside rank {self.t}")
        if fam != "T" and not self.has_letters:
            raise ValueError(f"{self.kind} has only torus generators")

    # -- structure constants on torus monomials ---------------------------

    def torus_past(self, gamma: Sequence[int], word: Sequence[int], table) -> Fraction:
        """Scalar s with ``T^gamma w = s w T^gamma`` for a word in one block."""
        s = Fraction(1)
        for j in word:
            for i, g in enumerate(gamma):
                if g:
                    s *= table[i][j] ** g
        return s

    def torus_merge(self, g: Sequence[int], h: Sequence[int]) -> Fraction:
        """Scalar s with ``T^g T^h = s T^(g+h)`` for sorted monomials."""
        s = Fraction(1)
        t = len(g)
        for i in range(t):
            if not g[i]:
                continue
            for j in range(i):
                if h[j]:
                    s *= self.tt[i][j] ** (g[i] * h[j])
        return s

    # -- products of basis words -----------------------------------------

    def _straighten(self, up: tuple[int, ...], low: tuple[int, ...]) -> dict[NormalWord, Fraction]:
        """Normal form of ``(upper word)(lower word)``."""
        cache = self._cache.setdefault("straighten", {})
        key = (up, low)
        hit = cache.get(key)
        if hit is not None:
            return hit
        t = self.t
        zero = (0,) * t
        if not up or not low:
            out = {NormalWord(low, up, zero): Fraction(1)}
            cache[key] = out
            return out
        out: dict[NormalWord, Fraction] = {}
        l, rest = low[0], low[1:]
        # U l = l U + sum over occurrences of l in U of U_<k C_l U_>k
        for w, c in self._straighten(up, rest).items():
            _acc(out, NormalWord((l,) + w.lower, w.upper, w.torus), c)
        for k, u in enumerate(up):
            if u != l:
                continue
            left, right = up[:k], up[k + 1:]
            for gamma, cc in self.central[l]:
                s = cc * self.torus_past(gamma, right, self.tu) * self.torus_past(gamma, rest, self.tl)
                for w, c in self._straighten(left + right, rest).items():
                    tor = tuple(a + b for a, b in zip(w.torus, gamma))
                    _acc(out, NormalWord(w.lower, w.upper, tor), c * s * self.torus_merge(w.torus, gamma))
        cache[key] = out
        return out

    def mul_words(self, w1: NormalWord, w2: NormalWord) -> dict[NormalWord, Fraction]:
        cache = self._cache.setdefault("mul", {})
        key = (w1, w2)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if not self.has_letters:
            tor = tuple(a + b for a, b in zip(w1.torus, w2.torus))
            out = {NormalWord((), (), tor): self.torus_merge(w1.torus, w2.torus)}
            cache[key] = out
            return out
        g1 = w1.torus
        s = self.torus_past(g1, w2.lower, self.tl) * self.torus_past(g1, w2.upper, self.tu)
        g12 = tuple(a + b for a, b in zip(g1, w2.torus))
        s *= self.torus_merge(g1, w2.torus)
        out: dict[NormalWord, Fraction] = {}
        for w, c in self._straighten(w1.upper, w2.lower).items():
            c2 = c * s * self.torus_past(w.torus, w2.upper, self.tu) * self.torus_merge(w.torus, g12)
            tor = tuple(a + b for a, b in zip(w.torus, g12))
            _acc(out, NormalWord(w1.lower + w.lower, w.upper + w2.upper, tor), c2)
        cache[key] = out
        return out

    # -- raw rewriting ------------------------------------------------------

    def rewrite_at(self, word: tuple[Letter, ...], pos: int) -> list[tuple[Fraction, tuple[Letter, ...]]] | None:
        """Apply the rule whose left side is ``word[pos:pos+2]``, if any."""
        if pos + 1 >= len(word):
            return None
        a, b = word[pos], word[pos + 1]
        head, tail = word[:pos], word[pos + 2:]
        if a[0] == "T":
            i, e = a[1], a[2]
            if b[0] == "U":
                return [(self.tu[i][b[1]] ** e, head + (b, a) + tail)]
            if b[0] == "L":
                return [(self.tl[i][b[1]] ** e, head + (b, a) + tail)]
            j, f = b[1], b[2]
            if i == j and e == -f:
                return [(Fraction(1), head + tail)]
            if i > j:
                return [(self.tt[i][j] ** (e * f), head + (b, a) + tail)]
            return None
        if a[0] == "U" and b[0] == "L":
            out = [(Fraction(1), head + (b, a) + tail)]
            if a[1] == b[1]:
                for gamma, cc in self.central[a[1]]:
                    out.append((cc, head + NormalWord((), (), gamma).letters() + tail))
            return out
        return None

    def reduce_raw(self, raw: Iterable[tuple[Fraction, Sequence[Letter]]]) -> "Element":
        """Normal form by leftmost rule application until nothing applies."""
        pending: dict[tuple, Fraction] = {}
        for c, w in raw:
            _acc(pending, tuple(_expand_letters(w)), Fraction(c))
        done: dict[NormalWord, Fraction] = {}
        while pending:
            w, c = pending.popitem()
            if not c:
                continue
            for pos in range(len(w) - 1):
                res = self.rewrite_at(w, pos)
                if res is not None:
                    for c2, w2 in res:
                        _acc(pending, w2, c * c2)
                    break
            else:
                _acc(done, _irreducible_to_word(w, self.t), c)
        return Element(self, done)


def _acc(d: dict, k, c) -> None:
    v = d.get(k, 0) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


def _expand_letters(w: Sequence[Letter]) -> Iterable[Letter]:
    for a in w:
        if a[0] == "T" and abs(a[2]) != 1:
            e = 1 if a[2] > 0 else -1
            yield from [("T", a[1], e)] * abs(a[2])
        elif a[0] == "T" and a[2] == 0:
            continue
        else:
            yield a


def _irreducible_to_word(w: tuple[Letter, ...], t: int) -> NormalWord:
    lower = tuple(a[1] for a in w if a[0] == "L")
    upper = tuple(a[1] for a in w if a[0] == "U")
    tor = [0] * t
    for a in w:
        if a[0] == "T":
            tor[a[1]] += a[2]
    return NormalWord(lower, upper, tuple(tor))


def _table(t: int, f) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(f(i, j)) for j in range(t)) for i in range(t))


@lru_cache(maxsize=None)
def make_algebra(kind: str, params: ParamSet, cartan: CartanDatum) -> AlgebraSpec:
    """Instantiate the commutation data of one algebra of the family.

    ``kind`` is one of ``U``, ``grU``, ``Alambda``, ``Torus`` or ``sigmaU``
    (U with the product twisted by sigma_rho, written on its twisted
    monomial basis; it shares the commutation data of ``Alambda``).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown algebra kind {kind!r}")
    if tuple(cartan.d) != tuple(params.d):
        raise ValueError("parameter set was built for a different Cartan datum")
    t, q, a, d, lam = cartan.t, params.q, cartan.a, cartan.d, params.lam
    one = _table(t, lambda i, j: 1)
    if kind == "Torus":
        tt = _table(t, lambda i, j: lam[i][j] ** 2)
        return AlgebraSpec(kind, cartan, params, tt, one, one, tuple(() for _ in range(t)))
    qpow = lambda i, j: q ** (d[i] * a[i][j])  # noqa: E731
    tl = _table(t, lambda i, j: 1 / qpow(i, j))
    if kind in ("U", "grU"):
        tt, tu = one, _table(t, qpow)
    else:
        tt = _table(t, lambda i, j: lam[i][j] ** 2)
        tu = _table(t, lambda i, j: lam[i][j] ** 2 * qpow(i, j))
    central = []
    for i in range(t):
        c = 1 / params.bracket(i)
        e = tuple(1 if k == i else 0 for k in range(t))
        ne = tuple(-x for x in e)
        if kind == "U":
            central.append(((e, c), (ne, -c)))
        elif kind == "grU":
            central.append(())
        else:
            central.append(((e, c),))
    return AlgebraSpec(kind, cartan, params, tt, tu, tl, tuple(central))


def group_algebra(params: ParamSet, cartan: CartanDatum) -> AlgebraSpec:
    """The commutative group algebra k[G] of the torus."""
    return make_algebra("Torus", params.trivial(), cartan)


class Element:
    """Finite combination of normal words with nonzero rational coefficients."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: Mapping[NormalWord, Fraction] | None = None):
        self.spec = spec
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c}

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.spec is not self.spec and other.spec != self.spec:
                raise ValueError(f"cannot combine {self.spec.kind} and {other.spec.kind} elements")
            return other
        return Element(self.spec, {self.spec.unit_word(): Fraction(other)})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return Element(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.spec, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = Fraction(other)
            return Element(self.spec, {w: v * c for w, v in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        c = Fraction(other)
        return Element(self.spec, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.spec.one()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "Element":
        """Inverse of a nonzero multiple of a torus monomial."""
        if len(self.terms) != 1:
            raise ValueError("only monomials in the torus letters are invertible")
        (w, c), = self.terms.items()
        if w.lower or w.upper:
            raise ValueError("only monomials in the torus letters are invertible")
        neg = tuple(-g for g in w.torus)
        s = self.spec.torus_merge(w.torus, neg)
        return Element(self.spec, {NormalWord((), (), neg): 1 / (c * s)})

    def __eq__(self, other):
        if isinstance(other, Element):
            return (other.spec is self.spec or other.spec == self.spec) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w: NormalWord) -> Fraction:
        return self.terms.get(w, Fraction(0))

    def scalar_part(self) -> Fraction:
        return self.coefficient(self.spec.unit_word())

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        from .expr import print_canonical

        return f"<{self.spec.kind}: {print_canonical(self)}>"


def multiply(a: Element, b: Element) -> Element:
    spec = a.spec
    if b.spec is not spec and b.spec != spec:
        raise ValueError("factors live in different algebras")
    out: dict[NormalWord, Fraction] = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            for w, c in spec.mul_words(w1, w2).items():
                _acc(out, w, c1 * c2 * c)
    return Element(spec, out)


def letter_element(spec: AlgebraSpec, a: Letter) -> Element:
    if a[0] == "L":
        return spec.lower(a[1])
    if a[0] == "U":
        return spec.upper(a[1])
    return spec.torus(a[1], a[2])


def word_element(spec: AlgebraSpec, letters: Sequence[Letter]) -> Element:
    out = spec.one()
    for a in letters:
        out = out * letter_element(spec, a)
    return out


def normal_form(raw, spec: AlgebraSpec) -> Element:
    """Normal form of a formal combination of generator words.

    ``raw`` is an Element (returned re-normalized), a single letter sequence,
    or an iterable of ``(coefficient, letter sequence)`` pairs.
    """
    if isinstance(raw, Element):
        raw = [(c, w.letters()) for w, c in raw.terms.items()]
    else:
        raw = list(raw)
        if raw and isinstance(raw[0][0], str):
            raw = [(1, raw)]
    out = spec.zero()
    for c, letters in raw:
        out = out + Fraction(c) * word_element(spec, list(_expand_letters(letters)))
    return out


# -- Serre elements ---------------------------------------------------------


def serre_element(spec: AlgebraSpec, side: str, i: int, j: int, lambda_weighted: bool = False) -> Element:
    """``sum_r (-1)^r [1-a_ij; r]_{q^d_i} w_i^{1-a_ij-r} w_j w_i^r``.

    On the upper side with ``lambda_weighted`` each term also carries
    ``lambda_ij^(a_ij + 2r - 1)``; the lower-side relation is never weighted.
    """
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    t = spec.t
    if i == j:
        raise IndexError("Serre elements need i != j")
    if not (0 <= i < t and 0 <= j < t):
        raise IndexError(f"indices outside rank {t}")
    if not spec.has_letters:
        raise ValueError("torus algebras carry no Serre elements")
    a = spec.cartan.a[i][j]
    n = 1 - a
    v = spec.params.qd(i)
    lam = spec.params.lam[i][j]
    zero = (0,) * t
    terms: dict[NormalWord, Fraction] = {}
    for r in range(n + 1):
        c = (-1) ** r * q_binomial(n, r, v)
        if lambda_weighted and side == "upper":
            c *= lam ** (a + 2 * r - 1)
        word = (i,) * (n - r) + (j,) + (i,) * r
        w = NormalWord((), word, zero) if side == "upper" else NormalWord(word, (), zero)
        _acc(terms, w, c)
    return Element(spec, terms)


# -- the maps phi_lambda and psi ---------------------------------------------


def _sibling(spec: AlgebraSpec, kind: str) -> AlgebraSpec:
    return make_algebra(kind, spec.params, spec.cartan)


def phi_lambda(e: Element) -> Element:
    """Image in the sigma_rho-twisted U, written on twisted monomials.

    The twisted algebra shares the commutation data of A_lambda, so the map
    is the letter relabeling X -> E, Y -> F, Z -> K.
    """
    if e.spec.kind != "Alambda":
        raise ValueError("phi_lambda is defined on A_lambda")
    return Element(_sibling(e.spec, "sigmaU"), e.terms)


def psi(x):
    """Relabel F -> Y, E -> X, K -> Z.

    Accepts a NormalWord (returned as is: words are label-free), an element
    of the twisted U, or a plain U element (first rewritten on the twisted
    monomial basis).
    """
    if isinstance(x, NormalWord):
        return x
    if x.spec.kind == "U":
        x = from_plain(x)
    if x.spec.kind != "sigmaU":
        raise ValueError("psi is defined on the twisted U")
    return Element(_sibling(x.spec, "Alambda"), x.terms)


def twisted_basis_change_scalar(alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int], params: ParamSet) -> Fraction:
    """Scalar s with ``F^alpha . E^beta . K^gamma (twisted) = s F^alpha E^beta K^gamma``.

    Only the upper letters and the torus block contribute: over every pair of
    positions k < k' of the sequence ``beta_1 .. beta_p, K_1 .. K_t`` the factor
    is ``lambda_{kk'}^(kappa_k kappa_k')`` with kappa = 1 on upper letters and
    the exponent on torus letters.
    """
    lam = params.lam
    seq = [(j, 1) for j in beta] + [(l, g) for l, g in enumerate(gamma) if g]
    s = Fraction(1)
    for a in range(len(seq)):
        ka, xa = seq[a]
        for b in range(a + 1, len(seq)):
            kb, xb = seq[b]
            if ka != kb:
                s *= lam[ka][kb] ** (xa * xb)
    return s


def to_plain(e: Element) -> Element:
    """Rewrite an element of the twisted U on the plain basis of U."""
    if e.spec.kind != "sigmaU":
        raise ValueError("to_plain expects an element of the twisted U")
    p = e.spec.params
    terms = {w: c * twisted_basis_change_scalar(w.lower, w.upper, w.torus, p) for w, c in e.terms.items()}
    return Element(_sibling(e.spec, "U"), terms)


def from_plain(e: Element) -> Element:
    if e.spec.kind != "U":
        raise ValueError("from_plain expects an element of U")
    p = e.spec.params
    terms = {w: c / twisted_basis_change_scalar(w.lower, w.upper, w.torus, p) for w, c in e.terms.items()}
    return Element(_sibling(e.spec, "sigmaU"), terms)


def relabel(e: Element, kind: str) -> Element:
    """Same coefficients and words, read in another algebra of the family."""
    return Element(_sibling(e.spec, kind), e.terms)


# -- enumeration helpers -------------------------------------------------------


def basis_words(t: int, max_letters: int, torus_cap: int, torus_weight: int | None = None, letters: bool = True):
    """Normal words with at most ``max_letters`` lower+upper letters.

    Torus exponents range over ``[-torus_cap, torus_cap]``; with
    ``torus_weight`` the total length (letters plus |exponents|) is bounded
    by it as well.
    """
    tori = list(itertools.product(range(-torus_cap, torus_cap + 1), repeat=t))
    out = []
    for n in range(max_letters + 1 if letters else 1):
        for k in range(n + 1):
            for low in itertools.product(range(t), repeat=k):
                for up in itertools.product(range(t), repeat=n - k):
                    for g in tori:
                        if torus_weight is not None and n + sum(map(abs, g)) > torus_weight:
                            continue
                        out.append(NormalWord(low, up, g))
    return out
