"""Coproduct, counit, antipode of U / gr U and the coaction on A_lambda."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .algebra import AlgebraSpec, Element, NormalWord, _acc, basis_words, group_algebra, make_algebra
from . import linalg


class Tensor:
    """Finite combination of tuples of normal words, one per tensor factor."""

    __slots__ = ("specs", "terms")

    def __init__(self, specs: Sequence[AlgebraSpec], terms: Mapping[tuple, Fraction] | None = None):
        self.specs = tuple(specs)
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @property
    def arity(self) -> int:
        return len(self.specs)

    @classmethod
    def pure(cls, *elements: Element) -> "Tensor":
        out: dict = {}
        terms = [()]
        coeffs = [Fraction(1)]
        for e in elements:
            terms, coeffs = (
                [k + (w,) for k in terms for w in e.terms],
                [c * v for c in coeffs for v in e.terms.values()],
            )
        for k, c in zip(terms, coeffs):
            _acc(out, k, c)
        return cls([e.spec for e in elements], out)

    @classmethod
    def unit(cls, specs: Sequence[AlgebraSpec]) -> "Tensor":
        return cls(specs, {tuple(s.unit_word() for s in specs): Fraction(1)})

    def __add__(self, other: "Tensor") -> "Tensor":
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor(self.specs, out)

    def __neg__(self):
        return Tensor(self.specs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            c = Fraction(other)
            return Tensor(self.specs, {k: v * c for k, v in self.terms.items()})
        self._same(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                acc = [((), c1 * c2)]
                for s, a, b in zip(self.specs, k1, k2):
                    prod = s.mul_words(a, b)
                    acc = [(key + (w,), c * v) for key, c in acc for w, v in prod.items()]
                for key, c in acc:
                    _acc(out, key, c)
        return Tensor(self.specs, out)

    def __rmul__(self, c):
        return self * c

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.specs == other.specs and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def _same(self, other: "Tensor") -> None:
        if self.specs != other.specs:
            raise ValueError("tensor factors differ")

    def map_leg(self, k: int, f: Callable[[NormalWord], "Element | Tensor"]) -> "Tensor":
        """Apply a linear map (given on words) to the k-th factor."""
        out: dict = {}
        specs = None
        for key, c in self.terms.items():
            img = f(key[k])
            if isinstance(img, Element):
                new_specs = (img.spec,)
                items = [((w,), v) for w, v in img.terms.items()]
            else:
                new_specs = img.specs
                items = list(img.terms.items())
            specs = self.specs[:k] + new_specs + self.specs[k + 1:]
            for sub, v in items:
                _acc(out, key[:k] + sub + key[k + 1:], c * v)
        if specs is None:
            probe = f(self.specs[k].unit_word())
            new_specs = (probe.spec,) if isinstance(probe, Element) else probe.specs
            specs = self.specs[:k] + new_specs + self.specs[k + 1:]
        return Tensor(specs, out)

    def contract(self) -> Element:
        """Multiply the factors together (all factors in one algebra)."""
        spec = self.specs[0]
        if any(s != spec for s in self.specs):
            raise ValueError("contraction needs all factors in one algebra")
        out = spec.zero()
        for key, c in self.terms.items():
            prod = spec.word(key[0], c)
            for w in key[1:]:
                prod = prod * spec.word(w)
            out = out + prod
        return out

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        from .expr import print_tensor

        return f"<Tensor: {print_tensor(self)}>"


def _require(spec: AlgebraSpec, kinds: tuple, what: str) -> None:
    if spec.kind not in kinds:
        raise ValueError(f"{what} is defined on {', '.join(kinds)}, not {spec.kind}")


def _torus_word(gamma) -> NormalWord:
    return NormalWord((), (), tuple(gamma))


def _unit_vector(t: int, i: int, e: int) -> tuple[int, ...]:
    return tuple(e if k == i else 0 for k in range(t))


def _gen_coproduct(spec: AlgebraSpec, letter) -> Tensor:
    """Delta on one generator, given by the defining formulas."""
    t = spec.t
    one = spec.unit_word()
    if letter[0] == "U":
        i = letter[1]
        return Tensor((spec, spec), {
            (NormalWord((), (i,), (0,) * t), one): 1,
            (_torus_word(_unit_vector(t, i, 1)), NormalWord((), (i,), (0,) * t)): 1,
        })
    if letter[0] == "L":
        i = letter[1]
        return Tensor((spec, spec), {
            (NormalWord((i,), (), (0,) * t), _torus_word(_unit_vector(t, i, -1))): 1,
            (one, NormalWord((i,), (), (0,) * t)): 1,
        })
    w = _torus_word(_unit_vector(t, letter[1], letter[2]))
    return Tensor((spec, spec), {(w, w): 1})


def comultiply_word(spec: AlgebraSpec, w: NormalWord) -> Tensor:
    _require(spec, ("U", "grU", "Torus"), "the coproduct")
    cache = spec._cache.setdefault("delta", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    if spec.kind == "Torus":
        if spec.tt != group_algebra(spec.params, spec.cartan).tt:
            raise ValueError("the coproduct on a torus needs the untwisted group algebra")
        out = Tensor((spec, spec), {(w, w): 1})
    else:
        out = Tensor.unit((spec, spec))
        for a in NormalWord(w.lower, w.upper, (0,) * spec.t).letters():
            out = out * _gen_coproduct(spec, a)
        if any(w.torus):
            tw = _torus_word(w.torus)
            out = out * Tensor((spec, spec), {(tw, tw): 1})
    cache[w] = out
    return out


def comultiply(e: Element) -> Tensor:
    """Delta extended as an algebra morphism from its values on generators."""
    out: dict = {}
    for w, c in e.terms.items():
        for k, v in comultiply_word(e.spec, w).terms.items():
            _acc(out, k, c * v)
    return Tensor((e.spec, e.spec), out)


def counit(e: Element) -> Fraction:
    """epsilon: kills every word containing a non-torus letter."""
    return sum((c for w, c in e.terms.items() if not w.lower and not w.upper), Fraction(0))


def _antipode_letter(spec: AlgebraSpec, a) -> Element:
    if a[0] == "U":
        return -(spec.torus(a[1], -1) * spec.upper(a[1]))
    if a[0] == "L":
        return -(spec.lower(a[1]) * spec.torus(a[1], 1))
    return spec.torus(a[1], -a[2])


def antipode_word(spec: AlgebraSpec, w: NormalWord) -> Element:
    _require(spec, ("U", "grU"), "the antipode")
    cache = spec._cache.setdefault("antipode", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    out = spec.one()
    for a in reversed(w.letters()):
        out = out * _antipode_letter(spec, a)
    cache[w] = out
    return out


def antipode(e: Element) -> Element:
    """S extended anti-multiplicatively."""
    out = e.spec.zero()
    for w, c in e.terms.items():
        out = out + c * antipode_word(e.spec, w)
    return out


def _target_U(spec: AlgebraSpec) -> AlgebraSpec:
    return make_algebra("U", spec.params, spec.cartan)


def _gen_coaction(spec: AlgebraSpec, H: AlgebraSpec, letter) -> Tensor:
    t = spec.t
    one_a, one_h = spec.unit_word(), H.unit_word()
    zero = (0,) * t
    if letter[0] == "U":
        i = letter[1]
        return Tensor((spec, H), {
            (NormalWord((), (i,), zero), one_h): 1,
            (_torus_word(_unit_vector(t, i, 1)), NormalWord((), (i,), zero)): 1,
        })
    if letter[0] == "L":
        i = letter[1]
        return Tensor((spec, H), {
            (NormalWord((i,), (), zero), _torus_word(_unit_vector(t, i, -1))): 1,
            (one_a, NormalWord((i,), (), zero)): 1,
        })
    w = _torus_word(_unit_vector(t, letter[1], letter[2]))
    return Tensor((spec, H), {(w, w): 1})


def coact_word(spec: AlgebraSpec, w: NormalWord) -> Tensor:
    _require(spec, ("Alambda",), "the coaction")
    cache = spec._cache.setdefault("coact", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    H = _target_U(spec)
    out = Tensor.unit((spec, H))
    for a in w.letters():
        out = out * _gen_coaction(spec, H, a)
    cache[w] = out
    return out


def coact(e: Element) -> Tensor:
    """delta: A_lambda -> A_lambda (x) U, extended multiplicatively."""
    out: dict = {}
    H = _target_U(e.spec)
    for w, c in e.terms.items():
        for k, v in coact_word(e.spec, w).terms.items():
            _acc(out, k, c * v)
    return Tensor((e.spec, H), out)


def covariant_check(e: Element) -> bool:
    """True iff delta(e) = e (x) 1."""
    H = _target_U(e.spec)
    return coact(e) == Tensor.pure(e, H.one())


def covariants(spec: AlgebraSpec, max_letters: int = 2, torus_cap: int = 2, torus_weight: int | None = None) -> list[Element]:
    """Kernel of ``a -> delta(a) - a (x) 1`` on a capped span of A_lambda words."""
    H = _target_U(spec)
    basis = basis_words(spec.t, max_letters, torus_cap, torus_weight)
    cols = []
    one_h = H.unit_word()
    for w in basis:
        col = dict(coact_word(spec, w).terms)
        _acc(col, (w, one_h), Fraction(-1))
        cols.append(col)
    return [Element(spec, {basis[j]: c for j, c in vec.items()}) for vec in linalg.kernel(cols)]
