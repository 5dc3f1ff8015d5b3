"""Verification suites shared by ``qgalois verify`` and the test suite.

Every suite takes a :class:`Setting` and a seeded RNG and returns a
:class:`SuiteResult` carrying the first counterexample, if any.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import (
    AlgebraSpec,
    Element,
    NormalWord,
    basis_words,
    group_algebra,
    make_algebra,
    normal_form,
    phi_lambda,
    psi,
    relabel,
    serre_element,
    to_plain,
    word_element,
)
from .cartan import CartanDatum, preset
from .coeffs import ParameterError, ParamSet, make_params
from .cocycle import (
    CounitForm,
    cocycle_condition_check,
    convolve,
    generators,
    normalization_check,
    raw_coproduct,
    rho,
    rho_inverse,
    sigma_rho,
    sigma_tilde,
    twisted_product_oracle,
)
from .expr import parse_element, print_canonical
from .galois import (
    cotensor_truncated,
    homotopy_invariant,
    lemma1_mu_check,
    restrict_i_star,
    twisted_group_algebra,
)
from .hopf import antipode_word, coact, coact_word, comultiply, comultiply_word, covariants


@dataclass(frozen=True)
class Setting:
    cartan: CartanDatum
    params: ParamSet

    def algebra(self, kind: str) -> AlgebraSpec:
        return make_algebra(kind, self.params, self.cartan)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failure: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure is None

    def check(self, cond: bool, describe: Callable[[], str]) -> bool:
        self.cases += 1
        if not cond and self.failure is None:
            self.failure = describe()
        return bool(cond)

    def merge(self, other: "SuiteResult") -> "SuiteResult":
        self.cases += other.cases
        if self.failure is None and other.failure is not None:
            self.failure = f"[{other.name}] {other.failure}"
        self.notes += other.notes
        return self

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.cases} cases"
        if self.failure:
            line += f"; first counterexample: {self.failure}"
        return line


# -- random data --------------------------------------------------------------------

Q_CHOICES = [Fraction(2), Fraction(3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 2), Fraction(-2), Fraction(5, 3)]
LAMBDA_CHOICES = [Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-1), Fraction(-2), Fraction(3, 4), Fraction(5)]


def random_params(rng: random.Random, cartan: CartanDatum, lambdas=LAMBDA_CHOICES) -> ParamSet:
    while True:
        fam = {(i, j): rng.choice(lambdas) for i in range(cartan.t) for j in range(i + 1, cartan.t)}
        try:
            return make_params(rng.choice(Q_CHOICES), fam, cartan)
        except ParameterError:
            continue


def random_fraction(rng: random.Random) -> Fraction:
    c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return c or Fraction(1)


def random_word(
    rng: random.Random,
    t: int,
    max_len: int,
    families: str = "LUT",
    torus_cap: int | None = None,
) -> NormalWord:
    """Random basis word of length at most ``max_len`` (letters plus |exponents|)."""
    lower, upper, tor = [], [], [0] * t
    for _ in range(rng.randint(0, max_len)):
        fam = rng.choice(families)
        i = rng.randrange(t)
        if fam == "L":
            lower.append(i)
        elif fam == "U":
            upper.append(i)
        else:
            step = rng.choice((1, -1))
            if torus_cap is None or abs(tor[i] + step) <= torus_cap:
                tor[i] += step
    return NormalWord(tuple(lower), tuple(upper), tuple(tor))


def random_element(rng: random.Random, spec: AlgebraSpec, max_len: int = 3, terms: int = 3) -> Element:
    fams = "LUT" if spec.has_letters else "T"
    out = spec.zero()
    for _ in range(rng.randint(1, terms)):
        out = out + spec.word(random_word(rng, spec.t, max_len, fams), random_fraction(rng))
    return out


def all_letters(t: int) -> list[tuple]:
    return generators(t)


# -- criterion-level suites -------------------------------------------------------------


def check_serre_transport(s: Setting, rng=None) -> SuiteResult:
    """phi_lambda of the weighted A_lambda Serre element is the plain U one."""
    res = SuiteResult("serre-transport")
    A, U = s.algebra("Alambda"), s.algebra("U")
    for i, j in itertools.permutations(range(s.cartan.t), 2):
        for side in ("upper", "lower"):
            img = to_plain(phi_lambda(serre_element(A, side, i, j, lambda_weighted=True)))
            want = serre_element(U, side, i, j)
            res.check(img == want, lambda: f"{side} ({i + 1},{j + 1}): {print_canonical(img)} != {print_canonical(want)}")
    return res


def check_exponent_law(s: Setting, rng=None, top: int = 3) -> SuiteResult:
    """``E_i^a . E_j^b . E_i^c`` (twisted) = lambda_ij^(b(a-c)) E_i^a E_j^b E_i^c."""
    res = SuiteResult("exponent")
    U, S = s.algebra("U"), s.algebra("sigmaU")
    sr = sigma_rho(s.params)
    lam = s.params.lam
    for i, j in itertools.permutations(range(s.cartan.t), 2):
        for a, b, c in itertools.product(range(top + 1), repeat=3):
            letters = [i] * a + [j] * b + [i] * c
            plain = word_element(U, [("U", k) for k in letters])
            want = lam[i][j] ** (b * (a - c)) * plain
            structural = S.one()
            oracle = U.one()
            for k in letters:
                structural = structural * S.upper(k)
                oracle = twisted_product_oracle(oracle, U.upper(k), sr)
            got = to_plain(structural)
            res.check(got == want and oracle == want,
                      lambda: f"i={i + 1} j={j + 1} (a,b,c)={(a, b, c)}: {print_canonical(got)} / {print_canonical(oracle)} vs {print_canonical(want)}")
    return res


def check_sigma_rho_table(s: Setting, rng=None) -> SuiteResult:
    """sigma~ * rho^-1 reproduces the sigma_rho table; rho * rho^-1 = eps (x) eps."""
    res = SuiteResult("sigma-rho-table")
    p = s.params
    conv = convolve(sigma_tilde(p), rho_inverse(p))
    unit = convolve(rho(p), rho_inverse(p))
    sr, eps = sigma_rho(p), CounitForm()
    for a in all_letters(s.cartan.t):
        for b in all_letters(s.cartan.t):
            x, y = (a,), (b,)
            v, w = conv.value(x, y), sr.value(x, y)
            res.check(v == w, lambda: f"sigma~*rho^-1{(a, b)} = {v}, table says {w}")
            u = unit.value(x, y)
            res.check(u == eps.value(x, y), lambda: f"rho*rho^-1{(a, b)} = {u}")
    return res


def check_rho_inverse_random(s: Setting, rng: random.Random, n: int = 100) -> SuiteResult:
    res = SuiteResult("rho-inverse")
    p = s.params
    unit, eps = convolve(rho(p), rho_inverse(p)), CounitForm()
    t = s.cartan.t
    for _ in range(n):
        x, y = _random_in_domain_pair(rng, t, 3)
        xl, yl = x.letters(), y.letters()
        v = unit.value(xl, yl)
        res.check(v == eps.value(xl, yl), lambda: f"rho*rho^-1({x}, {y}) = {v}")
    return res


def check_cocycle(s: Setting, rng: random.Random, triples: int = 500, norms: int = 100) -> SuiteResult:
    """sigma~_lambda is a normalized 2-cocycle on gr U; sigma_lambda on k[G]."""
    res = SuiteResult("cocycle")
    G = s.algebra("grU")
    f = sigma_tilde(s.params)
    t = s.cartan.t
    for _ in range(triples):
        x, y, z = (random_word(rng, t, 3) for _ in range(3))
        res.check(cocycle_condition_check(f, x, y, z, G), lambda: f"cocycle fails at {x}, {y}, {z}")
    for _ in range(norms):
        x = random_word(rng, t, 3)
        res.check(normalization_check(f, x, G), lambda: f"normalization fails at {x}")
    kG = group_algebra(s.params, s.cartan)
    for _ in range(50):
        x, y, z = (random_word(rng, t, 4, "T") for _ in range(3))
        res.check(cocycle_condition_check(f, x, y, z, kG), lambda: f"bicharacter cocycle fails at {x}, {y}, {z}")
    return res


def check_hopf(s: Setting, rng: random.Random, max_len: int = 3, pairs: int = 200, kind: str = "U") -> SuiteResult:
    """Coassociativity, counit, antipode and multiplicativity of Delta."""
    res = SuiteResult(f"hopf[{kind}]")
    H = s.algebra(kind)
    t = s.cartan.t
    delta = lambda w: comultiply_word(H, w)  # noqa: E731
    for w in basis_words(t, max_len, 1, torus_weight=max_len):
        d = delta(w)
        left, right = d.map_leg(0, delta), d.map_leg(1, delta)
        res.check(left == right, lambda: f"coassociativity fails at {w}")
        e = H.word(w)
        c1 = H.zero()
        c2 = H.zero()
        for (a, b), c in d.terms.items():
            if not a.lower and not a.upper:
                c1 = c1 + c * H.word(b)
            if not b.lower and not b.upper:
                c2 = c2 + c * H.word(a)
        res.check(c1 == e and c2 == e, lambda: f"counit axiom fails at {w}")
        if w.length() <= 2:
            eps = H.one() * (1 if not w.lower and not w.upper else 0)
            s1, s2 = H.zero(), H.zero()
            for (a, b), c in d.terms.items():
                s1 = s1 + c * (antipode_word(H, a) * H.word(b))
                s2 = s2 + c * (H.word(a) * antipode_word(H, b))
            res.check(s1 == eps and s2 == eps, lambda: f"antipode axiom fails at {w}: {print_canonical(s1)}")
    for _ in range(pairs):
        x, y = random_word(rng, t, 3), random_word(rng, t, 3)
        lhs = comultiply(H.word(x) * H.word(y))
        rhs = delta(x) * delta(y)
        res.check(lhs == rhs, lambda: f"Delta not multiplicative at {x}, {y}")
    return res


def check_comodule(s: Setting, rng: random.Random, words: int = 100) -> SuiteResult:
    """A_lambda is a U-comodule algebra with trivial covariants; phi_lambda is colinear."""
    res = SuiteResult("comodule")
    A, U = s.algebra("Alambda"), s.algebra("U")
    t = s.cartan.t
    small = basis_words(t, 2, 1, torus_weight=2)
    for a in small:
        for b in small:
            lhs = coact(A.word(a) * A.word(b))
            rhs = coact_word(A, a) * coact_word(A, b)
            res.check(lhs == rhs, lambda: f"delta(ab) != delta(a)delta(b) at {a}, {b}")
        d = coact_word(A, a)
        left = d.map_leg(0, lambda w: coact_word(A, w))
        right = d.map_leg(1, lambda w: comultiply_word(U, w))
        res.check(left == right, lambda: f"coaction not coassociative at {a}")
    cov = covariants(A, max_letters=2, torus_cap=2, torus_weight=2)
    res.check(len(cov) == 1 and cov[0] == cov[0].scalar_part() * A.one(),
              lambda: f"covariants: {[print_canonical(c) for c in cov]}")

    def colinear(w: NormalWord) -> bool:
        x = A.word(w)
        img = to_plain(phi_lambda(x))
        lhs = comultiply(img)
        rhs = coact(x).map_leg(0, lambda v: to_plain(phi_lambda(A.word(v))))
        return lhs == rhs

    gens = [NormalWord(w.lower, w.upper, w.torus) for w in basis_words(t, 1, 1, torus_weight=1)]
    for w in gens:
        res.check(colinear(w), lambda: f"phi_lambda not colinear at generator {w}")
    for _ in range(words):
        w = random_word(rng, t, 4)
        res.check(colinear(w), lambda: f"phi_lambda not colinear at {w}")
    return res


def _random_in_domain_pair(rng: random.Random, t: int, max_len: int) -> tuple[NormalWord, NormalWord]:
    pattern = rng.choice(("LU", "UU", "LL"))
    fx, fy = pattern[0] + "T", pattern[1] + "T"
    return random_word(rng, t, max_len, fx), random_word(rng, t, max_len, fy)


def check_oracle(s: Setting, rng: random.Random, pairs: int = 300) -> SuiteResult:
    """Sweedler-oracle sigma_rho products agree with the A_lambda products."""
    res = SuiteResult("oracle")
    A, G = s.algebra("Alambda"), s.algebra("grU")
    p = s.params
    sr = sigma_rho(p)
    t = s.cartan.t

    def agree(w1: NormalWord, w2: NormalWord) -> bool:
        structural = to_plain(relabel(A.word(w1) * A.word(w2), "sigmaU"))
        x, y = to_plain(phi_lambda(A.word(w1))), to_plain(phi_lambda(A.word(w2)))
        return structural == twisted_product_oracle(x, y, sr)

    gens = [w for w in basis_words(t, 1, 1, torus_weight=1) if not w.is_unit()]
    for a in gens:
        for b in gens:
            res.check(agree(a, b), lambda: f"generator pair {a}, {b}")
    for _ in range(pairs):
        a, b = _random_in_domain_pair(rng, t, 3)
        res.check(agree(a, b), lambda: f"in-domain pair {a}, {b}")
    r = rho(p)
    for i in range(t):
        for j in range(t):
            e, f = G.upper(i), G.lower(j)
            com = twisted_product_oracle(e, f, r, "two-sided") - twisted_product_oracle(f, e, r, "two-sided")
            want = G.zero()
            if i == j:
                want = (G.torus(i, 1) - G.torus(i, -1)) * (1 / p.bracket(i))
            res.check(com == want, lambda: f"rho-twisted [E{i + 1}, F{j + 1}] = {print_canonical(com)}")
    return res


def check_lemma1(s: Setting, rng: random.Random, pairs: int = 200, ranks=(1, 2), caps=(1, 2)) -> SuiteResult:
    """mu is multiplicative; the truncated cotensor product has the expected size."""
    res = SuiteResult("lemma1")
    A = s.algebra("Alambda")
    t = s.cartan.t
    for _ in range(pairs):
        g = tuple(rng.randint(-3, 3) for _ in range(t))
        h = tuple(rng.randint(-3, 3) for _ in range(t))
        res.check(lemma1_mu_check(g, h, A), lambda: f"mu fails at {g}, {h}")
    for r in ranks:
        cartan = preset("A", r)
        params = random_params(rng, cartan)
        B = make_algebra("Alambda", params, cartan)
        for n in caps:
            dim = len(cotensor_truncated(B, n))
            res.check(dim == (2 * n + 1) ** r, lambda: f"cotensor dimension {dim} at t={r}, n={n}")
    res.check(restrict_i_star(A) == twisted_group_algebra(A), lambda: "i* differs from the lambda-torus")
    return res


def _sweedler(word: tuple, n: int) -> list[tuple]:
    if n == 1:
        return [(word,)]
    return [(a,) + rest for a, b in raw_coproduct(word) for rest in _sweedler(b, n - 1)]


def check_ms_twist(s: Setting, rng=None) -> SuiteResult:
    """Right rho-twist of the left sigma~-twist equals the left sigma_rho-twist of gr U^rho."""
    res = SuiteResult("ms-twist")
    G = s.algebra("grU")
    p = s.params
    st, r, ri = sigma_tilde(p), rho(p), rho_inverse(p)
    conv = convolve(st, ri)
    for a in all_letters(s.cartan.t):
        for b in all_letters(s.cartan.t):
            lhs = G.zero()
            for x1, x2, x3 in _sweedler((a,), 3):
                for y1, y2, y3 in _sweedler((b,), 3):
                    c = st.value(x1, y1) * ri.value(x3, y3)
                    if c:
                        lhs = lhs + c * word_element(G, x2 + y2)
            rhs = G.zero()
            for x1, x2, x3, x4 in _sweedler((a,), 4):
                for y1, y2, y3, y4 in _sweedler((b,), 4):
                    c = conv.value(x1, y1) * r.value(x2, y2) * ri.value(x4, y4)
                    if c:
                        rhs = rhs + c * word_element(G, x3 + y3)
            res.check(lhs == rhs, lambda: f"generators {a}, {b}: {print_canonical(lhs)} vs {print_canonical(rhs)}")
    return res


def check_classification(s: Setting, rng: random.Random, pairs: int = 50) -> SuiteResult:
    """The invariant separates families with different lambda^2 and only those at the commutator layer."""
    res = SuiteResult("classification")
    cartan = s.cartan
    t = cartan.t
    if t < 2:
        cartan = preset("A", 2)
        t = 2
    for _ in range(pairs):
        p1 = random_params(rng, cartan)
        p2 = random_params(rng, cartan) if rng.random() < 0.7 else p1
        p2 = make_params(p1.q, p2.upper_family(), cartan)
        h1 = homotopy_invariant(make_algebra("Alambda", p1, cartan))
        h2 = homotopy_invariant(make_algebra("Alambda", p2, cartan))
        sq_differ = any(p1.lam[i][j] ** 2 != p2.lam[i][j] ** 2 for i in range(t) for j in range(t))
        res.check(h1.commutator_layer_equal(h2) == (not sq_differ),
                  lambda: f"commutator layer misjudges {p1.upper_family()} vs {p2.upper_family()}")
        res.check((h1 == h2) == (p1.lam == p2.lam), lambda: f"invariant misjudges {p1.upper_family()} vs {p2.upper_family()}")
    A = s.algebra("Alambda")
    if A.t >= 1:
        roundtrip = psi(phi_lambda(A.one())).spec
        res.check(homotopy_invariant(roundtrip) == homotopy_invariant(A), lambda: "invariant changed under phi/psi")
    return res


# -- engine hygiene ------------------------------------------------------------------

HYGIENE_KINDS = ("U", "grU", "Alambda", "sigmaU", "Torus")


def _random_raw(rng: random.Random, spec: AlgebraSpec, max_len: int = 5) -> list:
    t = spec.t
    out = []
    for _ in range(rng.randint(1, 3)):
        word = []
        for _ in range(rng.randint(0, max_len)):
            fam = rng.choice("LUT" if spec.has_letters else "T")
            i = rng.randrange(t)
            word.append(("T", i, rng.choice((1, -1))) if fam == "T" else (fam, i))
        out.append((random_fraction(rng), word))
    return out


def local_confluence(spec: AlgebraSpec) -> SuiteResult:
    """Every two-rule overlap on three letters reduces to one normal form."""
    res = SuiteResult(f"confluence[{spec.kind}]")
    t = spec.t
    alphabet = [("T", i, e) for i in range(t) for e in (1, -1)]
    if spec.has_letters:
        alphabet += [("U", i) for i in range(t)] + [("L", i) for i in range(t)]
    for w in itertools.product(alphabet, repeat=3):
        r0, r1 = spec.rewrite_at(w, 0), spec.rewrite_at(w, 1)
        if r0 is None or r1 is None:
            continue
        a, b = spec.reduce_raw(r0), spec.reduce_raw(r1)
        res.check(a == b, lambda: f"overlap {w}: {print_canonical(a)} vs {print_canonical(b)}")
    return res


def check_hygiene(s: Setting, rng: random.Random, nf_cases: int = 500, triples: int = 300, prints: int = 500) -> SuiteResult:
    res = SuiteResult("hygiene")
    specs = [s.algebra(k) for k in HYGIENE_KINDS]
    for k in range(nf_cases):
        spec = specs[k % len(specs)]
        raw = _random_raw(rng, spec)
        nf = normal_form(raw, spec)
        res.check(normal_form(nf, spec) == nf, lambda: f"normal form not idempotent on {raw}")
        res.check(spec.reduce_raw(raw) == nf, lambda: f"rule-by-rule reduction disagrees on {raw}")
    for k in range(triples):
        spec = specs[k % len(specs)]
        x, y, z = (random_element(rng, spec) for _ in range(3))
        res.check((x * y) * z == x * (y * z), lambda: f"associativity fails in {spec.kind}")
    for spec in specs:
        res.merge(local_confluence(spec))
    for k in range(prints):
        spec = specs[k % len(specs)]
        e = random_element(rng, spec)
        text = print_canonical(e)
        back = parse_element(text, spec)
        res.check(back == e, lambda: f"round trip of {text!r} gave {print_canonical(back)!r}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "serre-transport": check_serre_transport,
    "exponent": check_exponent_law,
    "cocycle": lambda s, rng: check_cocycle(s, rng).merge(check_sigma_rho_table(s, rng)).merge(check_rho_inverse_random(s, rng)),
    "hopf": check_hopf,
    "comodule": check_comodule,
    "oracle": check_oracle,
    "lemma1": check_lemma1,
    "ms-twist": check_ms_twist,
    "classification": check_classification,
    "hygiene": check_hygiene,
}


def run_suite(name: str, setting: Setting, seed: int = 0, **options) -> SuiteResult:
    if name == "all":
        out = SuiteResult("all")
        for key in SUITES:
            res = run_suite(key, setting, seed)
            out.merge(res)
            out.notes.append(res.summary())
        return out
    if name not in SUITES:
        raise KeyError(name)
    res = SUITES[name](setting, random.Random(seed), **options)
    res.name = name
    return res
