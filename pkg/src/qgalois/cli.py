"""Command-line front end: ``qgalois [global options] <command> ...``.

Exit status is 0 on success, 1 when a verification suite finds a
counterexample, 2 on usage, configuration or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import Element, serre_element
from .cartan import CartanDatum, UnsupportedRank, preset, validate
from .checks import SUITES, Setting, run_suite
from .coeffs import ParameterError, make_params
from .cocycle import OutsideDomain
from .expr import ParseError, element_records, parse_element, print_canonical, print_tensor, tensor_records
from .galois import homotopy_invariant
from .hopf import antipode, coact, comultiply, counit

ALGEBRAS = {"u": "U", "gru": "grU", "alambda": "Alambda", "torus": "Torus", "sigmau": "sigmaU"}
DEFAULT_CONFIG = {"cartan": {"family": "A", "rank": 2}, "q": {"num": 2, "den": 1}, "lambda": [[1, 2, 3, 1]]}


class UsageError(Exception):
    pass


# -- configuration ---------------------------------------------------------------


def _fraction(v, what: str) -> Fraction:
    if isinstance(v, dict):
        try:
            num, den = v["num"], v.get("den", 1)
        except KeyError:
            raise UsageError(f"{what} needs 'num' (and optionally 'den')") from None
    else:
        num, den = v, 1
    if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool) or isinstance(den, bool):
        raise UsageError(f"{what} must be given by integers")
    if den == 0:
        raise UsageError(f"{what} has zero denominator")
    return Fraction(num, den)


def setting_from_config(cfg: dict) -> Setting:
    """Build the Cartan datum and parameters from the JSON structure (1-based indices)."""
    if not isinstance(cfg, dict):
        raise UsageError("configuration must be a JSON object")
    c = cfg.get("cartan", DEFAULT_CONFIG["cartan"])
    try:
        if "matrix" in c:
            cartan = CartanDatum(tuple(tuple(r) for r in c["matrix"]), tuple(c.get("d", [1] * len(c["matrix"]))))
            report = validate(cartan)
            if not report:
                raise UsageError(f"invalid Cartan datum: {report.message}")
        else:
            cartan = preset(c["family"], int(c["rank"]))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed cartan entry: {exc}") from None
    except UnsupportedRank as exc:
        raise UsageError(str(exc)) from None
    q = _fraction(cfg.get("q", DEFAULT_CONFIG["q"]), "q")
    family = {}
    for entry in cfg.get("lambda", []):
        if not isinstance(entry, list) or len(entry) not in (3, 4):
            raise UsageError("lambda entries are [i, j, num, den]")
        i, j, num = entry[:3]
        den = entry[3] if len(entry) == 4 else 1
        if not (isinstance(i, int) and isinstance(j, int)):
            raise UsageError("lambda indices must be integers")
        if i > j:
            i, j, num, den = j, i, den, num
        family[(i - 1, j - 1)] = _fraction({"num": num, "den": den}, f"lambda_{i}{j}")
    try:
        params = make_params(q, family, cartan)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    return Setting(cartan, params)


def load_setting(path: str | None) -> Setting:
    if path is None:
        return setting_from_config(DEFAULT_CONFIG)
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from None
    return setting_from_config(cfg)


def algebra_kind(name: str) -> str:
    kind = ALGEBRAS.get(name.lower())
    if kind is None:
        raise UsageError(f"unknown algebra {name!r}; choose from U, grU, Alambda, torus, sigmaU")
    return kind


# -- output ------------------------------------------------------------------------


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def line(self, text: str) -> None:
        print(text, file=self.stream)

    def record(self, obj: dict) -> None:
        self.line(json.dumps(obj, sort_keys=True))

    def element(self, e: Element) -> None:
        if self.as_json:
            for rec in element_records(e):
                self.record(rec)
        else:
            self.line(print_canonical(e))

    def tensor(self, t) -> None:
        if self.as_json:
            for rec in tensor_records(t):
                self.record(rec)
        else:
            self.line(print_tensor(t))

    def scalar(self, c: Fraction) -> None:
        if self.as_json:
            self.record({"num": c.numerator, "den": c.denominator})
        else:
            self.line(str(c))


# -- commands ----------------------------------------------------------------------


def _split_algebra(args: list[str], n: int, default: str) -> tuple[str, list[str]]:
    """``[algebra] a1 .. an`` with the algebra optional."""
    if len(args) == n + 1:
        return algebra_kind(args[0]), args[1:]
    if len(args) == n:
        return algebra_kind(default), args
    raise UsageError(f"expected {n} argument(s) after an optional algebra name")


def cmd_nf(ns, s: Setting, out: Output) -> int:
    kind, (text,) = _split_algebra(ns.args, 1, ns.algebra or "U")
    out.element(parse_element(text, s.algebra(kind)))
    return 0


def cmd_mul(ns, s: Setting, out: Output) -> int:
    kind, (a, b) = _split_algebra(ns.args, 2, ns.algebra or "U")
    spec = s.algebra(kind)
    out.element(parse_element(a, spec) * parse_element(b, spec))
    return 0


def _hopf_element(ns, s: Setting) -> Element:
    kind = algebra_kind(ns.algebra or "U")
    if kind not in ("U", "grU"):
        raise UsageError("the Hopf structure lives on U or grU")
    return parse_element(ns.expr, s.algebra(kind))


def cmd_delta(ns, s, out) -> int:
    out.tensor(comultiply(_hopf_element(ns, s)))
    return 0


def cmd_eps(ns, s, out) -> int:
    out.scalar(counit(_hopf_element(ns, s)))
    return 0


def cmd_antipode(ns, s, out) -> int:
    out.element(antipode(_hopf_element(ns, s)))
    return 0


def cmd_coact(ns, s, out) -> int:
    if ns.algebra and algebra_kind(ns.algebra) != "Alambda":
        raise UsageError("the coaction is defined on Alambda")
    out.tensor(coact(parse_element(ns.expr, s.algebra("Alambda"))))
    return 0


def cmd_serre(ns, s, out) -> int:
    kind, (side, i, j) = _split_algebra(ns.args, 3, ns.algebra or "U")
    if side not in ("upper", "lower"):
        raise UsageError("side must be 'upper' or 'lower'")
    try:
        i, j = int(i), int(j)
    except ValueError:
        raise UsageError("Serre indices must be integers") from None
    t = s.cartan.t
    if not (1 <= i <= t and 1 <= j <= t) or i == j:
        raise UsageError(f"Serre indices must be distinct and in 1..{t}")
    out.element(serre_element(s.algebra(kind), side, i - 1, j - 1, lambda_weighted=ns.weighted))
    return 0


CAP_OPTIONS = {
    "hopf": lambda c: {"max_len": c},
    "exponent": lambda c: {"top": c},
    "lemma1": lambda c: {"caps": tuple(range(1, c + 1))},
}


def cmd_verify(ns, s, out) -> int:
    name = ns.suite
    if name != "all" and name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    extra = {}
    if ns.cap is not None:
        if ns.cap < 1:
            raise UsageError("--cap must be at least 1")
        if name in CAP_OPTIONS:
            extra = CAP_OPTIONS[name](ns.cap)
    res = run_suite(name, s, seed=ns.seed, **extra)
    if out.as_json:
        out.record({"suite": name, "ok": res.ok, "cases": res.cases, "counterexample": res.failure})
    else:
        for note in res.notes:
            out.line(note)
        out.line(res.summary())
    return 0 if res.ok else 1


def cmd_invariant(ns, s, out) -> int:
    inv = homotopy_invariant(s.algebra("Alambda"))
    t = s.cartan.t
    for i in range(t):
        for j in range(i + 1, t):
            u, lam = inv.u(i, j), inv.family[i][j]
            if out.as_json:
                out.record({
                    "i": i + 1, "j": j + 1,
                    "u": {"num": u.numerator, "den": u.denominator},
                    "lambda": {"num": lam.numerator, "den": lam.denominator},
                })
            else:
                out.line(f"u_{i + 1}{j + 1} = {u}  lambda_{i + 1}{j + 1} = {lam}")
    if t < 2 and not out.as_json:
        out.line("rank 1: no lambda parameters, the torus is commutative")
    return 0


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--config", default=dflt(None), help="JSON file with cartan, q and lambda (default: A2, q=2, lambda_12=3)")
    parser.add_argument("--algebra", default=dflt(None), help="U, grU, Alambda, torus or sigmaU")
    parser.add_argument("--json", action="store_true", default=dflt(False), help="one JSON record per output term")
    parser.add_argument("--seed", type=int, default=dflt(0), help="seed of the randomized suites")
    parser.add_argument("--cap", type=int, default=dflt(None), help="truncation degree used by verify suites")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgalois", description="Exact computations in U_q(g), gr U and the Galois objects A_lambda.")
    _global_options(p, suppress=False)
    # global options are also accepted after the command name
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    s = add("nf", help="normal form: nf [algebra] EXPR")
    s.add_argument("args", nargs="+")
    s.set_defaults(func=cmd_nf)
    s = add("mul", help="product: mul [algebra] EXPR1 EXPR2")
    s.add_argument("args", nargs="+")
    s.set_defaults(func=cmd_mul)
    for name, func, what in (
        ("delta", cmd_delta, "coproduct"),
        ("coact", cmd_coact, "coaction of Alambda"),
        ("eps", cmd_eps, "counit"),
        ("antipode", cmd_antipode, "antipode"),
    ):
        s = add(name, help=what)
        s.add_argument("expr")
        s.set_defaults(func=func)
    s = add("serre", help="Serre element: serre [algebra] SIDE I J")
    s.add_argument("args", nargs="+")
    s.add_argument("--weighted", action="store_true", help="lambda-weighted upper element")
    s.set_defaults(func=cmd_serre)
    s = add("verify", help="run a verification suite")
    s.add_argument("suite", help=", ".join(list(SUITES) + ["all"]))
    s.set_defaults(func=cmd_verify)
    s = add("invariant", help="homotopy invariant of A_lambda")
    s.set_defaults(func=cmd_invariant)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    out = Output(ns.json)
    try:
        setting = load_setting(ns.config)
        return ns.func(ns, setting, out)
    except (UsageError, ParseError, OutsideDomain, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
