"""Command-line front end: configuration files, an element/word parser, and
subcommand dispatch.

Exit codes: 0 success / true, 1 false / search exhausted, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from . import algebra as _alg
from .errors import (
    DivringError,
    NotFoundUpTo,
    ParseError,
    SearchExhausted,
    UnknownSymbol,
    ValidationError,
)
from .exactfield import QQ, PrimeField
from .identities import is_alg_bounded, left_minpoly, minpoly_element
from .maxsubfield import MODES, search_add_commutator, search_mult_commutator, verify_bound_d2
from .subfield import build_subfield, regular_rep
from .words import Word, bell_decompose
from .rewrite import default_length_cap, rewrite_word

# -- configuration ---------------------------------------------------------------

_SECTIONS = {
    "field": ("kind", "modulus"),
    "algebra": ("kind", "a", "b", "n", "squares", "dim", "unit"),
    "subfield": ("generator", "generators", "var"),
    "defaults": ("seed", "budget"),
}
_TABLE_KEY = re.compile(r"c\[(\d+)\]\[(\d+)\]\[(\d+)\]$")
_ALGEBRA_KINDS = ("quaternion", "matrix", "multiquadratic", "table")


@dataclass
class Config:
    field_kind: str = "rational"
    modulus: int | None = None
    algebra_kind: str = "quaternion"
    params: dict = field(default_factory=lambda: {"a": Fraction(-1), "b": Fraction(-1)})
    generator: str | None = "i"
    generators: list | None = field(default_factory=lambda: ["i", "j"])
    var: str | None = None
    seed: int | None = None
    budget: int | None = None

    def field_ctx(self):
        return QQ if self.field_kind == "rational" else PrimeField(self.modulus)

    def build_algebra(self):
        ctx = self.field_ctx()
        p = self.params
        if self.algebra_kind == "quaternion":
            return _alg.quaternion(ctx, p["a"], p["b"])
        if self.algebra_kind == "matrix":
            return _alg.matrix_algebra(ctx, p["n"])
        if self.algebra_kind == "multiquadratic":
            return _alg.multiquadratic(ctx, p["squares"])
        return _alg.from_table(ctx, p["dim"], p["constants"], unit=p.get("unit"))


def _frac(text, key, lineno):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(key, f"not a rational number (line {lineno})") from None


def _int(text, key, lineno):
    try:
        return int(text.strip())
    except ValueError:
        raise ValidationError(key, f"not an integer (line {lineno})") from None


def parse_config(text):
    """Parse the sectioned ``key = value`` format into a validated :class:`Config`."""
    raw = {}
    section = None
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        stripped = body.strip()
        if stripped.startswith("["):
            m = re.fullmatch(r"\[(\w+)\]", stripped)
            if not m or m.group(1) not in _SECTIONS:
                raise ParseError(f"unknown section {stripped!r}", lineno, body.index("[") + 1)
            section = m.group(1)
            raw.setdefault(section, {})
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno, len(body) - len(body.lstrip()) + 1)
        if section is None:
            raise ParseError("key outside of any section", lineno, 1)
        key, value = (s.strip() for s in body.split("=", 1))
        allowed = key in _SECTIONS[section] or (
            section == "algebra" and _TABLE_KEY.match(key))
        if not allowed:
            raise ParseError(f"unknown key {key!r} in [{section}]", lineno, body.index(key) + 1)
        if key in raw[section]:
            raise ParseError(f"duplicate key {key!r}", lineno, body.index(key) + 1)
        raw[section][key] = (value, lineno)
    return _validate(raw)


def _validate(raw):
    cfg = Config(params={}, generator=None, generators=None)
    fld = raw.get("field", {})
    kind, ln = fld.get("kind", ("rational", 0))
    if kind not in ("rational", "prime"):
        raise ValidationError("field.kind", f"expected rational or prime, got {kind!r}")
    cfg.field_kind = kind
    if kind == "prime":
        if "modulus" not in fld:
            raise ValidationError("field.modulus", "required for a prime field")
        p = _int(fld["modulus"][0], "field.modulus", fld["modulus"][1])
        if p < 2 or not gmpy2.is_prime(p):
            raise ValidationError("field.modulus", f"{p} is not prime")
        cfg.modulus = p
    elif "modulus" in fld:
        raise ValidationError("field.modulus", "only allowed for prime fields")

    alg = raw.get("algebra", {})
    akind, _ = alg.get("kind", ("quaternion", 0))
    if akind not in _ALGEBRA_KINDS:
        raise ValidationError("algebra.kind", f"expected one of {_ALGEBRA_KINDS}")
    cfg.algebra_kind = akind
    needed = {"quaternion": ("a", "b"), "matrix": ("n",), "multiquadratic": ("squares",), "table": ("dim",)}[akind]
    for key in alg:
        if key == "kind":
            continue
        ok = key in needed or (akind == "table" and (key == "unit" or _TABLE_KEY.match(key)))
        if not ok:
            raise ValidationError(f"algebra.{key}", f"not used by kind {akind}")
    for key in needed:
        if key not in alg:
            raise ValidationError(f"algebra.{key}", f"required for kind {akind}")
    if akind == "quaternion":
        for key in ("a", "b"):
            v = _frac(alg[key][0], f"algebra.{key}", alg[key][1])
            if v == 0:
                raise ValidationError(f"algebra.{key}", "must be nonzero")
            cfg.params[key] = v
        if cfg.field_kind == "prime" and cfg.modulus == 2:
            raise ValidationError("field.modulus", "quaternion algebras need characteristic != 2")
    elif akind == "matrix":
        n = _int(alg["n"][0], "algebra.n", alg["n"][1])
        if n < 1:
            raise ValidationError("algebra.n", "must be positive")
        cfg.params["n"] = n
    elif akind == "multiquadratic":
        sq = [_frac(s, "algebra.squares", alg["squares"][1]) for s in alg["squares"][0].split(",")]
        if any(v == 0 for v in sq):
            raise ValidationError("algebra.squares", "must be nonzero")
        cfg.params["squares"] = sq
    else:
        dim = _int(alg["dim"][0], "algebra.dim", alg["dim"][1])
        if dim < 1:
            raise ValidationError("algebra.dim", "must be positive")
        constants = {}
        for key, (value, ln) in alg.items():
            m = _TABLE_KEY.match(key)
            if m:
                idx = tuple(int(g) for g in m.groups())
                if max(idx) >= dim:
                    raise ValidationError(f"algebra.{key}", f"index out of range for dim {dim}")
                constants[idx] = _frac(value, f"algebra.{key}", ln)
        cfg.params["dim"] = dim
        cfg.params["constants"] = dict(sorted(constants.items()))
        if "unit" in alg:
            unit = [_frac(s, "algebra.unit", alg["unit"][1]) for s in alg["unit"][0].split(",")]
            if len(unit) != dim:
                raise ValidationError("algebra.unit", f"needs {dim} entries")
            cfg.params["unit"] = unit

    sub = raw.get("subfield", {})
    if "generator" in sub:
        cfg.generator = sub["generator"][0]
        parse_expr(cfg.generator)
    if "generators" in sub:
        cfg.generators = [g.strip() for g in sub["generators"][0].split(",")]
        for g in cfg.generators:
            parse_expr(g)
    if "var" in sub:
        cfg.var = sub["var"][0]
    dflt = raw.get("defaults", {})
    if "seed" in dflt:
        cfg.seed = _int(dflt["seed"][0], "defaults.seed", dflt["seed"][1])
    if "budget" in dflt:
        cfg.budget = _int(dflt["budget"][0], "defaults.budget", dflt["budget"][1])
        if cfg.budget < 1:
            raise ValidationError("defaults.budget", "must be positive")
    return cfg


def format_config(cfg):
    """Canonical text form; ``parse_config(format_config(c)) == c``."""
    lines = ["[field]", f"kind = {cfg.field_kind}"]
    if cfg.modulus is not None:
        lines.append(f"modulus = {cfg.modulus}")
    lines += ["", "[algebra]", f"kind = {cfg.algebra_kind}"]
    p = cfg.params
    if cfg.algebra_kind == "quaternion":
        lines += [f"a = {p['a']}", f"b = {p['b']}"]
    elif cfg.algebra_kind == "matrix":
        lines.append(f"n = {p['n']}")
    elif cfg.algebra_kind == "multiquadratic":
        lines.append("squares = " + ", ".join(str(s) for s in p["squares"]))
    else:
        lines.append(f"dim = {p['dim']}")
        if "unit" in p:
            lines.append("unit = " + ", ".join(str(s) for s in p["unit"]))
        for (i, j, k), v in p["constants"].items():
            lines.append(f"c[{i}][{j}][{k}] = {v}")
    sub = []
    if cfg.generator is not None:
        sub.append(f"generator = {cfg.generator}")
    if cfg.generators is not None:
        sub.append("generators = " + ", ".join(cfg.generators))
    if cfg.var is not None:
        sub.append(f"var = {cfg.var}")
    if sub:
        lines += ["", "[subfield]"] + sub
    dflt = []
    if cfg.seed is not None:
        dflt.append(f"seed = {cfg.seed}")
    if cfg.budget is not None:
        dflt.append(f"budget = {cfg.budget}")
    if dflt:
        lines += ["", "[defaults]"] + dflt
    return "\n".join(lines) + "\n"


# -- element expressions ---------------------------------------------------------


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    symbol: str | None  # None: a bare scalar


@dataclass(frozen=True)
class ElementExpr:
    terms: tuple


_TOKEN = re.compile(r"\s*(?:(\d+)|([ijk])(?![A-Za-z0-9])|(e\d\d)|(b\d+)|([+\-*/]))")


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected input {text[col - 1:]!r}", 1, col)
        col = m.start(m.lastindex) + 1
        kind = ("int", "sym", "sym", "sym", "op")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), col))
        pos = m.end()
    return out


def parse_expr(text):
    """Parse ``term (('+'|'-') term)*`` into an :class:`ElementExpr`."""
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty expression", 1, 1)
    pos = 0
    terms = []

    def peek():
        return toks[pos] if pos < len(toks) else ("end", None, len(text) + 1)

    first = True
    while True:
        kind, val, col = peek()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            pos += 1
        elif not first:
            raise ParseError("expected '+' or '-'", 1, col)
        first = False
        kind, val, col = peek()
        if kind == "int":
            pos += 1
            coeff = Fraction(int(val))
            if peek()[:2] == ("op", "/"):
                pos += 1
                k2, v2, c2 = peek()
                if k2 != "int" or int(v2) == 0:
                    raise ParseError("expected a positive denominator", 1, c2)
                pos += 1
                coeff = Fraction(int(val), int(v2))
            symbol = None
            if peek()[:2] == ("op", "*"):
                pos += 1
                k2, v2, c2 = peek()
                if k2 != "sym":
                    raise ParseError("expected a basis symbol after '*'", 1, c2)
                pos += 1
                symbol = v2
        elif kind == "sym":
            pos += 1
            coeff, symbol = Fraction(1), val
        else:
            raise ParseError("expected a coefficient or basis symbol", 1, col)
        terms.append(Term(sign * coeff, symbol))
        if pos == len(toks):
            return ElementExpr(tuple(terms))


def format_expr(expr):
    """Canonical text; reparsing gives an equal AST."""
    out = []
    for n, t in enumerate(expr.terms):
        c = t.coeff
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if t.symbol is None:
            body = str(mag)
        elif mag == 1:
            body = t.symbol
        else:
            body = f"{mag}*{t.symbol}"
        if n == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def _resolve(symbol, alg):
    if symbol in alg.basis_names:
        return alg.basis_names.index(symbol)
    m = re.fullmatch(r"b(\d+)", symbol)
    if m and int(m.group(1)) < alg.dim:
        return int(m.group(1))
    raise UnknownSymbol(f"{symbol!r} is not a basis symbol of this algebra")


def eval_expr(expr, alg):
    ctx = alg.ctx
    x = alg.zero()
    for t in expr.terms:
        c = ctx.div(ctx.from_int(t.coeff.numerator), ctx.from_int(t.coeff.denominator))
        if t.symbol is None:
            x = x + alg.one().scale(c)
        else:
            x = x + alg.basis(_resolve(t.symbol, alg)).scale(c)
    return x


def parse_element(text, alg):
    return eval_expr(parse_expr(text), alg)


# -- dispatch ----------------------------------------------------------------------


class _Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code


def _build_parser():
    ap = argparse.ArgumentParser(prog="divring", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="configuration file")
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        for f in flags:
            f(p)
        return p

    element = lambda p: p.add_argument("--element", required=True, help="element expression")
    degree = lambda p: p.add_argument("--degree", type=int, required=True)
    seed = lambda p: p.add_argument("--seed", type=int)
    budget = lambda p: p.add_argument("--budget", type=int)
    wordf = lambda p: p.add_argument("--word", required=True, help='e.g. "x1 x2 x1"')

    cmd("minpoly", "minimal polynomial over the centre", element)
    cmd("leftminpoly", "left minimal polynomial over the subfield", element)
    cmd("gd-check", "algebraic of degree <= D via g_D on basis tuples", element, degree)
    cmd("commutator-search", "commutator generating a maximal subfield", element, seed, budget,
        lambda p: p.add_argument("--kind", choices=("mult", "add", "both"), default="both"))
    cmd("regrep", "matrix over K of left multiplication", element)
    cmd("word-decompose", "power or dominant split of a word", wordf, degree)
    cmd("rewrite", "reduce a word to short words over K", wordf, degree,
        lambda p: p.add_argument("--cap", type=int),
        lambda p: p.add_argument("--step-cap", type=int, default=10_000))
    cmd("verify", "dimension-bound report", seed,
        lambda p: p.add_argument("--mode", choices=MODES, default="normal_subgroup"),
        lambda p: p.add_argument("--samples", type=int, default=200),
        lambda p: p.add_argument("--height", type=int, default=3))
    cmd("hilbert", "local Hilbert symbols of (a, b / Q)",
        lambda p: p.add_argument("--a"), lambda p: p.add_argument("--b"))
    return ap


_RANDOMIZED = ("commutator-search", "verify")


def _load_config(args):
    if args.config is None:
        return Config()
    try:
        with open(args.config, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise _Exit(2, f"cannot read config: {exc}") from None


def _subfield(cfg, alg):
    if cfg.generator is None:
        raise ValidationError("subfield.generator", "this command needs a subfield generator")
    u = parse_element(cfg.generator, alg)
    var = cfg.var or (cfg.generator if re.fullmatch(r"[A-Za-z]\w*", cfg.generator) else "u")
    return build_subfield(alg, u, var=var)


def _gens(cfg, alg):
    if not cfg.generators:
        raise ValidationError("subfield.generators", "this command needs generators")
    return [parse_element(g, alg) for g in cfg.generators]


def _seed(args, cfg):
    if getattr(args, "seed", None) is not None:
        return args.seed
    if args.json and cfg.seed is None:
        raise _Exit(2, f"{args.command} --json needs an explicit --seed")
    return cfg.seed if cfg.seed is not None else 0


def _run(args):
    cfg = _load_config(args)
    cmd = args.command
    if cmd == "hilbert":
        a = Fraction(args.a) if args.a is not None else cfg.params.get("a")
        b = Fraction(args.b) if args.b is not None else cfg.params.get("b")
        if a is None or b is None:
            raise ValidationError("a/b", "give --a and --b or a quaternion config")
        if a == 0 or b == 0:
            raise ValidationError("a/b", "must be nonzero")
        symbols = _alg.local_symbols(a, b)
        division = any(s == -1 for s in symbols.values())
        out = {"a": str(a), "b": str(b),
               "symbols": {str(p): s for p, s in symbols.items()}, "division": division}
        text = "\n".join([f"({a}, {b})_{p} = {s}" for p, s in symbols.items()]
                         + [f"division: {'true' if division else 'false'}"])
        return (0 if division else 1), out, text

    if cmd in ("word-decompose",):
        w = Word.parse(args.word, len(cfg.generators or []) or None)
        dec = bell_decompose(w, args.degree)
        out = {"word": str(w), "degree": args.degree,
               "decomposition": None if dec is None else _decomp_dict(dec)}
        return (0 if dec else 1), out, str(dec) if dec else "no decomposition"

    alg = cfg.build_algebra()
    if cmd == "minpoly":
        x = parse_element(args.element, alg)
        f = minpoly_element(x)
        return 0, {"element": str(x), "minpoly": f.format("t"), "degree": f.degree}, f.format("t")
    if cmd == "gd-check":
        x = parse_element(args.element, alg)
        ok, bad = is_alg_bounded(x, args.degree, witness=True)
        out = {"element": str(x), "degree": args.degree, "bounded": ok,
               "witness": None if bad is None else [alg.basis_names[b] for b in bad]}
        return (0 if ok else 1), out, "true" if ok else "false"
    if cmd == "commutator-search":
        a = parse_element(args.element, alg)
        seed = _seed(args, cfg)
        budget = args.budget or cfg.budget or 200
        kinds = ("mult", "add") if args.kind == "both" else (args.kind,)
        out = {"element": str(a), "seed": seed, "budget": budget}
        lines = []
        code = 0
        for kind in kinds:
            search = search_mult_commutator if kind == "mult" else search_add_commutator
            try:
                w = search(a, budget, seed)
                out[kind] = {"partner": str(w.partner), "commutator": str(w.commutator),
                             "minpoly": w.minpoly.format("t"), "tried": w.tried}
                lines.append(f"{kind}: partner {w.partner}, commutator {w.commutator}, "
                             f"minpoly {w.minpoly.format('t')}")
            except SearchExhausted as exc:
                out[kind] = None
                lines.append(f"{kind}: exhausted ({exc})")
                code = 1
        return code, out, "\n".join(lines)
    if cmd == "verify":
        seed = _seed(args, cfg)
        rng = random.Random(seed)
        sample = [_alg.random_element(alg, args.height, rng) for _ in range(args.samples)]
        rep = verify_bound_d2(alg, None, args.mode, sample)
        return (0 if rep.bound_holds and not rep.failures else 1), rep.as_dict(), rep.to_text()

    ctx = _subfield(cfg, alg)
    if cmd == "leftminpoly":
        x = parse_element(args.element, alg)
        f = left_minpoly(ctx, x)
        return 0, {"element": str(x), "left_minpoly": f.format("t"), "degree": f.degree}, f.format("t")
    if cmd == "regrep":
        x = parse_element(args.element, alg)
        m = regular_rep(ctx, x)
        rows = [[ctx.K.format(v) for v in row] for row in m.data]
        return 0, {"element": str(x), "matrix": rows}, str(m)
    if cmd == "rewrite":
        gens = _gens(cfg, alg)
        w = Word.parse(args.word, len(gens))
        cap = args.cap if args.cap is not None else default_length_cap(w.m, args.degree)
        fs = rewrite_word(ctx, gens, w, args.degree, cap, args.step_cap)
        ok = fs.evaluate(gens, ctx.embed) == w.evaluate(gens)
        out = {"word": str(w), "degree": args.degree, "cap": cap,
               "result": [[str(u), ctx.K.format(c)] for u, c in fs], "evaluation_check": ok}
        text = f"{w} = {fs}\nevaluation check: {'ok' if ok else 'FAILED'}"
        return (0 if ok else 1), out, text
    raise _Exit(2, f"unknown command {cmd}")


def _decomp_dict(dec):
    if dec.variant == "Power":
        return {"variant": "Power", "v1": str(dec.v1), "u": str(dec.u), "d": dec.d, "v2": str(dec.v2)}
    return {"variant": "Shirshov", "v1": str(dec.v1), "us": [str(u) for u in dec.us], "v2": str(dec.v2)}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        code, out, text = _run(args)
    except _Exit as exc:
        print(f"error: {exc}", file=stderr)
        return exc.code
    except NotFoundUpTo as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (DivringError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if args.json:
        print(json.dumps(out), file=stdout)
    else:
        print(text, file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
