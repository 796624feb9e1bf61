"""Line-oriented problem files.

    field Q | field Fp <prime>
    ring <var> <var> ...
    ideal <Name> = <poly>, <poly>, ...
    module H = 0 | <monomial>, ...

Optional lines record a command and its options so a file can be replayed:

    command <name>
    type <k1,..,ks;k0+1>
    seed <u64>
    window <w>
    offset <N>

'#' starts a comment.  Polynomials use +, -, *, ^, integer or a/b
coefficients and parentheses; juxtaposition such as ``2x`` multiplies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, UnsupportedInput
from .monomial_ideal import MonomialIdeal
from .ring import CoefficientField, Polynomial, VariableSet, is_prime

COMMANDS = ("mixed-mult", "multiplicity", "superficial", "joint-reduction", "verify", "verify-rees", "fuzz")


@dataclass(frozen=True)
class ProblemSpec:
    field: CoefficientField
    variables: tuple[str, ...]
    ideals: tuple[tuple[str, tuple[Polynomial, ...]], ...] = ()
    module: tuple[tuple[int, ...], ...] = ()
    command: str | None = None
    type: str | None = None
    seed: int | None = None
    window: int | None = None
    offset: int | None = None

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def ideal_names(self) -> list[str]:
        return [name for name, _ in self.ideals]

    def ideal(self, name: str) -> tuple[Polynomial, ...]:
        for n, gens in self.ideals:
            if n == name:
                return gens
        raise KeyError(name)

    def H(self) -> MonomialIdeal:
        return MonomialIdeal(list(self.module), self.nvars) if self.module else MonomialIdeal.zero(self.nvars)

    def monomial_ideal(self, name: str) -> MonomialIdeal:
        gens = self.ideal(name)
        if not all(g.is_monomial() for g in gens):
            raise UnsupportedInput(f"UnsupportedInput: ideal {name} must be generated by monomials here")
        return MonomialIdeal([next(iter(g.terms)) for g in gens], self.nvars)

    def with_options(self, **kw) -> "ProblemSpec":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


# ---------------------------------------------------------------- tokens

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()−]))")


class _PolyParser:
    def __init__(self, text: str, line: int, col0: int, vs: dict[str, int], fld: CoefficientField):
        self.line = line
        self.vs = vs
        self.n = len(vs)
        self.fld = fld
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", line,
                                 col0 + pos + (len(text[pos:]) - len(text[pos:].lstrip())) + 1)
            kind = m.lastgroup
            val = m.group(kind)
            if val == "−":
                val = "-"
            self.toks.append((kind, val, col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0
        self.end_col = col0 + len(text) + 1

    def error(self, msg: str) -> ParseError:
        col = self.toks[self.i][2] if self.i < len(self.toks) else self.end_col
        return ParseError(msg, self.line, col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise self.error("expected a polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if val in ("+", "-"):
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term().scale(sign)
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            t = self.term()
            f = f + t if op == "+" else f - t
        return f

    def term(self) -> Polynomial:
        f = self.power()
        while True:
            kind, val, _ = self.peek()
            if val == "*":
                self.take()
                f = f * self.power()
            elif kind in ("num", "name") or val == "(":
                f = f * self.power()
            else:
                return f

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "num":
                raise self.error("expected an exponent")
            self.take()
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, col = self.peek()
        if kind == "num":
            self.take()
            c = Fraction(int(val))
            if self.peek()[1] == "/" and self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "num":
                self.take()
                den = int(self.take()[1])
                if den == 0:
                    raise ParseError("division by zero", self.line, col)
                c = Fraction(int(val), den)
            try:
                return Polynomial.constant(c, self.n, self.fld)
            except ZeroDivisionError as exc:
                raise ParseError(str(exc), self.line, col) from exc
        if kind == "name":
            if val not in self.vs:
                raise ParseError(f"undeclared variable {val!r}", self.line, col)
            self.take()
            return Polynomial.variable(self.vs[val], self.n, self.fld)
        if val == "(":
            self.take()
            f = self.expr()
            if self.peek()[1] != ")":
                raise self.error("expected ')'")
            self.take()
            return f
        raise self.error("expected a number, variable or '('" if kind else "unexpected end of line")


def _split_top(text: str, col0: int) -> list[tuple[str, int]]:
    """Split on commas outside parentheses, keeping each piece's column offset."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((text[start:i], col0 + start))
            start = i + 1
    out.append((text[start:], col0 + start))
    return out


def _int_arg(rest: str, lineno: int, col: int, what: str) -> int:
    try:
        v = int(rest.strip())
    except ValueError:
        raise ParseError(f"{what} must be an integer", lineno, col) from None
    if v < 0:
        raise ParseError(f"{what} must be non-negative", lineno, col)
    return v


def parse_input(text: str) -> ProblemSpec:
    """Parse a problem file; errors carry line and column."""
    fld = None
    names: tuple[str, ...] | None = None
    ideals: list[tuple[str, tuple[Polynomial, ...]]] = []
    module: tuple | None = None
    opts: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        word, _, rest = body.partition(" ")
        rest_col = indent + len(word) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if word == "field":
            parts = rest.split()
            if parts == ["Q"]:
                fld = CoefficientField.rationals()
            elif len(parts) == 2 and parts[0] == "Fp":
                try:
                    p = int(parts[1])
                except ValueError:
                    raise ParseError("modulus must be an integer", lineno, rest_col + 4) from None
                if not is_prime(p):
                    raise ParseError(f"modulus {p} is not prime", lineno, rest_col + 4)
                if p >= 2**31:
                    raise ParseError("modulus must be below 2^31", lineno, rest_col + 4)
                fld = CoefficientField.prime(p)
            else:
                raise ParseError("expected 'field Q' or 'field Fp <prime>'", lineno, indent + 1)
        elif word == "ring":
            vs = tuple(rest.split())
            if not vs:
                raise ParseError("ring needs at least one variable", lineno, indent + 1)
            for v in vs:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                    raise ParseError(f"bad variable name {v!r}", lineno, indent + 1 + body.index(v))
            if len(set(vs)) != len(vs):
                raise ParseError("variable names must be distinct", lineno, indent + 1)
            names = vs
        elif word in ("ideal", "module"):
            if names is None:
                raise ParseError("'ring' must come before ideals", lineno, indent + 1)
            fld_used = fld or CoefficientField.prime()
            name, eq, gens_text = rest.partition("=")
            name = name.strip()
            if not eq or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ParseError(f"expected '{word} <Name> = ...'", lineno, rest_col)
            gcol = rest_col + rest.index("=") + 1
            vsmap = {v: i for i, v in enumerate(names)}
            if word == "module":
                if name != "H":
                    raise ParseError("the module is written 'module H = ...'", lineno, rest_col)
                if gens_text.strip() == "0":
                    module = ()
                    continue
            polys = []
            for piece, col in _split_top(gens_text, gcol):
                polys.append(_PolyParser(piece, lineno, col, vsmap, fld_used).parse())
            if word == "module":
                mons = []
                for f, (piece, col) in zip(polys, _split_top(gens_text, gcol)):
                    if not f.is_monomial():
                        raise ParseError("module generators must be monomials", lineno,
                                         col + len(piece) - len(piece.lstrip()) + 1)
                    mons.append(next(iter(f.terms)))
                module = tuple(mons)
            else:
                if name in dict(ideals):
                    raise ParseError(f"ideal {name} defined twice", lineno, rest_col)
                ideals.append((name, tuple(polys)))
        elif word == "command":
            if rest not in COMMANDS:
                raise ParseError(f"unknown command {rest!r}", lineno, rest_col + 1)
            opts["command"] = rest
        elif word == "type":
            from .bhattacharya import MixedType

            try:
                if ";" in rest:
                    MixedType.parse(rest)
                else:
                    [int(v) for v in rest.split(",")]
            except ValueError as exc:
                raise ParseError(f"bad type {rest!r}: {exc}", lineno, rest_col + 1) from None
            opts["type"] = rest.replace(" ", "")
        elif word in ("seed", "window", "offset"):
            opts[word] = _int_arg(rest, lineno, rest_col + 1, word)
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, indent + 1)
    if names is None:
        raise ParseError("missing 'ring' line", 0, 0)
    fld = fld or CoefficientField.prime()
    # ideals parsed before a later 'field' line would carry the wrong field
    for _, gens in ideals:
        if any(g.field != fld for g in gens):
            raise ParseError("'field' must come before ideals", 0, 0)
    return ProblemSpec(fld, names, tuple(ideals), tuple(module or ()), **opts)


def serialize(spec: ProblemSpec) -> str:
    """Text that parses back to ``spec``."""
    lines = ["field Q" if spec.field.p is None else f"field Fp {spec.field.p}",
             "ring " + " ".join(spec.variables)]
    vs = VariableSet(spec.variables)
    for name, gens in spec.ideals:
        lines.append(f"ideal {name} = " + ", ".join(g.format(spec.variables) for g in gens))
    if spec.module:
        lines.append("module H = " + ", ".join(vs.format_monomial(m) for m in spec.module))
    else:
        lines.append("module H = 0")
    for key in ("command", "type", "seed", "window", "offset"):
        val = getattr(spec, key)
        if val is not None:
            lines.append(f"{key} {val}")
    return "\n".join(lines) + "\n"


def ideal_from_names(spec: ProblemSpec, names: Sequence[str]) -> list[MonomialIdeal]:
    return [spec.monomial_ideal(n) for n in names]
