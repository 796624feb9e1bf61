"""Exact coefficients, monomials, polynomials and term orders.

Monomials are plain tuples of non-negative ints (one entry per variable).
Polynomials map monomials to nonzero coefficients; coefficients are Python
ints reduced mod p for a prime field, or ``fractions.Fraction`` for Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple[int, ...]
Coeff = Union[int, Fraction]

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class VariableSet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("need at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be distinct: {self.names}")

    @property
    def d(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def format_monomial(self, e: Monomial) -> str:
        parts = []
        for name, k in zip(self.names, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class CoefficientField:
    """Either the rationals (``p is None``) or GF(p)."""

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.p is not None and self.p >= 2**31:
            raise ValueError("prime modulus must be below 2**31")

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(None)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "CoefficientField":
        return cls(p)

    @property
    def kind(self) -> str:
        return "Q" if self.p is None else "Fp"

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"Fp {self.p}"

    def coerce(self, v) -> Coeff:
        if self.p is None:
            return Fraction(v)
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {v.denominator} vanishes mod {self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return int(v) % self.p

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: Coeff, b: Coeff) -> Coeff:
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a: Coeff) -> Coeff:
        return -a if self.p is None else (-a) % self.p

    def inv(self, a: Coeff) -> Coeff:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.p is None else pow(int(a), -1, self.p)

    def random_nonzero(self, rng) -> Coeff:
        """Random nonzero scalar: uniform on GF(p)^*, or on {-99..99}\\{0} over Q."""
        if self.p is None:
            v = int(rng.integers(1, 100))
            return Fraction(v if rng.integers(0, 2) else -v)
        return int(rng.integers(1, self.p))

    def format(self, c: Coeff) -> str:
        if self.p is None:
            c = Fraction(c)
            return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        c = int(c)
        return str(c - self.p if c > self.p // 2 else c)


# ---------------------------------------------------------------- monomials

def _check_len(a: Monomial, b: Monomial) -> None:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)} variables")


def monomial_multiply(a: Monomial, b: Monomial) -> Monomial:
    _check_len(a, b)
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> tuple[bool, Monomial | None]:
    """Does ``a`` divide ``b``?  Returns the quotient b/a when it does."""
    _check_len(a, b)
    if all(x <= y for x, y in zip(a, b)):
        return True, tuple(y - x for x, y in zip(a, b))
    return False, None


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    _check_len(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


# ---------------------------------------------------------------- term orders

def _grevlex_key(e: Monomial) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse lex, or a block order eliminating the first ``block`` variables.

    The block order compares the front block by grevlex first, then the rest
    by grevlex; any monomial involving a front variable beats every monomial
    free of them.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "elim"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a front block of size >= 1")

    def key(self, e: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(e)
        k = self.block
        return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))


GREVLEX = TermOrder()


def term_compare(a: Monomial, b: Monomial, order: TermOrder = GREVLEX) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    _check_len(a, b)
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable sparse polynomial over a CoefficientField."""

    __slots__ = ("terms", "nvars", "field", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff], nvars: int, field: CoefficientField):
        clean = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise ValueError(f"monomial {e} has wrong length for {nvars} variables")
            c = field.coerce(c)
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean
        self.nvars = nvars
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int, field: CoefficientField) -> "Polynomial":
        # caller guarantees canonical coefficients and no zeros
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj.field = field
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int, field: CoefficientField) -> "Polynomial":
        return cls._raw({}, nvars, field)

    @classmethod
    def constant(cls, c, nvars: int, field: CoefficientField) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, field)

    @classmethod
    def monomial(cls, e: Monomial, field: CoefficientField, c=1) -> "Polynomial":
        return cls({tuple(e): c}, len(e), field)

    @classmethod
    def variable(cls, i: int, nvars: int, field: CoefficientField) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(tuple(e), field)

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def monomials(self) -> Iterator[Monomial]:
        return iter(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self, order: TermOrder = GREVLEX) -> list[tuple[Monomial, Coeff]]:
        """Terms in decreasing order: the canonical presentation."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: TermOrder = GREVLEX) -> tuple[Monomial, Coeff]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.field.inv(c))

    # -- arithmetic
    def _compatible(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._compatible(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.nvars, f)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial._raw({e: f.neg(c) for e, c in self.terms.items()}, self.nvars, f)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(self.field.coerce(other))
        self._compatible(other)
        f = self.field
        out: dict = {}
        p = f.p
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p is None:
            out = {e: c for e, c in out.items() if c != 0}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return Polynomial._raw(out, self.nvars, f)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.constant(1, self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.coerce(c)
        if c == 0:
            return Polynomial.zero(self.nvars, f)
        return Polynomial._raw({e: f.mul(v, c) for e, v in self.terms.items()}, self.nvars, f)

    def shift(self, m: Monomial) -> "Polynomial":
        """Multiply by the monomial ``m``."""
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()}, self.nvars, self.field
        )

    def evaluate(self, point: Iterable) -> Coeff:
        point = [self.field.coerce(v) for v in point]
        f = self.field
        total = f.coerce(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = f.mul(v, x**k if f.p is None else pow(int(x), k, f.p))
            total = f.add(total, v)
        return total

    def embed(self, nvars: int, offset: int = 0) -> "Polynomial":
        """The same polynomial in a ring with more variables, padded with zeros."""
        pad_front = (0,) * offset
        pad_back = (0,) * (nvars - self.nvars - offset)
        return Polynomial._raw({pad_front + e + pad_back: c for e, c in self.terms.items()}, nvars, self.field)

    # -- identity
    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self.terms.items())))
        return self._hash

    def format(self, names: Iterable[str] | None = None, order: TermOrder = GREVLEX) -> str:
        names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(self.nvars))
        vs = VariableSet(names)
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms(order):
            mono = vs.format_monomial(e)
            cs = self.field.format(c)
            if mono == "1":
                out.append(cs)
            elif cs == "1":
                out.append(mono)
            elif cs == "-1":
                out.append("-" + mono)
            else:
                out.append(f"{cs}*{mono}")
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "multiply":
        return f * g
    raise ValueError(f"unknown op {op!r}")
