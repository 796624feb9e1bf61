"""The multigraded length function and mixed multiplicities.

For monomial J, I_1..I_s, H the function

    B(n_0, ..., n_s) = length( J^n0 I_1^n1 ... I_s^ns M / J^(n0+1) I_1^n1 ... I_s^ns M ),  M = A/H

is a count of monomials.  It is sampled on a simplex of lattice points,
interpolated exactly, and the top-degree coefficients scaled by factorials
give the mixed multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import comb, factorial
from typing import Mapping, Sequence

from .errors import DegreeMismatch, MixMultError, NotMPrimary, StabilityFailure
from .linalg import bareiss_solve
from .monomial_ideal import (
    DEFAULT_GUARD,
    MonomialIdeal,
    count_quotient_length,
    dim_quotient,
    height_in_quotient,
    ideal_product,
)

MAX_DOUBLINGS = 6


@dataclass(frozen=True)
class MixedType:
    """Type (k_1, ..., k_s ; k_0 + 1)."""

    k: tuple[int, ...]
    k0_plus_1: int

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        if any(v < 0 for v in self.k):
            raise ValueError("type entries must be non-negative")
        if self.k0_plus_1 < 1:
            raise ValueError("the J-slot entry k_0 + 1 must be positive")

    @property
    def s(self) -> int:
        return len(self.k)

    @property
    def k0(self) -> int:
        return self.k0_plus_1 - 1

    @property
    def i_sum(self) -> int:
        return sum(self.k)

    @property
    def total_degree(self) -> int:
        return self.k0 + self.i_sum

    def exponent(self) -> tuple[int, ...]:
        """Exponent tuple (k_0, k_1, ..., k_s) of the matching monomial."""
        return (self.k0,) + self.k

    @classmethod
    def parse(cls, text: str) -> "MixedType":
        """Parse "k1,..,ks;k0+1", e.g. "1;2" or "0,1;2" or ";3"."""
        if ";" not in text:
            raise ValueError(f"type {text!r} needs a ';' before the J-slot entry")
        left, right = text.split(";", 1)
        ks = tuple(int(v) for v in left.split(",") if v.strip()) if left.strip() else ()
        return cls(ks, int(right))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.k) + ";" + str(self.k0_plus_1)


@dataclass(frozen=True)
class AnalysisContext:
    d: int
    q: int
    h: int
    s: int

    def to_dict(self) -> dict:
        return {"d": self.d, "q": self.q, "h": self.h, "s": self.s}


@dataclass(frozen=True)
class InterpolatedPolynomial:
    """Exact polynomial in (n_0, ..., n_s) with rational coefficients."""

    coefficients: Mapping[tuple[int, ...], Fraction]
    offset: tuple[int, ...]
    degree_bound: int

    def __eq__(self, other) -> bool:
        if not isinstance(other, InterpolatedPolynomial):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def __hash__(self) -> int:
        return hash(frozenset(self.nonzero().items()))

    def nonzero(self) -> dict:
        return {e: c for e, c in self.coefficients.items() if c != 0}

    @property
    def nvars(self) -> int:
        return len(self.offset)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.nonzero()), default=-1)

    def coefficient(self, e: tuple[int, ...]) -> Fraction:
        return Fraction(self.coefficients.get(tuple(e), 0))

    def evaluate(self, point: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for e, c in self.coefficients.items():
            term = Fraction(c)
            for x, k in zip(point, e):
                term *= x**k
            total += term
        return total

    def top_coefficients(self) -> dict:
        top = self.degree_bound
        return {e: c for e, c in self.coefficients.items() if sum(e) == top}


def _exponents_upto(nvars: int, D: int) -> list[tuple[int, ...]]:
    out = [e for e in iproduct(range(D + 1), repeat=nvars) if sum(e) <= D]
    out.sort(key=lambda e: (sum(e), tuple(-v for v in e)))
    return out


def simplex_points(offset: Sequence[int], D: int) -> list[tuple[int, ...]]:
    return [tuple(o + a for o, a in zip(offset, e)) for e in _exponents_upto(len(offset), D)]


def interpolate(samples: Mapping[tuple[int, ...], int], D: int, nvars: int) -> InterpolatedPolynomial:
    """The unique polynomial of total degree <= D through samples on a simplex grid.

    The sample points must be exactly offset + {a in N^nvars : |a| <= D}; the
    system in the absolute variables is solved by fraction-free elimination.
    """
    points = sorted(samples)
    if not points or any(len(p) != nvars for p in points):
        raise ValueError("sample points have the wrong arity")
    offset = tuple(min(p[i] for p in points) for i in range(nvars))
    expected = set(simplex_points(offset, D))
    if set(points) != expected or len(points) != comb(D + nvars, nvars):
        raise ValueError(f"samples are not the degree-{D} simplex grid at {offset}")
    exps = _exponents_upto(nvars, D)
    rows, rhs = [], []
    for pt in simplex_points(offset, D):
        rows.append([_mono_value(pt, e) for e in exps])
        rhs.append(samples[pt])
    try:
        sol = bareiss_solve(rows, rhs)
    except ValueError as exc:  # the simplex grid is unisolvent
        raise MixMultError(f"internal error: interpolation system singular ({exc})") from exc
    return InterpolatedPolynomial(dict(zip(exps, sol)), offset, D)


def _mono_value(pt, e) -> int:
    v = 1
    for x, k in zip(pt, e):
        v *= x**k
    return v


# ---------------------------------------------------------------- sampling

def _require_m_primary(J: MonomialIdeal) -> None:
    if not J.is_m_primary() or J.is_unit():
        raise NotMPrimary("NotMPrimary: J must be a proper m-primary ideal")


def sample_B(J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal,
             point: Sequence[int], guard: int = DEFAULT_GUARD) -> int:
    """Length of J^n0 I^n M / J^(n0+1) I^n M at ``point`` = (n_0, ..., n_s)."""
    _require_m_primary(J)
    if len(point) != len(I_list) + 1:
        raise ValueError("point must have s + 1 entries")
    if any(v < 0 for v in point):
        raise ValueError("point entries must be non-negative")
    P = _product_at(J, I_list, point)
    return count_quotient_length(P, J * P, H, guard)


def _product_at(J, I_list, point) -> MonomialIdeal:
    n = J.nvars
    factors = [J.power(point[0])] + [I.power(k) for I, k in zip(I_list, point[1:])]
    return ideal_product(factors, n)


def context(J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal) -> AnalysisContext:
    """Dimensions d, q and the height h of (I + H)/H for I the product of I_list."""
    _require_m_primary(J)
    if H.is_unit():
        raise MixMultError("H must be proper (M = A/H nonzero)")
    n = J.nvars
    d = dim_quotient(H)
    if not I_list:
        # empty product: I = A, so the height condition is vacuous
        return AnalysisContext(d=d, q=d, h=d, s=0)
    I = ideal_product(I_list, n)
    sat = H.saturate(I)
    if sat.is_unit():
        raise MixMultError("I is contained in the radical of Ann M")
    q = dim_quotient(sat)
    h = height_in_quotient(I, H)
    if h > 0 and q != d:
        raise MixMultError(f"internal error: h={h} > 0 but q={q} != d={d}")
    return AnalysisContext(d=d, q=q, h=h, s=len(I_list))


@dataclass
class BhattacharyaResult:
    """Certified interpolation of the length function."""

    context: AnalysisContext
    polynomial: InterpolatedPolynomial
    offset: int
    stable: bool
    degree_ok: bool
    attempts: list[int] = field(default_factory=list)

    def mixed_multiplicity(self, mtype: MixedType) -> int:
        if mtype.s != self.context.s:
            raise ValueError(f"type has s={mtype.s}, instance has s={self.context.s}")
        if mtype.total_degree != self.context.q - 1:
            raise DegreeMismatch(
                f"DegreeMismatch: type total degree {mtype.total_degree} != q-1 = {self.context.q - 1}")
        return _scaled(self.polynomial, mtype.exponent())

    def all_values(self) -> dict[MixedType, int]:
        s, top = self.context.s, self.context.q - 1
        out = {}
        for e in _exponents_upto(s + 1, top):
            if sum(e) == top:
                t = MixedType(e[1:], e[0] + 1)
                out[t] = _scaled(self.polynomial, e)
        return out


def _scaled(poly: InterpolatedPolynomial, e: tuple[int, ...]) -> int:
    val = poly.coefficient(e)
    for k in e:
        val *= FACTORIALS[k] if k < len(FACTORIALS) else factorial(k)
    if val.denominator != 1 or val < 0:
        raise StabilityFailure(f"StabilityFailure: scaled coefficient {val} is not a non-negative integer")
    return int(val)


FACTORIALS = [factorial(k) for k in range(16)]


def _fit(J, I_list, H, N, D, guard) -> InterpolatedPolynomial:
    s1 = len(I_list) + 1
    pts = simplex_points((N,) * s1, D)
    samples = {pt: sample_B(J, I_list, H, pt, guard) for pt in pts}
    return interpolate(samples, D, s1)


def _degree_ok(poly: InterpolatedPolynomial, D: int) -> bool:
    if any(sum(e) > D for e in poly.nonzero()):
        return False
    top = [c for e, c in poly.coefficients.items() if sum(e) == D]
    return any(c != 0 for c in top) and all(c >= 0 for c in top)


def certified_polynomial(J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal,
                         offset: int | None = None, guard: int = DEFAULT_GUARD) -> BhattacharyaResult:
    """Interpolate at offsets N and N+1 until both agree and the degree is exactly q-1.

    N starts at the largest generator degree among J, I_1..I_s, H and doubles
    on disagreement; after MAX_DOUBLINGS doublings StabilityFailure is raised.
    """
    ctx = context(J, I_list, H)
    D = ctx.q - 1
    if D < 0:
        raise DegreeMismatch("DegreeMismatch: q = 0, the length function is eventually zero")
    if offset is None:
        offset = max([J.max_degree(), H.max_degree()] + [I.max_degree() for I in I_list] + [1])
    N = offset
    tried = []
    for _ in range(MAX_DOUBLINGS + 1):
        tried.append(N)
        first = _fit(J, I_list, H, N, D, guard)
        second = _fit(J, I_list, H, N + 1, D, guard)
        if first == second and _degree_ok(first, D):
            return BhattacharyaResult(ctx, first, N, True, True, tried)
        N *= 2
    raise StabilityFailure(f"StabilityFailure: no agreement between offsets N and N+1 for N in {tried}")


def mixed_multiplicity(J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal,
                       mtype: MixedType, offset: int | None = None) -> int:
    """e(J^[k0+1], I_1^[k1], ..., I_s^[ks]; A/H)."""
    ctx = context(J, I_list, H)
    if mtype.s != ctx.s:
        raise ValueError(f"type has s={mtype.s}, instance has s={ctx.s}")
    if mtype.total_degree != ctx.q - 1:
        raise DegreeMismatch(f"DegreeMismatch: type total degree {mtype.total_degree} != q-1 = {ctx.q - 1}")
    return certified_polynomial(J, I_list, H, offset).mixed_multiplicity(mtype)
