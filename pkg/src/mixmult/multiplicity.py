"""Hilbert–Samuel multiplicities of parameter ideals on A/H and the additivity formula."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Sequence, Union

from .errors import MixMultError, NotMPrimary, NotSystemOfParameters, StabilityFailure
from .graded import GradedQuotient, monomials_of_degree
from .groebner import PolyIdeal, colength, ideal_dimension
from .linalg import bareiss_solve
from .monomial_ideal import (
    CoordinatePrime,
    MonomialIdeal,
    _minimal_primes_any,
    count_quotient_length,
    dim_quotient,
)
from .ring import CoefficientField, Polynomial

MAX_DOUBLINGS = 6


@dataclass
class MultiplicityResult:
    value: int
    method: str
    samples: list[tuple[int, int]] = field(default_factory=list)
    offset: int = 0

    def to_dict(self) -> dict:
        return {"value": self.value, "method": self.method, "offset": self.offset,
                "samples": [list(s) for s in self.samples]}


def _as_monomial(q) -> MonomialIdeal | None:
    if isinstance(q, MonomialIdeal):
        return q
    if all(g.is_monomial() for g in q.gens):
        return MonomialIdeal([next(iter(g.terms)) for g in q.gens], q.nvars)
    return None


class _PowerTable:
    """Generators of q^k as products of generators of q, built incrementally."""

    def __init__(self, gens: Sequence[Polynomial]):
        self.gens = list(gens)
        self._prod: dict[tuple[int, ...], Polynomial] = {}

    def product(self, combo: tuple[int, ...]) -> Polynomial:
        if len(combo) == 1:
            return self.gens[combo[0]]
        got = self._prod.get(combo)
        if got is None:
            got = self.product(combo[:-1]) * self.gens[combo[-1]]
            self._prod[combo] = got
        return got

    def power(self, k: int) -> list[Polynomial]:
        return [self.product(c) for c in combinations_with_replacement(range(len(self.gens)), k)]


def _univariate_fit(points: Sequence[tuple[int, int]], d: int) -> list[Fraction]:
    rows = [[n**j for j in range(d + 1)] for n, _ in points]
    return bareiss_solve(rows, [v for _, v in points])


def hilbert_samuel(q: Union[PolyIdeal, MonomialIdeal], H: MonomialIdeal,
                   fld: CoefficientField | None = None, offset: int | None = None) -> MultiplicityResult:
    """e(q; A/H) from exact samples of n -> length(A/(q^(n+1) + H)).

    Samples n = N..N+d and N+1..N+d+1; when the two degree-d fits agree the
    value d!·(leading coefficient) is returned, otherwise N doubles.
    """
    if H.is_unit():
        raise MixMultError("H must be proper")
    d = dim_quotient(H)
    mono = _as_monomial(q)
    if mono is not None:
        if mono.is_unit() or not (mono + H).is_m_primary():
            raise NotMPrimary("NotMPrimary: q + H does not have finite colength")
        unit = MonomialIdeal.unit(H.nvars)

        def length(n: int) -> int:
            return count_quotient_length(unit, mono.power(n + 1), H)
        method = "hilbert-samuel-interpolation/monomial"
    elif q.is_homogeneous():
        fld = fld or q.field
        base = q.with_gens(Polynomial.monomial(m, fld) for m in H.generators())
        if base.is_unit() or ideal_dimension(base) != 0:
            raise NotMPrimary("NotMPrimary: q + H does not have finite colength")
        graded = GradedQuotient(H, fld)
        table = _PowerTable(q.gens)

        def length(n: int) -> int:
            return graded.colength(table.power(n + 1))
        method = "hilbert-samuel-interpolation/graded"
    else:
        # lengths are taken in the local ring at the origin
        if any(g.terms.get((0,) * H.nvars) for g in q.gens):
            raise NotMPrimary("NotMPrimary: a generator is a unit at the origin")
        fld = fld or q.field
        hpolys = [Polynomial.monomial(m, fld) for m in H.generators()]
        local_colength(q.gens + hpolys, H.nvars, fld)
        table = _PowerTable(q.gens)

        def length(n: int) -> int:
            return local_colength(table.power(n + 1) + hpolys, H.nvars, fld)
        method = "hilbert-samuel-interpolation/local"

    cache: dict[int, int] = {}

    def sample(n: int) -> int:
        if n not in cache:
            cache[n] = length(n)
        return cache[n]

    N = max(1, H.max_degree()) if offset is None else offset
    tried = []
    for _ in range(MAX_DOUBLINGS + 1):
        tried.append(N)
        first = [(n, sample(n)) for n in range(N, N + d + 1)]
        second = [(n, sample(n)) for n in range(N + 1, N + d + 2)]
        c1, c2 = _univariate_fit(first, d), _univariate_fit(second, d)
        if c1 == c2:
            value = c1[d] * factorial(d)
            if value.denominator == 1 and value > 0:
                return MultiplicityResult(int(value), method, sorted(cache.items()), N)
        N *= 2
    raise StabilityFailure(f"StabilityFailure: Hilbert-Samuel fits disagree for N in {tried}")


def local_colength(gens: Sequence[Polynomial], nvars: int, fld: CoefficientField, max_power: int = 32) -> int:
    """Length of A_m/(gens)A_m at the origin m.

    Uses colength((gens) + m^N) for growing N.  Once two consecutive values
    agree, m^N lies in (gens) + m^(N+1), so Nakayama gives m^N A_m in (gens)A_m
    and the value is final.
    """
    prev = None
    for N in range(1, max_power + 1):
        cur = colength(PolyIdeal(list(gens) + [Polynomial.monomial(tuple(int(v) for v in m), fld)
                                               for m in monomials_of_degree(nvars, N)], nvars, fld))
        if cur == prev:
            return cur
        prev = cur
    raise NotMPrimary("NotMPrimary: the origin is not an isolated point of the zero set")


def _polys(R) -> list[Polynomial]:
    return [getattr(x, "poly", x) for x in R]


def is_system_of_parameters(R, H: MonomialIdeal) -> bool:
    polys = _polys(R)
    if not polys:
        return dim_quotient(H) == 0
    fld = polys[0].field
    if len(polys) != dim_quotient(H):
        return False
    hpolys = [Polynomial.monomial(m, fld) for m in H.generators()]
    if all(f.is_homogeneous() for f in polys):
        L = PolyIdeal(polys + hpolys, H.nvars, fld)
        return not L.is_unit() and ideal_dimension(L) == 0
    if any(f.terms.get((0,) * H.nvars) for f in polys):
        return False
    try:
        local_colength(polys + hpolys, H.nvars, fld)
    except NotMPrimary:
        return False
    return True


def multiplicity_symbol(R, H: MonomialIdeal) -> MultiplicityResult:
    """e(R; A/H) for a system of parameters R, as the multiplicity of the ideal (R)."""
    polys = _polys(R)
    if not polys or not is_system_of_parameters(polys, H):
        raise NotSystemOfParameters(
            f"NotSystemOfParameters: {len(polys)} elements, dim A/H = {dim_quotient(H)}")
    return hilbert_samuel(PolyIdeal(polys, H.nvars, polys[0].field), H)


def localized_length(H: MonomialIdeal, p: CoordinatePrime) -> int:
    """Length of (A/H) localized at a minimal prime p of H."""
    minimal = [P for P in _minimal_primes_any(H)] if not H.is_unit() else []
    if p not in minimal:
        raise MixMultError("localized_length: p is not a minimal prime of H")
    if not p.variables:
        return 1
    keep = list(p.variables)
    projected = MonomialIdeal(H.substitute_one(keep).gens[:, keep], len(keep))
    return count_quotient_length(MonomialIdeal.unit(len(keep)), projected)


@dataclass
class AdditivityReport:
    holds: bool
    lhs: int
    terms: list[tuple[CoordinatePrime, int, int]]

    @property
    def rhs(self) -> int:
        return sum(length * e for _, length, e in self.terms)


def additivity_report(R, H: MonomialIdeal) -> AdditivityReport:
    lhs = multiplicity_symbol(R, H).value
    d = dim_quotient(H)
    n = H.nvars
    terms = []
    for P in _minimal_primes_any(H):
        if n - P.height != d:
            continue
        e = multiplicity_symbol(R, P.ideal(n)).value
        terms.append((P, localized_length(H, P), e))
    rep = AdditivityReport(False, lhs, terms)
    rep.holds = rep.rhs == lhs
    return rep


def additivity_check(R, H: MonomialIdeal) -> bool:
    """e(R; A/H) equals the sum over top-dimensional minimal primes p of length((A/H)_p)·e(R; A/p)."""
    return additivity_report(R, H).holds
