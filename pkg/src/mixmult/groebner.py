"""Buchberger's algorithm and the ideal operations built on it.

Polynomials are handled internally as ``{exponent: coeff}`` dicts with monic
basis elements.  Term comparison goes through an integer encoding of the term
order so that the reduction loop can keep pending terms in a heap.
"""

from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MixMultError
from .monomial_ideal import MonomialIdeal, count_quotient_length, dim_quotient
from .ring import GREVLEX, CoefficientField, Monomial, Polynomial, TermOrder

INFINITE = math.inf

_BASE = 1 << 20  # exponents must stay below this in order keys


def _grevlex_int(e: Monomial) -> int:
    k = sum(e)
    for x in reversed(e):
        k = k * _BASE + (_BASE - 1 - x)
    return k


def order_int_key(order: TermOrder):
    """Integer-valued key increasing with the term order."""
    if order.kind == "grevlex":
        return _grevlex_int
    b = order.block

    def key(e, b=b):
        tail = e[b:]
        return _grevlex_int(e[:b]) * (_BASE ** (len(tail) + 1)) + _grevlex_int(tail)

    return key


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


# Inside the engine a monomial is one int with FIELD bits per variable; the
# top bit of each field is a guard, so products are additions and
# divisibility is a borrow test on the guard bits.
FIELD = 16
_MAX_EXP = (1 << (FIELD - 1)) - 1


class _Packing:
    def __init__(self, nvars: int):
        self.n = nvars
        self.guard = sum(1 << (FIELD * i + FIELD - 1) for i in range(nvars))
        self._unpack: dict[int, Monomial] = {}

    def pack(self, e: Monomial) -> int:
        v = 0
        for x in e:
            if x > _MAX_EXP:
                raise MixMultError(f"exponent {x} too large for the packed representation")
            v = (v << FIELD) | x
        return v

    def unpack(self, v: int) -> Monomial:
        got = self._unpack.get(v)
        if got is None:
            mask = (1 << FIELD) - 1
            out = []
            w = v
            for _ in range(self.n):
                out.append(w & mask)
                w >>= FIELD
            got = self._unpack[v] = tuple(reversed(out))
        return got

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g


class _Reducers:
    """Append-only list of (lead, tail terms) with a memo of divisor lookups.

    A memo hit stays valid because entries are never removed; a miss records
    how many entries were scanned so later lookups only look at newer ones.
    """

    def __init__(self, guard: int):
        self.guard = guard
        self.leads: list[int] = []
        self.tails: list[list[tuple[int, object]]] = []
        self._memo: dict[int, tuple[int, int]] = {}

    def append(self, lm: int, f: dict) -> None:
        self.leads.append(lm)
        self.tails.append([(e, c) for e, c in f.items() if e != lm])

    def find(self, e: int) -> int:
        hit = self._memo.get(e)
        start = 0
        if hit is not None:
            if hit[0] >= 0:
                return hit[0]
            start = hit[1]
        g = self.guard
        eg = e | g
        leads = self.leads
        for idx in range(start, len(leads)):
            if (eg - leads[idx]) & g == g:
                self._memo[e] = (idx, idx)
                return idx
        self._memo[e] = (-1, len(leads))
        return -1


class _Engine:
    """Field-specialized arithmetic on packed term dicts ``{packed exponent: coeff}``."""

    def __init__(self, fld: CoefficientField, order: TermOrder, nvars: int):
        self.field = fld
        self.p = fld.p
        self.pk = _Packing(nvars)
        self._key = order_int_key(order)
        self._kc: dict[int, int] = {}

    def k(self, e: int) -> int:
        v = self._kc.get(e)
        if v is None:
            v = self._kc[e] = self._key(self.pk.unpack(e))
        return v

    def to_packed(self, terms: dict) -> dict:
        pack = self.pk.pack
        return {pack(e): c for e, c in terms.items()}

    def to_terms(self, f: dict) -> dict:
        unpack = self.pk.unpack
        return {unpack(e): c for e, c in f.items()}

    def lead(self, f: dict) -> int:
        return max(f, key=self.k)

    def degree(self, f: dict) -> int:
        unpack = self.pk.unpack
        return max(sum(unpack(e)) for e in f)

    def monic(self, f: dict) -> dict:
        lm = self.lead(f)
        c = f[lm]
        if c == 1:
            return f
        p = self.p
        if p is None:
            return {e: v / c for e, v in f.items()}
        inv = pow(c, -1, p)
        return {e: v * inv % p for e, v in f.items()}

    def reducers(self, basis: Iterable[tuple[int, dict]]) -> _Reducers:
        red = _Reducers(self.pk.guard)
        for lm, f in basis:
            red.append(lm, f)
        return red

    def reduce(self, f: dict, red: _Reducers, quotients: list | None = None) -> dict:
        """Full reduction of ``f`` by the monic reducers; returns the remainder.

        When ``quotients`` is a list of dicts aligned with the reducers the
        multipliers are accumulated into it.
        """
        p = self.p
        k = self.k
        find = red.find
        leads, tails = red.leads, red.tails
        f = dict(f)
        heap = [(-k(e), e) for e in f]
        heapq.heapify(heap)
        push, pop = heapq.heappush, heapq.heappop
        rem: dict = {}
        while heap:
            e = pop(heap)[1]
            c = f.pop(e, None)
            if c is None:
                continue
            idx = find(e)
            if idx < 0:
                rem[e] = c
                continue
            q = e - leads[idx]
            if quotients is not None:
                qd = quotients[idx]
                qd[q] = qd.get(q, 0) + c
            for ge, gc in tails[idx]:
                te = ge + q
                old = f.get(te)
                if p is None:
                    v = (old or 0) - c * gc
                else:
                    v = ((old or 0) - c * gc) % p
                if v:
                    f[te] = v
                    if old is None:
                        push(heap, (-k(te), te))
                elif old is not None:
                    del f[te]
        return rem

    def spoly(self, lm1: int, f1: dict, lm2: int, f2: dict) -> dict:
        pk = self.pk
        L = pk.pack(_lcm(pk.unpack(lm1), pk.unpack(lm2)))
        q1, q2 = L - lm1, L - lm2
        p = self.p
        out: dict = {}
        for e, c in f1.items():
            if e != lm1:
                out[e + q1] = c
        for e, c in f2.items():
            if e == lm2:
                continue
            te = e + q2
            v = out.get(te, 0) - c
            if p is not None:
                v %= p
            if v:
                out[te] = v
            else:
                out.pop(te, None)
        return out


@dataclass
class GroebnerBasis:
    """Reduced, monic Gröbner basis sorted by decreasing leading monomial."""

    elements: list[Polynomial]
    order: TermOrder
    nvars: int
    field: CoefficientField

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def lead_ideal(self) -> MonomialIdeal:
        lms = self.leading_monomials()
        if not lms:
            return MonomialIdeal.zero(self.nvars)
        return MonomialIdeal(lms, self.nvars)

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials())

    def __len__(self) -> int:
        return len(self.elements)

    def _engine(self) -> _Engine:
        # benign race: concurrent callers may both build an equivalent engine
        eng = self.__dict__.get("_eng")
        if eng is None:
            eng = _Engine(self.field, self.order, self.nvars)
            red = eng.reducers((eng.pk.pack(g.leading_monomial(self.order)), eng.to_packed(g.terms))
                               for g in self.elements)
            self.__dict__["_red"] = red
            self.__dict__["_eng"] = eng
        return eng

    def _reducers(self) -> _Reducers:
        self._engine()
        return self.__dict__["_red"]


def buchberger(gens: Iterable[Polynomial], order: TermOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Gröbner basis via Buchberger with the Gebauer–Möller criteria.

    Pairs are taken by smallest sugar degree, ties broken by the term order
    on the lcm.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator (or use PolyIdeal for the zero ideal)")
    nvars, fld = gens[0].nvars, gens[0].field
    for g in gens:
        if g.nvars != nvars or g.field != fld:
            raise ValueError("generators live in different rings")
    eng = _Engine(fld, order, nvars)
    k = eng.k
    unpack = eng.pk.unpack

    polys: list[dict] = []
    lms: list[Monomial] = []  # unpacked leads, for the pair criteria
    sugar: list[int] = []
    active: list[int] = []
    pairs: list = []  # heap of (sugar, key(lcm), i, j)
    # every element found so far is a valid reducer; only the active ones feed new pairs
    reducers = _Reducers(eng.pk.guard)

    def update(h: int) -> None:
        nonlocal active
        lh = lms[h]
        cand = [(g, _lcm(lh, lms[g])) for g in active]
        keep = []
        for idx, (g, L) in enumerate(cand):
            if _coprime(lh, lms[g]):
                keep.append((g, L))
                continue
            dominated = False
            for g2, L2 in cand[idx + 1:]:
                if L2 != L and _divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for g2, L2 in keep:
                    if _divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                keep.append((g, L))
        # drop duplicated lcms, keeping one representative
        seen = set()
        new_pairs = []
        for g, L in keep:
            if _coprime(lh, lms[g]):
                continue
            if L in seen:
                continue
            seen.add(L)
            s = max(sugar[g] + sum(L) - sum(lms[g]), sugar[h] + sum(L) - sum(lh))
            new_pairs.append((s, order_key(L), g, h))
        # B-criterion on old pairs
        survivors = []
        for item in pairs:
            _, _, a, b = item
            L = _lcm(lms[a], lms[b])
            if _divides(lh, L) and _lcm(lms[a], lh) != L and _lcm(lms[b], lh) != L:
                continue
            survivors.append(item)
        survivors.extend(new_pairs)
        heapq.heapify(survivors)
        pairs[:] = survivors
        active = [g for g in active if not _divides(lh, lms[g])] + [h]

    order_key = order_int_key(order)

    def add(f: dict, s: int) -> None:
        f = eng.monic(f)
        lm = eng.lead(f)
        polys.append(f)
        lms.append(unpack(lm))
        sugar.append(s)
        reducers.append(lm, f)
        update(len(polys) - 1)

    # seed with the input, each reduced against what is already present
    for g in sorted(gens, key=lambda g: (g.degree(), len(g))):
        r = eng.reduce(eng.to_packed(g.terms), reducers)
        if r:
            add(r, g.degree())

    while pairs:
        s, _, i, j = heapq.heappop(pairs)
        sp = eng.spoly(reducers.leads[i], polys[i], reducers.leads[j], polys[j])
        if not sp:
            continue
        r = eng.reduce(sp, reducers)
        if r:
            add(r, max(s, eng.degree(r)))

    return _interreduce([(reducers.leads[i], polys[i]) for i in active], eng, order, nvars, fld)


def _interreduce(basis, eng: _Engine, order, nvars, fld) -> GroebnerBasis:
    basis = sorted(basis, key=lambda t: eng.k(t[0]))
    divides = eng.pk.divides
    minimal = []
    for lm, f in basis:
        if not any(divides(m, lm) for m, _ in minimal):
            minimal.append((lm, f))
    out = []
    for idx, (lm, f) in enumerate(minimal):
        others = eng.reducers(minimal[:idx] + minimal[idx + 1:])
        tail = {e: c for e, c in f.items() if e != lm}
        r = eng.reduce(tail, others)
        r[lm] = f[lm]
        out.append((lm, r))
    out.sort(key=lambda t: eng.k(t[0]), reverse=True)
    return GroebnerBasis([Polynomial._raw(eng.to_terms(f), nvars, fld) for _, f in out], order, nvars, fld)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    eng = G._engine()
    rem = eng.reduce(eng.to_packed(f.terms), G._reducers())
    return Polynomial._raw(eng.to_terms(rem), f.nvars, f.field)


def divide_exact(g: Polynomial, f: Polynomial, order: TermOrder = GREVLEX) -> Polynomial:
    """The quotient g/f; raises when f does not divide g."""
    eng = _Engine(g.field, order, g.nvars)
    fm = eng.monic(eng.to_packed(f.terms))
    quot = [{}]
    rem = eng.reduce(eng.to_packed(g.terms), eng.reducers([(eng.lead(fm), fm)]), quot)
    if rem:
        raise MixMultError("division is not exact")
    scale = g.field.inv(f.leading_term(order)[1])
    return Polynomial(eng.to_terms(quot[0]), g.nvars, g.field).scale(scale)


# ---------------------------------------------------------------- ideals

class PolyIdeal:
    """Finitely generated ideal with a lazily computed Gröbner basis.

    The basis is computed at most once; a lock makes the cache a
    single-assignment cell for concurrent readers.
    """

    def __init__(self, gens: Iterable[Polynomial], nvars: int, fld: CoefficientField,
                 order: TermOrder = GREVLEX):
        self.gens = [g for g in gens if not g.is_zero()]
        self.nvars = nvars
        self.field = fld
        self.order = order
        self._basis: GroebnerBasis | None = None
        self._lock = threading.Lock()

    @classmethod
    def from_monomial(cls, I: MonomialIdeal, fld: CoefficientField, order: TermOrder = GREVLEX) -> "PolyIdeal":
        return cls([Polynomial.monomial(m, fld) for m in I.generators()], I.nvars, fld, order)

    def basis(self) -> GroebnerBasis:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    if self.gens:
                        self._basis = buchberger(self.gens, self.order)
                    else:
                        self._basis = GroebnerBasis([], self.order, self.nvars, self.field)
        return self._basis

    def __add__(self, other: "PolyIdeal") -> "PolyIdeal":
        return PolyIdeal(self.gens + other.gens, self.nvars, self.field, self.order)

    def with_gens(self, extra: Iterable[Polynomial]) -> "PolyIdeal":
        return PolyIdeal(self.gens + list(extra), self.nvars, self.field, self.order)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return normal_form(f, self.basis()).is_zero()

    def contains_ideal(self, other: "PolyIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def lead_ideal(self) -> MonomialIdeal:
        return self.basis().lead_ideal()

    def is_unit(self) -> bool:
        return self.basis().is_unit()

    def __repr__(self) -> str:
        return f"PolyIdeal({[g.format() for g in self.gens]})"


def ideal_equal(I: PolyIdeal, J: PolyIdeal) -> bool:
    return J.contains_ideal(I) and I.contains_ideal(J)


def ideal_intersect(I: PolyIdeal, J: PolyIdeal) -> PolyIdeal:
    """I ∩ J by eliminating a tag variable t from t·I + (1-t)·J."""
    n, fld = I.nvars, I.field
    if not I.gens or not J.gens:
        return PolyIdeal([], n, fld, I.order)
    t = Polynomial.variable(0, n + 1, fld)
    one_minus_t = Polynomial.constant(1, n + 1, fld) - t
    tagged = [t * g.embed(n + 1, 1) for g in I.gens] + [one_minus_t * g.embed(n + 1, 1) for g in J.gens]
    G = buchberger(tagged, TermOrder("elim", 1))
    keep = [Polynomial._raw({e[1:]: c for e, c in g.terms.items()}, n, fld)
            for g in G.elements if all(e[0] == 0 for e in g.terms)]
    return PolyIdeal(keep, n, fld, I.order)


def colon_element(I: PolyIdeal, f: Polynomial) -> PolyIdeal:
    """I : f computed as (I ∩ (f)) / f."""
    if f.is_zero():
        return PolyIdeal([Polynomial.constant(1, I.nvars, I.field)], I.nvars, I.field, I.order)
    inter = ideal_intersect(I, PolyIdeal([f], I.nvars, I.field, I.order))
    return PolyIdeal([divide_exact(g, f, I.order) for g in inter.gens], I.nvars, I.field, I.order)


def saturate_element(I: PolyIdeal, f: Polynomial) -> PolyIdeal:
    """I : f^∞ by the Rabinowitsch trick: eliminate t from I + (1 - t·f)."""
    n, fld = I.nvars, I.field
    t = Polynomial.variable(0, n + 1, fld)
    gens = [g.embed(n + 1, 1) for g in I.gens]
    gens.append(Polynomial.constant(1, n + 1, fld) - t * f.embed(n + 1, 1))
    G = buchberger(gens, TermOrder("elim", 1))
    keep = [Polynomial._raw({e[1:]: c for e, c in g.terms.items()}, n, fld)
            for g in G.elements if all(e[0] == 0 for e in g.terms)]
    return PolyIdeal(keep, n, fld, I.order)


def intersect_many(ideals: Sequence[PolyIdeal]) -> PolyIdeal:
    out = ideals[0]
    for other in ideals[1:]:
        out = ideal_intersect(out, other)
    return out


def saturate_by(I: PolyIdeal, by: Sequence[Polynomial]) -> PolyIdeal:
    """I : (by)^∞ as the intersection of I : g^∞ over the generators g."""
    return intersect_many([saturate_element(I, g) for g in by])


def colength(I: PolyIdeal) -> int | float:
    """Number of standard monomials, or INFINITE when A/I has positive dimension."""
    lead = I.lead_ideal()
    if lead.is_zero() or not lead.is_m_primary():
        return INFINITE
    return count_quotient_length(MonomialIdeal.unit(I.nvars), lead)


def ideal_dimension(I: PolyIdeal) -> int:
    """Krull dimension of A/I, read off the lead-term ideal."""
    lead = I.lead_ideal()
    if lead.is_unit():
        raise MixMultError("ideal_dimension of the unit ideal")
    return dim_quotient(lead)
