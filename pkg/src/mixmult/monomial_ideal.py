"""Monomial ideals as integer matrices of minimal generators.

Everything here is combinatorial: sums, products, powers, colons and
saturations act on exponent vectors, minimal primes are minimal vertex covers
of the generator supports, and lengths of monomial subquotients are counted
by a degree-by-degree walk over the staircase.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Iterable

import numpy as np

from . import _kernels as K
from .errors import HeightUndefined, LengthOverflow, MixMultError
from .ring import Monomial

DEFAULT_GUARD = 10**7


def _as_array(gens, nvars: int) -> np.ndarray:
    arr = np.asarray(list(gens) if not isinstance(gens, np.ndarray) else gens, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, nvars), dtype=np.int64)
    arr = arr.reshape(-1, nvars)
    if (arr < 0).any():
        raise ValueError("exponents must be non-negative")
    return arr


def _minimal_rows(arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr
    arr = np.unique(arr, axis=0)
    order = np.lexsort(arr.T[::-1])  # lexicographic rows
    arr = arr[order]
    by_deg = np.argsort(arr.sum(axis=1), kind="stable")
    arr = arr[by_deg]
    keep = K.minimal_mask(arr)
    out = arr[keep]
    # canonical storage: lexicographic rows
    return out[np.lexsort(out.T[::-1])]


class MonomialIdeal:
    """Ideal generated by monomials, stored by its minimal generators.

    ``MonomialIdeal([], n)`` is the zero ideal and ``MonomialIdeal.unit(n)``
    the unit ideal.
    """

    __slots__ = ("gens", "nvars", "_powers", "_key")

    def __init__(self, gens: Iterable[Monomial] | np.ndarray, nvars: int | None = None, *, _minimal: bool = False):
        if nvars is None:
            gens = list(gens)
            if not gens:
                raise ValueError("nvars is required for an empty generator list")
            nvars = len(gens[0])
        arr = _as_array(gens, nvars)
        self.gens = arr if _minimal else _minimal_rows(arr)
        self.gens.setflags(write=False)
        self.nvars = nvars
        self._powers: dict[int, MonomialIdeal] = {}
        self._key = None

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(np.zeros((0, nvars), dtype=np.int64), nvars, _minimal=True)

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(np.zeros((1, nvars), dtype=np.int64), nvars, _minimal=True)

    @classmethod
    def maximal(cls, nvars: int) -> "MonomialIdeal":
        return cls(np.eye(nvars, dtype=np.int64), nvars)

    @classmethod
    def coordinate(cls, variables: Iterable[int], nvars: int) -> "MonomialIdeal":
        rows = [tuple(1 if j == i else 0 for j in range(nvars)) for i in sorted(variables)]
        return cls(rows, nvars)

    # -- queries
    def generators(self) -> list[Monomial]:
        return [tuple(int(v) for v in row) for row in self.gens]

    def __len__(self) -> int:
        return len(self.gens)

    def is_zero(self) -> bool:
        return len(self.gens) == 0

    def is_unit(self) -> bool:
        return len(self.gens) > 0 and not self.gens.any(axis=1).all()

    def is_proper(self) -> bool:
        return not self.is_unit()

    def degrees(self) -> list[int]:
        return [int(v) for v in self.gens.sum(axis=1)]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_equigenerated(self) -> bool:
        return len(set(self.degrees())) == 1

    def contains(self, m: Monomial) -> bool:
        return bool(K.divisible_mask(self.gens, np.asarray([m], dtype=np.int64).reshape(1, self.nvars))[0])

    def contains_many(self, monos: np.ndarray) -> np.ndarray:
        return K.divisible_mask(self.gens, monos)

    def __contains__(self, m) -> bool:
        return self.contains(tuple(m))

    def is_subset(self, other: "MonomialIdeal") -> bool:
        return bool(other.contains_many(self.gens).all()) if len(self.gens) else True

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.is_subset(other) and other.is_subset(self)

    def __hash__(self) -> int:
        if self._key is None:
            self._key = hash((self.nvars, self.gens.tobytes()))
        return self._key

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.generators()})"

    def format(self, names: Iterable[str]) -> str:
        from .ring import VariableSet

        vs = VariableSet(tuple(names))
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(vs.format_monomial(g) for g in self.generators()) + ")"

    # -- arithmetic
    def _check(self, other: "MonomialIdeal") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(np.vstack([self.gens, other.gens]), self.nvars)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return MonomialIdeal.zero(self.nvars)
        prod = (self.gens[:, None, :] + other.gens[None, :, :]).reshape(-1, self.nvars)
        return MonomialIdeal(prod, self.nvars)

    def power(self, n: int) -> "MonomialIdeal":
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return MonomialIdeal.unit(self.nvars)
        if n == 1:
            return self
        if n not in self._powers:
            half = self.power(n // 2)
            res = half * half
            if n % 2:
                res = res * self
            self._powers[n] = res
        return self._powers[n]

    def shift(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.gens + np.asarray(m, dtype=np.int64), self.nvars, _minimal=True)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return MonomialIdeal.zero(self.nvars)
        lcms = np.maximum(self.gens[:, None, :], other.gens[None, :, :]).reshape(-1, self.nvars)
        return MonomialIdeal(lcms, self.nvars)

    def colon_monomial(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(np.maximum(self.gens - np.asarray(m, dtype=np.int64), 0), self.nvars)

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        if other.is_zero():
            return MonomialIdeal.unit(self.nvars)
        return reduce(MonomialIdeal.intersect, (self.colon_monomial(g) for g in other.generators()))

    def saturate(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.is_zero():
            raise ValueError("cannot saturate by the zero ideal")
        cur = self
        while True:
            nxt = cur.colon(other)
            if nxt == cur:
                return cur
            cur = nxt

    def is_m_primary(self) -> bool:
        """Every variable occurs as a pure power among the generators."""
        if self.is_zero():
            return False
        support = self.gens > 0
        pure = support.sum(axis=1) <= 1
        covered = np.zeros(self.nvars, dtype=bool)
        for row, ok in zip(support, pure):
            if ok:
                if not row.any():
                    return True
                covered |= row
        return bool(covered.all())

    def substitute_one(self, keep: Iterable[int]) -> "MonomialIdeal":
        """Set every variable outside ``keep`` to 1."""
        mask = np.zeros(self.nvars, dtype=np.int64)
        mask[list(keep)] = 1
        return MonomialIdeal(self.gens * mask, self.nvars)


# ---------------------------------------------------------------- free functions

def minimalize(gens: Iterable[Monomial], nvars: int | None = None) -> MonomialIdeal:
    return MonomialIdeal(gens, nvars)


def ideal_combine(I: MonomialIdeal, J: MonomialIdeal, op: str) -> MonomialIdeal:
    if op == "sum":
        return I + J
    if op == "product":
        return I * J
    raise ValueError(f"unknown op {op!r}")


def ideal_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    return I.power(n)


def ideal_product(ideals: Iterable[MonomialIdeal], nvars: int) -> MonomialIdeal:
    return reduce(MonomialIdeal.__mul__, ideals, MonomialIdeal.unit(nvars))


def colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return I.colon(J)


def saturate(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return I.saturate(J)


def is_m_primary(I: MonomialIdeal) -> bool:
    return I.is_m_primary()


# ---------------------------------------------------------------- primes

@dataclass(frozen=True)
class CoordinatePrime:
    """Prime ideal generated by a subset of the variables."""

    variables: tuple[int, ...]

    @property
    def height(self) -> int:
        return len(self.variables)

    def ideal(self, nvars: int) -> MonomialIdeal:
        return MonomialIdeal.coordinate(self.variables, nvars)

    def contained_in(self, other: "CoordinatePrime") -> bool:
        return set(self.variables) <= set(other.variables)

    def format(self, names) -> str:
        return "(" + ", ".join(names[i] for i in self.variables) + ")" if self.variables else "(0)"


def _minimal_primes_any(I: MonomialIdeal) -> list[CoordinatePrime]:
    """Minimal vertex covers of the support hypergraph; the zero ideal gives [(0)]."""
    if I.is_unit():
        raise MixMultError("the unit ideal has no minimal primes")
    supports = {frozenset(int(j) for j in np.nonzero(row)[0]) for row in I.gens}
    n = I.nvars
    found: list[frozenset] = []
    for size in range(n + 1):
        for cand in combinations(range(n), size):
            cs = frozenset(cand)
            if any(f <= cs for f in found):
                continue
            if all(cs & sup for sup in supports):
                found.append(cs)
    return sorted((CoordinatePrime(tuple(sorted(f))) for f in found), key=lambda P: (P.height, P.variables))


def minimal_primes(I: MonomialIdeal) -> list[CoordinatePrime]:
    if I.is_zero():
        raise MixMultError("minimal_primes requires a nonzero ideal")
    return _minimal_primes_any(I)


def dim_quotient(H: MonomialIdeal) -> int:
    """Krull dimension of A/H."""
    if H.is_unit():
        raise MixMultError("A/H is the zero module")
    if H.is_zero():
        return H.nvars
    return H.nvars - min(P.height for P in _minimal_primes_any(H))


def height_in_quotient(I: MonomialIdeal, H: MonomialIdeal) -> int:
    """Height of (I + H)/H in A/H via chains of coordinate primes."""
    if H.is_unit():
        raise MixMultError("A/H is the zero module")
    total = I + H
    if total.is_unit():
        raise HeightUndefined("height undefined: V(I) misses Supp M")
    if I.is_zero():
        return 0
    over = _minimal_primes_any(total)
    under = _minimal_primes_any(H)
    best = None
    for P in over:
        chain = max(P.height - q.height for q in under if q.contained_in(P))
        best = chain if best is None else min(best, chain)
    return best


# ---------------------------------------------------------------- lengths

def count_quotient_length(P: MonomialIdeal, Q: MonomialIdeal, H: MonomialIdeal | None = None,
                          guard: int = DEFAULT_GUARD) -> int:
    """Number of monomials in P that are not in Q + H.

    Walks the staircase one degree at a time: the monomials of degree t+1 in
    P but outside Q+H are generators of P of that degree or x_i times one found
    at degree t.  Raises LengthOverflow past ``guard`` visited monomials.
    """
    n = P.nvars
    outside = Q if H is None else Q + H
    if P.is_zero():
        return 0
    gens = P.gens
    gdeg = gens.sum(axis=1)
    top = int(gdeg.max())
    t = int(gdeg.min())
    eye = np.eye(n, dtype=np.int64)
    frontier = np.zeros((0, n), dtype=np.int64)
    count = 0
    while True:
        new = gens[gdeg == t]
        cand = np.vstack([(frontier[:, None, :] + eye[None, :, :]).reshape(-1, n), new]) if len(frontier) else new
        if len(cand):
            cand = np.unique(cand, axis=0)
            cand = cand[~outside.contains_many(cand)]
        frontier = cand
        count += len(frontier)
        if count > guard:
            raise LengthOverflow("LengthOverflow: not finite or guard too small")
        if len(frontier) == 0 and t >= top:
            return count
        t += 1


def standard_monomials(I: MonomialIdeal, guard: int = DEFAULT_GUARD) -> np.ndarray:
    """Exponent vectors of the monomials outside an m-primary monomial ideal."""
    n = I.nvars
    eye = np.eye(n, dtype=np.int64)
    level = np.zeros((1, n), dtype=np.int64)
    level = level[~I.contains_many(level)]
    out = [level]
    total = len(level)
    while len(level):
        level = np.unique((level[:, None, :] + eye[None, :, :]).reshape(-1, n), axis=0)
        level = level[~I.contains_many(level)]
        out.append(level)
        total += len(level)
        if total > guard:
            raise LengthOverflow("LengthOverflow: not finite or guard too small")
    return np.vstack(out)


@dataclass(frozen=True)
class QuotientModule:
    """The cyclic module A/H."""

    H: MonomialIdeal

    def __post_init__(self):
        if self.H.is_unit():
            raise MixMultError("A/H is the zero module: H must be proper")

    @property
    def dim(self) -> int:
        return dim_quotient(self.H)
