"""Degree-by-degree linear algebra for homogeneous ideals modulo a monomial ideal.

For a homogeneous ideal L and monomial H the graded piece (L + H)_t / H_t is
the row space of a Macaulay matrix whose columns are the degree-t monomials
outside H.  This gives exact homogeneous membership (one degree only) and the
colength of m-primary homogeneous ideals (sum of the Hilbert function until
it hits zero) without a Gröbner basis.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import LengthOverflow, MixMultError
from .linalg import rref
from .monomial_ideal import MonomialIdeal
from .ring import CoefficientField, Polynomial

MAX_DEGREE = 400


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, t: int) -> np.ndarray:
    """All exponent vectors of total degree t in n variables, lexicographically decreasing."""
    if n == 1:
        return np.array([[t]], dtype=np.int64)
    rows = []
    for first in range(t, -1, -1):
        rest = monomials_of_degree(n - 1, t - first)
        rows.append(np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest]))
    out = np.vstack(rows)
    out.setflags(write=False)
    return out


class GradedQuotient:
    """Graded pieces of A/H for a monomial ideal H over a fixed field."""

    def __init__(self, H: MonomialIdeal, fld: CoefficientField):
        self.H = H
        self.nvars = H.nvars
        self.field = fld
        self._std: dict[int, tuple[np.ndarray, dict]] = {}
        self._shift: dict[int, np.ndarray] = {}

    def std(self, t: int) -> tuple[np.ndarray, dict]:
        """Degree-t monomials outside H and their column indices."""
        if t not in self._std:
            monos = monomials_of_degree(self.nvars, t)
            if len(self.H):
                monos = monos[~self.H.contains_many(monos)]
            index = {tuple(int(v) for v in row): i for i, row in enumerate(monos)}
            self._std[t] = (monos, index)
        return self._std[t]

    def shift_table(self, t: int) -> np.ndarray:
        """table[j, i] = column of x_i * (j-th std monomial of degree t) in degree t+1, or -1."""
        if t not in self._shift:
            monos, _ = self.std(t)
            _, nxt = self.std(t + 1)
            table = np.full((len(monos), self.nvars), -1, dtype=np.int64)
            for j, row in enumerate(monos):
                for i in range(self.nvars):
                    e = list(int(v) for v in row)
                    e[i] += 1
                    table[j, i] = nxt.get(tuple(e), -1)
            self._shift[t] = table
        return self._shift[t]

    def _zeros(self, r: int, c: int) -> np.ndarray:
        if self.field.p is None:
            from fractions import Fraction

            out = np.empty((r, c), dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros((r, c), dtype=np.int64)

    def rows(self, polys: Iterable[Polynomial], t: int) -> np.ndarray:
        """Coordinate rows of homogeneous degree-t polynomials modulo H_t."""
        polys = list(polys)
        _, index = self.std(t)
        out = self._zeros(len(polys), len(index))
        for r, f in enumerate(polys):
            for e, c in f.terms.items():
                j = index.get(e)
                if j is not None:
                    out[r, j] = c
        return out

    def span(self, gens: Sequence[Polynomial], t: int) -> tuple[np.ndarray, int]:
        """Reduced basis of (L + H)_t / H_t where L is generated by homogeneous ``gens``."""
        multiples = []
        for g in gens:
            dg = g.degree()
            if dg > t:
                continue
            for m in monomials_of_degree(self.nvars, t - dg):
                multiples.append(g.shift(tuple(int(v) for v in m)))
        mat = self.rows(multiples, t)
        if len(mat) == 0:
            return mat, 0
        m, rank = rref(mat, self.field.p)
        return m[:rank], rank

    def contains(self, gens: Sequence[Polynomial], f: Polynomial) -> bool:
        """Membership of homogeneous f in (gens) + H, decided in degree deg f."""
        if f.is_zero():
            return True
        if not f.is_homogeneous():
            raise MixMultError("graded membership needs a homogeneous polynomial")
        t = f.degree()
        basis, rank = self.span(gens, t)
        vec = self.rows([f], t)
        if not vec.any():
            return True
        if rank == 0:
            return False
        _, r2 = rref(np.vstack([basis, vec]), self.field.p)
        return r2 == rank

    def contains_all(self, gens: Sequence[Polynomial], fs: Sequence[Polynomial]) -> bool:
        """Membership of several homogeneous polynomials, one rank test per degree."""
        by_deg: dict[int, list[Polynomial]] = {}
        for f in fs:
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise MixMultError("graded membership needs homogeneous polynomials")
            by_deg.setdefault(f.degree(), []).append(f)
        for t, group in sorted(by_deg.items()):
            basis, rank = self.span(gens, t)
            vecs = self.rows(group, t)
            if not vecs.any():
                continue
            _, r2 = rref(np.vstack([basis, vecs]) if rank else vecs, self.field.p)
            if r2 != rank:
                return False
        return True

    def hilbert_function(self, gens: Sequence[Polynomial], t: int) -> int:
        _, rank = self.span(gens, t)
        return len(self.std(t)[1]) - rank

    def colength(self, gens: Sequence[Polynomial], max_degree: int = MAX_DEGREE) -> int:
        """Length of A/((gens) + H) for an m-primary homogeneous ideal.

        Builds each graded piece from the previous one (multiply the basis by
        every variable, add the new generators) and stops at the first degree
        where the quotient vanishes.
        """
        by_deg: dict[int, list[Polynomial]] = {}
        for g in gens:
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise MixMultError("graded colength needs homogeneous generators")
            by_deg.setdefault(g.degree(), []).append(g)
        p = self.field.p
        basis = self._zeros(0, len(self.std(0)[1]))
        total = 0
        for t in range(max_degree + 1):
            cols = len(self.std(t)[1])
            parts = []
            if t > 0 and len(basis):
                table = self.shift_table(t - 1)
                lifted = self._zeros(len(basis) * self.nvars, cols)
                for i in range(self.nvars):
                    tgt = table[:, i]
                    ok = tgt >= 0
                    lifted[i * len(basis):(i + 1) * len(basis), tgt[ok]] = basis[:, ok]
                parts.append(lifted)
            if t in by_deg:
                parts.append(self.rows(by_deg[t], t))
            if parts:
                mat = np.vstack(parts)
                m, rank = rref(mat, p)
                basis = m[:rank]
            else:
                basis, rank = self._zeros(0, cols), 0
            hf = cols - rank
            if hf == 0:
                return total
            total += hf
        raise LengthOverflow("LengthOverflow: graded colength did not terminate (ideal not m-primary?)")
