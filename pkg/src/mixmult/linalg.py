"""Exact linear algebra: fraction-free solving over Z/Q and row reduction over Q or GF(p)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import _kernels as K


def bareiss_solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square system A·x = b exactly by fraction-free (Bareiss) elimination.

    Entries may be ints or Fractions; each row is scaled to integers first.
    Raises ValueError on a singular matrix.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("bareiss_solve needs a square system")
    M = []
    for row, rhs in zip(A, b):
        vals = [Fraction(v) for v in row] + [Fraction(rhs)]
        den = lcm(*(v.denominator for v in vals)) if vals else 1
        M.append([int(v * den) for v in vals])
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(M[i][n])
        for j in range(i + 1, n):
            s -= M[i][j] * x[j]
        x[i] = s / M[i][i]
    return x


def rref_rational(mat: np.ndarray) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of an object array of Fractions; returns (matrix, rank)."""
    m = np.array(mat, dtype=object, copy=True)
    rows, cols = m.shape if m.ndim == 2 else (0, 0)
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if m[r, c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        m[rank] = m[rank] / m[rank, c]
        for r in range(rows):
            if r != rank and m[r, c] != 0:
                m[r] = m[r] - m[r, c] * m[rank]
        rank += 1
    return m, rank


def rref(mat: np.ndarray, p: int | None) -> tuple[np.ndarray, int]:
    """Row reduce over GF(p) (int64 kernel) or over Q when ``p`` is None."""
    if p is None:
        return rref_rational(mat)
    return K.echelon_mod_p(mat, p)
