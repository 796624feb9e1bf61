"""Hot integer kernels: monomial divisibility, minimalization and mod-p elimination.

Each kernel exists twice, a numba ``@njit`` loop version and a vectorized numpy
version.  The numba path is used when numba imports and the environment variable
``MIXMULT_DISABLE_NUMBA`` is unset (or "0"); otherwise the numpy path is used.
Both paths return identical results; ``tests/test_kernels.py`` checks this.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("MIXMULT_DISABLE_NUMBA", "0").strip().lower()
_want_numba = _flag in ("", "0", "false", "no")

try:
    if not _want_numba:
        raise ImportError("numba disabled by MIXMULT_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------- numpy path

def _divisible_mask_np(gens: np.ndarray, monos: np.ndarray) -> np.ndarray:
    out = np.zeros(len(monos), dtype=np.bool_)
    if len(gens) == 0 or len(monos) == 0:
        return out
    # chunk to keep the broadcast (m, k, n) tensor small
    step = max(1, 2_000_000 // max(1, len(gens) * monos.shape[1]))
    for lo in range(0, len(monos), step):
        block = monos[lo:lo + step]
        out[lo:lo + step] = (block[:, None, :] >= gens[None, :, :]).all(axis=2).any(axis=1)
    return out


def _minimal_mask_np(sorted_monos: np.ndarray) -> np.ndarray:
    # rows are distinct and sorted by total degree
    n = len(sorted_monos)
    keep = np.ones(n, dtype=np.bool_)
    if n == 0:
        return keep
    degs = sorted_monos.sum(axis=1)
    for deg in np.unique(degs):
        idx = np.nonzero(degs == deg)[0]
        lower = np.nonzero((degs < deg) & keep)[0]
        if len(lower):
            keep[idx] = ~_divisible_mask_np(sorted_monos[lower], sorted_monos[idx])
    return keep


def _echelon_mod_p_np(mat: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    m = mat % p
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(m[rank:, c])[0]
        if len(nz) == 0:
            continue
        r = rank + nz[0]
        if r != rank:
            m[[rank, r]] = m[[r, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank] = (m[rank] * inv) % p
        factors = m[:, c].copy()
        factors[rank] = 0
        hit = np.nonzero(factors)[0]
        if len(hit):
            m[hit] = (m[hit] - np.outer(factors[hit], m[rank])) % p
        rank += 1
    return m, rank


# ---------------------------------------------------------------- numba path

@njit(cache=True)
def _divisible_mask_nb(gens, monos):
    m = monos.shape[0]
    k = gens.shape[0]
    n = monos.shape[1]
    out = np.zeros(m, dtype=np.bool_)
    for a in range(m):
        for g in range(k):
            ok = True
            for j in range(n):
                if monos[a, j] < gens[g, j]:
                    ok = False
                    break
            if ok:
                out[a] = True
                break
    return out


@njit(cache=True)
def _minimal_mask_nb(sorted_monos):
    m = sorted_monos.shape[0]
    n = sorted_monos.shape[1]
    keep = np.ones(m, dtype=np.bool_)
    degs = np.zeros(m, dtype=np.int64)
    for a in range(m):
        s = 0
        for j in range(n):
            s += sorted_monos[a, j]
        degs[a] = s
    for a in range(m):
        for b in range(a):
            if not keep[b] or degs[b] >= degs[a]:
                continue
            ok = True
            for j in range(n):
                if sorted_monos[a, j] < sorted_monos[b, j]:
                    ok = False
                    break
            if ok:
                keep[a] = False
                break
    return keep


@njit(cache=True)
def _echelon_mod_p_nb(mat, p):
    m = mat.copy()
    rows = m.shape[0]
    cols = m.shape[1]
    for r in range(rows):
        for c in range(cols):
            m[r, c] = m[r, c] % p
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if m[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = m[rank, j]
                m[rank, j] = m[piv, j]
                m[piv, j] = tmp
        # modular inverse by Fermat
        base = m[rank, c]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, cols):
            m[rank, j] = (m[rank, j] * inv) % p
        for r in range(rows):
            if r == rank:
                continue
            f = m[r, c]
            if f == 0:
                continue
            for j in range(c, cols):
                m[r, j] = (m[r, j] - f * m[rank, j]) % p
        rank += 1
    return m, rank


# ---------------------------------------------------------------- dispatch

def divisible_mask(gens: np.ndarray, monos: np.ndarray) -> np.ndarray:
    """Boolean mask: which rows of ``monos`` are divisible by some row of ``gens``."""
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    monos = np.ascontiguousarray(monos, dtype=np.int64)
    if len(gens) == 0 or len(monos) == 0:
        return np.zeros(len(monos), dtype=np.bool_)
    if HAVE_NUMBA:
        return _divisible_mask_nb(gens, monos)
    return _divisible_mask_np(gens, monos)


def minimal_mask(sorted_monos: np.ndarray) -> np.ndarray:
    """Mask of minimal rows among distinct monomials sorted by total degree."""
    sorted_monos = np.ascontiguousarray(sorted_monos, dtype=np.int64)
    if HAVE_NUMBA:
        return _minimal_mask_nb(sorted_monos)
    return _minimal_mask_np(sorted_monos)


def echelon_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of ``mat`` over GF(p); returns (matrix, rank).

    The first ``rank`` rows hold the reduced basis with unit pivots.  Requires
    p < 2**31 so products fit in int64.
    """
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.size == 0:
        return mat.copy(), 0
    if HAVE_NUMBA:
        return _echelon_mod_p_nb(mat, np.int64(p))
    return _echelon_mod_p_np(mat.copy(), p)
