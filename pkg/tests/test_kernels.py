"""The numba and numpy kernel paths must agree bit for bit."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mixmult import _kernels as K

numba_only = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba path disabled")

monos = arrays(np.int64, st.tuples(st.integers(0, 12), st.integers(1, 4)), elements=st.integers(0, 4))


@numba_only
@settings(max_examples=60, deadline=None)
@given(monos, monos)
def test_divisible_mask_parity(gens, cand):
    if gens.shape[1] != cand.shape[1] or len(gens) == 0 or len(cand) == 0:
        return
    a = K._divisible_mask_nb(np.ascontiguousarray(gens), np.ascontiguousarray(cand))
    b = K._divisible_mask_np(gens, cand)
    assert a.tolist() == b.tolist()


@numba_only
@settings(max_examples=60, deadline=None)
@given(monos)
def test_minimal_mask_parity(rows):
    if len(rows) == 0:
        return
    uniq = np.unique(rows, axis=0)
    uniq = np.ascontiguousarray(uniq[np.argsort(uniq.sum(axis=1), kind="stable")])
    assert K._minimal_mask_nb(uniq).tolist() == K._minimal_mask_np(uniq).tolist()


@numba_only
@settings(max_examples=60, deadline=None)
@given(arrays(np.int64, st.tuples(st.integers(1, 6), st.integers(1, 6)), elements=st.integers(0, 10)),
       st.sampled_from([2, 3, 11, 32003]))
def test_echelon_parity(mat, p):
    mat = mat % p
    a, ra = K._echelon_mod_p_nb(np.ascontiguousarray(mat), np.int64(p))
    b, rb = K._echelon_mod_p_np(mat.copy(), p)
    assert ra == rb
    assert a[:ra].tolist() == b[:rb].tolist()


def test_echelon_rank_against_rationals():
    import sympy

    rng = np.random.default_rng(0)
    for _ in range(20):
        mat = rng.integers(0, 5, size=(4, 5))
        _, rank = K.echelon_mod_p(mat, 32003)
        assert rank == sympy.Matrix(mat.tolist()).rank()


def test_dispatch_matches_backend():
    assert K.BACKEND in ("numba", "numpy")
    assert K.BACKEND == ("numba" if K.HAVE_NUMBA else "numpy")


SNIPPET = """
import json
from mixmult import _kernels as K
from mixmult.bhattacharya import certified_polynomial, MixedType
from mixmult.monomial_ideal import MonomialIdeal
J = MonomialIdeal.maximal(3)
I = MonomialIdeal.coordinate([0, 1], 3)
res = certified_polynomial(J, [I], MonomialIdeal.zero(3))
print(json.dumps([K.BACKEND, {str(t): v for t, v in sorted(res.all_values().items(), key=str)}]))
"""


def _run_with(flag: str) -> str:
    env = dict(os.environ, MIXMULT_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", SNIPPET], env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_env_flag_selects_numpy_and_results_agree():
    numpy_out = _run_with("1")
    assert numpy_out.startswith('["numpy"')
    default_out = _run_with("0")
    assert numpy_out.split(",", 1)[1] == default_out.split(",", 1)[1]
