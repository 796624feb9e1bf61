from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np
import pytest
import sympy
from conftest import mono
from hypothesis import given, settings
from hypothesis import strategies as st

from mixmult.graded import GradedQuotient, monomials_of_degree
from mixmult.groebner import PolyIdeal, colength
from mixmult.linalg import bareiss_solve, rref, rref_rational
from mixmult.monomial_ideal import MonomialIdeal
from mixmult.reductions import make_rng
from mixmult.ring import CoefficientField, Polynomial

FP = CoefficientField.prime()
QQ = CoefficientField.rationals()


def test_bareiss_small():
    assert bareiss_solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(ValueError):
        bareiss_solve([[1, 2], [2, 4]], [1, 2])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.data())
def test_bareiss_matches_sympy(n, data):
    A = data.draw(st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))
    b = data.draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n))
    M = sympy.Matrix(A)
    if M.det() == 0:
        with pytest.raises(ValueError):
            bareiss_solve(A, b)
        return
    want = M.LUsolve(sympy.Matrix(b))
    got = bareiss_solve(A, b)
    assert got == [Fraction(int(v.p), int(v.q)) for v in want]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_sympy(rows):
    mat = np.array([[Fraction(v) for v in r] for r in rows], dtype=object)
    m, rank = rref_rational(mat)
    assert rank == sympy.Matrix(rows).rank()
    want, _ = sympy.Matrix(rows).rref()
    got = [[Fraction(v) for v in r] for r in m.tolist()]
    assert got == [[Fraction(int(v.p), int(v.q)) for v in want.row(i)] for i in range(want.rows)]


def test_rref_mod_p_rank():
    mat = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    _, rank = rref(mat, 7)
    assert rank == 2
    _, rank = rref(np.array([[7, 14]], dtype=np.int64), 7)
    assert rank == 0


def test_monomials_of_degree():
    for n in (1, 2, 3, 4):
        for t in range(5):
            monos = monomials_of_degree(n, t)
            assert len(monos) == comb(n + t - 1, t)
            assert (monos.sum(axis=1) == t).all()
            assert len({tuple(r) for r in monos.tolist()}) == len(monos)


def test_graded_membership():
    H = mono((1, 1))
    G = GradedQuotient(H, FP)
    x = Polynomial.variable(0, 2, FP)
    y = Polynomial.variable(1, 2, FP)
    assert G.contains([x + y], x**2 - y**2)
    assert G.contains([x + y], x**2)  # x^2 = x(x+y) - xy
    assert not G.contains([x + y], x)
    assert G.contains_all([x, y], [x**3, y**2, x * y])
    assert not G.contains_all([x], [x**2, y**2])


def test_hilbert_function_of_quotient():
    G = GradedQuotient(MonomialIdeal.zero(3), FP)
    x = Polynomial.variable(0, 3, FP)
    assert [G.hilbert_function([x], t) for t in range(5)] == [t + 1 for t in range(5)]


def test_graded_colength_matches_groebner():
    for trial in range(20):
        rng = make_rng((31, trial))
        n = int(rng.integers(2, 4))
        forms = []
        for _ in range(n):
            deg = int(rng.integers(1, 3))
            forms.append(Polynomial({tuple(int(v) for v in m): FP.random_nonzero(rng)
                                     for m in monomials_of_degree(n, deg)}, n, FP))
        G = GradedQuotient(MonomialIdeal.zero(n), FP)
        assert G.colength(forms) == colength(PolyIdeal(forms, n, FP))


def test_graded_colength_over_rationals_with_module():
    H = mono((2, 0, 0))
    x, y, z = (Polynomial.variable(i, 3, QQ) for i in range(3))
    G = GradedQuotient(H, QQ)
    gens = [y - z, z**2]
    full = PolyIdeal(gens + [x**2], 3, QQ)
    assert G.colength(gens) == colength(full)
