from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest
from conftest import mono
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mixmult.bhattacharya import (
    InterpolatedPolynomial,
    MixedType,
    certified_polynomial,
    context,
    interpolate,
    mixed_multiplicity,
    sample_B,
    simplex_points,
)
from mixmult.errors import DegreeMismatch, MixMultError, NotMPrimary
from mixmult.harness import random_equigenerated, random_m_primary_equigenerated
from mixmult.monomial_ideal import MonomialIdeal
from mixmult.multiplicity import hilbert_samuel
from mixmult.reductions import make_rng

M2, M3 = MonomialIdeal.maximal(2), MonomialIdeal.maximal(3)
XY = MonomialIdeal.coordinate([0, 1], 3)
Z2, Z3 = MonomialIdeal.zero(2), MonomialIdeal.zero(3)


def _closed_form(n0, n1):
    # length of m^n0 (x,y)^n1 / m^(n0+1) (x,y)^n1 in k[x,y,z], found by enumeration
    return Fraction(n0 * n0 + 2 * n0 * n1 + 3 * n0 + 2 * n1 + 2, 2)


def _naive_product_gens(ideals_with_powers):
    gens = [()]
    for I, k in ideals_with_powers:
        for _ in range(k):
            gens = [g + (h,) for g in gens for h in I.generators()]
    n = ideals_with_powers[0][0].nvars
    return {tuple(sum(h[i] for h in g) for i in range(n)) for g in gens}


def _divides_some(gens, m):
    return any(all(a <= b for a, b in zip(g, m)) for g in gens)


def _brute_B(J, I_list, H, point, box):
    n = J.nvars
    P = _naive_product_gens([(J, point[0])] + list(zip(I_list, point[1:])))
    Q = _naive_product_gens([(J, point[0] + 1)] + list(zip(I_list, point[1:])))
    Hg = H.generators()
    return sum(1 for m in product(range(box), repeat=n)
               if _divides_some(P, m) and not _divides_some(Q, m) and not _divides_some(Hg, m))


def test_mixed_type_parse_and_format():
    t = MixedType.parse("1,2;3")
    assert t.k == (1, 2) and t.k0_plus_1 == 3 and t.k0 == 2
    assert t.total_degree == 5 and t.exponent() == (2, 1, 2)
    assert str(t) == "1,2;3"
    assert MixedType.parse(";3").s == 0
    with pytest.raises(ValueError):
        MixedType.parse("1;0")


def test_sample_values():
    assert sample_B(M2, [M2], Z2, (3, 2)) == 6
    assert sample_B(M3, [XY], Z3, (2, 2)) == 12
    assert sample_B(M2.power(2), [M2], Z2, (0, 0)) == 3


@pytest.mark.parametrize("point", [(0, 0), (1, 2), (2, 1), (3, 3), (4, 0)])
def test_sample_matches_closed_form(point):
    assert sample_B(M3, [XY], Z3, point) == _closed_form(*point)


def test_sample_with_module_matches_enumeration():
    H = mono((1, 1, 1))
    I = mono((2, 0, 0), (0, 1, 1))
    for point in [(1, 1), (2, 1), (1, 2), (3, 0)]:
        assert sample_B(M3, [I], H, point) == _brute_B(M3, [I], H, point, box=10)


def test_interpolate_linear():
    pts = simplex_points((5, 5), 1)
    poly = interpolate({p: p[0] + p[1] + 1 for p in pts}, 1, 2)
    assert poly.nonzero() == {(0, 0): 1, (1, 0): 1, (0, 1): 1}


def test_interpolate_constant():
    poly = interpolate({(4,): 7}, 0, 1)
    assert poly.nonzero() == {(0,): 7}


def test_interpolate_closed_form():
    pts = simplex_points((2, 2), 2)
    poly = interpolate({p: _closed_form(*p) for p in pts}, 2, 2)
    assert poly.nonzero() == {(2, 0): Fraction(1, 2), (1, 1): 1, (1, 0): Fraction(3, 2), (0, 1): 1, (0, 0): 1}


def test_interpolate_rejects_wrong_grid():
    with pytest.raises(ValueError):
        interpolate({(0, 0): 1}, 1, 2)


def test_context_examples():
    assert context(M3, [XY], Z3).to_dict() == {"d": 3, "q": 3, "h": 2, "s": 1}
    assert context(M2, [M2], Z2).to_dict() == {"d": 2, "q": 2, "h": 2, "s": 1}
    ctx = context(M2, [mono((1, 0))], mono((1, 1)))
    assert (ctx.d, ctx.q, ctx.h) == (1, 1, 0)


def test_context_errors():
    with pytest.raises(NotMPrimary):
        context(mono((1, 0)), [M2], Z2)
    with pytest.raises(MixMultError):
        context(M2, [mono((1, 0))], mono((1, 0)))


def test_mixed_multiplicity_examples():
    assert mixed_multiplicity(M2, [M2], Z2, MixedType((1,), 1)) == 1
    assert mixed_multiplicity(M3, [XY], Z3, MixedType((2,), 1)) == 0
    assert mixed_multiplicity(M3, [XY], Z3, MixedType((0,), 3)) == 1
    assert mixed_multiplicity(M3, [XY], Z3, MixedType((1,), 2)) == 1
    with pytest.raises(DegreeMismatch):
        mixed_multiplicity(M3, [XY], Z3, MixedType((1,), 1))


def test_certificate_fields():
    res = certified_polynomial(M3, [XY], Z3)
    assert res.stable and res.degree_ok
    assert res.offset == res.attempts[-1] == 1
    assert res.polynomial.total_degree() == 2
    assert res.all_values() == {MixedType((0,), 3): 1, MixedType((1,), 2): 1, MixedType((2,), 1): 0}


def test_m_and_m_squared():
    # e(m^[1], (m^2)^[1]) = 2 and e(m^2) = 4 in two variables
    assert mixed_multiplicity(M2.power(2), [M2], Z2, MixedType((1,), 1)) == 2
    assert mixed_multiplicity(M2.power(2), [M2], Z2, MixedType((0,), 2)) == 4
    # e(m^3) = e(m) + 2 e(m^[1], (m^2)^[1]) + e(m^2)
    assert hilbert_samuel(M2.power(3), Z2).value == 1 + 2 * 2 + 4


def test_evaluate_reproduces_samples():
    res = certified_polynomial(M3, [XY], Z3)
    for point in [(5, 1), (7, 3), (2, 9)]:
        assert res.polynomial.evaluate(point) == sample_B(M3, [XY], Z3, point)


# ---------------------------------------------------------------- properties

ideal_seeds = st.integers(0, 2**32 - 1)


def _random_ideals(seed, n, s):
    rng = make_rng((seed,))
    return [random_equigenerated(rng, n, int(rng.integers(1, 3))) for _ in range(s)]


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideal_seeds)
def test_permutation_equivariance(seed):
    I1, I2 = _random_ideals(seed, 3, 2)
    try:
        a = certified_polynomial(M3, [I1, I2], Z3).all_values()
    except MixMultError:
        return
    b = certified_polynomial(M3, [I2, I1], Z3).all_values()
    for t, v in a.items():
        assert b[MixedType((t.k[1], t.k[0]), t.k0_plus_1)] == v


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideal_seeds, st.integers(2, 3))
def test_self_mixed_multiplicities_equal_e(seed, n):
    rng = make_rng((seed,))
    J = random_m_primary_equigenerated(rng, n, int(rng.integers(1, 3)))
    zero = MonomialIdeal.zero(n)
    e = hilbert_samuel(J, zero).value
    values = certified_polynomial(J, [J], zero).all_values()
    assert set(values.values()) == {e}


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideal_seeds)
def test_values_nonnegative_not_all_zero(seed):
    (I,) = _random_ideals(seed, 3, 1)
    try:
        values = certified_polynomial(M3, [I], Z3).all_values()
    except MixMultError:
        return
    assert all(v >= 0 for v in values.values())
    assert any(v > 0 for v in values.values())


coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=6, max_size=6)


@settings(max_examples=40, deadline=None)
@given(coeffs, st.integers(0, 6))
def test_interpolation_recovers_polynomials(cs, off):
    exps = [e for d in range(3) for e in combinations_with_replacement(range(2), d)]
    monos = [tuple(e.count(i) for i in range(2)) for e in exps]
    truth = dict(zip(monos, cs))

    def f(p):
        return sum(c * p[0] ** e[0] * p[1] ** e[1] for e, c in truth.items())
    poly = interpolate({p: f(p) for p in simplex_points((off, off), 2)}, 2, 2)
    assert poly == InterpolatedPolynomial({e: Fraction(c) for e, c in truth.items()}, (off, off), 2)
