from __future__ import annotations

from fractions import Fraction

import pytest
from conftest import mono
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mixmult.errors import MixMultError, NotMPrimary, NotSystemOfParameters
from mixmult.groebner import PolyIdeal
from mixmult.monomial_ideal import CoordinatePrime, MonomialIdeal, minimal_primes
from mixmult.multiplicity import (
    additivity_check,
    additivity_report,
    hilbert_samuel,
    is_system_of_parameters,
    local_colength,
    localized_length,
    multiplicity_symbol,
)
from mixmult.reductions import make_rng, sample_general_element
from mixmult.ring import CoefficientField, Polynomial

FP = CoefficientField.prime()
Z2 = MonomialIdeal.zero(2)
M2 = MonomialIdeal.maximal(2)


def _newton_area_times_two(I: MonomialIdeal) -> int:
    """2 * area of the region under the Newton polygon of an m-primary monomial ideal in two variables."""
    pts = sorted(set(I.generators()))
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # keep the decreasing part: from the point on the y-axis to the point on the x-axis
    area2 = Fraction(0)
    for (ax, ay), (bx, by) in zip(hull, hull[1:]):
        area2 += (bx - ax) * (ay + by)
    return int(area2)


def test_newton_oracle_sanity():
    assert _newton_area_times_two(mono((2, 0), (0, 3))) == 6
    assert _newton_area_times_two(M2) == 1


def test_examples():
    assert hilbert_samuel(M2, Z2).value == 1
    assert hilbert_samuel(mono((2, 0), (0, 3)), Z2).value == 6
    with pytest.raises(NotMPrimary):
        hilbert_samuel(mono((1, 0)), Z2)


def test_sample_history():
    res = hilbert_samuel(mono((2, 0), (0, 3)), Z2)
    assert res.method.endswith("monomial")
    # length of A/(x^2, y^3)^(n+1) is 3n^2 + 6n + 3 + ... ; check samples directly
    for n, v in res.samples:
        brute = sum(1 for i in range(40) for j in range(40)
                    if not any(i >= 2 * a and j >= 3 * (n + 1 - a) for a in range(n + 2)))
        assert v == brute


def test_multiplicity_symbol_examples(fp):
    x, y = Polynomial.variable(0, 2, fp), Polynomial.variable(1, 2, fp)
    lines = [sample_general_element(M2, fp, (1, j)) for j in range(2)]
    assert multiplicity_symbol(lines, Z2).value == 1
    # a generic line against x + y^2: the second intersection point is away from the origin
    R = [sample_general_element(M2, fp, (2, 0)).poly, x + y**2]
    res = multiplicity_symbol(R, Z2)
    assert res.value == 1 and res.method.endswith("local")
    with pytest.raises(NotSystemOfParameters):
        multiplicity_symbol([x], Z2)
    assert not is_system_of_parameters([x, x], Z2)


def test_local_multiplicities(fp):
    x, y = Polynomial.variable(0, 2, fp), Polynomial.variable(1, 2, fp)
    one = Polynomial.constant(1, 2, fp)
    # the node y^2 = x^2(x+1) cut by y = 0 meets the origin with multiplicity 2
    assert multiplicity_symbol([y**2 - x**3 - x**2, y], Z2).value == 2
    assert local_colength([y - x**2, x * (one + x)], 2, fp) == 1
    assert not is_system_of_parameters([one + x, y], Z2)


def test_localized_length_examples():
    assert localized_length(mono((1, 1)), CoordinatePrime((0,))) == 1
    assert localized_length(mono((2, 1)), CoordinatePrime((0,))) == 2
    assert localized_length(mono((2, 0), (0, 3)), CoordinatePrime((0, 1))) == 6
    with pytest.raises(MixMultError):
        localized_length(mono((1, 1)), CoordinatePrime((0, 1)))


def test_additivity_examples(fp):
    H = mono((2, 1, 0), (2, 0, 1))
    R = [sample_general_element(MonomialIdeal.maximal(3), fp, (4, j)) for j in range(2)]
    rep = additivity_report(R, H)
    assert rep.holds
    assert rep.lhs == 2
    assert [(P.variables, length) for P, length, _ in rep.terms] == [((0,), 2)]


def test_bezout_graded_path(fp):
    forms = []
    for deg in (2, 3):
        gens = MonomialIdeal.maximal(2).power(deg)
        forms.append(sample_general_element(gens, fp, (3, deg)).poly)
    assert hilbert_samuel(PolyIdeal(forms, 2, fp), Z2).value == 6


# ---------------------------------------------------------------- properties

pairs = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=3)


def _m_primary(a, b, extra):
    return MonomialIdeal([(a, 0), (0, b)] + [e for e in extra if any(e)], 2)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 4), st.integers(1, 4), pairs)
def test_monomial_multiplicity_is_twice_newton_area(a, b, extra):
    I = _m_primary(a, b, extra)
    assert hilbert_samuel(I, Z2).value == _newton_area_times_two(I)


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 3), st.integers(1, 3), pairs)
def test_invariant_under_swapping_variables(a, b, extra):
    I = _m_primary(a, b, extra)
    swapped = MonomialIdeal([(v, u) for u, v in I.generators()], 2)
    assert hilbert_samuel(I, Z2).value == hilbert_samuel(swapped, Z2).value


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 3), st.integers(1, 3), st.integers(2, 30000))
def test_invariant_under_scaling_generators(a, b, c):
    x, y = Polynomial.variable(0, 2, FP), Polynomial.variable(1, 2, FP)
    plain = PolyIdeal([x**a, y**b], 2, FP)
    scaled = PolyIdeal([(x**a).scale(c), (y**b).scale(c + 1)], 2, FP)
    assert hilbert_samuel(plain, Z2).value == hilbert_samuel(scaled, Z2).value == a * b


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 2**32 - 1))
def test_monomial_and_graded_paths_agree(seed):
    rng = make_rng((seed,))
    n = 2
    gens = [(int(rng.integers(1, 4)), 0), (0, int(rng.integers(1, 4)))]
    if rng.random() < 0.5:
        gens.append((1, 1))
    I = MonomialIdeal(gens, n)
    via_monomial = hilbert_samuel(I, Z2).value
    a, b = gens[0][0], gens[1][1]
    extra = Polynomial({(a, b): 1, (a + b, 0): 1}, 2, FP)  # inside I, not a monomial
    res = hilbert_samuel(PolyIdeal.from_monomial(I, FP).with_gens([extra]), Z2)
    assert res.method.endswith("graded")
    assert via_monomial == res.value


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=3),
       st.integers(0, 1000))
def test_additivity_property(gens, seed):
    H = MonomialIdeal([g for g in gens if any(g)] or [(1, 1, 0)], 3)
    if H.is_unit():
        return
    primes = minimal_primes(H)
    d = 3 - min(P.height for P in primes)
    if d == 0:
        return
    R = [sample_general_element(MonomialIdeal.maximal(3), FP, (seed, j)) for j in range(d)]
    assert additivity_check(R, H)
