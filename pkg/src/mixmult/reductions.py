"""Generic elements, superficial-element certificates and joint reductions.

Conditions that hold "for all large exponents" are certified on a finite
box of exponent tuples (a window); every certificate records its window.
Source index 0 is J, index i >= 1 is I_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence, Union

import numpy as np

from .bhattacharya import MixedType, context
from .errors import DegreeMismatch, GenericityFailure, HypothesisViolated, UnsupportedInput
from .graded import GradedQuotient
from .groebner import (
    PolyIdeal,
    colon_element,
    ideal_dimension,
    ideal_equal,
    ideal_intersect,
    saturate_by,
)
from .monomial_ideal import MonomialIdeal, dim_quotient, ideal_product
from .multiplicity import is_system_of_parameters
from .ring import CoefficientField, Monomial, Polynomial

Seed = Union[int, tuple[int, ...]]
Window = tuple[tuple[int, ...], ...]
DEFAULT_RETRIES = 5
DEFAULT_WIDTH = 2


def make_rng(seed: Seed) -> np.random.Generator:
    """Generator for a seed path; (master, slot, attempt) paths give independent child streams."""
    entropy = [int(seed)] if isinstance(seed, (int, np.integer)) else [int(v) for v in seed]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def box_window(N: int, width: int, size: int) -> Window:
    """All tuples in [N, N + width]^size."""
    return tuple(iproduct(range(N, N + width + 1), repeat=size))


@dataclass(frozen=True)
class GeneralElement:
    """Random combination of the minimal generators of a source ideal."""

    poly: Polynomial
    source_index: int
    coefficients: tuple
    seed: tuple[int, ...]
    generators: tuple[Monomial, ...] = ()

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        fld = self.poly.field
        return {
            "poly": self.poly.format(names),
            "source": self.source_index,
            "coefficients": [fld.format(c) for c in self.coefficients],
            "seed": list(self.seed),
        }


def _seed_tuple(seed: Seed) -> tuple[int, ...]:
    return (int(seed),) if isinstance(seed, (int, np.integer)) else tuple(int(v) for v in seed)


def _require_equigenerated(I: MonomialIdeal, what: str = "source") -> None:
    if I.is_zero() or not I.is_equigenerated():
        raise UnsupportedInput(f"UnsupportedInput: {what} ideal is not equigenerated")


def sample_general_element(source: MonomialIdeal, fld: CoefficientField, rng_seed: Seed,
                           source_index: int = 0) -> GeneralElement:
    """sum c_j g_j over the minimal generators g_j of ``source`` with random nonzero c_j."""
    _require_equigenerated(source)
    rng = make_rng(rng_seed)
    gens = tuple(source.generators())
    coeffs = tuple(fld.random_nonzero(rng) for _ in gens)
    poly = Polynomial(dict(zip(gens, coeffs)), source.nvars, fld)
    return GeneralElement(poly, source_index, coeffs, _seed_tuple(rng_seed), gens)


def element_from(poly: Polynomial, source_index: int) -> GeneralElement:
    """Wrap a hand-chosen polynomial (fixtures, adversarial cases)."""
    return GeneralElement(poly, source_index, tuple(poly.terms.values()), (), tuple(poly.terms))


def source_ideal(index: int, J: MonomialIdeal, I_list: Sequence[MonomialIdeal]) -> MonomialIdeal:
    if index == 0:
        return J
    if not 1 <= index <= len(I_list):
        raise IndexError(f"source index {index} out of range")
    return I_list[index - 1]


def _mono_polys(I: MonomialIdeal, fld: CoefficientField) -> list[Polynomial]:
    return [Polynomial.monomial(m, fld) for m in I.generators()]


def _product_at(J, I_list, exps) -> MonomialIdeal:
    factors = [J.power(exps[0])] + [I.power(k) for I, k in zip(I_list, exps[1:])]
    return ideal_product(factors, J.nvars)


def _poly(x) -> Polynomial:
    return x.poly if isinstance(x, GeneralElement) else x


# ---------------------------------------------------------------- FC conditions

def fc1_at(x, i: int, J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal,
           n: Sequence[int], previous: Sequence[Polynomial] = ()) -> bool:
    """((x) + K) ∩ (P·S + K) = x·P + K for P = J^n0 I_1^n1..I_s^ns, S the source ideal, K = H + previous."""
    f = _poly(x)
    fld = f.field
    nv = J.nvars
    K = _mono_polys(H, fld) + list(previous)
    P = _product_at(J, I_list, n)
    Pp = P * source_ideal(i, J, I_list)
    left = ideal_intersect(PolyIdeal([f] + K, nv, fld), PolyIdeal(_mono_polys(Pp, fld) + K, nv, fld))
    right = PolyIdeal([f.shift(m) for m in P.generators()] + K, nv, fld)
    # right ⊆ left always (x·P lies in (x) and in P·S), so equality is one inclusion
    return right.contains_ideal(left)


def check_fc1(x, i: int, J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal,
              window: Sequence[Sequence[int]], previous: Sequence[Polynomial] = ()) -> bool:
    """Superficiality of x (from source i) on every tuple of the window; vacuous on an empty window."""
    return all(fc1_at(x, i, J, I_list, H, n, previous) for n in window)


def _quotient(H: MonomialIdeal, previous: Sequence[Polynomial], fld: CoefficientField) -> PolyIdeal:
    return PolyIdeal(_mono_polys(H, fld) + list(previous), H.nvars, fld)


def check_fc2(x, H: MonomialIdeal, I: MonomialIdeal, previous: Sequence[Polynomial] = ()) -> bool:
    """(K : x) ⊆ K : I^∞ with K = H + previous, i.e. x is I-filter-regular on A/K."""
    f = _poly(x)
    fld = f.field
    K = _quotient(H, previous, fld)
    if not K.gens:
        return True
    col = colon_element(K, f)
    if not previous:
        sat = H.saturate(I)
        return all(sat.contains(e) for g in col.gens for e in g.terms)
    sat = saturate_by(K, _mono_polys(I, fld))
    return sat.contains_ideal(col)


def check_fc3(x, H: MonomialIdeal, I: MonomialIdeal, previous: Sequence[Polynomial] = ()) -> bool:
    """dim A/((K + x) : I^∞) = dim A/(K : I^∞) - 1; false when either saturation is the unit ideal."""
    f = _poly(x)
    fld = f.field
    Ipolys = _mono_polys(I, fld)
    K = _quotient(H, previous, fld)
    if previous:
        base = saturate_by(K, Ipolys)
        if base.is_unit():
            return False
        before = ideal_dimension(base)
    else:
        sat = H.saturate(I)
        if sat.is_unit():
            return False
        before = dim_quotient(sat)
    after_ideal = saturate_by(K.with_gens([f]), Ipolys)
    if after_ideal.is_unit():
        return False
    return ideal_dimension(after_ideal) == before - 1


# ---------------------------------------------------------------- certificates

@dataclass
class SuperficialCertificate:
    element: GeneralElement
    window: Window
    fc1: bool
    fc2: bool | None = None
    fc3: bool | None = None
    dim_before: int = 0
    dim_after: int = 0
    attempts: int = 1

    @property
    def vacuous(self) -> bool:
        return len(self.window) == 0

    def to_dict(self, names=None) -> dict:
        return {
            "element": self.element.to_dict(names),
            "window": [list(n) for n in self.window],
            "fc1": self.fc1, "fc2": self.fc2, "fc3": self.fc3,
            "vacuous": self.vacuous,
            "dim_before": self.dim_before, "dim_after": self.dim_after,
            "attempts": self.attempts,
        }


@dataclass
class JointReductionCertificate:
    elements: list[GeneralElement]
    tally: MixedType
    window: Window
    is_sop: bool
    verified: bool
    failed_tuples: list[tuple[int, ...]] = field(default_factory=list)

    def to_dict(self, names=None) -> dict:
        return {
            "elements": [x.to_dict(names) for x in self.elements],
            "type": str(self.tally),
            "window": [list(n) for n in self.window],
            "is_sop": self.is_sop,
            "verified": self.verified,
            "failed_tuples": [list(n) for n in self.failed_tuples],
        }


def type_tally(R: Sequence[GeneralElement], s: int) -> MixedType:
    counts = [0] * (s + 1)
    for x in R:
        if not 0 <= x.source_index <= s:
            raise ValueError(f"element source {x.source_index} out of range for s={s}")
        counts[x.source_index] += 1
    if counts[0] == 0:
        raise ValueError("a joint reduction of this typing needs at least one element from J")
    return MixedType(tuple(counts[1:]), counts[0])


def joint_reduction_at(R: Sequence[GeneralElement], J: MonomialIdeal, I_list: Sequence[MonomialIdeal],
                       H: MonomialIdeal, n: Sequence[int], graded: GradedQuotient) -> bool:
    """J^(n0+1) ∏ I_i^(ni+1) + H = Σ_i (R_i)·(same product with the i-th exponent lowered) + H."""
    fld = graded.field
    top = tuple(v + 1 for v in n)
    lhs = _product_at(J, I_list, top)
    lowered: dict[int, MonomialIdeal] = {}
    rhs: list[Polynomial] = []
    for x in R:
        i = x.source_index
        if i not in lowered:
            exps = list(top)
            exps[i] -= 1
            lowered[i] = _product_at(J, I_list, exps)
        rhs.extend(x.poly.shift(m) for m in lowered[i].generators())
    # RHS ⊆ LHS + H holds term by term, LHS + H being monomial
    outside = lhs + H
    if not all(outside.contains(e) for g in rhs for e in g.terms):
        return False
    return graded.contains_all(rhs, _mono_polys(lhs, fld))


def check_joint_reduction(R: Sequence[GeneralElement], J: MonomialIdeal, I_list: Sequence[MonomialIdeal],
                          H: MonomialIdeal, window: Sequence[Sequence[int]],
                          expected: MixedType | None = None) -> JointReductionCertificate:
    """Check the joint-reduction identity on every window tuple, and whether R is a system of parameters."""
    R = list(R)
    tally = type_tally(R, len(I_list))
    if expected is not None and tally != expected:
        raise ValueError(f"element sources tally to {tally}, expected {expected}")
    fld = R[0].poly.field
    graded = GradedQuotient(H, fld)
    window = tuple(tuple(n) for n in window)
    failed = [n for n in window if not joint_reduction_at(R, J, I_list, H, n, graded)]
    sop = is_system_of_parameters(R, H)
    return JointReductionCertificate(R, tally, window, sop, bool(window) and not failed, failed)


# ---------------------------------------------------------------- builders

def sequence_sources(mtype: MixedType) -> list[int]:
    """Source index of each slot: k_1 from I_1, ..., k_s from I_s, then k_0 + 1 from J."""
    out = []
    for i, k in enumerate(mtype.k, start=1):
        out.extend([i] * k)
    out.extend([0] * mtype.k0_plus_1)
    return out


def default_window(J, I_list, H, width: int = DEFAULT_WIDTH) -> Window:
    N = max([J.max_degree(), H.max_degree()] + [I.max_degree() for I in I_list] + [1])
    return box_window(N, width, len(I_list) + 1)


def build_superficial_sequence(J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal,
                               mtype: MixedType, rng_seed: int, retries: int = DEFAULT_RETRIES,
                               fld: CoefficientField | None = None, window: Window | None = None,
                               force: bool = False, full: bool = False,
                               ) -> tuple[list[GeneralElement], list[SuperficialCertificate]]:
    """Draw a superficial sequence of the given type, certifying each element before moving on.

    Each element must pass the superficiality check against the quotient by H and
    the elements already chosen, and must lower the dimension by exactly one.
    A failing draw is replaced by a fresh one (seed path (rng_seed, slot, attempt)).
    With ``full`` the filter-regularity and saturation-dimension checks are
    recorded as well.
    """
    fld = fld or CoefficientField.prime()
    ctx = context(J, I_list, H)
    if mtype.s != ctx.s:
        raise ValueError(f"type has s={mtype.s}, instance has s={ctx.s}")
    if mtype.total_degree != ctx.d - 1:
        raise DegreeMismatch(f"DegreeMismatch: type total degree {mtype.total_degree} != d-1 = {ctx.d - 1}")
    if mtype.i_sum >= ctx.h and not force:
        raise HypothesisViolated(
            f"HypothesisViolated: k_1+...+k_s = {mtype.i_sum} is not below the height h = {ctx.h}")
    slots = sequence_sources(mtype)
    for i in set(slots):
        _require_equigenerated(source_ideal(i, J, I_list), "J" if i == 0 else f"I_{i}")
    if window is None:
        window = default_window(J, I_list, H)
    window = tuple(tuple(n) for n in window)
    nv = J.nvars
    Hpolys = _mono_polys(H, fld)
    chosen: list[GeneralElement] = []
    certs: list[SuperficialCertificate] = []
    dim = ctx.d
    for slot, i in enumerate(slots):
        src = source_ideal(i, J, I_list)
        prev = [x.poly for x in chosen]
        for attempt in range(retries + 1):
            x = sample_general_element(src, fld, (rng_seed, slot, attempt), i)
            after = PolyIdeal(Hpolys + prev + [x.poly], nv, fld)
            new_dim = -1 if after.is_unit() else ideal_dimension(after)
            if new_dim != dim - 1:
                continue
            if not check_fc1(x, i, J, I_list, H, window, prev):
                continue
            cert = SuperficialCertificate(x, window, True, dim_before=dim, dim_after=new_dim,
                                          attempts=attempt + 1)
            if full:
                Iprod = ideal_product(I_list, nv) if I_list else MonomialIdeal.unit(nv)
                cert.fc2 = check_fc2(x, H, Iprod, prev)
                cert.fc3 = check_fc3(x, H, Iprod, prev)
            chosen.append(x)
            certs.append(cert)
            dim = new_dim
            break
        else:
            raise GenericityFailure(
                f"GenericityFailure: slot {slot} (source {i}) failed {retries + 1} draws")
    return chosen, certs


def resample_element(R: Sequence[GeneralElement], position: int, rng_seed: Seed) -> list[GeneralElement]:
    """Replace R[position] by a fresh random element of the same source ideal."""
    if not 0 <= position < len(R):
        raise IndexError(f"position {position} out of range for {len(R)} elements")
    old = R[position]
    if not old.generators:
        raise ValueError("element does not record its source generators")
    fld = old.poly.field
    src = MonomialIdeal(old.generators, old.poly.nvars)
    new = sample_general_element(src, fld, rng_seed, old.source_index)
    return list(R[:position]) + [new] + list(R[position + 1:])


def resample_until_certified(R: Sequence[GeneralElement], position: int, rng_seed: int,
                             J, I_list, H, window: Window, retries: int = DEFAULT_RETRIES,
                             ) -> tuple[list[GeneralElement], JointReductionCertificate]:
    """Resample one position until the joint-reduction and sop checks both pass."""
    for attempt in range(retries + 1):
        cand = resample_element(R, position, (rng_seed, position, attempt))
        cert = check_joint_reduction(cand, J, I_list, H, window)
        if cert.verified and cert.is_sop:
            return cand, cert
    raise GenericityFailure(f"GenericityFailure: position {position} failed {retries + 1} resamples")
