"""End-to-end verification: mixed multiplicity versus the multiplicity of a joint reduction."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bhattacharya import AnalysisContext, MixedType, certified_polynomial, context
from .errors import (
    FieldArtifact,
    GenericityFailure,
    HypothesisViolated,
    MixMultError,
    NotMPrimary,
)
from .graded import monomials_of_degree
from .monomial_ideal import MonomialIdeal, dim_quotient
from .multiplicity import multiplicity_symbol
from .reductions import (
    DEFAULT_RETRIES,
    DEFAULT_WIDTH,
    box_window,
    build_superficial_sequence,
    check_joint_reduction,
    make_rng,
)
from .ring import CoefficientField


@dataclass
class VerificationReport:
    """Outcome of one verification run; ``status`` is "verified", "unequal" or an error kind."""

    scenario: str
    context: AnalysisContext | None
    type: MixedType | None
    mixed_value: int | None = None
    reduction_value: int | None = None
    status: str = "pending"
    message: str = ""
    certificates: dict = field(default_factory=dict)
    seeds: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    window: tuple = ()
    offset: int | None = None
    stable: bool | None = None
    degree_ok: bool | None = None

    @property
    def equal(self) -> bool:
        return (self.mixed_value is not None and self.reduction_value is not None
                and self.mixed_value == self.reduction_value)

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_dict(self, names: Sequence[str] | None = None, timings: bool = False) -> dict:
        out = {
            "scenario": self.scenario,
            "status": self.status,
            "context": self.context.to_dict() if self.context else None,
            "type": str(self.type) if self.type else None,
            "mixed": self.mixed_value,
            "reduction": self.reduction_value,
            "equal": self.equal,
            "offset": self.offset,
            "stable": self.stable,
            "degree_ok": self.degree_ok,
            "window": [self.window[0], self.window[1]] if self.window else None,
            "seeds": self.seeds,
            "certificates": _certs_dict(self.certificates, names),
        }
        if self.details:
            out["details"] = self.details
        if self.message:
            out["message"] = self.message
        if timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


def _certs_dict(certs: dict, names) -> dict:
    out = {}
    if "superficial" in certs:
        out["superficial"] = [c.to_dict(names) for c in certs["superficial"]]
    if "joint_reduction" in certs:
        out["joint_reduction"] = certs["joint_reduction"].to_dict(names)
    return out


class _Clock:
    def __init__(self, sink: dict):
        self.sink = sink

    def __call__(self, name: str):
        sink = self.sink

        class _Span:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                sink[name] = sink.get(name, 0.0) + time.perf_counter() - self.t
                return False
        return _Span()


def _hypotheses(ctx: AnalysisContext, mtype: MixedType) -> str | None:
    if ctx.d <= 0:
        return "d = 0"
    if mtype.total_degree != ctx.d - 1:
        return f"type total degree {mtype.total_degree} != d-1 = {ctx.d - 1}"
    if ctx.h <= 0:
        return "height h = 0"
    if mtype.i_sum >= ctx.h:
        return f"k_1+...+k_s = {mtype.i_sum} is not below h = {ctx.h}"
    return None


def verify_main_theorem(J: MonomialIdeal, I_list: Sequence[MonomialIdeal], H: MonomialIdeal,
                        mtype: MixedType, seed: int, fld: CoefficientField | None = None,
                        retries: int = DEFAULT_RETRIES, width: int = DEFAULT_WIDTH,
                        offset: int | None = None, joint_check: bool = True,
                        force: bool = False, field_check: bool = False,
                        scenario: str = "main") -> VerificationReport:
    """Compare the mixed multiplicity of the given type with e(R; A/H) for a certified joint reduction R.

    Errors are reported through ``status`` rather than raised.  When the
    hypotheses fail the mixed multiplicity is still recorded (advisory mode);
    the reduction side is only computed with ``force``.
    """
    fld = fld or CoefficientField.prime()
    rep = VerificationReport(scenario, None, mtype, seeds={"master": int(seed)})
    clock = _Clock(rep.timings)
    try:
        with clock("context"):
            rep.context = ctx = context(J, I_list, H)
        if mtype.s != ctx.s:
            raise MixMultError(f"type has s={mtype.s}, instance has s={ctx.s}")
        violated = _hypotheses(ctx, mtype)
        with clock("mixed"):
            bh = certified_polynomial(J, I_list, H, offset)
        rep.offset, rep.stable, rep.degree_ok = bh.offset, bh.stable, bh.degree_ok
        if mtype.total_degree == ctx.q - 1:
            rep.mixed_value = bh.mixed_multiplicity(mtype)
        if violated:
            rep.status, rep.message = HypothesisViolated.kind, violated
            if not force:
                return rep
        N = bh.offset if offset is None else offset
        window = box_window(N, width, ctx.s + 1)
        rep.window = (N, N + width)
        R, cert, sup = _certified_reduction(J, I_list, H, mtype, seed, fld, retries, window,
                                            joint_check, force, clock)
        rep.certificates["superficial"] = sup
        if cert is not None:
            rep.certificates["joint_reduction"] = cert
        with clock("reduction"):
            rep.reduction_value = multiplicity_symbol(R, H).value
        if field_check:
            with clock("field_check"):
                _field_check(J, I_list, H, mtype, seed, retries, window, joint_check, force, rep)
        if not violated:
            rep.status = "verified" if rep.equal else "unequal"
    except MixMultError as exc:
        rep.status, rep.message = exc.kind, str(exc)
    return rep


def _certified_reduction(J, I_list, H, mtype, seed, fld, retries, window, joint_check, force, clock):
    """Superficial sequence that is also a certified joint reduction; resample the whole draw on failure."""
    for attempt in range(retries + 1):
        sub_seed = seed if attempt == 0 else int(make_rng((seed, 1 << 20, attempt)).integers(2**63))
        with clock("superficial"):
            R, sup = build_superficial_sequence(J, I_list, H, mtype, sub_seed, retries, fld, window, force)
        if not joint_check:
            return R, None, sup
        with clock("joint_reduction"):
            cert = check_joint_reduction(R, J, I_list, H, window, expected=mtype)
        if cert.verified and cert.is_sop:
            return R, cert, sup
    raise GenericityFailure(f"GenericityFailure: no certified joint reduction after {retries + 1} draws")


def _field_check(J, I_list, H, mtype, seed, retries, window, joint_check, force, rep) -> None:
    R, _, _ = _certified_reduction(J, I_list, H, mtype, seed, CoefficientField.rationals(), retries,
                                   window, joint_check, force, _Clock({}))
    value = multiplicity_symbol(R, H).value
    rep.details["rational_reduction"] = value
    if value != rep.reduction_value:
        raise FieldArtifact(f"GenericityFailure/FieldArtifact: prime field gives {rep.reduction_value}, "
                            f"rationals give {value}")


def verify_superficial_remark(J, I_list, H, mtype, seed, **kw) -> VerificationReport:
    """Same comparison, certifying only the superficial sequence and the parameter property."""
    return verify_main_theorem(J, I_list, H, mtype, seed, joint_check=False, scenario="superficial", **kw)


def rees_slot(ks: Sequence[int]) -> int:
    """Index of the ideal used as the J-slot: the last one with a positive entry."""
    for j in range(len(ks) - 1, -1, -1):
        if ks[j] > 0:
            return j
    raise ValueError("type has no positive entry")


def verify_rees_corollary(I_list: Sequence[MonomialIdeal], H: MonomialIdeal, ks: Sequence[int],
                          seed: int, **kw) -> VerificationReport:
    """All ideals m-primary, type (k_1..k_s) summing to d; one ideal is moved into the J-slot."""
    ks = tuple(int(k) for k in ks)
    rep = VerificationReport("rees", None, None, seeds={"master": int(seed)})
    try:
        if len(ks) != len(I_list) or not I_list:
            raise MixMultError("need one type entry per ideal")
        for I in I_list:
            if I.is_unit() or not (I + H).is_m_primary():
                raise NotMPrimary("NotMPrimary: every ideal must be m-primary")
        d = dim_quotient(H)
        if sum(ks) != d:
            raise MixMultError(f"type sums to {sum(ks)}, must equal d = {d}")
        j = rees_slot(ks)
        others = [I for t, I in enumerate(I_list) if t != j]
        mtype = MixedType(tuple(k for t, k in enumerate(ks) if t != j), ks[j])
    except MixMultError as exc:
        rep.status, rep.message = exc.kind, str(exc)
        return rep
    out = verify_main_theorem(I_list[j], others, H, mtype, seed, scenario="rees", **kw)
    out.details["rees_type"] = list(ks)
    out.details["j_slot"] = j
    return out


def verify_equimultiple_vanishing(seed: int, d: int = 3, h: int = 2,
                                  fld: CoefficientField | None = None) -> VerificationReport:
    """I = (x_1..x_h) in k[x_1..x_d], J = m: types (i; d-i) vanish exactly for i >= h.

    A vanishing value cannot be the multiplicity of a system of parameters,
    whose colength is positive; a forced sequence of type (h; d-h) is drawn to
    show its multiplicity is nonzero.
    """
    if not 0 < h < d:
        raise ValueError("need 0 < h < d")
    fld = fld or CoefficientField.prime()
    J = MonomialIdeal.maximal(d)
    I = MonomialIdeal.coordinate(range(h), d)
    H = MonomialIdeal.zero(d)
    rep = VerificationReport("equimultiple", None, MixedType((h,), d - h), seeds={"master": int(seed)})
    clock = _Clock(rep.timings)
    try:
        with clock("mixed"):
            bh = certified_polynomial(J, [I], H)
        rep.context = bh.context
        rep.offset, rep.stable, rep.degree_ok = bh.offset, bh.stable, bh.degree_ok
        values = {i: bh.mixed_multiplicity(MixedType((i,), d - i)) for i in range(d)}
        rep.details["values"] = {f"{i};{d - i}": v for i, v in values.items()}
        rep.mixed_value = values[h]
        with clock("reduction"):
            R, _ = build_superficial_sequence(J, [I], H, rep.type, seed, fld=fld, force=True)
            rep.reduction_value = multiplicity_symbol(R, H).value
        vanish = all(values[i] == 0 for i in range(h, d))
        positive = any(values[i] > 0 for i in range(h))
        rep.details["vanishing_holds"] = vanish and positive
        rep.status = "verified" if vanish and positive and rep.reduction_value > 0 else "unequal"
    except MixMultError as exc:
        rep.status, rep.message = exc.kind, str(exc)
    return rep


# ---------------------------------------------------------------- random instances

@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 20
    nvars: tuple[int, ...] = (2, 3)
    max_s: int = 2
    max_degree: int = 2
    j_powers: tuple[int, ...] = (1, 2)
    h_probability: float = 0.3

    def __post_init__(self):
        if not 0 <= self.trials <= 200:
            raise ValueError("trials must be in [0, 200]")
        if max(self.nvars) > 3 or min(self.nvars) < 1:
            raise ValueError("at most 3 variables")
        if not 1 <= self.max_degree <= 3 or not 0 <= self.max_s <= 2:
            raise ValueError("degrees at most 3 and s at most 2")


@dataclass(frozen=True)
class Instance:
    J: MonomialIdeal
    I_list: tuple[MonomialIdeal, ...]
    H: MonomialIdeal
    mtype: MixedType

    def describe(self) -> dict:
        names = [f"x{i}" for i in range(self.J.nvars)]
        return {"ring": names, "J": self.J.format(names), "I": [I.format(names) for I in self.I_list],
                "H": self.H.format(names), "type": str(self.mtype)}


def random_equigenerated(rng: np.random.Generator, n: int, degree: int) -> MonomialIdeal:
    monos = monomials_of_degree(n, degree)
    k = int(rng.integers(1, len(monos) + 1))
    pick = rng.choice(len(monos), size=k, replace=False)
    return MonomialIdeal(monos[np.sort(pick)], n)


def random_m_primary_equigenerated(rng: np.random.Generator, n: int, degree: int) -> MonomialIdeal:
    """Equigenerated and m-primary: all pure powers plus a random subset of the other monomials."""
    monos = monomials_of_degree(n, degree)
    pure = [j for j, row in enumerate(monos) if int(row.max()) == degree]
    rest = [j for j in range(len(monos)) if j not in pure]
    extra = [j for j in rest if rng.random() < 0.5]
    return MonomialIdeal(monos[sorted(pure + extra)], n)


def random_module(rng: np.random.Generator, n: int, probability: float) -> MonomialIdeal:
    if n == 1 or rng.random() >= probability:
        return MonomialIdeal.zero(n)
    gens = []
    for _ in range(int(rng.integers(1, 3))):
        deg = int(rng.integers(2, 4))
        gens.append(tuple(int(v) for v in monomials_of_degree(n, deg)[rng.integers(len(monomials_of_degree(n, deg)))]))
    H = MonomialIdeal(gens, n)
    return H if dim_quotient(H) >= 1 else MonomialIdeal.zero(n)


def random_instance(rng: np.random.Generator, config: FuzzConfig = FuzzConfig()) -> Instance:
    """A hypothesis-satisfying instance; draws again until the height condition allows a type."""
    while True:
        n = int(rng.choice(config.nvars))
        J = MonomialIdeal.maximal(n).power(int(rng.choice(config.j_powers)))
        s = int(rng.integers(1, config.max_s + 1)) if config.max_s else 0
        I_list = tuple(random_equigenerated(rng, n, int(rng.integers(1, config.max_degree + 1)))
                       for _ in range(s))
        H = random_module(rng, n, config.h_probability)
        try:
            ctx = context(J, I_list, H)
        except MixMultError:
            continue
        if ctx.d < 1 or ctx.h < 1:
            continue
        top = min(ctx.h - 1, ctx.d - 1)
        total = int(rng.integers(0, top + 1))
        ks = [0] * s
        for _ in range(total):
            ks[int(rng.integers(s))] += 1
        return Instance(J, I_list, H, MixedType(tuple(ks), ctx.d - total))


def fuzz_campaign(config: FuzzConfig, seed: int, fld: CoefficientField | None = None) -> dict:
    """Run random hypothesis-satisfying instances and tally the outcomes."""
    summary = {"trials": config.trials, "seed": int(seed), "equal": 0, "unequal": 0, "errored": 0,
               "errors": {}, "reproducers": []}
    for trial in range(config.trials):
        rng = make_rng((seed, trial))
        inst = random_instance(rng, config)
        trial_seed = int(rng.integers(2**63))
        rep = verify_main_theorem(inst.J, list(inst.I_list), inst.H, inst.mtype, trial_seed, fld)
        if rep.status == "verified":
            summary["equal"] += 1
        elif rep.status == "unequal":
            summary["unequal"] += 1
            summary["reproducers"].append({**inst.describe(), "seed": trial_seed,
                                           "mixed": rep.mixed_value, "reduction": rep.reduction_value})
        else:
            summary["errored"] += 1
            summary["errors"][rep.status] = summary["errors"].get(rep.status, 0) + 1
            summary["reproducers"].append({**inst.describe(), "seed": trial_seed, "status": rep.status,
                                           "message": rep.message})
    return summary


def random_m_primary_pair(rng: np.random.Generator, n: int = 2, max_degree: int = 3):
    return tuple(random_m_primary_equigenerated(rng, n, int(rng.integers(1, max_degree + 1)))
                 for _ in range(2))


__all__ = [
    "VerificationReport", "verify_main_theorem", "verify_rees_corollary", "verify_superficial_remark",
    "verify_equimultiple_vanishing", "fuzz_campaign", "FuzzConfig", "Instance", "random_instance",
    "random_equigenerated", "random_m_primary_equigenerated", "random_m_primary_pair", "rees_slot",
]
