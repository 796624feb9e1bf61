"""Command-line front end.

Exit codes: 0 success or verified, 1 a verification came out unequal/false,
2 any error (bad input, bad flags, named failure kinds).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .bhattacharya import MixedType, certified_polynomial
from .errors import FieldArtifact, MixMultError, UnsupportedInput
from .groebner import PolyIdeal
from .harness import FuzzConfig, VerificationReport, fuzz_campaign, verify_main_theorem, verify_rees_corollary
from .monomial_ideal import MonomialIdeal
from .multiplicity import hilbert_samuel
from .problem import COMMANDS, ProblemSpec, parse_input
from .reductions import (
    DEFAULT_RETRIES,
    DEFAULT_WIDTH,
    box_window,
    build_superficial_sequence,
    check_joint_reduction,
)
from .ring import CoefficientField, Polynomial

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def jsonable(v):
    """Integers stay integers, other rationals become "a/b" in lowest terms."""
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return v


def dump(record: dict) -> str:
    return json.dumps(jsonable(record), sort_keys=True, separators=(",", ":"))


def _exponent_name(e: tuple[int, ...]) -> str:
    parts = [f"n{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
    return "*".join(parts) if parts else "1"


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def record(self, rec: dict, human: Sequence[str]) -> None:
        if self.as_json:
            print(dump(rec), file=self.stream)
        else:
            for line in human:
                print(line, file=self.stream)


# ---------------------------------------------------------------- instance helpers

def _j_and_i(spec: ProblemSpec) -> tuple[MonomialIdeal, list[MonomialIdeal]]:
    names = spec.ideal_names()
    if "J" not in names:
        raise UnsupportedInput("UnsupportedInput: this command needs an ideal named J")
    J = spec.monomial_ideal("J")
    return J, [spec.monomial_ideal(n) for n in names if n != "J"]


def _type(spec: ProblemSpec, required: bool = True) -> MixedType | None:
    if spec.type is None:
        if required:
            raise MixMultError("a type is required (--type k1,..,ks;k0+1)")
        return None
    return MixedType.parse(spec.type)


def _symmetric_lift(f: Polynomial) -> Polynomial:
    """Reinterpret GF(p) coefficients as small integers over Q."""
    p = f.field.p
    if p is None:
        return f
    return Polynomial({e: (c - p if c > p // 2 else c) for e, c in f.terms.items()}, f.nvars,
                      CoefficientField.rationals())


def _base_record(spec: ProblemSpec, command: str) -> dict:
    return {"command": command, "field": str(spec.field), "ring": list(spec.variables),
            "seed": spec.seed or 0}


# ---------------------------------------------------------------- commands

def cmd_mixed_mult(spec: ProblemSpec, out: Output, args) -> int:
    J, I_list = _j_and_i(spec)
    H = spec.H()
    res = certified_polynomial(J, I_list, H, spec.offset)
    ctx = res.context
    poly = {_exponent_name(e): c for e, c in sorted(res.polynomial.nonzero().items())}
    mtype = _type(spec, required=False)
    values = {mtype: res.mixed_multiplicity(mtype)} if mtype else res.all_values()
    for t, v in values.items():
        rec = {**_base_record(spec, "mixed-mult"), "type": str(t), "value": v, "context": ctx.to_dict(),
               "offset": res.offset, "stable": res.stable, "degree_ok": res.degree_ok,
               "polynomial": poly}
        out.record(rec, [f"e(type {t}) = {v}    [d={ctx.d} q={ctx.q} h={ctx.h} s={ctx.s}, "
                         f"offset N={res.offset}, stable, degree {ctx.q - 1}]"])
    return EXIT_OK


def cmd_multiplicity(spec: ProblemSpec, out: Output, args) -> int:
    name = args.ideal or ("J" if "J" in spec.ideal_names() else None)
    if name is None:
        raise MixMultError("choose the ideal with --ideal NAME")
    gens = spec.ideal(name)
    H = spec.H()
    q = PolyIdeal(list(gens), spec.nvars, spec.field)
    res = hilbert_samuel(q, H, spec.field, spec.offset)
    rec = {**_base_record(spec, "multiplicity"), "ideal": name, **res.to_dict()}
    if args.field_check and spec.field.p is not None:
        qq = PolyIdeal([_symmetric_lift(g) for g in gens], spec.nvars, CoefficientField.rationals())
        other = hilbert_samuel(qq, H, CoefficientField.rationals(), spec.offset).value
        rec["rational_value"] = other
        if other != res.value:
            raise FieldArtifact(f"GenericityFailure/FieldArtifact: Fp gives {res.value}, Q gives {other}")
    out.record(rec, [f"e({name}; A/H) = {res.value}    [{res.method}, offset N={res.offset}]"])
    return EXIT_OK


def _window(spec: ProblemSpec, J, I_list, H):
    N = spec.offset if spec.offset is not None else certified_polynomial(J, I_list, H).offset
    width = spec.window if spec.window is not None else DEFAULT_WIDTH
    return box_window(N, width, len(I_list) + 1), (N, N + width)


def cmd_superficial(spec: ProblemSpec, out: Output, args) -> int:
    J, I_list = _j_and_i(spec)
    H = spec.H()
    mtype = _type(spec)
    window, bounds = _window(spec, J, I_list, H)
    R, certs = build_superficial_sequence(J, I_list, H, mtype, spec.seed or 0, args.retries, spec.field,
                                          window, force=args.force, full=True)
    ok = all(c.fc1 for c in certs)
    rec = {**_base_record(spec, "superficial"), "type": str(mtype), "window": list(bounds),
           "certificates": [c.to_dict(spec.variables) for c in certs], "ok": ok}
    human = [f"superficial sequence of type {mtype} (certified on window [{bounds[0]}, {bounds[1]}]"
             f"^{len(I_list) + 1}):"]
    for c in certs:
        human.append(f"  {c.element.poly.format(spec.variables)}    source {c.element.source_index}, "
                     f"fc1={c.fc1} fc2={c.fc2} fc3={c.fc3}, dim {c.dim_before} -> {c.dim_after}")
    out.record(rec, human)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_joint_reduction(spec: ProblemSpec, out: Output, args) -> int:
    J, I_list = _j_and_i(spec)
    H = spec.H()
    mtype = _type(spec)
    window, bounds = _window(spec, J, I_list, H)
    R, _ = build_superficial_sequence(J, I_list, H, mtype, spec.seed or 0, args.retries, spec.field,
                                      window, force=args.force)
    cert = check_joint_reduction(R, J, I_list, H, window, expected=mtype)
    ok = cert.verified and cert.is_sop
    rec = {**_base_record(spec, "joint-reduction"), "window": list(bounds), **cert.to_dict(spec.variables)}
    human = [f"joint reduction of type {mtype}: verified={cert.verified} sop={cert.is_sop} "
             f"(window [{bounds[0]}, {bounds[1]}]^{len(I_list) + 1})"]
    human += [f"  {x.poly.format(spec.variables)}    source {x.source_index}" for x in R]
    out.record(rec, human)
    return EXIT_OK if ok else EXIT_FALSE


def _report_out(spec: ProblemSpec, rep: VerificationReport, out: Output, command: str, timings: bool) -> int:
    rec = {**_base_record(spec, command), **rep.to_dict(spec.variables, timings)}
    ctx = rep.context
    human = [f"{command}: type {rep.type}" + (f"  [d={ctx.d} q={ctx.q} h={ctx.h} s={ctx.s}]" if ctx else ""),
             f"  mixed multiplicity = {rep.mixed_value}",
             f"  e(R; A/H)          = {rep.reduction_value}",
             f"  status: {rep.status}"
             + (f" (certified on window [{rep.window[0]}, {rep.window[1]}])" if rep.verified else "")]
    if rep.message:
        human.append(f"  note: {rep.message}")
    out.record(rec, human)
    if rep.status == "verified":
        return EXIT_OK
    if rep.status == "unequal":
        return EXIT_FALSE
    if not out.as_json:
        print(f"error: {rep.status}: {rep.message}", file=sys.stderr)
    return EXIT_ERROR


def _verify_kwargs(spec: ProblemSpec, args) -> dict:
    return {"fld": spec.field, "retries": args.retries,
            "width": spec.window if spec.window is not None else DEFAULT_WIDTH,
            "offset": spec.offset, "field_check": args.field_check, "force": args.force}


def cmd_verify(spec: ProblemSpec, out: Output, args) -> int:
    J, I_list = _j_and_i(spec)
    rep = verify_main_theorem(J, I_list, spec.H(), _type(spec), spec.seed or 0, **_verify_kwargs(spec, args))
    return _report_out(spec, rep, out, "verify", args.timings)


def cmd_verify_rees(spec: ProblemSpec, out: Output, args) -> int:
    ideals = [spec.monomial_ideal(n) for n in spec.ideal_names()]
    if spec.type is None:
        raise MixMultError("a type is required (--type k1,..,ks)")
    ks = [int(v) for v in spec.type.replace(";", ",").split(",") if v.strip()]
    rep = verify_rees_corollary(ideals, spec.H(), ks, spec.seed or 0, **_verify_kwargs(spec, args))
    return _report_out(spec, rep, out, "verify-rees", args.timings)


def cmd_fuzz(spec: ProblemSpec | None, out: Output, args) -> int:
    nvars = tuple(int(v) for v in args.nvars.split(","))
    cfg = FuzzConfig(trials=args.trials, nvars=nvars, max_degree=args.max_degree, max_s=args.max_s)
    fld = spec.field if spec else CoefficientField.prime()
    seed = spec.seed if spec and spec.seed is not None else (args.seed or 0)
    summary = fuzz_campaign(cfg, seed, fld)
    rec = {"command": "fuzz", "field": str(fld), **summary}
    human = [f"fuzz: {summary['trials']} trials, {summary['equal']} equal, {summary['unequal']} unequal, "
             f"{summary['errored']} errored"]
    human += ["  reproducer: " + json.dumps(r, sort_keys=True) for r in summary["reproducers"]]
    out.record(rec, human)
    return EXIT_OK if summary["unequal"] == 0 and summary["errored"] == 0 else EXIT_FALSE


HANDLERS = {
    "mixed-mult": cmd_mixed_mult,
    "multiplicity": cmd_multiplicity,
    "superficial": cmd_superficial,
    "joint-reduction": cmd_joint_reduction,
    "verify": cmd_verify,
    "verify-rees": cmd_verify_rees,
    "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mixmult", description="Mixed multiplicities and joint reductions.")
    ap.add_argument("--version", action="version", version=f"mixmult {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", nargs="?", help="problem file ('-' for stdin); optional for fuzz")
    ap.add_argument("--type", help="k1,..,ks;k0+1 (verify-rees: k1,..,ks)")
    ap.add_argument("--seed", type=int, help="master seed (u64)")
    ap.add_argument("--json", action="store_true", help="one JSON record per result")
    ap.add_argument("--field-check", action="store_true", help="rerun over the rationals and compare")
    ap.add_argument("--window", type=int, help="window width w: tuples in [N, N+w]^(s+1)")
    ap.add_argument("--offset", type=int, help="start offset N for interpolation and windows")
    ap.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    ap.add_argument("--force", action="store_true", help="draw the reduction even when hypotheses fail")
    ap.add_argument("--ideal", help="ideal for the multiplicity command (default J)")
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")
    ap.add_argument("--trials", type=int, default=20, help="fuzz: number of trials")
    ap.add_argument("--nvars", default="2,3", help="fuzz: allowed numbers of variables")
    ap.add_argument("--max-degree", type=int, default=2, help="fuzz: largest generator degree")
    ap.add_argument("--max-s", type=int, default=2, help="fuzz: largest number of ideals besides J")
    return ap


def _check_u64(ap, value: int | None, flag: str) -> None:
    if value is not None and not 0 <= value < 2**64:
        ap.error(f"{flag} must be in [0, 2^64)")


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _check_u64(ap, args.seed, "--seed")
    for flag in ("window", "offset", "trials"):
        v = getattr(args, flag)
        if v is not None and v < 0:
            ap.error(f"--{flag} must be non-negative")
    out = Output(args.json)
    try:
        spec = None
        if args.input is not None:
            text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
            spec = parse_input(text).with_options(type=args.type, seed=args.seed, window=args.window,
                                                  offset=args.offset)
        elif args.command != "fuzz":
            ap.error("an input file is required for this command")
        return HANDLERS[args.command](spec, out, args)
    except MixMultError as exc:
        kind = getattr(exc, "kind", "Error")
        if args.json:
            print(dump({"command": args.command, "status": kind, "message": str(exc)}))
        print(f"error: {exc}" if str(exc).startswith(kind) else f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        if args.json:
            print(dump({"command": args.command, "status": "Error", "message": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
