"""Mixed multiplicities of monomial ideals on A/H and the joint reductions that realize them."""

from __future__ import annotations

__version__ = "0.1.0"

from .bhattacharya import AnalysisContext, InterpolatedPolynomial, MixedType, context, interpolate, mixed_multiplicity, sample_B
from .errors import (
    DegreeMismatch,
    FieldArtifact,
    GenericityFailure,
    HeightUndefined,
    HypothesisViolated,
    LengthOverflow,
    MixMultError,
    NotMPrimary,
    NotSystemOfParameters,
    ParseError,
    StabilityFailure,
    UnsupportedInput,
)
from .groebner import PolyIdeal, buchberger, colength, ideal_dimension, ideal_equal, ideal_intersect, normal_form
from .harness import (
    VerificationReport,
    fuzz_campaign,
    verify_equimultiple_vanishing,
    verify_main_theorem,
    verify_rees_corollary,
    verify_superficial_remark,
)
from .monomial_ideal import CoordinatePrime, MonomialIdeal, count_quotient_length, dim_quotient, height_in_quotient, minimal_primes
from .multiplicity import additivity_check, hilbert_samuel, localized_length, multiplicity_symbol
from .problem import ProblemSpec, parse_input, serialize
from .reductions import (
    GeneralElement,
    build_superficial_sequence,
    check_fc1,
    check_fc2,
    check_fc3,
    check_joint_reduction,
    resample_element,
    sample_general_element,
)
from .ring import CoefficientField, Polynomial, TermOrder, VariableSet
