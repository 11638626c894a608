"""Exact-arithmetic toolkit for linear recurrences.

Guess recurrences from data, convert them to generating-function
equations and back, combine them through closure properties, solve them
in closed form, bound-check nonlinear identities and extract asymptotic
growth templates.  Everything except the explicitly numeric diagnostics
is exact rational or algebraic-number arithmetic.
"""

from .asymptotics import AsymptoticForm, leading_forms, refine_series
from .c2 import C2System, GrowthReport, growth_probe, register_coefficient
from .closedform import (
    BinomialForm,
    CFiniteClosedForm,
    cfinite_closed_form,
    closed_form_to_recurrence,
    poly_binomial_form,
)
from .closure import (
    ADD,
    CAUCHY,
    PARTIAL_SUM,
    SUBSEQUENCE,
    TERMWISE,
    ClaimTerm,
    IdentityClaim,
    ProofCertificate,
    c2_combine,
    cfinite_add,
    cfinite_combine_gf,
    cfinite_partial_sum,
    cfinite_subsequence,
    cfinite_termwise,
    combine,
    holonomic_cauchy,
    holonomic_combine,
    poly_closure,
    prove_identity,
)
from .errors import AnsatzError
from .exppoly import ExpPoly, ExpPolyFraction, deg
from .fields import NumberField, RATIONAL_FIELD, common_field, quadratic_field
from .genfun import (
    DiffEquation,
    RationalGF,
    c2_homogenize,
    c2_to_diff,
    cfinite_from_rational,
    diff_to_c2,
    diff_to_holonomic,
    genfun_cfinite,
    genfun_polynomial,
    holonomic_to_diff,
    homogenize,
)
from .guess import GuessReport, guess_cfinite, guess_holonomic, guess_polynomial
from .linalg import clear_denominators, left_null_space, rank, rref
from .oeis import fetch, parse_bfile
from .optext import operator_to_text, parse_operator, parse_recurrence_spec
from .polynomials import Poly, QQ
from .ratfunc import RationalFunction
from .sequences import (
    CoeffRing,
    RecurrenceSystem,
    Sequence,
    ShiftOperator,
    advanced_system,
    expand_terms,
    leading_validity_offset,
    verify_annihilates,
)

__version__ = "0.1.0"
