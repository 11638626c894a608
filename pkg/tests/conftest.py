"""Shared corpus systems and random generators for the test suite."""

import random
from fractions import Fraction

import pytest

from ansatzkit import (
    CoeffRing,
    ExpPoly,
    NumberField,
    Poly,
    QQ,
    RecurrenceSystem,
    ShiftOperator,
    expand_terms,
)


# -- worked-example systems ---------------------------------------------------


def floor_square_system():
    """floor((n/2)^2): a(n+4) - 2a(n+3) + 2a(n+1) - a(n) = 0."""
    return RecurrenceSystem(
        ShiftOperator(CoeffRing.CONSTANT, [-1, 2, 0, -2, 1]), [0, 0, 1, 2]
    )


def fibonacci_system():
    return RecurrenceSystem(ShiftOperator(CoeffRing.CONSTANT, [-1, -1, 1]), [0, 1])


def floor_square_holonomic():
    """(n+2)a(n) + 2a(n+1) - n a(n+2) = 0, leading coefficient vanishing at 0."""
    return RecurrenceSystem(
        ShiftOperator(CoeffRing.POLY_N, [Poly([2, 1]), Poly([2]), Poly([0, -1])]),
        [0, 0, 1],
        1,
    )


def catalan_system():
    """(4n+2)a(n) - (n+2)a(n+1) = 0 with a(0) = 1."""
    return RecurrenceSystem(
        ShiftOperator(CoeffRing.POLY_N, [Poly([2, 4]), Poly([-2, -1])]), [1]
    )


def harmonic_system():
    """(n+1)a(n) - (2n+3)a(n+1) + (n+2)a(n+2) = 0 from n = 1."""
    return RecurrenceSystem(
        ShiftOperator(
            CoeffRing.POLY_N, [Poly([1, 1]), Poly([-3, -2]), Poly([2, 1])]
        ),
        [1, Fraction(3, 2)],
        1,
        1,
    )


def harmonic_from_zero():
    """Same relation asserted from n = 0 with H(0) = 0."""
    return RecurrenceSystem(
        ShiftOperator(
            CoeffRing.POLY_N, [Poly([1, 1]), Poly([-3, -2]), Poly([2, 1])]
        ),
        [0, 1],
    )


def factorial_system():
    """a(n+1) - (n+1)a(n) = 0 with a(0) = 1."""
    return RecurrenceSystem(
        ShiftOperator(CoeffRing.POLY_N, [Poly([-1, -1]), Poly([1])]), [1]
    )


def golden_field():
    return NumberField([-1, -1, 1])


def fibonacci_shift_closed_form(shift):
    """F(n+shift) as an exponential polynomial over the golden field."""
    field = golden_field()
    plus = field.generator()
    minus = 1 - plus
    scale = field.one / (2 * plus - 1)
    return ExpPoly(
        field,
        [
            (plus, Poly([scale * plus ** shift], field, "n")),
            (minus, Poly([(-scale) * minus ** shift], field, "n")),
        ],
    )


def fibonorial_system():
    """a(n+1) = F(n+2) a(n) with a(0) = 1."""
    coeff = fibonacci_shift_closed_form(2)
    field = coeff.field
    return RecurrenceSystem(
        ShiftOperator(CoeffRing.EXPPOLY, [-coeff, ExpPoly.constant(1, field)]), [1]
    )


def doubling_tail_system():
    """a(n+2) = a(n+1) + 2^n a(n) with a(0) = a(1) = 1."""
    return RecurrenceSystem(
        ShiftOperator(
            CoeffRing.EXPPOLY,
            [-ExpPoly.geometric(2), ExpPoly.constant(-1), ExpPoly.constant(1)],
        ),
        [1, 1],
    )


def alternating_sign_pair():
    """The degenerate pair a(n+1) + (-1)^n a(n) = 0, b(n+1) + b(n) = 0."""
    a = RecurrenceSystem(
        ShiftOperator(
            CoeffRing.EXPPOLY, [ExpPoly.geometric(-1), ExpPoly.constant(1)]
        ),
        [1],
    )
    b = RecurrenceSystem(
        ShiftOperator(
            CoeffRing.EXPPOLY, [ExpPoly.constant(1), ExpPoly.constant(1)]
        ),
        [1],
    )
    return a, b


# -- random generators (deterministic seeds set by each test) -----------------


def random_cfinite(rng, max_order=4):
    order = rng.randint(1, max_order)
    while True:
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(order)]
        lead = Fraction(rng.choice([1, 1, 1, 2, -1]))
        if any(coeffs):
            break
    initials = [Fraction(rng.randint(-4, 4)) for _ in range(order)]
    if not any(initials):
        initials[0] = Fraction(1)
    operator = ShiftOperator(CoeffRing.CONSTANT, coeffs + [lead])
    return RecurrenceSystem(operator, initials)


def random_polynomial_poly(rng, max_degree=3):
    degree = rng.randint(0, max_degree)
    coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(degree + 1)]
    if not coeffs[-1]:
        coeffs[-1] = Fraction(1)
    return Poly(coeffs, QQ, "n")


def random_holonomic(rng, max_order=3, max_degree=2):
    from ansatzkit import leading_validity_offset

    order = rng.randint(1, max_order)
    degree = rng.randint(0, max_degree)
    while True:
        polys = []
        for _ in range(order + 1):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(degree + 1)]
            polys.append(Poly(coeffs, QQ, "n"))
        if not polys[-1]:
            continue
        # keep the leading coefficient free of nonnegative integer roots so
        # the relation runs from n = 0
        operator = ShiftOperator(CoeffRing.POLY_N, polys)
        if leading_validity_offset(operator) == 0:
            break
    initials = [Fraction(rng.randint(-4, 4)) for _ in range(order)]
    if not any(initials):
        initials[0] = Fraction(1)
    return RecurrenceSystem(operator, initials)


def random_exppoly(rng, field=None, allow_golden=False):
    """Small nonzero exponential polynomial with rational bases (and the
    golden-ratio pair when requested)."""
    from ansatzkit import RATIONAL_FIELD

    field = field or RATIONAL_FIELD
    terms = {}
    n_terms = rng.randint(1, 2)
    bases = [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3)]
    for _ in range(n_terms):
        base = rng.choice(bases)
        degree = rng.randint(0, 1)
        coeffs = [Fraction(rng.randint(-2, 2)) for _ in range(degree + 1)]
        if not any(coeffs):
            coeffs[-1] = Fraction(1)
        if not coeffs[-1]:
            coeffs[-1] = Fraction(1)
        key = base
        terms[key] = Poly(coeffs, QQ, "n")
    return ExpPoly(
        field,
        [(field.from_rational(b), Poly([field.coerce(c) for c in p.coeffs], field, "n"))
         for b, p in terms.items()],
    )


def random_c2(rng, max_order=2):
    """Random recurrence with exponential-polynomial coefficients whose
    leading coefficient never vanishes (single positive-base term)."""
    from ansatzkit import RATIONAL_FIELD

    order = rng.randint(1, max_order)
    field = RATIONAL_FIELD
    lead_base = rng.choice([Fraction(1), Fraction(2)])
    lead = ExpPoly.geometric(lead_base, field, rng.choice([1, 1, 2]))
    coeffs = []
    for _ in range(order):
        if rng.random() < 0.2:
            coeffs.append(ExpPoly.zero(field))
        else:
            coeffs.append(random_exppoly(rng, field))
    if not any(coeffs):
        coeffs[0] = ExpPoly.constant(1, field)
    initials = [Fraction(rng.randint(-3, 3)) for _ in range(order)]
    if not any(initials):
        initials[0] = Fraction(1)
    return RecurrenceSystem(
        ShiftOperator(CoeffRing.EXPPOLY, coeffs + [lead]), initials
    )


def sequence_values(system, count):
    return expand_terms(system, count)


@pytest.fixture
def rng():
    return random.Random(20240811)
