"""Sequence values and recurrence execution.

A :class:`ShiftOperator` is a polynomial in the left shift N whose
coefficients live in one of three rings: rational constants, polynomials
in n, or exponential polynomials (C-finite coefficients in closed form).
A :class:`RecurrenceSystem` pairs an operator with initial values and the
index from which the relation is asserted.  Everything is immutable and
exact; there is no tolerance anywhere in this module.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientData, LeadingCoefficientZero
from .exppoly import ExpPoly
from .fields import RATIONAL_FIELD
from .polynomials import Poly, QQ, rational_roots


class CoeffRing(enum.Enum):
    CONSTANT = "constant"
    POLY_N = "poly"
    EXPPOLY = "exppoly"


def _coerce_coeff(ring, value):
    if ring is CoeffRing.CONSTANT:
        if isinstance(value, Poly):
            if value.degree > 0:
                raise ValueError("constant ring cannot hold a polynomial")
            value = value.coefficient(0)
        return Fraction(value)
    if ring is CoeffRing.POLY_N:
        if isinstance(value, Poly):
            return value
        return Poly([Fraction(value)], QQ, "n")
    if isinstance(value, ExpPoly):
        return value
    if isinstance(value, Poly):
        return ExpPoly.from_poly(value)
    return ExpPoly.constant(Fraction(value))


@dataclass(frozen=True)
class ShiftOperator:
    """sum_i coeffs[i] * N^i applied to a sequence; coeffs[order] != 0."""

    ring: CoeffRing
    coeffs: tuple

    def __init__(self, ring, coeffs):
        coerced = [_coerce_coeff(ring, c) for c in coeffs]
        while coerced and not coerced[-1]:
            coerced.pop()
        if not coerced:
            raise ValueError("zero shift operator")
        if ring is CoeffRing.EXPPOLY:
            fields = {c.field for c in coerced if isinstance(c, ExpPoly)}
            fields.discard(RATIONAL_FIELD)
            if len(fields) > 1:
                raise ValueError("exponential coefficients must share one field")
            if fields:
                target = fields.pop()
                coerced = [c.to_field(target) for c in coerced]
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(coerced))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def coeff_value(self, i, n):
        """Exact rational value of c_i at index n."""
        c = self.coeffs[i]
        if self.ring is CoeffRing.CONSTANT:
            return c
        if self.ring is CoeffRing.POLY_N:
            return c.evaluate(Fraction(n))
        return c.evaluate_rational(n)

    def promoted(self, ring):
        """View this operator in a larger coefficient ring."""
        if ring is self.ring:
            return self
        if self.ring is CoeffRing.CONSTANT:
            return ShiftOperator(ring, self.coeffs)
        if self.ring is CoeffRing.POLY_N and ring is CoeffRing.EXPPOLY:
            return ShiftOperator(ring, [ExpPoly.from_poly(c) for c in self.coeffs])
        raise ValueError(f"cannot promote {self.ring} to {ring}")

    def shifted_coeff(self, i, offset, mult=1):
        """Coefficient c_i with its argument rewritten as mult*n + offset."""
        c = self.coeffs[i]
        if self.ring is CoeffRing.CONSTANT:
            return c
        if self.ring is CoeffRing.POLY_N:
            return c.compose_linear(mult, offset)
        return c.compose_arg(mult, offset)

    def scaled(self, factor):
        factor = Fraction(factor)
        if not factor:
            raise ValueError("zero scale")
        if self.ring is CoeffRing.CONSTANT:
            return ShiftOperator(self.ring, [c * factor for c in self.coeffs])
        if self.ring is CoeffRing.POLY_N:
            return ShiftOperator(self.ring, [c.scale(factor) for c in self.coeffs])
        return ShiftOperator(self.ring, [c.scale(factor) for c in self.coeffs])

    def __str__(self):
        from .optext import operator_to_text

        return operator_to_text(self)


@dataclass(frozen=True)
class Sequence:
    """Finite prefix of an infinite sequence of exact rationals."""

    terms: tuple
    offset: int = 0

    def __init__(self, terms, offset=0):
        if offset < 0:
            raise ValueError("sequence offset must be >= 0")
        object.__setattr__(self, "terms", tuple(Fraction(t) for t in terms))
        object.__setattr__(self, "offset", offset)

    def __len__(self):
        return len(self.terms)

    @property
    def end(self):
        """One past the largest valid index."""
        return self.offset + len(self.terms)

    def value(self, n):
        if not self.offset <= n < self.end:
            raise IndexError(f"index {n} outside [{self.offset}, {self.end})")
        return self.terms[n - self.offset]

    def __iter__(self):
        return iter(self.terms)

    def __str__(self):
        inner = ", ".join(str(t) for t in self.terms[:12])
        if len(self.terms) > 12:
            inner += ", ..."
        return f"[{inner}] (from n={self.offset})"


@dataclass(frozen=True)
class RecurrenceSystem:
    """Operator, initial values and the first index where the relation holds.

    ``initials`` covers a(offset) .. a(validity_offset + order - 1), so the
    relation at n = validity_offset extends the sequence from there on.
    """

    operator: ShiftOperator
    initials: tuple
    validity_offset: int = 0
    offset: int = 0

    def __init__(self, operator, initials, validity_offset=0, offset=0):
        initials = tuple(Fraction(v) for v in initials)
        if validity_offset < offset:
            raise ValueError("validity offset cannot precede the sequence start")
        expected = validity_offset - offset + operator.order
        if len(initials) != expected:
            raise ValueError(
                f"need {expected} initial values, got {len(initials)}"
            )
        object.__setattr__(self, "operator", operator)
        object.__setattr__(self, "initials", initials)
        object.__setattr__(self, "validity_offset", validity_offset)
        object.__setattr__(self, "offset", offset)

    @property
    def order(self):
        return self.operator.order

    def __str__(self):
        inits = ", ".join(str(v) for v in self.initials)
        return f"({self.operator}) with initials [{inits}] from n={self.offset}"


def expand_terms(system, count):
    """First ``count`` terms of the recurrence's solution, exactly.

    Raises LeadingCoefficientZero when the top coefficient vanishes at an
    index where the relation is needed to produce the next term.
    """
    if count < len(system.initials):
        raise InsufficientData(
            f"count {count} is below the {len(system.initials)} supplied initials"
        )
    op = system.operator
    r = op.order
    terms = list(system.initials)
    # terms[j] holds a(offset + j)
    while len(terms) < count:
        n = system.offset + len(terms) - r  # relation index producing the new term
        lead = op.coeff_value(r, n)
        if not lead:
            raise LeadingCoefficientZero(n)
        acc = Fraction(0)
        for i in range(r):
            c = op.coeff_value(i, n)
            if c:
                acc += c * terms[n - system.offset + i]
        terms.append(-acc / lead)
    return Sequence(terms[:count], system.offset)


def verify_annihilates(operator, sequence, from_n=None):
    """Check sum_i c_i(n) a(n+i) = 0 for every applicable n >= from_n.

    Returns None on success, else the smallest violating n.
    """
    if from_n is None:
        from_n = sequence.offset
    r = operator.order
    last = sequence.end - 1 - r
    if last < from_n:
        raise InsufficientData("window too short to test even one relation instance")
    for n in range(from_n, last + 1):
        acc = Fraction(0)
        for i in range(r + 1):
            c = operator.coeff_value(i, n)
            if c:
                acc += c * sequence.value(n + i)
        if acc:
            return n
    return None


def leading_validity_offset(operator):
    """n0 + 1 for the largest nonnegative integer root n0 of the leading
    coefficient, or 0 when there is none."""
    if operator.ring is CoeffRing.CONSTANT:
        return 0
    if operator.ring is CoeffRing.POLY_N:
        lead = operator.leading
        if lead.degree == 0:
            return 0
        roots, _ = rational_roots(lead)
        best = -1
        for root, _mult in roots:
            if root.denominator == 1 and root >= 0:
                best = max(best, int(root))
        return best + 1
    raise ValueError("exponential leading coefficients are probed, not solved")


def advanced_system(system, steps):
    """The recurrence satisfied by b(n) = a(n + steps); used for index
    translation checks."""
    if steps < 0:
        raise ValueError("can only advance forward")
    if steps == 0:
        return system
    op = system.operator
    if op.ring is CoeffRing.CONSTANT:
        new_op = op
    elif op.ring is CoeffRing.POLY_N:
        new_op = ShiftOperator(
            op.ring, [c.shift_arg(steps) for c in op.coeffs]
        )
    else:
        new_op = ShiftOperator(op.ring, [c.shift(steps) for c in op.coeffs])
    new_offset = system.offset  # b is indexed from the same origin
    new_validity = max(system.validity_offset - steps, new_offset)
    needed = new_validity - new_offset + op.order
    prefix = expand_terms(system, max(needed + steps, len(system.initials)))
    initials = [prefix.value(n + steps) for n in range(new_offset, new_offset + needed)]
    return RecurrenceSystem(new_op, initials, new_validity, new_offset)
