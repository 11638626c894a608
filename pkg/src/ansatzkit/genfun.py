"""Conversions between recurrences and generating-function equations.

Rational generating functions cover the polynomial and constant-coefficient
classes.  Polynomial-coefficient recurrences correspond to linear ODEs for
the generating function, and recurrences with exponential-polynomial
coefficients correspond to equations in the dilated arguments f(b*x).  The
one differential-equation type covers all of these: a sum over dilation
bases b of q_{b,j}(x) * d^j/dx^j f(b x) equal to a polynomial right side.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DenominatorVanishesAtZero, UnsupportedField
from .fields import RATIONAL_FIELD, common_field
from .polynomials import (
    NEG_INFINITY,
    Poly,
    QQ,
    falling_factorial,
    falling_factorial_poly,
    poly_gcd,
    rational_content,
)
from .sequences import CoeffRing, RecurrenceSystem, ShiftOperator
from .linalg import rational_adapter, solve_linear


# ---------------------------------------------------------------------------
# rational generating functions


class RationalGF:
    """Reduced rational function P(x)/Q(x) with Q(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if isinstance(num, (list, tuple)):
            num = Poly(num, QQ, "x")
        if isinstance(den, (list, tuple)):
            den = Poly(den, QQ, "x")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        else:
            den = Poly([1], QQ, "x")
        at_zero = den.coefficient(0)
        if not at_zero:
            raise DenominatorVanishesAtZero(
                "denominator vanishes at x=0; no power series expansion"
            )
        self.num = num.scale(Fraction(1) / at_zero)
        self.den = den.scale(Fraction(1) / at_zero)

    def __eq__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def series(self, count):
        """First ``count`` power series coefficients."""
        out = []
        den = self.den.coeffs
        for m in range(count):
            value = self.num.coefficient(m)
            for i in range(1, min(m, len(den) - 1) + 1):
                value -= den[i] * out[m - i]
            out.append(value)
        return out

    def __add__(self, other):
        return RationalGF(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        return RationalGF(self.num * other.num, self.den * other.den)

    def partial_sum(self):
        """Generating function of the partial sums: multiply by 1/(1-x)."""
        return RationalGF(self.num, self.den * Poly([1, -1], QQ, "x"))

    def __str__(self):
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalGF({self})"


def genfun_polynomial(poly):
    """Generating function of the polynomial sequence a_n = poly(n).

    Returns P(x)/(1-x)^(k+1) with P built from the alternating binomial
    sums of the first k+1 values.
    """
    k = poly.degree if poly else 0
    if k is NEG_INFINITY:
        k = 0
    values = [poly.evaluate(Fraction(n)) for n in range(k + 1)]
    num = [
        sum(
            (comb(k + 1, i) * (-1) ** i) * values[n - i]
            for i in range(0, n + 1)
        )
        for n in range(k + 1)
    ]
    return RationalGF(Poly(num, QQ, "x"), Poly([1, -1], QQ, "x") ** (k + 1))


def genfun_cfinite(system):
    """Generating function P(x) / (x^r T(1/x)) of a constant-coefficient
    recurrence with its initial values."""
    if system.operator.ring is not CoeffRing.CONSTANT:
        raise ValueError("constant-coefficient recurrence required")
    if system.validity_offset != 0 or system.offset != 0:
        raise ValueError("recurrence must be valid from n=0")
    c = system.operator.coeffs
    r = system.operator.order
    a = system.initials
    den = Poly(list(reversed(c)), QQ, "x")
    num = [
        sum(c[i] * a[n - r + i] for i in range(r - n, r + 1))
        for n in range(r)
    ]
    return RationalGF(Poly(num, QQ, "x"), den)


def cfinite_from_rational(gf):
    """Recurrence whose solution has ``gf`` as its generating function.

    An improper fraction is split into polynomial part plus proper part;
    the polynomial part only corrects finitely many leading terms, so it
    extends the validity offset instead of the operator.
    """
    num, den = gf.num, gf.den
    r = den.degree
    poly_part_degree = -1
    if num and num.degree >= r:
        poly_part = num // den
        if poly_part:
            poly_part_degree = poly_part.degree
    validity = poly_part_degree + 1
    operator = ShiftOperator(CoeffRing.CONSTANT, list(reversed(den.coeffs)))
    initials = gf.series(validity + r)
    return RecurrenceSystem(operator, initials, validity, 0)


# ---------------------------------------------------------------------------
# differential / dilation equations


@dataclass(frozen=True)
class DiffEquation:
    """sum over bases b of [q_{b,0}(x) f(bx) + ... + q_{b,r'}(x) f^(r')(bx)] = rhs.

    ``f^(j)(bx)`` is the j-th derivative of the composite x -> f(bx).
    Terms are sorted by the base's total order; coefficients are scaled so
    the whole equation has rational content 1 and the highest (base,
    derivative, power) coefficient is positive.
    """

    field: object
    terms: tuple  # ((base, (q_0, q_1, ...)), ...)
    rhs: object

    def __init__(self, field, terms, rhs=None):
        cleaned = []
        for base, coeffs in terms:
            base = field.coerce(base)
            polys = [
                c if isinstance(c, Poly) and c.domain == field
                else Poly(list(c.coeffs), field, "x") if isinstance(c, Poly)
                else Poly([field.coerce(c)], field, "x")
                for c in coeffs
            ]
            while polys and not polys[-1]:
                polys.pop()
            if polys:
                cleaned.append((base, tuple(polys)))
        if not cleaned:
            raise ValueError("differential equation with no left side")
        cleaned.sort(key=lambda item: item[0].sort_key())
        if rhs is None:
            rhs = Poly([], field, "x")
        elif not (isinstance(rhs, Poly) and rhs.domain == field):
            rhs = (
                Poly(list(rhs.coeffs), field, "x")
                if isinstance(rhs, Poly)
                else Poly([field.coerce(rhs)], field, "x")
            )
        cleaned, rhs = _normalize_equation(field, cleaned, rhs)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", tuple(cleaned))
        object.__setattr__(self, "rhs", rhs)

    @property
    def order(self):
        return max(len(coeffs) - 1 for _, coeffs in self.terms)

    @property
    def degree(self):
        return max(
            max((p.degree for p in coeffs if p), default=0)
            for _, coeffs in self.terms
        )

    @property
    def is_homogeneous(self):
        return not self.rhs

    def coefficient(self, base, j):
        base = self.field.coerce(base)
        for b, coeffs in self.terms:
            if b == base:
                if j < len(coeffs):
                    return coeffs[j]
                break
        return Poly([], self.field, "x")

    def bases(self):
        return [b for b, _ in self.terms]

    def series_residual(self, terms, count):
        """Coefficients 0..count-1 of (left side - right side) for the power
        series with the given initial coefficients; all zero iff the series
        satisfies the equation that far."""
        field = self.field
        a = [field.coerce(t) for t in terms]
        residual = [field.zero - self.rhs.coefficient(m) for m in range(count)]
        for base, coeffs in self.terms:
            powers = [base ** p for p in range(len(a))]
            for j, q in enumerate(coeffs):
                if not q:
                    continue
                # d^j/dx^j f(bx) has m-th coefficient (m+j)_j a_{m+j} b^(m+j)
                g = [
                    falling_factorial(m + j, j) * a[m + j] * powers[m + j]
                    for m in range(len(a) - j)
                ]
                for s, qc in enumerate(q.coeffs):
                    if not qc:
                        continue
                    for m in range(count - s):
                        if m < len(g):
                            residual[m + s] = residual[m + s] + qc * g[m]
        return residual

    def scalar_multiple_of(self, other):
        """True when the two equations agree up to one nonzero rational."""
        if self.field != other.field or len(self.terms) != len(other.terms):
            return False
        ratio = None
        pairs = []
        for (b1, c1), (b2, c2) in zip(self.terms, other.terms):
            if b1 != b2 or len(c1) != len(c2):
                return False
            pairs.extend(zip(c1, c2))
        pairs.append((self.rhs, other.rhs))
        for p, q in pairs:
            if bool(p) != bool(q) or len(p.coeffs) != len(q.coeffs):
                return False
            if p:
                for c_self, c_other in zip(p.coeffs, q.coeffs):
                    if bool(c_self) != bool(c_other):
                        return False
                    if c_self:
                        r = c_self / c_other
                        if ratio is None:
                            ratio = r
                        elif r != ratio:
                            return False
        return ratio is not None

    def __str__(self):
        parts = []
        for base, coeffs in self.terms:
            base_str = str(base)
            arg = "x" if base == self.field.one else f"({base_str})*x"
            for j, q in enumerate(coeffs):
                if not q:
                    continue
                deriv = "f" + ("'" * j if j <= 3 else f"^({j})")
                parts.append(f"({q})*{deriv}({arg})")

        lhs = " + ".join(parts)
        rhs = str(self.rhs) if self.rhs else "0"
        return f"{lhs} = {rhs}"


def _normalize_equation(field, terms, rhs):
    coords = []
    for _, coeffs in terms:
        for p in coeffs:
            for c in p.coeffs:
                coords.extend(c.coords)
    for c in rhs.coeffs:
        coords.extend(c.coords)
    content = rational_content(coords)
    if content and content != 1:
        scale = field.from_rational(Fraction(1) / content)
        terms = [
            (b, tuple(p.scale(scale) for p in coeffs)) for b, coeffs in terms
        ]
        rhs = rhs.scale(scale)
    top_base, top_coeffs = terms[-1]
    lead_poly = top_coeffs[-1]
    lead_coord = next(c for c in reversed(lead_poly.leading.coords) if c)
    if lead_coord < 0:
        minus = field.from_rational(Fraction(-1))
        terms = [
            (b, tuple(p.scale(minus) for p in coeffs)) for b, coeffs in terms
        ]
        rhs = rhs.scale(minus)
    return terms, rhs


@lru_cache(maxsize=None)
def falling_basis_constants(s, t):
    """Constants c_j with sum_j c_j (n+t)_j = n^s, j = 0..s.

    Solved once per (s, t) from the unitriangular basis-change system and
    memoized; safe for concurrent readers.
    """
    basis = [falling_factorial_poly(t, j) for j in range(s + 1)]
    rows = [[basis[j].coefficient(power) for j in range(s + 1)] for power in range(s + 1)]
    rhs = [Fraction(1) if power == s else Fraction(0) for power in range(s + 1)]
    solution = solve_linear(rows, rhs, rational_adapter())
    return tuple(solution)


def _operator_poly_coeffs(operator):
    """Coefficients as polynomials in n regardless of ring."""
    if operator.ring is CoeffRing.CONSTANT:
        return [Poly([c], QQ, "n") for c in operator.coeffs]
    if operator.ring is CoeffRing.POLY_N:
        return list(operator.coeffs)
    raise ValueError("polynomial-coefficient recurrence required")


def holonomic_to_diff(system):
    """Differential equation satisfied by the generating function of a
    polynomial-coefficient recurrence; order <= degree, coefficient degrees
    <= order + degree, right side degree <= order - 1."""
    if system.validity_offset != 0 or system.offset != 0:
        raise ValueError("recurrence must be valid from n=0")
    polys = _operator_poly_coeffs(system.operator)
    r = len(polys) - 1
    k = max(p.degree for p in polys if p)
    if k is NEG_INFINITY:
        k = 0
    a = system.initials
    lhs = {}
    rhs = Poly([], QQ, "x")
    for t, p in enumerate(polys):
        for s in range(k + 1):
            b = p.coefficient(s)
            if not b:
                continue
            constants = falling_basis_constants(s, t)
            for j, cj in enumerate(constants):
                if not cj:
                    continue
                term = Poly([0] * (j + r - t) + [b * cj], QQ, "x")
                lhs[j] = lhs.get(j, Poly([], QQ, "x")) + term
            rhs_piece = [Fraction(0)] * r
            for n in range(t):
                rhs_piece[n + r - t] += b * a[n] * Fraction(n - t) ** s
            rhs = rhs + Poly(rhs_piece, QQ, "x")
    order = max(lhs)
    coeffs = [lhs.get(j, Poly([], QQ, "x")) for j in range(order + 1)]
    return DiffEquation(RATIONAL_FIELD, [(1, coeffs)], rhs)


def homogenize(equation):
    """Differentiate the equation until the right side vanishes.

    Because f^(j)(bx) means the j-th x-derivative of the composite, one
    differentiation sends q_j to q_j' + q_{j-1} independently of the base.
    """
    terms = [(b, list(coeffs)) for b, coeffs in equation.terms]
    rhs = equation.rhs
    zero = Poly([], equation.field, "x")
    while rhs:
        new_terms = []
        for base, coeffs in terms:
            new = []
            for j in range(len(coeffs) + 1):
                upper = coeffs[j].derivative() if j < len(coeffs) else zero
                lower = coeffs[j - 1] if j >= 1 else zero
                new.append(upper + lower)
            new_terms.append((base, new))
        terms = new_terms
        rhs = rhs.derivative()
    return DiffEquation(equation.field, terms, None)


c2_homogenize = homogenize


def diff_to_holonomic(equation):
    """Recurrence for the series coefficients of a homogeneous single-base
    equation; returns (operator, validity_offset).

    Order <= equation order + degree, coefficient degree <= equation order.
    """
    if not equation.is_homogeneous:
        raise ValueError("homogeneous equation required")
    if len(equation.terms) != 1 or equation.terms[0][0] != equation.field.one:
        raise ValueError("single-base equation required")
    _, coeffs = equation.terms[0]
    if not all(
        all(c.is_rational() for c in p.coeffs) for p in coeffs
    ):
        raise UnsupportedField("rational coefficients required")
    r = len(coeffs) - 1
    k = max((p.degree for p in coeffs if p), default=0)
    out = []
    for shift in range(r + k + 1):
        total = Poly([], QQ, "n")
        for t in range(r + 1):
            s = t - shift + k
            if s < 0 or s > k:
                continue
            b = coeffs[t].coefficient(s).as_rational()
            if not b:
                continue
            total = total + falling_factorial_poly(shift, t).scale(b)
        out.append(total)
    return _shift_polys_to_operator(out)


def _shift_polys_to_operator(polys):
    """Trim a raw coefficient list p_0..p_m into an operator plus validity.

    Trailing zero coefficients lower the order; leading zero coefficients
    factor out a pure shift, which re-indexes the relation and raises the
    validity offset accordingly.
    """
    from .sequences import leading_validity_offset

    while polys and not polys[-1]:
        polys.pop()
    if not polys:
        raise ValueError("equation produced the zero recurrence")
    v = 0
    while not polys[0]:
        polys.pop(0)
        v += 1
    if v:
        polys = [p.shift_arg(-v) for p in polys]
    operator = ShiftOperator(CoeffRing.POLY_N, polys)
    return operator, max(v, leading_validity_offset(operator))


def c2_to_diff(system):
    """Dilation equation for the generating function of a recurrence with
    exponential-polynomial coefficients; bases come from the coefficients'
    characteristic roots."""
    if system.validity_offset != 0 or system.offset != 0:
        raise ValueError("recurrence must be valid from n=0")
    operator = system.operator
    if operator.ring is not CoeffRing.EXPPOLY:
        operator = operator.promoted(CoeffRing.EXPPOLY)
    field = operator.coeffs[-1].field
    for c in operator.coeffs:
        field = common_field(field, c.field)
    r = operator.order
    k = max(c.deg for c in operator.coeffs if c)
    if k is NEG_INFINITY:
        k = 0
    a = system.initials
    lhs = {}
    rhs = Poly([], field, "x")
    for t, coeff in enumerate(operator.coeffs):
        if not coeff:
            continue
        coeff = coeff.to_field(field)
        for base, poly in coeff.terms:
            inv_base_t = base ** (-t)
            for s in range(poly.degree + 1):
                b = poly.coefficient(s)
                if not b:
                    continue
                constants = falling_basis_constants(s, t)
                key = base.sort_key()
                slot = lhs.setdefault(key, (base, {}))[1]
                for j, cj in enumerate(constants):
                    if not cj:
                        continue
                    factor = b * inv_base_t * field.coerce(cj)
                    term = Poly([field.zero] * (j + r - t) + [factor], field, "x")
                    slot[j] = slot.get(j, Poly([], field, "x")) + term
                rhs_piece = [field.zero] * r
                for n in range(t):
                    rhs_piece[n + r - t] = rhs_piece[n + r - t] + (
                        b * (base ** (n - t)) * (Fraction(n - t) ** s * a[n])
                    )
                rhs = rhs + Poly(rhs_piece, field, "x")
    terms = []
    for key in sorted(lhs):
        base, slot = lhs[key]
        order = max(slot)
        terms.append((base, [slot.get(j, Poly([], field, "x")) for j in range(order + 1)]))
    return DiffEquation(field, terms, rhs)


def diff_to_c2(equation):
    """Recurrence with exponential-polynomial coefficients for the series
    coefficients of a homogeneous dilation equation; returns
    (operator, validity_offset)."""
    if not equation.is_homogeneous:
        raise ValueError("homogeneous equation required")
    from .exppoly import ExpPoly

    field = equation.field
    r = equation.order
    k = equation.degree
    coeff_terms = [[] for _ in range(r + k + 1)]
    for base, coeffs in equation.terms:
        for t, q in enumerate(coeffs):
            if not q:
                continue
            for s in range(q.degree + 1):
                b = q.coefficient(s)
                if not b:
                    continue
                shift = k + t - s
                poly = falling_factorial_poly(shift, t, field).scale(b * base ** shift)
                coeff_terms[shift].append((base, poly))
    exppolys = [ExpPoly(field, terms) for terms in coeff_terms]
    while exppolys and not exppolys[-1]:
        exppolys.pop()
    if not exppolys:
        raise ValueError("equation produced the zero recurrence")
    v = 0
    while not exppolys[0]:
        exppolys.pop(0)
        v += 1
    if v:
        exppolys = [e.shift(-v) for e in exppolys]
    operator = ShiftOperator(CoeffRing.EXPPOLY, exppolys)
    return operator, v
