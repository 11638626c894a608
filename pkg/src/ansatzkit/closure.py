"""Recurrences for sequences built from known ones.

Addition, term-wise product, partial sum and linear subsequences all use
the same solution-space construction: write the shifted combination over a
finite basis of operand shifts (with coefficients in the appropriate
function field), then read a recurrence off the left null space of the
resulting matrix.  Cauchy products go through generating functions:
rational arithmetic for constant coefficients, an ODE null-space
construction otherwise.

The identity prover composes the closure order bounds over an expression
tree and then checks exactly that many initial values, which is a complete
proof for constant-coefficient operands.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    LeadingAlwaysZero,
    NullSpaceEmpty,
    UnboundableExpression,
)
from .exppoly import ExpPoly, ExpPolyFraction
from .fields import RATIONAL_FIELD
from .genfun import DiffEquation, cfinite_from_rational
from .linalg import (
    clear_denominators,
    clear_exppoly_denominators,
    exppoly_fraction_adapter,
    left_null_space,
    rational_adapter,
    ratfunc_adapter,
)
from .polynomials import Poly, QQ, rational_content
from .ratfunc import RationalFunction
from .sequences import (
    CoeffRing,
    RecurrenceSystem,
    ShiftOperator,
    expand_terms,
    leading_validity_offset,
)

ADD = "add"
TERMWISE = "termwise"
CAUCHY = "cauchy"
PARTIAL_SUM = "partial_sum"
SUBSEQUENCE = "subsequence"


# ---------------------------------------------------------------------------
# shift representations over the operand basis


class _ShiftRep:
    """Vectors expressing a(mult*n + t) over the basis a(mult*n + i), i < r.

    Entries live in the field selected by the operator's coefficient ring:
    plain rationals, rational functions in n, or formal exponential
    polynomial fractions.
    """

    def __init__(self, operator, mult=1):
        self.operator = operator
        self.mult = mult
        self.order = operator.order
        ring = operator.ring
        if ring is CoeffRing.CONSTANT:
            self.zero = Fraction(0)
            self.one = Fraction(1)
        elif ring is CoeffRing.POLY_N:
            one = RationalFunction(Poly([1], QQ, "n"))
            self.zero = one - one
            self.one = one
        else:
            field = operator.coeffs[-1].field
            self.zero = ExpPolyFraction.zero(field)
            self.one = ExpPolyFraction.one(field)
        self._cache = {}

    def _coeff(self, i, shift):
        """c_i evaluated at argument mult*n + shift, as a field element."""
        op = self.operator
        if op.ring is CoeffRing.CONSTANT:
            return op.coeffs[i]
        if op.ring is CoeffRing.POLY_N:
            return RationalFunction(op.coeffs[i].compose_linear(self.mult, shift))
        composed = op.coeffs[i].compose_arg(self.mult, shift)
        return ExpPolyFraction.from_exppoly(composed)

    def vector(self, t):
        if t in self._cache:
            return self._cache[t]
        r = self.order
        if t < r:
            vec = [self.zero] * r
            vec[t] = self.one
        else:
            # a(m n + t) = -sum_i c_i(m n + t - r)/c_r(m n + t - r) a(m n + t - r + i)
            lead = self._coeff(r, t - r)
            vec = [self.zero] * r
            for i in range(r):
                c = self._coeff(i, t - r)
                if not c:
                    continue
                factor = (-c) / lead
                sub = self.vector(t - r + i)
                vec = [a + factor * b for a, b in zip(vec, sub)]
        self._cache[t] = vec
        return vec


def _adapter_for(operator):
    if operator.ring is CoeffRing.CONSTANT:
        return rational_adapter()
    if operator.ring is CoeffRing.POLY_N:
        return ratfunc_adapter(RationalFunction(Poly([1], QQ, "n")))
    return exppoly_fraction_adapter(operator.coeffs[-1].field)


def _common_ring(a, b):
    ranking = {CoeffRing.CONSTANT: 0, CoeffRing.POLY_N: 1, CoeffRing.EXPPOLY: 2}
    if ranking[a.ring] < ranking[b.ring]:
        a = a.promoted(b.ring)
    elif ranking[b.ring] < ranking[a.ring]:
        b = b.promoted(a.ring)
    return a, b


def combination_matrix(kind, op_a, op_b=None, mult=1, rows=None):
    """The solution-space matrix whose left null vectors are recurrences.

    Row t represents the combined sequence shifted by t over the operand
    basis; ``rows`` overrides the number of shifts (defaults to the
    closure order bound plus one).
    """
    if kind in (ADD, TERMWISE) and op_b is None:
        raise ValueError(f"{kind} needs two operands")
    if kind in (PARTIAL_SUM, SUBSEQUENCE) and op_b is not None:
        raise ValueError(f"{kind} takes one operand")
    if kind == SUBSEQUENCE:
        rep = _ShiftRep(op_a, mult)
        r = op_a.order
        count = rows if rows is not None else r + 1
        return [rep.vector(mult * t) for t in range(count)]
    if kind == PARTIAL_SUM:
        rep = _ShiftRep(op_a)
        r = op_a.order
        count = rows if rows is not None else r + 2
        matrix = []
        acc = [rep.zero] * r
        for t in range(count):
            if t > 0:
                acc = [a + b for a, b in zip(acc, rep.vector(t))]
            matrix.append([rep.one] + list(acc))
        return matrix
    rep_a = _ShiftRep(op_a)
    rep_b = _ShiftRep(op_b)
    ra, rb = op_a.order, op_b.order
    if kind == ADD:
        bound = ra + rb
        count = rows if rows is not None else bound + 1
        return [rep_a.vector(t) + rep_b.vector(t) for t in range(count)]
    if kind == TERMWISE:
        bound = ra * rb
        count = rows if rows is not None else bound + 1
        matrix = []
        for t in range(count):
            u, w = rep_a.vector(t), rep_b.vector(t)
            matrix.append([ui * wj for ui in u for wj in w])
        return matrix
    raise ValueError(f"unsupported combination kind {kind!r}")


# ---------------------------------------------------------------------------
# null-vector selection and normalization


def _operator_from_constant_vector(vector):
    values = list(vector)
    while values and not values[-1]:
        values.pop()
    if not values:
        return None
    denominators = 1
    for v in values:
        denominators = denominators * v.denominator // math.gcd(
            denominators, v.denominator
        )
    scaled = [v * denominators for v in values]
    content = rational_content(scaled)
    scaled = [v / content for v in scaled]
    if scaled[-1] < 0:
        scaled = [-v for v in scaled]
    return ShiftOperator(CoeffRing.CONSTANT, scaled)


def _operator_from_ratfunc_vector(vector):
    trimmed = list(vector)
    while trimmed and not trimmed[-1]:
        trimmed.pop()
    if not trimmed:
        return None
    polys = clear_denominators(trimmed)
    return ShiftOperator(CoeffRing.POLY_N, polys)


def _exppoly_sign(e):
    """Canonical sign of an exponential polynomial: the sign of the last
    nonzero rational coordinate of the leading term's leading coefficient."""
    base, poly = e.terms[-1]
    lead = poly.leading
    for c in reversed(lead.coords):
        if c:
            return 1 if c > 0 else -1
    return 1


def _operator_from_exppoly_vector(vector):
    cleared = clear_exppoly_denominators(vector)
    while cleared and not cleared[-1]:
        cleared.pop()
    if not cleared:
        return None
    if _exppoly_sign(cleared[-1]) < 0:
        cleared = [-e for e in cleared]
    return ShiftOperator(CoeffRing.EXPPOLY, cleared)


def _constant_candidates(basis):
    out = []
    for vec in basis:
        op = _operator_from_constant_vector(vec)
        if op is not None:
            out.append((op.order, 0, op))
    return out


def _ratfunc_candidates(basis):
    out = []
    for vec in basis:
        op = _operator_from_ratfunc_vector(vec)
        if op is not None:
            total_degree = sum(max(c.degree, 0) for c in op.coeffs if c)
            out.append((op.order, total_degree, op))
    return out


def _pick(candidates):
    if not candidates:
        raise NullSpaceEmpty("no usable null vector (internal shape bug)")
    candidates.sort(key=lambda item: (item[0], item[1]))
    return candidates[0][2]


# ---------------------------------------------------------------------------
# public closure operations


def cfinite_combine_gf(kind, gf_a, gf_b=None):
    """Combine by generating-function arithmetic: addition, Cauchy product
    or partial sum.  Returns (generating function, recurrence)."""
    if kind == ADD:
        combined = gf_a + gf_b
        bound = gf_a.den.degree + gf_b.den.degree
    elif kind == CAUCHY:
        combined = gf_a * gf_b
        bound = gf_a.den.degree + gf_b.den.degree
    elif kind == PARTIAL_SUM:
        if gf_b is not None:
            raise ValueError("partial sum takes one operand")
        combined = gf_a.partial_sum()
        bound = gf_a.den.degree + 1
    else:
        raise ValueError(f"unsupported generating-function kind {kind!r}")
    system = cfinite_from_rational(combined)
    assert system.order <= bound
    return combined, system


def cfinite_termwise(op_a, op_b):
    """Annihilator of the term-wise product; order at most r*s."""
    matrix = combination_matrix(TERMWISE, op_a, op_b)
    basis = left_null_space(matrix, rational_adapter())
    operator = _pick(_constant_candidates(basis))
    assert operator.order <= op_a.order * op_b.order
    return operator


def cfinite_add(op_a, op_b):
    """Annihilator of the sum via the solution space; order at most r+s."""
    matrix = combination_matrix(ADD, op_a, op_b)
    basis = left_null_space(matrix, rational_adapter())
    operator = _pick(_constant_candidates(basis))
    assert operator.order <= op_a.order + op_b.order
    return operator


def cfinite_subsequence(mult, op):
    """Annihilator of a(mult*n); order at most r."""
    if mult < 1:
        raise ValueError("subsequence multiplier must be >= 1")
    matrix = combination_matrix(SUBSEQUENCE, op, mult=mult)
    basis = left_null_space(matrix, rational_adapter())
    operator = _pick(_constant_candidates(basis))
    assert operator.order <= op.order
    return operator


def cfinite_partial_sum(op):
    matrix = combination_matrix(PARTIAL_SUM, op)
    basis = left_null_space(matrix, rational_adapter())
    operator = _pick(_constant_candidates(basis))
    assert operator.order <= op.order + 1
    return operator


_HOLONOMIC_BOUNDS = {
    ADD: lambda r, s: r + s,
    TERMWISE: lambda r, s: r * s,
    PARTIAL_SUM: lambda r, s: r + 1,
    SUBSEQUENCE: lambda r, s: r,
}


def holonomic_combine(kind, op_a, op_b=None, mult=1):
    """Solution-space closure for polynomial-coefficient operators.

    The rational-function null vector is cleared to coprime polynomials;
    the caller recomputes the validity offset from the output's leading
    coefficient."""
    op_a = op_a.promoted(CoeffRing.POLY_N)
    if op_b is not None:
        op_b = op_b.promoted(CoeffRing.POLY_N)
    matrix = combination_matrix(kind, op_a, op_b, mult=mult)
    adapter = ratfunc_adapter(RationalFunction(Poly([1], QQ, "n")))
    basis = left_null_space(matrix, adapter)
    operator = _pick(_ratfunc_candidates(basis))
    bound = _HOLONOMIC_BOUNDS[kind](op_a.order, op_b.order if op_b else 0)
    assert operator.order <= bound
    return operator


def holonomic_cauchy(eq_a, eq_b):
    """Homogeneous ODE for the product of two homogeneous single-base
    generating functions; order at most the product of the orders."""
    for eq in (eq_a, eq_b):
        if not eq.is_homogeneous or len(eq.terms) != 1:
            raise ValueError("homogeneous single-base equations required")
    r1, r2 = eq_a.order, eq_b.order
    rep_a = _DerivativeRep(eq_a)
    rep_b = _DerivativeRep(eq_b)
    rows = []
    for t in range(r1 * r2 + 1):
        row = [rep_a.zero] * (r1 * r2)
        for u in range(t + 1):
            factor = math.comb(t, u)
            va, vb = rep_a.vector(u), rep_b.vector(t - u)
            for i in range(r1):
                if not va[i]:
                    continue
                left = va[i] * factor
                for j in range(r2):
                    if vb[j]:
                        row[i * r2 + j] = row[i * r2 + j] + left * vb[j]
        rows.append(row)
    adapter = ratfunc_adapter(RationalFunction(Poly([1], QQ, "x")))
    basis = left_null_space(rows, adapter)
    candidates = []
    for vec in basis:
        trimmed = list(vec)
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        if not trimmed:
            continue
        polys = clear_denominators(trimmed)
        total_degree = sum(max(p.degree, 0) for p in polys if p)
        candidates.append((len(polys) - 1, total_degree, polys))
    if not candidates:
        raise NullSpaceEmpty("no usable null vector (internal shape bug)")
    candidates.sort(key=lambda item: (item[0], item[1]))
    polys = candidates[0][2]
    assert len(polys) - 1 <= r1 * r2
    return DiffEquation(RATIONAL_FIELD, [(1, polys)], None)


class _DerivativeRep:
    """Vectors expressing the u-th derivative of a generating function over
    the basis of its first r derivatives, via its homogeneous ODE."""

    def __init__(self, equation):
        _, coeffs = equation.terms[0]
        lead = RationalFunction(_to_qq_poly(coeffs[-1]))
        self.reduction = [
            RationalFunction(_to_qq_poly(c)) / lead * Fraction(-1) for c in coeffs[:-1]
        ]
        self.order = len(coeffs) - 1
        one = RationalFunction(Poly([1], QQ, "x"))
        self.one = one
        self.zero = one - one
        self._cache = {}

    def vector(self, u):
        if u in self._cache:
            return self._cache[u]
        r = self.order
        if u < r:
            vec = [self.zero] * r
            vec[u] = self.one
        else:
            prev = self.vector(u - 1)
            vec = [f.derivative() for f in prev]
            for i in range(r - 1):
                vec[i + 1] = vec[i + 1] + prev[i]
            top = prev[r - 1]
            if top:
                vec = [a + top * b for a, b in zip(vec, self.reduction)]
        self._cache[u] = vec
        return vec


def _to_qq_poly(poly):
    return Poly([c.as_rational() for c in poly.coeffs], QQ, poly.var)


# ---------------------------------------------------------------------------
# exponential-polynomial coefficients, with degeneracy handling


def probe_leading_coefficient(coefficient, probe=200):
    """Scan n = 0..probe for zeros of the leading coefficient.

    Returns the validity offset when the zeros stop early, or None when
    they persist to the end of the window (structural vanishing, e.g. on a
    parity class)."""
    zeros = [n for n in range(probe + 1) if not coefficient.evaluate(n)]
    if not zeros:
        return 0
    if zeros[-1] >= probe - 2:
        return None
    return zeros[-1] + 1


def c2_combine(kind, op_a, op_b=None, mult=1, max_bump=3, probe=200):
    """Solution-space closure for exponential-polynomial coefficients.

    Candidates whose leading coefficient vanishes on an arithmetic tail
    (the degenerate case) are rejected and the order is bumped by one, up
    to ``max_bump`` times.  Returns (operator, validity_offset)."""
    op_a = op_a.promoted(CoeffRing.EXPPOLY)
    if op_b is not None:
        op_b = op_b.promoted(CoeffRing.EXPPOLY)
        field = op_a.coeffs[-1].field
        other = op_b.coeffs[-1].field
        if field != other:
            from .fields import common_field

            target = common_field(field, other)
            op_a = ShiftOperator(
                CoeffRing.EXPPOLY, [c.to_field(target) for c in op_a.coeffs]
            )
            op_b = ShiftOperator(
                CoeffRing.EXPPOLY, [c.to_field(target) for c in op_b.coeffs]
            )
    adapter = _adapter_for(op_a)
    if kind == ADD:
        base_rows = op_a.order + op_b.order + 1
    elif kind == TERMWISE:
        base_rows = op_a.order * op_b.order + 1
    elif kind == SUBSEQUENCE:
        base_rows = op_a.order + 1
    elif kind == PARTIAL_SUM:
        base_rows = op_a.order + 2
    else:
        raise ValueError(f"unsupported kind {kind!r}")
    for bump in range(max_bump + 1):
        matrix = combination_matrix(
            kind, op_a, op_b, mult=mult, rows=base_rows + bump
        )
        basis = left_null_space(matrix, adapter)
        candidates = []
        for vec in basis:
            operator = _operator_from_exppoly_vector(vec)
            if operator is None:
                continue
            validity = probe_leading_coefficient(operator.leading, probe)
            if validity is None:
                continue
            total_degree = sum(
                max(c.deg, 0) + len(c.terms) for c in operator.coeffs if c
            )
            candidates.append((operator.order, total_degree, (operator, validity)))
        if candidates:
            candidates.sort(key=lambda item: (item[0], item[1]))
            return candidates[0][2]
    raise LeadingAlwaysZero(
        f"no combination up to order +{max_bump} has a usable leading coefficient"
    )


# ---------------------------------------------------------------------------
# polynomial closures in closed form


def _binomial_basis(poly):
    """Coefficients d_j with p(n) = sum_j d_j C(n, j), via finite differences."""
    degree = max(poly.degree, 0)
    values = [poly.evaluate(Fraction(n)) for n in range(degree + 1)]
    out = []
    while values:
        out.append(values[0])
        values = [b - a for a, b in zip(values, values[1:])]
    return out


def _binomial_poly(j):
    """C(n, j) as a polynomial in n."""
    result = Poly([1], QQ, "n")
    for i in range(j):
        result = result * Poly([Fraction(-i), 1], QQ, "n")
        result = result.scale(Fraction(1, i + 1))
    return result


def poly_partial_sum(poly):
    """sum_{i=0}^{n} p(i) as a polynomial in n, via the binomial basis."""
    coeffs = _binomial_basis(poly)
    result = Poly([], QQ, "n")
    for j, d in enumerate(coeffs):
        if d:
            result = result + _binomial_poly(j + 1).scale(d)
    # antidifference gives sum_{i=0}^{n-1}; shift to include n
    return result.shift_arg(1)


def poly_closure(kind, poly_a, poly_b=None, mult=1):
    """Closed-form combination of polynomial sequences.

    Degrees obey max(k,l) for addition, k+l term-wise, k+l+1 for the
    Cauchy product, k+1 for partial sums and k for subsequences."""
    if kind == ADD:
        return poly_a + poly_b
    if kind == TERMWISE:
        return poly_a * poly_b
    if kind == SUBSEQUENCE:
        return poly_a.compose_linear(mult, 0)
    if kind == PARTIAL_SUM:
        return poly_partial_sum(poly_a)
    if kind == CAUCHY:
        # c_n = sum_i a(i) b(n-i): expand b(n-i) by powers of i, then sum
        # each i-power with the closed-form power sums
        i_coeffs = {}
        for l in range(max(poly_b.degree, 0) + 1):
            bl = poly_b.coefficient(l)
            if not bl:
                continue
            # (n - i)^l = sum_j C(l,j) n^(l-j) (-i)^j
            for j in range(l + 1):
                piece = Poly(
                    [Fraction(0)] * (l - j) + [bl * math.comb(l, j) * Fraction(-1) ** j],
                    QQ,
                    "n",
                )
                i_coeffs[j] = i_coeffs.get(j, Poly([], QQ, "n")) + piece
        # multiply by a(i) = sum_a a_m i^m
        product = {}
        for m in range(max(poly_a.degree, 0) + 1):
            am = poly_a.coefficient(m)
            if not am:
                continue
            for j, q in i_coeffs.items():
                product[m + j] = product.get(m + j, Poly([], QQ, "n")) + q.scale(am)
        result = Poly([], QQ, "n")
        for power, q in product.items():
            monomial = Poly([Fraction(0)] * power + [Fraction(1)], QQ, "n")
            result = result + q * poly_partial_sum(monomial)
        return result
    raise ValueError(f"unsupported polynomial closure kind {kind!r}")


# ---------------------------------------------------------------------------
# combined systems with initial values


def _combined_values(kind, sys_a, sys_b, count, mult=1):
    def expanded(system, wanted):
        return expand_terms(system, max(wanted, len(system.initials)))

    if kind == SUBSEQUENCE:
        inner = expanded(sys_a, mult * max(count - 1, 0) + 1)
        return [inner.value(mult * n) for n in range(count)]
    if kind == PARTIAL_SUM:
        inner = expanded(sys_a, count)
        acc = Fraction(0)
        out = []
        for v in inner.terms[:count]:
            acc += v
            out.append(acc)
        return out
    a = expanded(sys_a, count)
    b = expanded(sys_b, count)
    if kind == ADD:
        return [a.value(n) + b.value(n) for n in range(count)]
    if kind == TERMWISE:
        return [a.value(n) * b.value(n) for n in range(count)]
    if kind == CAUCHY:
        return [
            sum(
                (a.value(i) * b.value(n - i) for i in range(n + 1)),
                Fraction(0),
            )
            for n in range(count)
        ]
    raise ValueError(f"unsupported kind {kind!r}")


def combine(kind, sys_a, sys_b=None, mult=1, max_bump=3, probe=200):
    """Combine recurrence systems into a full system for the result.

    Operands of different classes are promoted upward (polynomial and
    constant coefficients into whatever the other operand needs); initial
    values come from combining directly computed operand terms.
    """
    if kind in (PARTIAL_SUM, SUBSEQUENCE):
        sys_b = None
    if sys_a.offset != 0 or (sys_b is not None and sys_b.offset != 0):
        raise ValueError("combinations require offset-0 operands")
    if sys_a.validity_offset != 0 or (sys_b is not None and sys_b.validity_offset != 0):
        raise ValueError("combinations require validity offset 0")
    op_a = sys_a.operator
    op_b = sys_b.operator if sys_b is not None else None
    if op_b is not None:
        op_a, op_b = _common_ring(op_a, op_b)
    ring = op_a.ring
    validity = 0
    if ring is CoeffRing.EXPPOLY:
        if kind == CAUCHY:
            from .errors import UnsupportedCase

            raise UnsupportedCase(
                "no constructive Cauchy-product procedure exists for"
                " exponential-polynomial coefficients"
            )
        operator, validity = c2_combine(
            kind, op_a, op_b, mult=mult, max_bump=max_bump, probe=probe
        )
    elif ring is CoeffRing.POLY_N:
        if kind == CAUCHY:
            from .genfun import diff_to_holonomic, holonomic_to_diff, homogenize

            equation = holonomic_cauchy(
                homogenize(holonomic_to_diff(sys_a)),
                homogenize(holonomic_to_diff(sys_b)),
            )
            operator, validity = diff_to_holonomic(equation)
        else:
            operator = holonomic_combine(kind, op_a, op_b, mult=mult)
            validity = leading_validity_offset(operator)
    else:
        if kind == ADD:
            operator = cfinite_add(op_a, op_b)
        elif kind == TERMWISE:
            operator = cfinite_termwise(op_a, op_b)
        elif kind == SUBSEQUENCE:
            operator = cfinite_subsequence(mult, op_a)
        elif kind == PARTIAL_SUM:
            operator = cfinite_partial_sum(op_a)
        elif kind == CAUCHY:
            from .genfun import genfun_cfinite

            _, system = cfinite_combine_gf(
                CAUCHY, genfun_cfinite(sys_a), genfun_cfinite(sys_b)
            )
            return system
        else:
            raise ValueError(f"unsupported kind {kind!r}")
    initials = _combined_values(kind, sys_a, sys_b, validity + operator.order, mult)
    return RecurrenceSystem(operator, initials, validity, 0)


# ---------------------------------------------------------------------------
# rigorous identity proofs


@dataclass(frozen=True)
class ClaimTerm:
    """coefficient * product of shifted sequences, optionally with a shift
    operator applied to the whole product (which never raises the bound)."""

    coeff: Fraction
    factors: tuple  # ((name, shift), ...)
    operator: tuple = (Fraction(1),)

    def describe(self, orders):
        if not self.factors:
            return "1"
        return "*".join(str(orders[name]) for name, _ in self.factors)


@dataclass(frozen=True)
class IdentityClaim:
    """Assertion that a polynomial combination of registered sequences is
    identically zero for all n >= from_n."""

    sequences: dict
    terms: tuple
    from_n: int = 0


@dataclass(frozen=True)
class ProofCertificate:
    order_bound: int
    bound_trace: str
    terms_checked: int
    verdict: str  # "proven" or "refuted"
    witness: object = None
    witness_value: object = None


def _claim_bound(claim):
    orders = {}
    for name, system in claim.sequences.items():
        if system.operator.ring is not CoeffRing.CONSTANT:
            raise UnboundableExpression(
                f"sequence {name!r} is not constant-coefficient; no rigorous bound"
            )
        if system.validity_offset != system.offset:
            raise UnboundableExpression(
                f"sequence {name!r} has a delayed relation; no rigorous bound"
            )
        orders[name] = system.operator.order
    total = 0
    pieces = []
    for term in claim.terms:
        bound = 1
        for name, _ in term.factors:
            if name not in orders:
                raise UnboundableExpression(f"sequence {name!r} is not registered")
            bound *= orders[name]
        total += bound
        pieces.append(term.describe(orders))
    trace = " + ".join(pieces) + f" = {total}"
    return total, trace


def prove_identity(claim):
    """Prove or refute the claim by checking order-bound many values.

    The expression is a combination of constant-coefficient sequences, so
    it satisfies some recurrence of order at most the composed bound with
    a nonvanishing leading coefficient; that many consecutive zeros force
    the whole tail to vanish.
    """
    bound, trace = _claim_bound(claim)
    max_index = claim.from_n + bound - 1
    needed = {}
    for term in claim.terms:
        op_span = len(term.operator) - 1
        for name, shift in term.factors:
            idx = max_index + shift + op_span
            needed[name] = max(needed.get(name, 0), idx)
    expanded = {}
    for name, top in needed.items():
        system = claim.sequences[name]
        count = max(top - system.offset + 1, len(system.initials))
        expanded[name] = expand_terms(system, count)
    for n in range(claim.from_n, claim.from_n + bound):
        total = Fraction(0)
        for term in claim.terms:
            for j, w in enumerate(term.operator):
                if not w:
                    continue
                product = term.coeff * w
                for name, shift in term.factors:
                    product *= expanded[name].value(n + j + shift)
                total += product
        if total:
            return ProofCertificate(
                order_bound=bound,
                bound_trace=trace,
                terms_checked=n - claim.from_n + 1,
                verdict="refuted",
                witness=n,
                witness_value=total,
            )
    return ProofCertificate(
        order_bound=bound,
        bound_trace=trace,
        terms_checked=bound,
        verdict="proven",
    )
