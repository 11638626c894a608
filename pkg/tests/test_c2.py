"""Coefficient registration, degree, and growth diagnostics."""

import math
from fractions import Fraction

import pytest

from ansatzkit import (
    C2System,
    CoeffRing,
    ExpPoly,
    Poly,
    QQ,
    RecurrenceSystem,
    ShiftOperator,
    closed_form_to_recurrence,
    deg,
    expand_terms,
    growth_probe,
    register_coefficient,
)
from ansatzkit.errors import UnsupportedFactorization, ZeroTail

import conftest as corpus

F = Fraction


class TestRegisterCoefficient:
    def test_fibonacci_binet(self):
        closed = register_coefficient(corpus.fibonacci_system())
        for n in range(30):
            assert closed.evaluate_rational(n) == expand_terms(
                corpus.fibonacci_system(), 30
            ).value(n)

    def test_power_of_two(self):
        closed = register_coefficient(
            RecurrenceSystem(ShiftOperator(CoeffRing.CONSTANT, [-2, 1]), [1])
        )
        assert closed == ExpPoly.geometric(2)
        assert deg(closed) == 0

    def test_linear_times_power(self):
        closed = register_coefficient(
            RecurrenceSystem(ShiftOperator(CoeffRing.CONSTANT, [4, -4, 1]), [1, 4])
        )
        assert closed == ExpPoly(
            closed.field, [(2, Poly([1, 1], QQ, "n"))]
        )
        assert deg(closed) == 1

    def test_roundtrip_with_reverse_construction(self):
        closed = register_coefficient(corpus.fibonacci_system())
        system = closed_form_to_recurrence(closed)
        assert list(system.operator.coeffs) == [-1, -1, 1]
        assert register_coefficient(system) == closed

    def test_zero_root_rejected(self):
        system = RecurrenceSystem(
            ShiftOperator(CoeffRing.CONSTANT, [0, -2, 1]), [5, 3]
        )
        with pytest.raises(UnsupportedFactorization):
            register_coefficient(system)


class TestDeg:
    def test_linear_times_power(self):
        assert deg(ExpPoly(ExpPoly.geometric(2).field, [(1, Poly([0, 0, -1], QQ, "n")), (3, Poly([0, 1], QQ, "n"))])) == 2

    def test_binet_is_degree_zero(self):
        assert deg(corpus.fibonacci_shift_closed_form(0)) == 0

    def test_zero_sentinel(self):
        assert deg(ExpPoly.zero()) == float("-inf")

    def test_invariant_under_build_order(self):
        field = ExpPoly.geometric(2).field
        forward = ExpPoly(field, [(1, Poly([1, 1], QQ, "n")), (2, Poly([3], QQ, "n"))])
        backward = ExpPoly(field, [(2, Poly([3], QQ, "n")), (1, Poly([1, 1], QQ, "n"))])
        assert forward == backward
        assert deg(forward) == deg(backward)


class TestC2System:
    def test_degree_reports_max(self):
        coeff = ExpPoly(ExpPoly.geometric(2).field, [(2, Poly([1, 1], QQ, "n"))])
        system = RecurrenceSystem(
            ShiftOperator(CoeffRing.EXPPOLY, [coeff, ExpPoly.constant(1)]), [1]
        )
        wrapper = C2System(system)
        assert wrapper.degree == 1
        assert wrapper.order == 1

    def test_fibonorial_regression(self):
        system = corpus.fibonorial_system()
        seq = expand_terms(system, 34)
        import os

        path = os.path.join(os.path.dirname(__file__), "fixtures", "b003266.txt")
        fixture = {}
        with open(path) as fh:
            for line in fh:
                if line.startswith("#"):
                    continue
                index, value = line.split()
                fixture[int(index)] = int(value)
        # the expansion lines up with the catalogued values, shifted by one
        for n in range(30):
            assert seq.value(n) == fixture[n + 1]
        for n in range(31):
            lhs = (
                seq.value(n) * seq.value(n + 1) * seq.value(n + 3)
                - seq.value(n) * seq.value(n + 2) ** 2
                - seq.value(n + 2) * seq.value(n + 1) ** 2
            )
            assert lhs == 0


class TestGrowthProbe:
    def test_doubling_product_slope(self):
        two_n = ExpPoly.geometric(2)
        system = RecurrenceSystem(
            ShiftOperator(CoeffRing.EXPPOLY, [-two_n, ExpPoly.constant(1)]), [1]
        )
        report = growth_probe(system, 60)
        assert abs(report.quadratic - math.log(2) / 2) < 1e-6

    def test_fibonorial_window(self):
        report = growth_probe(corpus.fibonorial_system(), 60)
        seq = expand_terms(corpus.fibonorial_system(), 61)
        for n in (40, 50, 60):
            value = seq.value(n)
            log_term = math.log(value.numerator) - math.log(value.denominator)
            assert 0.1 < log_term / n ** 2 < 0.4
        assert 0.1 < report.quadratic < 0.4

    def test_cfinite_has_flat_quadratic(self):
        report = growth_probe(corpus.fibonacci_system(), 60)
        assert abs(report.quadratic) < 1e-6

    def test_zero_tail(self):
        system = RecurrenceSystem(
            ShiftOperator(CoeffRing.CONSTANT, [0, 1]), [1]
        )
        with pytest.raises(ZeroTail):
            growth_probe(system, 40)
