"""Ansatz fitting: polynomial, constant and polynomial coefficients."""

import random
from fractions import Fraction

import pytest

from ansatzkit import (
    CoeffRing,
    Poly,
    QQ,
    Sequence,
    expand_terms,
    guess_cfinite,
    guess_holonomic,
    guess_polynomial,
    verify_annihilates,
)
from ansatzkit.errors import InsufficientData
from ansatzkit.guess import holonomic_fit_length

import conftest as corpus

F = Fraction


def proportional(coeffs_a, coeffs_b):
    if len(coeffs_a) != len(coeffs_b):
        return False
    ratio = None
    for a, b in zip(coeffs_a, coeffs_b):
        if bool(a) != bool(b):
            return False
        if a:
            if isinstance(a, Poly):
                if len(a.coeffs) != len(b.coeffs):
                    return False
                for ca, cb in zip(a.coeffs, b.coeffs):
                    if bool(ca) != bool(cb):
                        return False
                    if ca:
                        r = ca / cb
                        if ratio is None:
                            ratio = r
                        elif r != ratio:
                            return False
            else:
                r = a / b
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False
    return ratio is not None


class TestGuessPolynomial:
    def test_sum_of_squares(self):
        seq = Sequence([sum(i * i for i in range(n + 1)) for n in range(21)])
        report = guess_polynomial(seq, 4)
        assert report.poly == Poly([0, F(1, 6), F(1, 2), F(1, 3)], QQ, "n")
        assert report.shape == ("polynomial", 4, 3)

    def test_constant(self):
        report = guess_polynomial(Sequence([5, 5, 5, 5, 5]), 3)
        assert report.poly == Poly([5], QQ, "n")
        assert report.shape[2] == 0

    def test_squares(self):
        report = guess_polynomial(Sequence([0, 1, 4, 9, 16, 25]), 2)
        assert report.poly == Poly([0, 0, 1], QQ, "n")

    def test_not_polynomial(self):
        seq = expand_terms(corpus.fibonacci_system(), 20)
        assert guess_polynomial(seq, 5).result is None

    def test_insufficient(self):
        with pytest.raises(InsufficientData):
            guess_polynomial(Sequence([1]), 3)


class TestGuessCFinite:
    def test_floor_square(self):
        seq = expand_terms(corpus.floor_square_system(), 31)
        report = guess_cfinite(seq, 5)
        assert list(report.result.operator.coeffs) == [-1, 2, 0, -2, 1]
        assert report.shape == ("cfinite", 4, 0)

    def test_fibonacci(self):
        seq = expand_terms(corpus.fibonacci_system(), 20)
        report = guess_cfinite(seq, 3)
        assert list(report.result.operator.coeffs) == [-1, -1, 1]
        assert list(report.result.initials) == [0, 1]

    def test_geometric(self):
        seq = Sequence([2 ** n for n in range(16)])
        report = guess_cfinite(seq, 2)
        assert list(report.result.operator.coeffs) == [-2, 1]

    def test_minimality_preference(self):
        seq = expand_terms(corpus.fibonacci_system(), 25)
        report = guess_cfinite(seq, 5)
        assert report.shape[1] == 2

    def test_all_zero_flags_degenerate(self):
        report = guess_cfinite(Sequence([0] * 12), 3)
        assert report.degenerate
        assert list(report.result.operator.coeffs) == [0, 1]

    def test_soundness_invariant(self):
        seq = expand_terms(corpus.floor_square_system(), 31)
        report = guess_cfinite(seq, 5)
        assert verify_annihilates(report.result.operator, seq, 0) is None


class TestGuessHolonomic:
    def test_harmonic(self):
        seq = expand_terms(corpus.harmonic_system(), 35)
        report = guess_holonomic(seq, 2, 1)
        expected = [Poly([1, 1], QQ, "n"), Poly([-3, -2], QQ, "n"), Poly([2, 1], QQ, "n")]
        assert proportional(report.result.operator.coeffs, expected)
        assert report.shape == ("holonomic", 2, 1)

    def test_catalan(self):
        seq = expand_terms(corpus.catalan_system(), 20)
        report = guess_holonomic(seq, 1, 1)
        expected = [Poly([2, 4], QQ, "n"), Poly([-2, -1], QQ, "n")]
        assert proportional(report.result.operator.coeffs, expected)

    def test_opening_sequence(self):
        # a(n+2) = (n+3)a(n+1) + (n+2)a(n), a0 = a1 = 1
        values = [F(1), F(1)]
        while len(values) < 16:
            n = len(values) - 2
            values.append((n + 3) * values[-1] + (n + 2) * values[-2])
        assert values[:11] == [
            1, 1, 5, 23, 135, 925, 7285, 64755, 641075, 6993545, 83339745,
        ]
        report = guess_holonomic(Sequence(values), 2, 1)
        expected = [Poly([-2, -1], QQ, "n"), Poly([-3, -1], QQ, "n"), Poly([1], QQ, "n")]
        assert proportional(report.result.operator.coeffs, expected)
        assert report.shape == ("holonomic", 2, 1)

    def test_floor_square_leading_vanishes(self):
        seq = expand_terms(corpus.floor_square_system(), 25)
        report = guess_holonomic(seq, 2, 1)
        assert report.shape == ("holonomic", 2, 1)
        assert report.result.validity_offset == 1

class TestRigorMode:
    def test_known_shape_turns_into_proof(self):
        # knowing order 2 and degree 3 requires values a(0)..a(13)
        assert holonomic_fit_length(2, 3) == 14
        system = corpus.harmonic_from_zero()
        seq14 = expand_terms(system, 14)
        report = guess_holonomic(seq14, 2, 3, margin=0, assume_bound=True)
        assert report.proven
        seq13 = expand_terms(system, 13)
        report13 = guess_holonomic(seq13, 2, 3, margin=0, assume_bound=True)
        assert report13.result is None or not report13.proven

    def test_without_assertion_not_proven(self):
        seq = expand_terms(corpus.harmonic_from_zero(), 20)
        report = guess_holonomic(seq, 2, 1)
        assert not report.proven


class TestRoundTrips:
    def test_cfinite_roundtrip(self):
        rng = random.Random(2024)
        for _ in range(100):
            system = corpus.random_cfinite(rng, max_order=4)
            minimum = 2 * system.order + 1
            data = expand_terms(system, 3 * minimum)
            report = guess_cfinite(data, system.order, margin=1)
            assert report.result is not None
            fresh = expand_terms(system, 50)
            assert verify_annihilates(report.result.operator, fresh, 0) is None

    def test_holonomic_roundtrip(self):
        rng = random.Random(2025)
        found = 0
        for _ in range(100):
            system = corpus.random_holonomic(rng, max_order=3, max_degree=2)
            minimum = holonomic_fit_length(system.order, 2)
            data = expand_terms(system, 3 * minimum)
            report = guess_holonomic(data, system.order, 2, margin=1)
            assert report.result is not None
            fresh = expand_terms(system, 50)
            assert (
                verify_annihilates(
                    report.result.operator, fresh, report.result.validity_offset
                )
                is None
            )
            found += 1
        assert found == 100

    def test_polynomial_roundtrip(self):
        rng = random.Random(2026)
        for _ in range(100):
            poly = corpus.random_polynomial_poly(rng, max_degree=4)
            seq = Sequence([poly.evaluate(F(n)) for n in range(16)])
            report = guess_polynomial(seq, 4)
            assert report.poly == poly
