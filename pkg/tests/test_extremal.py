"""Largest inverse entry: n0 threshold, argmax localization, scans."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vangeo.errors import DomainError, UndecidableComparisonError
from vangeo.extremal import (conjecture_scan, max_entry, n_zero,
                             verify_argmax_box, verify_leading_diagonal_max)
from vangeo.scalar import BaseSpec, RigorousReal, evaluate_base
from vangeo.symfunc import SigmaQuery, sigma_finite
from vangeo.vandinv import GeometricVandermonde


class TestNZero:
    @pytest.mark.parametrize("b,expected", [
        (Fraction(2), 1),
        (Fraction(3), 1),
        (Fraction(6, 5), 4),
        (Fraction(13, 10), 3),
        (Fraction(7, 5), 2),
        (Fraction(3, 2), 2),
        (Fraction(13, 8), 1),      # 169/64 >= 168/64: just above tau
        (Fraction(8, 5), 2),       # 64/25 < 65/25: just below tau
    ])
    def test_rational(self, b, expected):
        assert n_zero(b) == expected

    def test_boundary_constants_via_minimal_polynomial(self):
        assert n_zero(BaseSpec.parse("tau")) == 1     # tau^1 = 1 + 1/tau exactly
        assert n_zero(BaseSpec.parse("alpha")) == 1

    def test_threshold_characterization(self):
        # n_zero(b) == 1 iff b^2 >= b + 1
        for num, den in [(13, 8), (21, 13), (2, 1), (5, 3), (8, 5), (3, 2)]:
            b = Fraction(num, den)
            assert (n_zero(b) == 1) == (b * b >= b + 1), b

    def test_agrees_with_log_characterization(self):
        import math
        for num, den in [(6, 5), (13, 10), (7, 5), (3, 2), (2, 1), (3, 1)]:
            b = Fraction(num, den)
            by_log = math.ceil(math.log(1 + 1 / float(b), float(b)))
            assert n_zero(b) == max(1, by_log), b

    def test_rigorous_ball_input(self):
        ball = RigorousReal.exact(Fraction(8, 5), 128)
        assert n_zero(ball) == 2

    def test_straddling_ball_is_undecidable_not_wrong(self):
        tau_ball = evaluate_base(BaseSpec.parse("tau"), 64)
        with pytest.raises(UndecidableComparisonError):
            n_zero(tau_ball)

    def test_requires_base_above_one(self):
        with pytest.raises(DomainError):
            n_zero(Fraction(1))


class TestMaxEntry:
    def test_frozen_two_by_two(self, cached_inverse):
        spec = BaseSpec.parse("2")
        report = max_entry(GeometricVandermonde(spec, 2), inv=cached_inverse(spec, 2))
        assert report.max_value == 2
        assert report.argmax == ((0, 0),)
        assert report.n_zero == 1
        assert report.within_n_zero_box and report.diagonal_argmax
        assert not report.tie

    def test_frozen_three_halves(self):
        report = max_entry(GeometricVandermonde(BaseSpec.parse("3/2"), 2))
        assert report.max_value == 3
        assert report.argmax == ((0, 0),)

    def test_base_two_n40_near_limit(self, cached_inverse):
        spec = BaseSpec.parse("2")
        report = max_entry(GeometricVandermonde(spec, 40), inv=cached_inverse(spec, 40))
        assert set(report.argmax) <= {(0, 0), (0, 1), (1, 0), (1, 1)}
        limit = Fraction("5.194119929182595417")
        assert abs(report.max_value - limit) < Fraction(1, 10 ** 9)

    def test_argmax_attains_max(self, cached_inverse):
        for text in ["2", "7/5"]:
            spec = BaseSpec.parse(text)
            for n in [3, 6, 9]:
                inv = cached_inverse(spec, n)
                report = max_entry(GeometricVandermonde(spec, n), inv=inv)
                for i, j in report.argmax:
                    assert abs(inv.entry(i, j)) == report.max_value
                assert report.max_value == max(
                    abs(inv.entry(i, j)) for i in range(n) for j in range(n))

    def test_argmax_mirror_closed(self, cached_inverse):
        spec = BaseSpec.parse("6/5")
        for n in [5, 9, 13]:
            report = max_entry(GeometricVandermonde(spec, n),
                               inv=cached_inverse(spec, n))
            pairs = set(report.argmax)
            assert {(j, i) for i, j in pairs} == pairs

    def test_rigorous_resolves_argmax(self):
        report = max_entry(GeometricVandermonde(BaseSpec.parse("tau"), 12), 256)
        assert report.backend == "rigorous"
        assert not report.tie
        assert report.argmax == ((1, 1),)
        assert report.max_value.radius < Fraction(1, 10 ** 40)

    def test_max_report_json_schema(self, cached_inverse):
        spec = BaseSpec.parse("6/5")
        report = max_entry(GeometricVandermonde(spec, 12),
                           inv=cached_inverse(spec, 12))
        payload = json.loads(report.to_json())
        assert payload["n_zero"] == 4
        assert payload["argmax"] == [[3, 3]]
        assert payload["within_n_zero_box"] is True


class TestArgmaxBox:
    def test_vacuous_one_by_one(self):
        report = verify_argmax_box(GeometricVandermonde(BaseSpec.parse("3"), 1))
        assert report.passed

    def test_exact_cases(self, cached_inverse):
        for text in ["2", "6/5"]:
            spec = BaseSpec.parse(text)
            for n in [10, 12]:
                report = verify_argmax_box(GeometricVandermonde(spec, n),
                                           inv=cached_inverse(spec, n))
                assert report.passed, (text, n)
                assert not report.witnesses and not report.undecided

    def test_rigorous_case(self):
        report = verify_argmax_box(GeometricVandermonde(BaseSpec.parse("alpha"), 10), 256)
        assert report.passed

    def test_report_carries_max_report(self, cached_inverse):
        spec = BaseSpec.parse("13/10")
        report = verify_argmax_box(GeometricVandermonde(spec, 9),
                                   inv=cached_inverse(spec, 9))
        assert report.n_zero == 3
        assert report.max_report.n == 9


class TestLeadingDiagonal:
    def test_passes_on_grid(self, cached_inverse):
        for text in ["2", "5/3", "3", "4"]:
            spec = BaseSpec.parse(text)
            for n in [2, 6, 11]:
                report = verify_leading_diagonal_max(
                    GeometricVandermonde(spec, n), inv=cached_inverse(spec, n))
                assert report.passed, (text, n)
                assert report.sigma_step_holds

    def test_precondition_below_golden(self):
        with pytest.raises(DomainError):
            verify_leading_diagonal_max(GeometricVandermonde(BaseSpec.parse("3/2"), 4))

    def test_boundary_tau_allowed(self):
        report = verify_leading_diagonal_max(
            GeometricVandermonde(BaseSpec.parse("tau"), 6), 192)
        assert report.passed

    def test_requires_n_at_least_two(self):
        with pytest.raises(DomainError):
            verify_leading_diagonal_max(GeometricVandermonde(BaseSpec.parse("2"), 1))


class TestSigmaExpansions:
    """The two closed-form expansions used to prove the diagonal step."""

    def test_term_for_term(self):
        for text in ["2", "3", "3/2", "7/5", "13/10", "6/5"]:
            b = BaseSpec.parse(text).exact_value()
            for n in range(2, 13):
                top = n * (n - 1) // 2 - 1
                assert sigma_finite(SigmaQuery(n - 1, 1, n, b)) == b ** top
                lo = (n - 1) * (n - 2) // 2 - 1
                expansion = b ** top + sum(b ** i for i in range(lo, top - 1))
                assert sigma_finite(SigmaQuery(n - 2, 1, n, b)) == expansion, (text, n)


class TestConjectureScan:
    def test_range_validation(self):
        with pytest.raises(DomainError):
            conjecture_scan(BaseSpec.parse("2"), 1, 5)
        with pytest.raises(DomainError):
            conjecture_scan(BaseSpec.parse("2"), 6, 5)

    def test_scan_records_and_json(self):
        scan = conjecture_scan(BaseSpec.parse("2"), 2, 8)
        assert [r.n for r in scan.records] == list(range(2, 9))
        payload = json.loads(scan.to_json())
        assert len(payload) == 7
        assert set(payload[0]) == {"n", "n_zero", "max", "argmax", "diagonal"}
        assert all(r["diagonal"] for r in payload)

    def test_non_diagonal_collection_consistent(self):
        scan = conjecture_scan(BaseSpec.parse("13/10"), 2, 12)
        from_records = [r.n for r in scan.records if not r.diagonal]
        assert scan.non_diagonal == tuple(from_records)

    @given(st.sampled_from(["2", "3", "6/5", "13/10"]),
           st.integers(min_value=2, max_value=9))
    @settings(max_examples=15, deadline=None)
    def test_scan_matches_max_entry(self, text, n):
        base = BaseSpec.parse(text)
        scan = conjecture_scan(base, n, n)
        record = scan.records[0]
        report = max_entry(GeometricVandermonde(base, n))
        assert record.argmax == report.argmax
        assert record.diagonal == report.diagonal_argmax
