"""Inverse-matrix closed form: identities, oracle equality, serialization."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vangeo.errors import DomainError, UnsupportedBackendError
from vangeo.scalar import BaseSpec
from vangeo.symfunc import SigmaQuery, sigma_finite
from vangeo.vandinv import (GeometricVandermonde, format_entry,
                            gaussian_inverse, inverse_entry, inverse_matrix,
                            pi_product, residual_norm, vandermonde_matrix)

GRID = [BaseSpec.parse(t) for t in ["2", "3", "3/2", "7/5", "13/10", "6/5"]]


class TestConstruction:
    def test_n_must_be_positive(self):
        with pytest.raises(DomainError):
            GeometricVandermonde(BaseSpec.parse("2"), 0)

    def test_base_must_exceed_one(self):
        with pytest.raises(DomainError):
            GeometricVandermonde(BaseSpec.parse("9/10"), 3)
        with pytest.raises(DomainError):
            GeometricVandermonde(BaseSpec.parse("1"), 3)

    def test_vandermonde_rows_are_geometric(self):
        v = vandermonde_matrix(GeometricVandermonde(BaseSpec.parse("3"), 4))
        assert list(v[2]) == [1, 9, 81, 729]     # row i holds (b^i)^k


class TestPiProduct:
    @pytest.mark.parametrize("j,n,b,expected", [
        (0, 2, Fraction(2), 1),
        (1, 3, Fraction(2), 2),
        (2, 4, Fraction(3, 2), Fraction(135, 128)),
    ])
    def test_frozen(self, j, n, b, expected):
        assert pi_product(j, n, b) == expected

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            pi_product(3, 3, Fraction(2))

    def test_direct_product_oracle(self):
        for spec in GRID:
            b = spec.exact_value()
            for n in range(1, 9):
                pows = [b ** k for k in range(n)]
                for j in range(n):
                    expected = Fraction(1)
                    for h in range(n):
                        if h != j:
                            expected *= abs(pows[j] - pows[h])
                    assert pi_product(j, n, b) == expected

    def test_ratio_identity(self):
        for spec in GRID:
            b = spec.exact_value()
            for n in range(2, 13):
                for j in range(n - 1):
                    lhs = pi_product(j + 1, n, b) / pi_product(j, n, b)
                    rhs = (b ** (n + j - 1) - b ** (n - 2)) / (b ** (n - 1) - b ** j)
                    assert lhs == rhs, (b, n, j)


class TestFrozenInverses:
    def test_two_by_two_base_two(self):
        inv = inverse_matrix(GeometricVandermonde(BaseSpec.parse("2"), 2))
        assert inv.entries == ((2, -1), (-1, 1))

    def test_one_by_one(self):
        inv = inverse_matrix(GeometricVandermonde(BaseSpec.parse("3/2"), 1))
        assert inv.entries == ((1,),)

    def test_single_entries(self):
        gv = GeometricVandermonde(BaseSpec.parse("2"), 2)
        assert inverse_entry(0, 0, gv) == 2
        assert inverse_entry(0, 1, gv) == -1
        with pytest.raises(DomainError):
            inverse_entry(2, 0, gv)

    def test_entry_matches_oracle_case(self):
        gv = GeometricVandermonde(BaseSpec.parse("2"), 3)
        oracle = gaussian_inverse(gv)
        assert inverse_entry(1, 1, gv) == oracle.entry(1, 1)


class TestExactInvariants:
    def test_inversion_identity(self, cached_inverse):
        for spec in GRID:
            for n in range(1, 17):
                gv = GeometricVandermonde(spec, n)
                assert residual_norm(gv, cached_inverse(spec, n)) == 0, (spec, n)

    def test_oracle_equivalence(self, cached_inverse):
        for spec in GRID:
            for n in range(1, 13):
                gv = GeometricVandermonde(spec, n)
                oracle = gaussian_inverse(gv)
                assert oracle.entries == cached_inverse(spec, n).entries, (spec, n)
                assert oracle.provenance == "gaussian_oracle"

    def test_symmetry(self, cached_inverse):
        for spec in GRID:
            for n in range(1, 17):
                e = cached_inverse(spec, n).entries
                assert all(e[i][j] == e[j][i]
                           for i in range(n) for j in range(n)), (spec, n)

    def test_checkerboard_signs(self, cached_inverse):
        for spec in GRID:
            for n in range(1, 13):
                e = cached_inverse(spec, n).entries
                for i in range(n):
                    for j in range(n):
                        assert (e[i][j] > 0) == ((i + j) % 2 == 0), (spec, n, i, j)

    def test_magnitude_formula(self, cached_inverse):
        for spec in GRID[:3]:
            b = spec.exact_value()
            for n in range(1, 11):
                e = cached_inverse(spec, n).entries
                for j in range(n):
                    pi_j = pi_product(j, n, b)
                    for i in range(n):
                        sigma = sigma_finite(SigmaQuery(n - 1 - i, j, n, b))
                        assert abs(e[i][j]) * pi_j == sigma, (spec, n, i, j)

    def test_pi_monotonicity_above_threshold(self):
        from vangeo.extremal import n_zero
        for spec in GRID:
            b = spec.exact_value()
            n0 = n_zero(b)
            for n in range(2, 21):
                for j in range(n0, n - 1):
                    assert pi_product(j, n, b) <= pi_product(j + 1, n, b), (spec, n, j)

    @given(st.integers(min_value=1, max_value=9),
           st.fractions(min_value=Fraction(11, 10), max_value=4, max_denominator=30))
    @settings(max_examples=40, deadline=None)
    def test_identity_random_bases(self, n, b):
        spec = BaseSpec.rational(b.numerator, b.denominator)
        gv = GeometricVandermonde(spec, n)
        assert residual_norm(gv, inverse_matrix(gv)) == 0


class TestRigorousBackend:
    def test_residual_contains_zero_tau(self):
        gv = GeometricVandermonde(BaseSpec.parse("tau"), 6)
        inv = inverse_matrix(gv, 128)
        residual = residual_norm(gv, inv)
        assert residual.contains(0)
        assert residual.upper < Fraction(1, 10 ** 20)

    def test_entries_enclose_exact_computation(self, cached_inverse):
        # run the rigorous path on a rational base and compare with exact
        spec = BaseSpec.parse("7/5")
        exact = cached_inverse(spec, 8).entries
        gv = GeometricVandermonde(spec, 8)
        rig = inverse_matrix(gv, 192)
        from vangeo.vandinv import _inverse_entries_rigorous
        entries = _inverse_entries_rigorous(gv, 192)
        for i in range(8):
            for j in range(8):
                assert entries[i][j].contains(exact[i][j]), (i, j)
        assert rig.backend == "exact"            # rational bases stay exact

    def test_symmetric_enclosures_overlap(self):
        inv = inverse_matrix(GeometricVandermonde(BaseSpec.parse("alpha"), 7), 128)
        e = inv.entries
        for i in range(7):
            for j in range(7):
                assert e[i][j].overlaps(e[j][i])

    def test_signs_certified(self):
        inv = inverse_matrix(GeometricVandermonde(BaseSpec.parse("tau"), 9), 256)
        for i in range(9):
            for j in range(9):
                assert inv.entries[i][j].sign() == (-1) ** ((i + j) % 2)

    def test_gaussian_oracle_rejects_irrational(self):
        with pytest.raises(UnsupportedBackendError):
            gaussian_inverse(GeometricVandermonde(BaseSpec.parse("tau"), 3))


class TestSerialization:
    def test_csv_base_two(self, cached_inverse):
        assert cached_inverse(BaseSpec.parse("2"), 2).to_csv() == "2,-1\n-1,1"

    def test_json_schema(self, cached_inverse):
        payload = json.loads(cached_inverse(BaseSpec.parse("3/2"), 3).to_json())
        assert set(payload) == {"n", "base", "backend", "entries"}
        assert payload["n"] == 3
        assert payload["base"] == "3/2"
        assert payload["backend"] == "exact"
        assert len(payload["entries"]) == 9
        assert payload["entries"][0] == "27/5"

    def test_format_entry(self):
        assert format_entry(Fraction(-3, 4)) == "-3/4"
        assert format_entry(Fraction(2)) == "2"
        from vangeo.scalar import RigorousReal
        ball = RigorousReal.exact(Fraction(1, 3), 128)
        text = format_entry(ball, 10)
        assert "±" in text and text.startswith("0.3333333333")
