"""Extremal structure of the inverse entries: the threshold index n0, the
maximal entry M_b(n) with full argmax localization, verifiers for the two
proven localization statements, and an empirical scan of the open
diagonal-argmax question.

n0 is the least positive integer m with b^m >= 1 + 1/b.  The argmax of
|c_{i,j,n}| always lies in the box [0, n0]^2; for b at or above the golden
ratio the maximum is attained at (0,0) or (1,1).  Both statements are checked
here on concrete instances, exactly for rational bases and by certified
enclosure comparisons (with precision escalation) otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import DomainError, UndecidableComparisonError
from .scalar import (DEFAULT_PRECISION_BITS, BaseSpec, Numeric, RigorousReal,
                     certified_poly_sign, fraction_to_decimal, poly_remainder,
                     resolve_precision_ceiling)
from .symfunc import SigmaQuery, sigma_finite
from .vandinv import GeometricVandermonde, InverseMatrix, inverse_matrix

IndexPair = Tuple[int, int]


def _decimal(value: Numeric, digits: int) -> str:
    if isinstance(value, RigorousReal):
        return value.decimal(digits)
    return fraction_to_decimal(Fraction(value), digits)


# ---------------------------------------------------------------------------
# n0
# ---------------------------------------------------------------------------


def n_zero(b: Union[int, Fraction, BaseSpec, RigorousReal],
           precision_ceiling: Optional[int] = None) -> int:
    """Least positive integer m with b^m >= 1 + 1/b.

    Rational bases decide by exact comparison.  Algebraic constants reduce
    x^{m+1} - x - 1 modulo the minimal polynomial: a zero remainder means the
    threshold is hit with equality, otherwise the remainder's sign at the
    base (a provably nonzero value) is certified by enclosure evaluation.
    Plain enclosures are compared directly and raise if their width cannot
    decide the threshold.
    """
    if isinstance(b, BaseSpec):
        value = b.exact_value()
        if value is not None:
            return n_zero(value)
        return _n_zero_algebraic(b, precision_ceiling)
    if isinstance(b, RigorousReal):
        if not b.certainly_gt(RigorousReal.exact(1, b.precision_bits)):
            raise DomainError("base must be certifiably > 1")
        threshold = 1 + 1 / b
        power = b
        m = 1
        while True:
            if power.certainly_ge(threshold):
                return m
            if power.certainly_lt(threshold):
                m += 1
                power = power * b
                continue
            raise UndecidableComparisonError(
                f"enclosure of b^{m} straddles 1 + 1/b; re-evaluate the base at "
                f"higher precision or pass a BaseSpec")
    bf = Fraction(b)
    if bf <= 1:
        raise DomainError(f"base must be > 1, got {bf}")
    threshold = 1 + 1 / bf
    power = bf
    m = 1
    while power < threshold:
        m += 1
        power *= bf
    return m


def _n_zero_algebraic(spec: BaseSpec, precision_ceiling: Optional[int]) -> int:
    ceiling = resolve_precision_ceiling(precision_ceiling)
    minpoly = spec.minimal_polynomial()
    m = 1
    while True:
        # b^m >= 1 + 1/b  <=>  b^(m+1) - b - 1 >= 0   (b > 0)
        shifted = [-1, -1] + [0] * (m - 1) + [1]
        remainder = poly_remainder(shifted, minpoly)
        if not any(remainder):
            return m            # threshold attained with exact equality
        if certified_poly_sign(remainder, spec, ceiling) > 0:
            return m
        m += 1


# ---------------------------------------------------------------------------
# max entry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaxReport:
    """Location and value of M_b(n) = max |c_{i,j,n}|."""

    base: BaseSpec
    n: int
    n_zero: int
    max_value: Numeric
    argmax: Tuple[IndexPair, ...]
    within_n_zero_box: bool
    diagonal_argmax: bool
    tie: bool                      # enclosure tie unresolved at the ceiling
    backend: str
    precision_bits: Optional[int] = None

    def to_json_dict(self, digits: int = 20) -> dict:
        return {
            "base": self.base.display(),
            "n": self.n,
            "n_zero": self.n_zero,
            "max": _decimal(self.max_value, digits),
            "argmax": [list(p) for p in self.argmax],
            "within_n_zero_box": self.within_n_zero_box,
            "diagonal_argmax": self.diagonal_argmax,
            "tie": self.tie,
            "backend": self.backend,
        }

    def to_json(self, digits: int = 20) -> str:
        return json.dumps(self.to_json_dict(digits), separators=(", ", ": "))


def _orbit(pair: IndexPair) -> Tuple[IndexPair, ...]:
    i, j = pair
    return ((i, j),) if i == j else tuple(sorted({(i, j), (j, i)}))


def max_entry(gv: GeometricVandermonde,
              precision_bits: int = DEFAULT_PRECISION_BITS,
              precision_ceiling: Optional[int] = None,
              inv: Optional[InverseMatrix] = None) -> MaxReport:
    """Scan all n^2 entries for the maximum absolute value.

    Exact backend compares rationals directly, so ties (including the
    symmetric mirror pairs) are exact.  Rigorous backend compares enclosures
    and doubles the working precision until a single symmetry orbit of
    candidates remains or the ceiling is reached; in the latter case the full
    candidate set is reported with the tie flag set.
    """
    n0 = n_zero(gv.base, precision_ceiling)
    if gv.is_exact:
        if inv is None or inv.backend != "exact":
            inv = inverse_matrix(gv)
        best = max(abs(inv.entries[i][j]) for i in range(gv.n) for j in range(gv.n))
        argmax = tuple((i, j) for i in range(gv.n) for j in range(gv.n)
                       if abs(inv.entries[i][j]) == best)
        return _assemble_report(gv, n0, best, argmax, tie=False,
                                backend="exact", precision_bits=None)
    ceiling = resolve_precision_ceiling(precision_ceiling)
    precision = precision_bits
    if inv is None or inv.backend != "rigorous" or inv.precision_bits != precision:
        inv = inverse_matrix(gv, precision)
    while True:
        magnitudes = [[abs(inv.entries[i][j]) for j in range(gv.n)] for i in range(gv.n)]
        floor = max(magnitudes[i][j].lower for i in range(gv.n) for j in range(gv.n))
        candidates = tuple((i, j) for i in range(gv.n) for j in range(gv.n)
                           if magnitudes[i][j].upper >= floor)
        orbits = {_orbit(p) for p in candidates}
        if len(orbits) == 1:
            value = RigorousReal.hull([magnitudes[i][j] for i, j in candidates])
            return _assemble_report(gv, n0, value, candidates, tie=False,
                                    backend="rigorous", precision_bits=precision)
        if 2 * precision > ceiling:
            value = RigorousReal.hull([magnitudes[i][j] for i, j in candidates])
            return _assemble_report(gv, n0, value, candidates, tie=True,
                                    backend="rigorous", precision_bits=precision)
        precision *= 2
        inv = inverse_matrix(gv, precision)


def _assemble_report(gv: GeometricVandermonde, n0: int, value: Numeric,
                     argmax: Tuple[IndexPair, ...], tie: bool, backend: str,
                     precision_bits: Optional[int]) -> MaxReport:
    argmax = tuple(sorted(argmax))
    return MaxReport(
        base=gv.base, n=gv.n, n_zero=n0, max_value=value, argmax=argmax,
        within_n_zero_box=all(i <= n0 and j <= n0 for i, j in argmax),
        diagonal_argmax=any(i == j for i, j in argmax),
        tie=tie, backend=backend, precision_bits=precision_bits)


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoxCheckReport:
    """Outcome of the argmax-box check: every entry with both indices >= n0
    is dominated by the (n0, n0) entry, and the argmax lies in [0, n0]^2."""

    base: BaseSpec
    n: int
    n_zero: int
    passed: bool
    argmax_within_box: bool
    witnesses: Tuple[IndexPair, ...]       # provable violations
    undecided: Tuple[IndexPair, ...]       # comparisons ambiguous at ceiling
    max_report: MaxReport


def verify_argmax_box(gv: GeometricVandermonde,
                      precision_bits: int = DEFAULT_PRECISION_BITS,
                      precision_ceiling: Optional[int] = None,
                      inv: Optional[InverseMatrix] = None) -> BoxCheckReport:
    """Check that the dominant entry cannot escape the [0, n0]^2 box."""
    report = max_entry(gv, precision_bits, precision_ceiling, inv=inv)
    n, n0 = gv.n, report.n_zero
    witnesses: List[IndexPair] = []
    undecided: List[IndexPair] = []
    if n0 < n:
        if gv.is_exact:
            if inv is None or inv.backend != "exact":
                inv = inverse_matrix(gv)
            reference = abs(inv.entries[n0][n0])
            for i in range(n0, n):
                for j in range(n0, n):
                    if (i, j) != (n0, n0) and abs(inv.entries[i][j]) > reference:
                        witnesses.append((i, j))
        else:
            witnesses, undecided = _box_check_rigorous(
                gv, n0, precision_bits, resolve_precision_ceiling(precision_ceiling), inv)
    passed = not witnesses and not undecided and report.within_n_zero_box
    return BoxCheckReport(base=gv.base, n=n, n_zero=n0, passed=passed,
                          argmax_within_box=report.within_n_zero_box,
                          witnesses=tuple(witnesses), undecided=tuple(undecided),
                          max_report=report)


def _box_check_rigorous(gv: GeometricVandermonde, n0: int, precision: int,
                        ceiling: int, inv: Optional[InverseMatrix]):
    n = gv.n
    if inv is None or inv.backend != "rigorous" or inv.precision_bits != precision:
        inv = inverse_matrix(gv, precision)
    pending = [(i, j) for i in range(n0, n) for j in range(n0, n) if (i, j) != (n0, n0)]
    witnesses: List[IndexPair] = []
    while True:
        reference = abs(inv.entries[n0][n0])
        unresolved: List[IndexPair] = []
        for i, j in pending:
            magnitude = abs(inv.entries[i][j])
            if magnitude.certainly_le(reference):
                continue
            if magnitude.certainly_gt(reference):
                witnesses.append((i, j))
                continue
            unresolved.append((i, j))
        if not unresolved or 2 * precision > ceiling:
            return witnesses, unresolved
        precision *= 2
        inv = inverse_matrix(gv, precision)
        pending = unresolved


@dataclass(frozen=True)
class DiagonalCheckReport:
    """Outcome of the leading-diagonal check (bases at or above the golden
    ratio): the maximum is attained at (0,0) or (1,1), and the supporting
    step sigma_{n-1,1,n} <= sigma_{n-2,1,n} holds."""

    base: BaseSpec
    n: int
    passed: bool
    max_on_leading_diagonal: bool
    sigma_step_holds: bool
    tie: bool
    max_report: MaxReport


def _require_base_at_least_golden(base: BaseSpec, ceiling: int) -> None:
    value = base.exact_value()
    if value is not None:
        if value * value < value + 1:
            raise DomainError(
                f"requires base >= (1+sqrt(5))/2; got {base.display()} "
                f"(b^2 = {value * value} < b + 1 = {value + 1})")
        return
    # algebraic constant: sign of b^2 - b - 1 via minimal-polynomial reduction
    remainder = poly_remainder([-1, -1, 1], base.minimal_polynomial())
    if not any(remainder):
        return                  # equality: the golden ratio itself
    if certified_poly_sign(remainder, base, ceiling) < 0:
        raise DomainError(f"requires base >= (1+sqrt(5))/2; {base.display()} is below")


def verify_leading_diagonal_max(gv: GeometricVandermonde,
                                precision_bits: int = DEFAULT_PRECISION_BITS,
                                precision_ceiling: Optional[int] = None,
                                inv: Optional[InverseMatrix] = None) -> DiagonalCheckReport:
    """Check that M_b(n) is attained at entry (0,0) or (1,1); requires
    b >= (1+sqrt(5))/2 and n >= 2."""
    ceiling = resolve_precision_ceiling(precision_ceiling)
    if gv.n < 2:
        raise DomainError(f"requires n >= 2, got n={gv.n}")
    _require_base_at_least_golden(gv.base, ceiling)
    report = max_entry(gv, precision_bits, precision_ceiling, inv=inv)
    diagonal_ok = any(pair in ((0, 0), (1, 1)) for pair in report.argmax)
    sigma_ok = _sigma_step_holds(gv, precision_bits, ceiling)
    passed = diagonal_ok and sigma_ok
    return DiagonalCheckReport(base=gv.base, n=gv.n, passed=passed,
                               max_on_leading_diagonal=diagonal_ok,
                               sigma_step_holds=sigma_ok, tie=report.tie,
                               max_report=report)


def _sigma_step_holds(gv: GeometricVandermonde, precision: int, ceiling: int) -> bool:
    """sigma_{n-1,1,n}(b) <= sigma_{n-2,1,n}(b): dropping the largest
    admissible exponent from the full product never loses mass."""
    n = gv.n
    value = gv.base.exact_value()
    if value is not None:
        return sigma_finite(SigmaQuery(n - 1, 1, n, value)) \
            <= sigma_finite(SigmaQuery(n - 2, 1, n, value))
    while True:
        b = gv.base.evaluate(precision)
        top = sigma_finite(SigmaQuery(n - 1, 1, n, b))
        next_down = sigma_finite(SigmaQuery(n - 2, 1, n, b))
        if top.certainly_le(next_down):
            return True
        if next_down.certainly_lt(top):
            return False
        if 2 * precision > ceiling:
            raise UndecidableComparisonError(
                f"sigma step comparison for n={n} at base {gv.base.display()} "
                f"is ambiguous at the {ceiling}-bit ceiling")
        precision *= 2


# ---------------------------------------------------------------------------
# conjecture scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRecord:
    n: int
    n_zero: int
    max_value: Numeric
    argmax: Tuple[IndexPair, ...]
    diagonal: bool
    tie: bool


@dataclass(frozen=True)
class ConjectureScan:
    """Per-n record of whether a diagonal entry attains the maximum.

    Empirical output only: the eventual-diagonal-argmax statement is an open
    question, so the scan reports and never asserts.
    """

    base: BaseSpec
    n_min: int
    n_max: int
    records: Tuple[ScanRecord, ...]
    non_diagonal: Tuple[int, ...]

    def to_json_array(self, digits: int = 20) -> list:
        return [{"n": r.n, "n_zero": r.n_zero, "max": _decimal(r.max_value, digits),
                 "argmax": [list(p) for p in r.argmax], "diagonal": r.diagonal}
                for r in self.records]

    def to_json(self, digits: int = 20) -> str:
        return json.dumps(self.to_json_array(digits), separators=(", ", ": "))

    def to_text(self, digits: int = 12) -> str:
        lines = [f"base {self.base.display()}: diagonal-argmax scan, "
                 f"n from {self.n_min} to {self.n_max}"]
        for r in self.records:
            pairs = " ".join(f"({i},{j})" for i, j in r.argmax)
            flag = "diagonal" if r.diagonal else "NON-DIAGONAL"
            tie = " tie" if r.tie else ""
            lines.append(f"  n={r.n:3d}  n0={r.n_zero}  max={_decimal(r.max_value, digits)}"
                         f"  argmax {pairs}  {flag}{tie}")
        lines.append(f"summary: {len(self.non_diagonal)} of {len(self.records)} sizes "
                     f"lack a diagonal argmax"
                     + (f" (n = {', '.join(map(str, self.non_diagonal))})"
                        if self.non_diagonal else ""))
        return "\n".join(lines)


def conjecture_scan(base: BaseSpec, n_min: int, n_max: int,
                    precision_bits: int = DEFAULT_PRECISION_BITS,
                    precision_ceiling: Optional[int] = None) -> ConjectureScan:
    """Record the argmax structure for every n in [n_min, n_max]."""
    if not 2 <= n_min <= n_max:
        raise DomainError(f"need 2 <= n_min <= n_max, got {n_min}..{n_max}")
    records = []
    non_diagonal = []
    for n in range(n_min, n_max + 1):
        report = max_entry(GeometricVandermonde(base, n), precision_bits, precision_ceiling)
        records.append(ScanRecord(n=n, n_zero=report.n_zero, max_value=report.max_value,
                                  argmax=report.argmax, diagonal=report.diagonal_argmax,
                                  tie=report.tie))
        if not report.diagonal_argmax:
            non_diagonal.append(n)
    return ConjectureScan(base=base, n_min=n_min, n_max=n_max,
                          records=tuple(records), non_diagonal=tuple(non_diagonal))
