"""Command-line front end.

Subcommands expose every library operation:

* ``inverse``     full signed inverse matrix (exact fractions or enclosures)
* ``sigma``       one power-sum value sigma_{i,j,n}(x)
* ``max``         M_b(n) with argmax localization
* ``limit``       entry limits l_{i,j}, their max, and the regime
* ``table``       recompute the reference table of limit values and certify
                  every printed digit against the expected strings
* ``verify``      run the full invariant/verification suite up to an n bound
* ``conjecture``  diagonal-argmax scan (report only, never a failure)

Exit status: 0 all checks pass, 1 a verification check failed, 2 usage or
domain error.  Output is deterministic: identical flags give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import extremal, limits, symfunc, vandinv
from .errors import DomainError, ParseError, VangeoError
from .scalar import (DEFAULT_PRECISION_BITS, BaseSpec, Numeric, RigorousReal,
                     fraction_to_decimal, fraction_to_sci, resolve_precision_ceiling)

_FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class OutputFormat:
    kind: str = "text"
    digits: int = 20

    def __post_init__(self):
        if self.kind not in _FORMATS:
            raise ParseError(f"format must be one of {_FORMATS}, got {self.kind!r}")
        if not 1 <= self.digits <= 1000:
            raise DomainError(f"digits must be in [1, 1000], got {self.digits}")


def _parse_tol(text: str) -> Fraction:
    try:
        tol = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse tolerance {text!r}") from None
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {text}")
    return tol


def _parse_range(text: str) -> Tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ParseError(f"range must look like lo:hi, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"range bounds must be integers, got {text!r}") from None
    return lo, hi


def _decimal(value: Numeric, digits: int) -> str:
    if isinstance(value, RigorousReal):
        return value.decimal(digits)
    return fraction_to_decimal(Fraction(value), digits)


def _pairs(argmax) -> str:
    return " ".join(f"({i},{j})" for i, j in argmax)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_inverse(base: BaseSpec, n: int, fmt: OutputFormat,
                precision_ceiling: Optional[int] = None) -> Tuple[int, str]:
    gv = vandinv.GeometricVandermonde(base, n)
    precision = max(DEFAULT_PRECISION_BITS, 4 * fmt.digits)
    inv = vandinv.inverse_matrix(gv, precision)
    if fmt.kind == "json":
        return 0, inv.to_json(fmt.digits)
    if fmt.kind == "csv":
        return 0, inv.to_csv(fmt.digits)
    cells = inv.entry_strings(fmt.digits)
    widths = [max(len(cells[i][j]) for i in range(n)) for j in range(n)]
    lines = ["  ".join(cells[i][j].rjust(widths[j]) for j in range(n)) for i in range(n)]
    if inv.backend == "rigorous":
        residual = vandinv.residual_norm(gv, inv)
        contains = "contains 0" if residual.contains(0) else "EXCLUDES 0"
        lines.append(f"residual: {contains}, upper bound {fraction_to_sci(residual.upper, 3)}")
    return 0, "\n".join(lines)


def cmd_sigma(i: int, j: int, n: int, x_spec: BaseSpec, fmt: OutputFormat) -> Tuple[int, str]:
    x = x_spec.exact_value()
    if x is None:
        x = x_spec.evaluate(max(DEFAULT_PRECISION_BITS, 4 * fmt.digits))
    value = symfunc.sigma_finite(symfunc.SigmaQuery(i, j, n, x))
    rendered = vandinv.format_entry(value, fmt.digits)
    if fmt.kind == "json":
        payload = {"i": i, "j": j, "n": n, "x": x_spec.display(), "value": rendered}
        return 0, json.dumps(payload, separators=(", ", ": "))
    if fmt.kind == "csv":
        return 0, f"{i},{j},{n},{x_spec.display()},{rendered}"
    return 0, rendered


def cmd_max(base: BaseSpec, n: int, fmt: OutputFormat,
            precision_ceiling: Optional[int] = None) -> Tuple[int, str]:
    gv = vandinv.GeometricVandermonde(base, n)
    report = extremal.max_entry(gv, precision_ceiling=precision_ceiling)
    if fmt.kind == "json":
        return 0, report.to_json(fmt.digits)
    if fmt.kind == "csv":
        pairs = ";".join(f"{i}:{j}" for i, j in report.argmax)
        return 0, (f"{base.display()},{n},{report.n_zero},"
                   f"{_decimal(report.max_value, fmt.digits)},{pairs},"
                   f"{str(report.diagonal_argmax).lower()},{str(report.tie).lower()}")
    lines = [f"max = {_decimal(report.max_value, fmt.digits)}",
             f"argmax = {_pairs(report.argmax)}",
             f"n0 = {report.n_zero}",
             f"diagonal = {str(report.diagonal_argmax).lower()}"]
    if report.tie:
        lines.append("tie = true (candidates unresolved at the precision ceiling)")
    return 0, "\n".join(lines)


def cmd_limit(base: BaseSpec, tol: Fraction, fmt: OutputFormat,
              precision_ceiling: Optional[int] = None) -> Tuple[int, str]:
    report = limits.limit_max(base, tol, precision_ceiling)
    if fmt.kind == "json":
        return 0, report.to_json(fmt.digits)
    if fmt.kind == "csv":
        rows = [f"{e.i},{e.j},{e.value.decimal(fmt.digits)},"
                f"{fraction_to_sci(e.value.radius, 3)},{e.sigma_cutoff},{e.product_cutoff}"
                for e in report.entries]
        return 0, "\n".join(rows)
    lines = []
    for e in report.entries:
        lines.append(f"l({e.i},{e.j}) = {e.value.decimal(fmt.digits)} "
                     f"(radius {fraction_to_sci(e.value.radius, 3)}, "
                     f"cutoffs sigma {e.sigma_cutoff}, product {e.product_cutoff})")
    lines.append(f"n0 = {report.n_zero}")
    lines.append(f"max = {report.value.decimal(fmt.digits)}")
    lines.append(f"argmax = {_pairs(report.argmax)}")
    lines.append(f"regime = {report.regime}" + (" (boundary)" if report.boundary else ""))
    if report.tie:
        lines.append("tie = true (equal limits within the refinement budget)")
    return 0, "\n".join(lines)


# Reference limit values to certify: (base text, expected digits).  Each
# computed enclosure must round to the expected string with half-ulp slack.
REFERENCE_TABLE: Tuple[Tuple[str, str], ...] = (
    ("3", "1.785312341998534190367486"),
    ("alpha", "2.4862447382651613433"),
    ("2", "5.194119929182595417"),
    ("tau", "26.788216012030303413"),
    ("1.5", "67.3672156"),
    ("1.4", "282.398"),
    ("1.3", "3069.44"),
    ("1.2", "422349.8"),
)


def _certify_row(base_text: str, expected: str,
                 precision_ceiling: Optional[int]) -> Tuple[str, str, str]:
    """Returns (computed string, status, radius string) for one table row."""
    base = BaseSpec.parse(base_text)
    frac_digits = len(expected.split(".")[1]) if "." in expected else 0
    sig_digits = len(expected.replace(".", "").lstrip("-0")) or 1
    half_ulp = Fraction(1, 2) / Fraction(10) ** frac_digits
    tol = half_ulp / 20
    report = limits.limit_max(base, tol, precision_ceiling)
    value = report.value
    computed = value.decimal(sig_digits)
    gap = abs(value.midpoint - Fraction(expected))
    if gap + value.radius <= half_ulp:
        status = "match"
    elif gap - value.radius > half_ulp:
        status = "mismatch"
    else:
        status = "uncertified"
    return computed, status, fraction_to_sci(value.radius, 3)


def cmd_table(fmt: OutputFormat, precision_ceiling: Optional[int] = None) -> Tuple[int, str]:
    rows = []
    for base_text, expected in REFERENCE_TABLE:
        computed, status, radius = _certify_row(base_text, expected, precision_ceiling)
        rows.append({"base": base_text, "computed": computed, "expected": expected,
                     "status": status, "radius": radius})
    failed = any(r["status"] != "match" for r in rows)
    if fmt.kind == "json":
        return (1 if failed else 0), json.dumps(rows, separators=(", ", ": "))
    if fmt.kind == "csv":
        lines = [f"{r['base']},{r['computed']},{r['expected']},{r['status']},{r['radius']}"
                 for r in rows]
        return (1 if failed else 0), "\n".join(lines)
    width_b = max(len(r["base"]) for r in rows)
    width_c = max(len(r["computed"]) for r in rows)
    width_e = max(len(r["expected"]) for r in rows)
    lines = [f"{'base'.ljust(width_b)}  {'computed'.ljust(width_c)}  "
             f"{'expected'.ljust(width_e)}  status"]
    for r in rows:
        lines.append(f"{r['base'].ljust(width_b)}  {r['computed'].ljust(width_c)}  "
                     f"{r['expected'].ljust(width_e)}  {r['status']}")
    return (1 if failed else 0), "\n".join(lines)


def _verify_exact(base: BaseSpec, n_max: int, ceiling: Optional[int]):
    """Invariant suite for exact rational bases.  Yields (name, ok, witness)."""
    b = base.exact_value()
    matrices = {n: vandinv.inverse_matrix(vandinv.GeometricVandermonde(base, n))
                for n in range(1, n_max + 1)}

    def check_identity():
        for n in range(1, n_max + 1):
            gv = vandinv.GeometricVandermonde(base, n)
            if vandinv.residual_norm(gv, matrices[n]) != 0:
                return False, f"V*C != I at n={n}"
        return True, ""

    def check_oracle():
        for n in range(1, min(n_max, 12) + 1):
            gv = vandinv.GeometricVandermonde(base, n)
            if vandinv.gaussian_inverse(gv).entries != matrices[n].entries:
                return False, f"closed form != elimination oracle at n={n}"
        return True, ""

    def check_symmetry():
        for n in range(1, n_max + 1):
            e = matrices[n].entries
            for i in range(n):
                for j in range(i + 1, n):
                    if e[i][j] != e[j][i]:
                        return False, f"entry ({i},{j}) != ({j},{i}) at n={n}"
        return True, ""

    def check_signs():
        for n in range(1, n_max + 1):
            e = matrices[n].entries
            for i in range(n):
                for j in range(n):
                    expected = -1 if (i + j) % 2 else 1
                    if (e[i][j] > 0) - (e[i][j] < 0) != expected:
                        return False, f"sign of entry ({i},{j}) at n={n}"
        return True, ""

    def check_magnitude():
        for n in range(1, min(n_max, 12) + 1):
            e = matrices[n].entries
            for j in range(n):
                pi_j = vandinv.pi_product(j, n, b)
                for i in range(n):
                    sig = symfunc.sigma_finite(symfunc.SigmaQuery(n - 1 - i, j, n, b))
                    if abs(e[i][j]) * pi_j != sig:
                        return False, f"|c|*pi != sigma at n={n}, ({i},{j})"
        return True, ""

    def check_pi_ratio():
        for n in range(2, n_max + 1):
            for j in range(n - 1):
                lhs = vandinv.pi_product(j + 1, n, b) / vandinv.pi_product(j, n, b)
                rhs = (b ** (n + j - 1) - b ** (n - 2)) / (b ** (n - 1) - b ** j)
                if lhs != rhs:
                    return False, f"pi ratio identity at n={n}, j={j}"
        return True, ""

    def check_pi_monotone():
        n0 = extremal.n_zero(b)
        for n in range(2, n_max + 1):
            for j in range(n0, n - 1):
                if vandinv.pi_product(j, n, b) > vandinv.pi_product(j + 1, n, b):
                    return False, f"pi monotonicity at n={n}, j={j}"
        return True, ""

    def check_sigma_monotone():
        for n in range(2, min(n_max, 10) + 1):
            for x, increasing in ((b, False), (1 / b, True)):
                for i in range(n):
                    values = [symfunc.sigma_finite(symfunc.SigmaQuery(i, j, n, x))
                              for j in range(n)]
                    for j in range(n - 1):
                        ok = values[j] <= values[j + 1] if increasing \
                            else values[j] >= values[j + 1]
                        if not ok:
                            return False, f"sigma j-monotonicity at n={n}, i={i}, j={j}"
        return True, ""

    def check_complement():
        for n in range(1, min(n_max, 10) + 1):
            for i in range(n):
                for j in range(n):
                    lhs, rhs = symfunc.sigma_complement_pair(i, j, n, b)
                    if lhs != rhs:
                        return False, f"complement identity at n={n}, ({i},{j})"
        return True, ""

    def check_box():
        for n in range(2, n_max + 1):
            gv = vandinv.GeometricVandermonde(base, n)
            report = extremal.verify_argmax_box(gv, precision_ceiling=ceiling,
                                                inv=matrices[n])
            if not report.passed:
                return False, f"argmax box at n={n}: witnesses {report.witnesses}"
        return True, ""

    def check_sigma_step():
        for n in range(2, n_max + 1):
            s_top = symfunc.sigma_finite(symfunc.SigmaQuery(n - 1, 1, n, b))
            s_next = symfunc.sigma_finite(symfunc.SigmaQuery(n - 2, 1, n, b))
            if s_top > s_next:
                return False, f"sigma step at n={n}"
        return True, ""

    yield "inversion identity V*C = I", *check_identity()
    yield "elimination-oracle equality (n <= 12)", *check_oracle()
    yield "symmetry", *check_symmetry()
    yield "checkerboard signs", *check_signs()
    yield "magnitude formula |c|*pi = sigma (n <= 12)", *check_magnitude()
    yield "pi ratio identity", *check_pi_ratio()
    yield "pi monotonicity above n0", *check_pi_monotone()
    yield "sigma j-monotonicity (n <= 10)", *check_sigma_monotone()
    yield "complement identity (n <= 10)", *check_complement()
    yield "argmax box localization", *check_box()
    yield "sigma top step (dropping the largest exponent)", *check_sigma_step()
    if b * b >= b + 1:
        def check_diag():
            for n in range(2, n_max + 1):
                gv = vandinv.GeometricVandermonde(base, n)
                report = extremal.verify_leading_diagonal_max(
                    gv, precision_ceiling=ceiling, inv=matrices[n])
                if not report.passed:
                    return False, f"leading-diagonal max at n={n}"
            return True, ""
        yield "leading-diagonal max (base >= golden ratio)", *check_diag()
    else:
        yield "leading-diagonal max", None, "skipped: base below the golden ratio"


def _verify_rigorous(base: BaseSpec, n_max: int, ceiling: Optional[int]):
    """Certified-enclosure suite for algebraic constant bases."""
    precision = DEFAULT_PRECISION_BITS
    matrices = {n: vandinv.inverse_matrix(vandinv.GeometricVandermonde(base, n), precision)
                for n in range(1, n_max + 1)}

    def check_residual():
        for n in range(1, n_max + 1):
            gv = vandinv.GeometricVandermonde(base, n)
            residual = vandinv.residual_norm(gv, matrices[n])
            if not residual.contains(0):
                return False, f"residual enclosure excludes 0 at n={n}"
        return True, ""

    def check_signs():
        for n in range(1, n_max + 1):
            e = matrices[n].entries
            for i in range(n):
                for j in range(n):
                    expected = -1 if (i + j) % 2 else 1
                    if e[i][j].sign() != expected:
                        return False, f"sign of entry ({i},{j}) at n={n}"
        return True, ""

    def check_box():
        for n in range(2, n_max + 1):
            gv = vandinv.GeometricVandermonde(base, n)
            report = extremal.verify_argmax_box(gv, precision, ceiling, inv=matrices[n])
            if not report.passed:
                return False, f"argmax box at n={n}: witnesses {report.witnesses}," \
                              f" undecided {report.undecided}"
        return True, ""

    def check_diag():
        for n in range(2, n_max + 1):
            gv = vandinv.GeometricVandermonde(base, n)
            report = extremal.verify_leading_diagonal_max(gv, precision, ceiling,
                                                          inv=matrices[n])
            if not report.passed:
                return False, f"leading-diagonal max at n={n}"
        return True, ""

    def check_complement():
        b = base.evaluate(precision)
        for n in range(1, min(n_max, 10) + 1):
            for i in range(n):
                for j in range(n):
                    lhs, rhs = symfunc.sigma_complement_pair(i, j, n, b)
                    if not lhs.overlaps(rhs):
                        return False, f"complement identity at n={n}, ({i},{j})"
        return True, ""

    def check_pi_monotone():
        b = base.evaluate(precision)
        n0 = extremal.n_zero(base, ceiling)
        for n in range(2, n_max + 1):
            for j in range(n0, n - 1):
                lhs = vandinv.pi_product(j, n, b)
                rhs = vandinv.pi_product(j + 1, n, b)
                if not lhs.certainly_le(rhs):
                    return False, f"pi monotonicity at n={n}, j={j}"
        return True, ""

    yield "residual enclosure contains 0", *check_residual()
    yield "checkerboard signs (certified)", *check_signs()
    yield "argmax box localization (certified)", *check_box()
    yield "leading-diagonal max (certified)", *check_diag()
    yield "complement identity (enclosure overlap, n <= 10)", *check_complement()
    yield "pi monotonicity above n0 (certified)", *check_pi_monotone()


def cmd_verify(base: BaseSpec, n_max: int,
               precision_ceiling: Optional[int] = None) -> Tuple[int, str]:
    if n_max < 2:
        raise DomainError(f"need n_max >= 2, got {n_max}")
    if base.is_exact:
        suite = _verify_exact(base, n_max, precision_ceiling)
    else:
        suite = _verify_rigorous(base, n_max, precision_ceiling)
    lines = [f"verification suite for base {base.display()}, n up to {n_max}"]
    failures = 0
    for name, ok, witness in suite:
        if ok is None:
            lines.append(f"  [skip] {name}: {witness}")
        elif ok:
            lines.append(f"  [pass] {name}")
        else:
            failures += 1
            lines.append(f"  [FAIL] {name}: {witness}")
    scan = extremal.conjecture_scan(base, 2, n_max,
                                    precision_ceiling=precision_ceiling)
    lines.append(f"  [info] diagonal-argmax scan: {len(scan.non_diagonal)} of "
                 f"{len(scan.records)} sizes non-diagonal (excluded from exit status)")
    lines.append("result: " + ("all checks passed" if failures == 0
                               else f"{failures} check(s) FAILED"))
    return (1 if failures else 0), "\n".join(lines)


def cmd_conjecture(base: BaseSpec, n_min: int, n_max: int, fmt: OutputFormat,
                   precision_ceiling: Optional[int] = None) -> Tuple[int, str]:
    scan = extremal.conjecture_scan(base, n_min, n_max,
                                    precision_ceiling=precision_ceiling)
    if fmt.kind == "json":
        return 0, scan.to_json(fmt.digits)
    if fmt.kind == "csv":
        rows = [f"{r.n},{r.n_zero},{_decimal(r.max_value, fmt.digits)},"
                + ";".join(f"{i}:{j}" for i, j in r.argmax)
                + f",{str(r.diagonal).lower()}" for r in scan.records]
        return 0, "\n".join(rows)
    return 0, scan.to_text(min(fmt.digits, 12))


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vangeo",
        description="Exact and rigorous inverses of geometric Vandermonde "
                    "matrices, their extremal entries, and entry limits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, base=True, n=False, tol=None, rng=False, nmax=False, fmt=True):
        if base:
            p.add_argument("--base", required=True,
                           help="base b > 1: p/q, a finite decimal, tau, or alpha")
        if n:
            p.add_argument("--n", type=int, required=True, help="matrix dimension")
        if tol is not None:
            p.add_argument("--tol", default=tol,
                           help=f"target enclosure radius (default {tol})")
        if rng:
            p.add_argument("--range", required=True, metavar="LO:HI",
                           help="dimension range lo:hi, inclusive")
        if nmax:
            p.add_argument("--n-max", type=int, required=True,
                           help="largest dimension to verify")
        if fmt:
            p.add_argument("--format", choices=_FORMATS, default="text")
            p.add_argument("--digits", type=int, default=20,
                           help="significant decimal digits to print (default 20)")
        p.add_argument("--precision-ceiling", type=int, default=None,
                       help="escalation ceiling in bits (default: "
                            "VANGEO_PRECISION_CEILING or 4096)")

    p = sub.add_parser("inverse", help="full signed inverse matrix")
    common(p, n=True)
    p = sub.add_parser("sigma", help="one power sum sigma_{i,j,n}(x)")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    common(p, base=False, n=True)
    p.add_argument("--x", required=True,
                   help="evaluation point > 0: p/q, a finite decimal, tau, or alpha")
    p = sub.add_parser("max", help="maximal entry M_b(n) and its argmax")
    common(p, n=True)
    p = sub.add_parser("limit", help="entry limits, their max, and the regime")
    common(p, tol="1e-20")
    p = sub.add_parser("table", help="recompute and certify the reference limit table")
    common(p, base=False)
    p = sub.add_parser("verify", help="run the invariant suite for one base")
    common(p, nmax=True, fmt=False)
    p = sub.add_parser("conjecture", help="diagonal-argmax scan over a range of n")
    common(p, rng=True)
    return parser


def run(argv: Optional[List[str]] = None) -> Tuple[int, str]:
    args = _build_parser().parse_args(argv)
    ceiling = args.precision_ceiling
    if ceiling is not None:
        resolve_precision_ceiling(ceiling)   # validate eagerly
    if args.command == "verify":
        return cmd_verify(BaseSpec.parse(args.base), args.n_max, ceiling)
    fmt = OutputFormat(kind=args.format, digits=args.digits)
    if args.command == "inverse":
        return cmd_inverse(BaseSpec.parse(args.base), args.n, fmt, ceiling)
    if args.command == "sigma":
        return cmd_sigma(args.i, args.j, args.n, BaseSpec.parse(args.x), fmt)
    if args.command == "max":
        return cmd_max(BaseSpec.parse(args.base), args.n, fmt, ceiling)
    if args.command == "limit":
        return cmd_limit(BaseSpec.parse(args.base), _parse_tol(args.tol), fmt, ceiling)
    if args.command == "table":
        return cmd_table(fmt, ceiling)
    if args.command == "conjecture":
        lo, hi = _parse_range(args.range)
        return cmd_conjecture(BaseSpec.parse(args.base), lo, hi, fmt, ceiling)
    raise ParseError(f"unknown command {args.command!r}")       # unreachable


def main(argv: Optional[List[str]] = None) -> int:
    try:
        code, output = run(argv)
    except VangeoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
