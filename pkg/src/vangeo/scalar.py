"""Arithmetic substrate: exact rationals and rigorous ball reals.

Two numeric carriers are used throughout the package:

* ``ExactRational`` (an alias of :class:`fractions.Fraction`) for bit-exact
  work with rational bases, and
* :class:`RigorousReal`, a self-validating ball ``midpoint +/- radius`` whose
  midpoint is a dyadic rational held as an integer mantissa and exponent.
  Every operation returns an enclosure guaranteed to contain the true value;
  rounding errors are folded into the radius explicitly.

The module also defines :class:`BaseSpec` (how a base ``b > 1`` is described:
a rational, a finite decimal, or one of the named algebraic constants), exact
bisection root isolation, and small exact polynomial/decimal-string helpers.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (BracketError, DomainError, ParseError,
                     UndecidableComparisonError)

ExactRational = Fraction

# Radius mantissas are trimmed (rounding up) to this many bits; the radius is
# a bound, not a value, so 32 bits of resolution is plenty.
_RAD_BITS = 32

DEFAULT_PRECISION_BITS = 256
DEFAULT_PRECISION_CEILING = 4096
PRECISION_CEILING_ENV = "VANGEO_PRECISION_CEILING"


def resolve_precision_ceiling(explicit: Optional[int] = None) -> int:
    """Precision ceiling in bits: explicit argument, else the
    VANGEO_PRECISION_CEILING environment variable, else 4096."""
    if explicit is not None:
        if explicit < 16:
            raise DomainError(f"precision ceiling must be >= 16 bits, got {explicit}")
        return explicit
    env = os.environ.get(PRECISION_CEILING_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ParseError(f"{PRECISION_CEILING_ENV} must be an integer, got {env!r}") from None
        if value < 16:
            raise DomainError(f"{PRECISION_CEILING_ENV} must be >= 16, got {value}")
        return value
    return DEFAULT_PRECISION_CEILING


# ---------------------------------------------------------------------------
# dyadic helpers (mantissa, exponent) with m * 2**e semantics
# ---------------------------------------------------------------------------


def _bits(m: int) -> int:
    return m.bit_length() if m >= 0 else (-m).bit_length()


def _dy_cmp(m1: int, e1: int, m2: int, e2: int) -> int:
    """Exact three-way comparison of m1*2**e1 and m2*2**e2."""
    if m1 == 0 or m2 == 0 or (m1 > 0) != (m2 > 0):
        d = (m1 > 0) - (m1 < 0)
        d2 = (m2 > 0) - (m2 < 0)
        return (d > d2) - (d < d2)
    if e1 >= e2:
        a, b = m1 << (e1 - e2), m2
    else:
        a, b = m1, m2 << (e2 - e1)
    return (a > b) - (a < b)


def _dy_add(m1: int, e1: int, m2: int, e2: int) -> Tuple[int, int]:
    if m1 == 0:
        return m2, e2
    if m2 == 0:
        return m1, e1
    e = min(e1, e2)
    return (m1 << (e1 - e)) + (m2 << (e2 - e)), e


def _dy_ceil_trim(m: int, e: int, bits: int) -> Tuple[int, int]:
    """Round a nonnegative dyadic up so its mantissa fits in ``bits`` bits."""
    bl = m.bit_length()
    if bl <= bits:
        return m, e
    s = bl - bits
    return -((-m) >> s), e + s


def _frac_to_dyadic(x: Fraction, prec: int, mode: str) -> Tuple[int, int]:
    """Convert a Fraction to a dyadic with a prec-bit mantissa.

    mode 'floor' rounds toward -inf, 'ceil' toward +inf; the result brackets
    x on the requested side.
    """
    n, d = x.numerator, x.denominator
    if n == 0:
        return 0, 0
    # scale so the quotient carries prec significant bits
    shift = prec - (_bits(n) - d.bit_length()) + 1
    if shift < 0:
        shift = 0
    q, r = divmod(n << shift, d)
    if mode == "ceil" and r:
        q += 1
    return q, -shift


# ---------------------------------------------------------------------------
# RigorousReal
# ---------------------------------------------------------------------------


class RigorousReal:
    """A ball enclosure ``midpoint +/- radius`` of a real number.

    The midpoint is the dyadic rational ``_m * 2**_e`` and the radius the
    nonnegative dyadic ``_r * 2**_f``.  ``precision_bits`` caps the midpoint
    mantissa width; every rounding step adds its error to the radius, so the
    true value always lies in ``[lower, upper]``.  Instances are immutable.
    """

    __slots__ = ("_m", "_e", "_r", "_f", "_prec")

    def __init__(self, m: int, e: int, r: int, f: int, prec: int, _normalized: bool = False):
        if r < 0:
            raise DomainError("radius must be nonnegative")
        if prec < 4:
            raise DomainError("precision_bits must be at least 4")
        if not _normalized:
            m, e, r, f = _normalize(m, e, r, f, prec)
        self._m = m
        self._e = e
        self._r = r
        self._f = f
        self._prec = prec

    # -- constructors -------------------------------------------------------

    @staticmethod
    def exact(value: Union[int, Fraction], precision_bits: int = DEFAULT_PRECISION_BITS) -> "RigorousReal":
        """Enclose an exact rational.  Dyadic inputs that fit in
        precision_bits keep radius 0; anything else gets a half-ulp radius."""
        x = Fraction(value)
        d = x.denominator
        if d & (d - 1) == 0:
            # power-of-two denominator: exactly representable
            return RigorousReal(x.numerator, -(d.bit_length() - 1), 0, 0, precision_bits)
        lo = _frac_to_dyadic(x, precision_bits + 4, "floor")
        hi = _frac_to_dyadic(x, precision_bits + 4, "ceil")
        return RigorousReal._from_dyadic_interval(lo, hi, precision_bits)

    @staticmethod
    def from_interval(lo: Union[int, Fraction], hi: Union[int, Fraction],
                      precision_bits: int = DEFAULT_PRECISION_BITS) -> "RigorousReal":
        """Enclose the exact rational interval [lo, hi]."""
        lof, hif = Fraction(lo), Fraction(hi)
        if lof > hif:
            raise DomainError("interval endpoints out of order")
        dlo = _frac_to_dyadic(lof, precision_bits + 4, "floor")
        dhi = _frac_to_dyadic(hif, precision_bits + 4, "ceil")
        return RigorousReal._from_dyadic_interval(dlo, dhi, precision_bits)

    @staticmethod
    def _from_dyadic_interval(lo: Tuple[int, int], hi: Tuple[int, int], prec: int) -> "RigorousReal":
        (ml, el), (mh, eh) = lo, hi
        e = min(el, eh) - 1
        a = ml << (el - e)
        b = mh << (eh - e)
        # midpoint (a+b)/2, radius (b-a)/2, both exact at exponent e
        return RigorousReal(a + b, e - 1, b - a, e - 1, prec)

    # -- accessors ----------------------------------------------------------

    @property
    def midpoint(self) -> Fraction:
        m, e = self._m, self._e
        return Fraction(m) * (1 << e) if e >= 0 else Fraction(m, 1 << -e)

    @property
    def radius(self) -> Fraction:
        r, f = self._r, self._f
        return Fraction(r) * (1 << f) if f >= 0 else Fraction(r, 1 << -f)

    @property
    def precision_bits(self) -> int:
        return self._prec

    @property
    def lower(self) -> Fraction:
        return self.midpoint - self.radius

    @property
    def upper(self) -> Fraction:
        return self.midpoint + self.radius

    @property
    def is_exact(self) -> bool:
        return self._r == 0

    def contains(self, value: Union[int, Fraction, "RigorousReal"]) -> bool:
        if isinstance(value, RigorousReal):
            return self.lower <= value.lower and value.upper <= self.upper
        x = Fraction(value)
        return self.lower <= x <= self.upper

    # -- certified comparisons ---------------------------------------------

    def certainly_lt(self, other: "RigorousReal") -> bool:
        """True only when every point of self is < every point of other."""
        other = _coerce(other, self._prec)
        dm, de = _dy_add(self._m, self._e, self._r, self._f)           # self.upper
        om, oe = _dy_add(other._m, other._e, -other._r, other._f)      # other.lower
        return _dy_cmp(dm, de, om, oe) < 0

    def certainly_le(self, other: "RigorousReal") -> bool:
        other = _coerce(other, self._prec)
        dm, de = _dy_add(self._m, self._e, self._r, self._f)
        om, oe = _dy_add(other._m, other._e, -other._r, other._f)
        return _dy_cmp(dm, de, om, oe) <= 0

    def certainly_gt(self, other: "RigorousReal") -> bool:
        return _coerce(other, self._prec).certainly_lt(self)

    def certainly_ge(self, other: "RigorousReal") -> bool:
        return _coerce(other, self._prec).certainly_le(self)

    def overlaps(self, other: "RigorousReal") -> bool:
        other = _coerce(other, self._prec)
        return not (self.certainly_lt(other) or self.certainly_gt(other))

    def sign(self) -> Optional[int]:
        """Certified sign: -1, 0 (exact zero), +1, or None if ambiguous."""
        if self._r == 0:
            return (self._m > 0) - (self._m < 0)
        if _dy_cmp(self._m, self._e, self._r, self._f) > 0:
            return 1
        if _dy_cmp(-self._m, self._e, self._r, self._f) > 0:
            return -1
        return None

    def intersect(self, other: "RigorousReal") -> "RigorousReal":
        """Intersection of two enclosures of the same true value."""
        other = _coerce(other, self._prec)
        lo = max(self.lower, other.lower)
        hi = min(self.upper, other.upper)
        if lo > hi:
            raise DomainError("enclosures are disjoint; they cannot share a true value")
        return RigorousReal.from_interval(lo, hi, max(self._prec, other._prec))

    @staticmethod
    def hull(values: Sequence["RigorousReal"]) -> "RigorousReal":
        """Smallest ball containing every given enclosure."""
        if not values:
            raise DomainError("hull of an empty collection")
        lo = min(v.lower for v in values)
        hi = max(v.upper for v in values)
        return RigorousReal.from_interval(lo, hi, max(v.precision_bits for v in values))

    def with_precision(self, precision_bits: int) -> "RigorousReal":
        return RigorousReal(self._m, self._e, self._r, self._f, precision_bits)

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "RigorousReal":
        return RigorousReal(-self._m, self._e, self._r, self._f, self._prec, _normalized=True)

    def __abs__(self) -> "RigorousReal":
        if self._r == 0:
            return self if self._m >= 0 else -self
        s = self.sign()
        if s is not None and s >= 0:
            return self
        if s is not None and s < 0:
            return -self
        # straddles zero: |x| lies in [0, max(|lower|, |upper|)]
        hi = max(-self.lower, self.upper)
        return RigorousReal.from_interval(Fraction(0), hi, self._prec)

    def __add__(self, other) -> "RigorousReal":
        other = _coerce(other, self._prec)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self._prec, other._prec)
        m, e = _dy_add(self._m, self._e, other._m, other._e)
        if self._r == 0 and other._r == 0:
            return RigorousReal(m, e, 0, 0, prec)
        r, f = _dy_add(self._r, self._f, other._r, other._f)
        return RigorousReal(m, e, r, f, prec)

    __radd__ = __add__

    def __sub__(self, other) -> "RigorousReal":
        other = _coerce(other, self._prec)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RigorousReal":
        other = _coerce(other, self._prec)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RigorousReal":
        other = _coerce(other, self._prec)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self._prec, other._prec)
        m = self._m * other._m
        e = self._e + other._e
        if self._r == 0 and other._r == 0:
            return RigorousReal(m, e, 0, 0, prec)
        # |x*y - mx*my| <= |mx|*ry + |my|*rx + rx*ry
        a1, a2 = abs(self._m), abs(other._m)
        t1m, t1e = a1 * other._r, self._e + other._f
        t2m, t2e = a2 * self._r, other._e + self._f
        t3m, t3e = self._r * other._r, self._f + other._f
        rm, rf = _dy_add(t1m, t1e, t2m, t2e)
        rm, rf = _dy_add(rm, rf, t3m, t3e)
        return RigorousReal(m, e, rm, rf, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RigorousReal":
        other = _coerce(other, self._prec)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self._prec, other._prec)
        if other.sign() in (0, None):
            raise DomainError("division by an enclosure containing zero")
        # off the hot path: exact endpoint quotients, then outward rounding
        a_lo, a_hi = self.lower, self.upper
        b_lo, b_hi = other.lower, other.upper
        quots = (a_lo / b_lo, a_lo / b_hi, a_hi / b_lo, a_hi / b_hi)
        return RigorousReal.from_interval(min(quots), max(quots), prec)

    def __rtruediv__(self, other) -> "RigorousReal":
        other = _coerce(other, self._prec)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "RigorousReal":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return RigorousReal.exact(1, self._prec) / (self ** (-exponent))
        result = RigorousReal.exact(1, self._prec)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- presentation --------------------------------------------------------

    def decimal(self, digits: int = 20) -> str:
        return fraction_to_decimal(self.midpoint, digits)

    def __repr__(self) -> str:
        if self._r == 0:
            return f"RigorousReal({self.decimal(12)}, exact, prec={self._prec})"
        return (f"RigorousReal({self.decimal(12)} +/- {fraction_to_sci(self.radius, 3)},"
                f" prec={self._prec})")


def _normalize(m: int, e: int, r: int, f: int, prec: int) -> Tuple[int, int, int, int]:
    """Trim the midpoint mantissa to prec bits (round to nearest, error into
    the radius) and the radius mantissa to _RAD_BITS bits (round up)."""
    bl = _bits(m)
    if bl > prec:
        s = bl - prec
        q, rem = divmod(m, 1 << s)
        if rem:
            if rem >= (1 << (s - 1)):
                q += 1
            # rounding error is at most half an ulp of the trimmed mantissa
            r, f = _dy_add(r, f, 1, e + s - 1) if r else (1, e + s - 1)
        m, e = q, e + s
    if m == 0:
        e = 0
    if r == 0:
        f = 0
    elif r.bit_length() > _RAD_BITS:
        r, f = _dy_ceil_trim(r, f, _RAD_BITS)
    return m, e, r, f


def _coerce(value, prec: int):
    if isinstance(value, RigorousReal):
        return value
    if isinstance(value, (int, Fraction)):
        return RigorousReal.exact(value, prec)
    return NotImplemented


Numeric = Union[int, Fraction, RigorousReal]


# ---------------------------------------------------------------------------
# exact polynomial helpers
# ---------------------------------------------------------------------------


def poly_eval(coeffs: Sequence[Union[int, Fraction]], x: Fraction) -> Fraction:
    """Horner evaluation of a polynomial given by ascending coefficients."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_eval_ball(coeffs: Sequence[Union[int, Fraction]], x: RigorousReal) -> RigorousReal:
    acc = RigorousReal.exact(0, x.precision_bits)
    for c in reversed(coeffs):
        acc = acc * x + RigorousReal.exact(c, x.precision_bits)
    return acc


def poly_remainder(dividend: Sequence[Union[int, Fraction]],
                   divisor: Sequence[Union[int, Fraction]]) -> List[Fraction]:
    """Remainder of polynomial division over the rationals (ascending
    coefficients).  Used to decide comparisons at algebraic bases exactly."""
    den = [Fraction(c) for c in divisor]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise DomainError("division by the zero polynomial")
    rem = [Fraction(c) for c in dividend]
    dd = len(den) - 1
    lead = den[-1]
    while len(rem) - 1 >= dd and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        shift = len(rem) - 1 - dd
        factor = rem[-1] / lead
        for k in range(dd + 1):
            rem[shift + k] -= factor * den[k]
        rem.pop()
    return rem


# ---------------------------------------------------------------------------
# BaseSpec
# ---------------------------------------------------------------------------

_DECIMAL_RE = re.compile(r"^[+-]?(\d+)(?:\.(\d+))?$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+/\d+$")

# tau is the positive root of x^2 - x - 1; alpha the unique real root of
# x^3 - 3x^2 + 2x - 1 (it lies in [2, 3]).  Coefficients ascend by degree.
TAU_POLYNOMIAL: Tuple[int, ...] = (-1, -1, 1)
ALPHA_POLYNOMIAL: Tuple[int, ...] = (-1, 2, -3, 1)
_CONSTANT_BRACKETS = {"tau": (Fraction(1), Fraction(2)), "alpha": (Fraction(2), Fraction(3))}
_CONSTANT_POLYS = {"tau": TAU_POLYNOMIAL, "alpha": ALPHA_POLYNOMIAL}


@dataclass(frozen=True)
class BaseSpec:
    """How a base b is described: an exact rational, a finite decimal
    literal (kept exact, e.g. "1.4" is 7/5), or a named algebraic constant.

    The constraint b > 1 is enforced when the value is evaluated or used,
    not at construction.
    """

    kind: str                 # "rational" | "decimal" | "constant"
    numerator: int = 0
    denominator: int = 1
    literal: str = ""
    name: str = ""

    @staticmethod
    def rational(numerator: int, denominator: int = 1) -> "BaseSpec":
        if denominator == 0:
            raise DomainError("denominator must be nonzero")
        v = Fraction(numerator, denominator)
        return BaseSpec(kind="rational", numerator=v.numerator, denominator=v.denominator)

    @staticmethod
    def decimal(literal: str) -> "BaseSpec":
        m = _DECIMAL_RE.match(literal.strip())
        if not m:
            raise ParseError(f"not a finite decimal literal: {literal!r}")
        v = Fraction(literal.strip())
        return BaseSpec(kind="decimal", numerator=v.numerator, denominator=v.denominator,
                        literal=literal.strip())

    @staticmethod
    def constant(name: str) -> "BaseSpec":
        if name not in _CONSTANT_POLYS:
            raise ParseError(f"unknown constant {name!r}; expected one of: tau, alpha")
        return BaseSpec(kind="constant", name=name)

    @staticmethod
    def parse(text: str) -> "BaseSpec":
        t = text.strip()
        if t in _CONSTANT_POLYS:
            return BaseSpec.constant(t)
        if _RATIONAL_RE.match(t):
            num, den = t.split("/")
            if int(den) == 0:
                raise ParseError(f"zero denominator in base {text!r}")
            return BaseSpec.rational(int(num), int(den))
        if _DECIMAL_RE.match(t):
            return BaseSpec.decimal(t)
        raise ParseError(f"cannot parse base {text!r}; expected p/q, a finite decimal, tau, or alpha")

    def exact_value(self) -> Optional[Fraction]:
        """The exact rational value, or None for algebraic constants."""
        if self.kind == "constant":
            return None
        return Fraction(self.numerator, self.denominator)

    @property
    def is_exact(self) -> bool:
        return self.kind != "constant"

    def minimal_polynomial(self) -> Optional[Tuple[int, ...]]:
        if self.kind == "constant":
            return _CONSTANT_POLYS[self.name]
        return None

    def evaluate(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> RigorousReal:
        return evaluate_base(self, precision_bits)

    def display(self) -> str:
        if self.kind == "constant":
            return self.name
        if self.kind == "decimal":
            return self.literal
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    def __str__(self) -> str:
        return self.display()


def evaluate_base(spec: BaseSpec, precision_bits: int) -> RigorousReal:
    """Enclose the base described by ``spec`` with radius <= 2**(-precision_bits+2).

    Rational and decimal specs evaluate exactly (radius 0 up to dyadic
    representation rounding); constants are isolated by exact bisection on
    their minimal polynomials.
    """
    if precision_bits < 16:
        raise DomainError(f"precision_bits must be >= 16, got {precision_bits}")
    if spec.kind in ("rational", "decimal"):
        value = spec.exact_value()
        if value <= 1:
            raise DomainError(f"base must be > 1, got {value}")
        return RigorousReal.exact(value, precision_bits)
    lo, hi = _CONSTANT_BRACKETS[spec.name]
    tol = Fraction(1, 1 << precision_bits)
    return bisect_root(_CONSTANT_POLYS[spec.name], lo, hi, tol, precision_bits=precision_bits)


def certified_poly_sign(coeffs: Sequence[Union[int, Fraction]], spec: "BaseSpec",
                        precision_ceiling: int) -> int:
    """Certified sign of a polynomial known to be nonzero at the base.

    Evaluates over enclosures of the base at doubling precision until the
    sign resolves; raises only if the ceiling is hit first (which cannot
    happen for a truly nonzero value given enough headroom).
    """
    precision = 64
    while True:
        value = poly_eval_ball(coeffs, spec.evaluate(precision))
        sign = value.sign()
        if sign is not None:
            return sign
        if precision >= precision_ceiling:
            raise UndecidableComparisonError(
                f"sign of a nonzero polynomial value at {spec.display()} is still "
                f"ambiguous at the {precision_ceiling}-bit precision ceiling")
        precision = min(2 * precision, precision_ceiling)


def bisect_root(coeffs: Sequence[Union[int, Fraction]],
                lo: Union[int, Fraction], hi: Union[int, Fraction],
                tol: Union[int, Fraction, str, float],
                precision_bits: Optional[int] = None) -> RigorousReal:
    """Isolate a root of the polynomial by exact-rational bisection.

    Requires a sign change between lo and hi.  Returns an enclosure of width
    <= tol whose endpoints bracket the sign change; if the bisection lands on
    an exact rational root, the enclosure degenerates to that point.
    """
    lof, hif = Fraction(lo), Fraction(hi)
    tolf = Fraction(tol)
    if tolf <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if lof >= hif:
        raise BracketError("bracket endpoints must satisfy lo < hi")
    flo = poly_eval(coeffs, lof)
    fhi = poly_eval(coeffs, hif)
    if flo == 0:
        hif = lof
    elif fhi == 0:
        lof = hif
    elif (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lof}, {hif}]: f(lo)={flo}, f(hi)={fhi}")
    while hif - lof > tolf:
        mid = (lof + hif) / 2
        fm = poly_eval(coeffs, mid)
        if fm == 0:
            lof = hif = mid
            break
        if (fm > 0) == (flo > 0):
            lof, flo = mid, fm
        else:
            hif = mid
    if precision_bits is None:
        # enough bits to keep representation rounding far below the bracket width
        width_bits = max(1, -(tolf.numerator.bit_length() - tolf.denominator.bit_length()))
        precision_bits = max(64, width_bits + 32)
    return RigorousReal.from_interval(lof, hif, precision_bits)


# ---------------------------------------------------------------------------
# exact decimal rendering
# ---------------------------------------------------------------------------


def _floor_log10(x: Fraction) -> int:
    """Exact floor(log10(x)) for positive rational x."""
    n, d = x.numerator, x.denominator
    # initial guess from digit counts, then exact correction
    g = len(str(n)) - len(str(d))
    while x >= Fraction(10) ** (g + 1):
        g += 1
    while x < Fraction(10) ** g:
        g -= 1
    return g


def fraction_to_decimal(x: Fraction, digits: int = 20) -> str:
    """Render an exact rational to ``digits`` significant decimal digits
    (round half away from zero), in plain positional notation."""
    if digits < 1 or digits > 1000:
        raise DomainError(f"digits must be in [1, 1000], got {digits}")
    if x == 0:
        return "0." + "0" * (digits - 1)
    sign = "-" if x < 0 else ""
    ax = -x if x < 0 else x
    e10 = _floor_log10(ax)
    # scale to an integer with exactly `digits` digits, round half away
    shift = digits - 1 - e10
    scaled = ax * Fraction(10) ** shift
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    mant = str(q)
    if len(mant) > digits:
        # rounding carried into a new leading digit
        e10 += 1
        mant = mant[:digits]
    point = e10 + 1
    if point <= 0:
        return f"{sign}0.{'0' * (-point)}{mant}"
    if point >= len(mant):
        return f"{sign}{mant}{'0' * (point - len(mant))}"
    return f"{sign}{mant[:point]}.{mant[point:]}"


def fraction_to_sci(x: Fraction, digits: int = 3) -> str:
    """Render an exact rational in scientific notation, rounding the
    mantissa up in magnitude (suitable for radii: never understates)."""
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    ax = -x if x < 0 else x
    e10 = _floor_log10(ax)
    shift = digits - 1 - e10
    scaled = ax * Fraction(10) ** shift
    q, r = divmod(scaled.numerator, scaled.denominator)
    if r:
        q += 1
    mant = str(q)
    if len(mant) > digits:
        e10 += 1
        mant = mant[:digits]
    if digits == 1:
        return f"{sign}{mant}e{e10:+03d}"
    return f"{sign}{mant[0]}.{mant[1:]}e{e10:+03d}"
