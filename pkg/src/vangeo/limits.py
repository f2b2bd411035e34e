"""Large-n limits of the inverse entries.

As n grows, |c_{i,j,n}| converges to

    l_{i,j} = sigma_{i,j,inf}(1/b) * prod_{s=1}^{j} (b^s - 1)^{-1}
                                   * prod_{t>=1} (1 - b^{-t})^{-1},

where sigma_{i,j,inf}(x), for 0 < x < 1, sums x^{h_1+...+h_i} over strictly
increasing i-tuples of nonnegative exponents avoiding j (the coefficient of
t^i in prod_{h != j} (1 + x^h t)).  Every evaluator here truncates at an
adaptive cutoff and carries a mathematically guaranteed tail bound inside the
returned enclosure radius:

* sigma truncated at h <= H:  e_i(full) - e_i(trunc)
    <= sum_{m=1}^{i} e_{i-m}(trunc) * T^m / m!   with  T = x^{H+1}/(1-x),
  since the dropped elements have elementary symmetric sums e_m <= T^m/m!.
* the infinite product truncated at t <= T:  the log tail
  sum_{t>T} -log(1 - b^-t) is at most L = 2 b^{-(T+1)} / (1 - b^{-1}) once
  b^{-(T+1)} <= 1/2, and e^L <= 1 + 2L for L <= 1/2, giving the enclosure
  [P_T, P_T (1 + 2L)].

The module also evaluates lim M_b(n) = max of l_{i,j} over the [0, n0]^2 box
(computed over i <= j by symmetry), the closed forms for l_{0,0} and l_{1,1}
with their crossover classification, and the base-2 product identity
3 * prod_{i>=2} (1 + 1/(2^i - 1)).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import DomainError, UndecidableComparisonError
from .extremal import n_zero
from .scalar import (BaseSpec, Numeric, RigorousReal, certified_poly_sign,
                     fraction_to_sci, poly_remainder, resolve_precision_ceiling)

IndexPair = Tuple[int, int]

REGIME_ABOVE = "above_alpha"
REGIME_BETWEEN = "between_tau_alpha"
REGIME_BELOW = "below_tau"


def _to_tol(tol) -> Fraction:
    t = Fraction(tol)
    if t <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    return t


def _prec_for_tol(tol: Fraction) -> int:
    bits = tol.denominator.bit_length() - tol.numerator.bit_length()
    return max(64, bits + 64)


# ---------------------------------------------------------------------------
# sigma_{i,j,inf}
# ---------------------------------------------------------------------------


def _sigma_infinite(i: int, j: int, q: Numeric, tol: Fraction):
    """Core evaluator returning (enclosure, cutoff H, tail bound Fraction)."""
    if i < 0 or j < 0:
        raise DomainError(f"need i, j >= 0, got i={i}, j={j}")
    rigorous = isinstance(q, RigorousReal)
    if rigorous:
        if not (q.lower > 0 and q.upper < 1):
            raise DomainError("q must be certifiably inside (0, 1)")
        q_up = q.upper
        one = RigorousReal.exact(1, q.precision_bits)
    else:
        q = Fraction(q)
        if not 0 < q < 1:
            raise DomainError(f"q must lie in (0, 1), got {q}")
        q_up = q
        one = Fraction(1)
    prec = _prec_for_tol(tol)
    if i == 0:
        return RigorousReal.exact(1, prec), j, Fraction(0)
    e = [one] + [one * 0] * i
    qh = one                      # q^h for the next h to fold
    h = 0
    folded = 0
    cutoff = max(16, 2 * i + j + 4)
    while True:
        while h <= cutoff:
            if h != j:
                folded += 1
                for k in range(min(folded, i), 0, -1):
                    e[k] = e[k] + qh * e[k - 1]
            qh = qh * q
            h += 1
        # qh now holds q^(cutoff+1); bound the dropped elements
        big_t = (q_up ** (cutoff + 1)) / (1 - q_up)
        e_up = [(v.upper if rigorous else v) for v in e]
        tail = sum((e_up[i - m] * big_t ** m / math.factorial(m)
                    for m in range(1, i + 1)), Fraction(0))
        if tail <= tol:
            break
        cutoff *= 2
    if rigorous:
        return RigorousReal.from_interval(e[i].lower, e[i].upper + tail, prec), cutoff, tail
    return RigorousReal.from_interval(e[i], e[i] + tail, prec), cutoff, tail


def sigma_infinite(i: int, j: int, q: Numeric, tol) -> RigorousReal:
    """Enclosure of sigma_{i,j,inf}(q) for 0 < q < 1, truncation tail <= tol."""
    value, _, _ = _sigma_infinite(i, j, q, _to_tol(tol))
    return value


# ---------------------------------------------------------------------------
# the infinite product  prod (1 - b^-t)^-1
# ---------------------------------------------------------------------------


def _inverse_q_product(b: Numeric, tol: Fraction):
    """Core evaluator returning (enclosure, cutoff T, tail bound Fraction)."""
    rigorous = isinstance(b, RigorousReal)
    if rigorous:
        if not b.lower > 1:
            raise DomainError("base must be certifiably > 1")
        b_lo = b.lower
        one = RigorousReal.exact(1, b.precision_bits)
        inv = one / b
    else:
        b = Fraction(b)
        if b <= 1:
            raise DomainError(f"base must be > 1, got {b}")
        b_lo = b
        one = Fraction(1)
        inv = 1 / b
    prec = _prec_for_tol(tol)
    partial = one
    qt = one                      # b^-t for the next t to fold
    t = 0
    cutoff = 8
    inv_lo = 1 / b_lo
    while True:
        while t < cutoff:
            qt = qt * inv
            t += 1
            partial = partial / (one - qt)
        # log tail: sum_{t > cutoff} -log(1 - b^-t) <= 2 b^-(cutoff+1) / (1 - 1/b)
        x = inv_lo ** (cutoff + 1)
        partial_up = partial.upper if rigorous else partial
        if 2 * x <= 1:
            log_tail = 2 * x / (1 - inv_lo)
            if log_tail <= Fraction(1, 2):
                tail = partial_up * 2 * log_tail
                if tail <= tol:
                    break
        cutoff *= 2
    if rigorous:
        return RigorousReal.from_interval(partial.lower, partial.upper + tail, prec), cutoff, tail
    return RigorousReal.from_interval(partial, partial + tail, prec), cutoff, tail


def inverse_q_product(b: Numeric, tol) -> RigorousReal:
    """Enclosure of prod_{t >= 1} (1 - b^-t)^-1 for b > 1, tail <= tol."""
    value, _, _ = _inverse_q_product(b, _to_tol(tol))
    return value


def finite_j_product(j: int, b: Numeric) -> Numeric:
    """prod_{s=1}^{j} (b^s - 1)^-1; the empty product (j = 0) is 1."""
    if j < 0:
        raise DomainError(f"need j >= 0, got {j}")
    if isinstance(b, RigorousReal):
        one = RigorousReal.exact(1, b.precision_bits)
    else:
        b = Fraction(b)
        if b <= 1:
            raise DomainError(f"base must be > 1, got {b}")
        one = Fraction(1)
    result = one
    power = one
    for _ in range(j):
        power = power * b
        result = result / (power - one)
    return result


# ---------------------------------------------------------------------------
# entry limits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitValue:
    """One entry limit l_{i,j} with the cutoffs that produced it."""

    i: int
    j: int
    value: RigorousReal
    sigma_cutoff: int
    product_cutoff: int
    tail_bound: Fraction          # truncation contribution, included in value.radius

    def to_json_dict(self, digits: int = 20) -> dict:
        return {"i": self.i, "j": self.j, "value": self.value.decimal(digits),
                "radius": fraction_to_sci(self.value.radius, 3),
                "sigma_cutoff": self.sigma_cutoff, "product_cutoff": self.product_cutoff}


def _upper(x: Numeric) -> Fraction:
    return x.upper if isinstance(x, RigorousReal) else Fraction(x)


def limit_entry(i: int, j: int, base: BaseSpec, tol,
                precision_ceiling: Optional[int] = None) -> LimitValue:
    """l_{i,j} = sigma_{i,j,inf}(1/b) * finite_j_product(j, b)
    * inverse_q_product(b), with combined enclosure radius <= tol."""
    if i < 0 or j < 0:
        raise DomainError(f"need i, j >= 0, got i={i}, j={j}")
    tolf = _to_tol(tol)
    exact_value = base.exact_value()
    if exact_value is not None:
        if exact_value <= 1:
            raise DomainError(f"base must be > 1, got {exact_value}")
        return _limit_entry_at(i, j, exact_value, tolf)
    ceiling = resolve_precision_ceiling(precision_ceiling)
    precision = max(2 * _prec_for_tol(tolf), 64)
    while True:
        result = _limit_entry_at(i, j, base.evaluate(precision), tolf)
        if result.value.radius <= tolf:
            return result
        if 2 * precision > ceiling:
            raise UndecidableComparisonError(
                f"cannot reach tolerance {tolf} for l_({i},{j}) at base "
                f"{base.display()} within the {ceiling}-bit precision ceiling")
        precision *= 2


def _limit_entry_at(i: int, j: int, b: Numeric, tolf: Fraction) -> LimitValue:
    q = (1 / b) if isinstance(b, RigorousReal) else 1 / Fraction(b)
    jprod = finite_j_product(j, b)
    # rough pass to size the per-factor budgets
    rough_sigma, _, _ = _sigma_infinite(i, j, q, Fraction(1))
    rough_prod, _, _ = _inverse_q_product(b, Fraction(1, 2))
    sigma_hat = rough_sigma.upper
    prod_hat = rough_prod.upper
    jprod_hat = _upper(jprod)
    tol_sigma = tolf / (8 * prod_hat * jprod_hat)
    tol_prod = tolf / (8 * sigma_hat * jprod_hat)
    prec = _prec_for_tol(tolf)
    while True:
        sigma, sigma_cut, sigma_tail = _sigma_infinite(i, j, q, tol_sigma)
        prod, prod_cut, prod_tail = _inverse_q_product(b, tol_prod)
        jprod_ball = jprod if isinstance(jprod, RigorousReal) \
            else RigorousReal.exact(jprod, prec)
        value = sigma * jprod_ball * prod
        tail_bound = (Fraction(sigma.radius) * prod_hat
                      + Fraction(prod.radius) * sigma_hat) * jprod_hat
        if value.radius <= tolf or isinstance(b, RigorousReal):
            # for enclosure bases the caller escalates the base precision
            return LimitValue(i=i, j=j, value=value, sigma_cutoff=sigma_cut,
                              product_cutoff=prod_cut, tail_bound=tail_bound)
        tol_sigma /= 4
        tol_prod /= 4


# ---------------------------------------------------------------------------
# limit of the maximum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitReport:
    """lim M_b(n): the maximal entry limit over the [0, n0]^2 box."""

    base: BaseSpec
    n_zero: int
    value: RigorousReal
    argmax: Tuple[IndexPair, ...]
    entries: Tuple[LimitValue, ...]
    tie: bool
    regime: str
    boundary: bool

    def to_json_dict(self, digits: int = 20) -> dict:
        return {
            "base": self.base.display(),
            "n_zero": self.n_zero,
            "entries": [e.to_json_dict(digits) for e in self.entries],
            "max": self.value.decimal(digits),
            "argmax": [list(p) for p in self.argmax],
            "regime": self.regime,
        }

    def to_json(self, digits: int = 20) -> str:
        return json.dumps(self.to_json_dict(digits), separators=(", ", ": "))


def limit_max(base: BaseSpec, tol, precision_ceiling: Optional[int] = None) -> LimitReport:
    """Evaluate l_{i,j} over 0 <= i <= j <= n0 (symmetry covers i > j) and
    maximize with tie-aware argmax; exact ties (the crossover base) are
    reported with the tie flag after the refinement budget is spent."""
    tolf = _to_tol(tol)
    box = n_zero(base, precision_ceiling)
    pairs = [(i, j) for j in range(box + 1) for i in range(j + 1)]
    entry_tol = tolf / 4
    entries = {p: limit_entry(p[0], p[1], base, entry_tol, precision_ceiling) for p in pairs}
    candidates = list(pairs)
    tie = False
    refinements = 0
    while True:
        floor = max(entries[p].value.lower for p in candidates)
        candidates = [p for p in candidates if entries[p].value.upper >= floor]
        if len(candidates) == 1:
            break
        if refinements >= 3:
            tie = True
            break
        refinements += 1
        entry_tol /= 64
        for p in candidates:
            entries[p] = limit_entry(p[0], p[1], base, entry_tol, precision_ceiling)
    value = RigorousReal.hull([entries[p].value for p in candidates])
    argmax = sorted({pair for p in candidates for pair in ((p[0], p[1]), (p[1], p[0]))})
    regime, boundary = classify_regime(base, precision_ceiling)
    return LimitReport(base=base, n_zero=box, value=value, argmax=tuple(argmax),
                       entries=tuple(entries[p] for p in pairs), tie=tie,
                       regime=regime, boundary=boundary)


# ---------------------------------------------------------------------------
# closed forms and the crossover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossoverReport:
    """The two closed-form limits and where the base sits relative to the
    crossover: l_{0,0} wins above alpha, l_{1,1} wins between the golden
    ratio and alpha.  boundary marks a base exactly on tau or alpha."""

    base: BaseSpec
    l00: RigorousReal
    l11: RigorousReal
    regime: str
    boundary: bool


# b^2 - b - 1 and b^3 - 3 b^2 + 2 b - 1, ascending coefficients
_GOLDEN_TEST = (-1, -1, 1)
_CROSSOVER_TEST = (-1, 2, -3, 1)


def classify_regime(base: BaseSpec,
                    precision_ceiling: Optional[int] = None) -> Tuple[str, bool]:
    """Classify b against the golden ratio and the crossover constant.

    Returns (regime, boundary).  Bases exactly on a threshold (decided via
    minimal-polynomial reduction) carry boundary=True and are assigned to the
    regime whose closed form remains valid there: the golden ratio belongs to
    the between band, the crossover constant to the above band (where the two
    closed forms agree).
    """
    value = base.exact_value()
    if value is not None:
        if value <= 1:
            raise DomainError(f"base must be > 1, got {value}")
        golden = value * value - value - 1
        if golden < 0:
            return REGIME_BELOW, False
        crossover = value ** 3 - 3 * value ** 2 + 2 * value - 1
        # neither test polynomial has a rational root above 1
        return (REGIME_ABOVE if crossover > 0 else REGIME_BETWEEN), False
    ceiling = resolve_precision_ceiling(precision_ceiling)
    minpoly = base.minimal_polynomial()
    golden_rem = poly_remainder(_GOLDEN_TEST, minpoly)
    if not any(golden_rem):
        return REGIME_BETWEEN, True
    if certified_poly_sign(golden_rem, base, ceiling) < 0:
        return REGIME_BELOW, False
    crossover_rem = poly_remainder(_CROSSOVER_TEST, minpoly)
    if not any(crossover_rem):
        return REGIME_ABOVE, True
    sign = certified_poly_sign(crossover_rem, base, ceiling)
    return (REGIME_ABOVE if sign > 0 else REGIME_BETWEEN), False


def crossover_values(base: BaseSpec, tol,
                     precision_ceiling: Optional[int] = None) -> CrossoverReport:
    """Closed forms l_{0,0} = prod (1 - b^-t)^-1 and
    l_{1,1} = (b^2 - b + 1) / (b (b-1)^2) * l_{0,0}, each to radius <= tol."""
    tolf = _to_tol(tol)
    regime, boundary = classify_regime(base, precision_ceiling)
    exact_value = base.exact_value()
    if exact_value is not None:
        if exact_value <= 1:
            raise DomainError(f"base must be > 1, got {exact_value}")
        b = exact_value
        prefactor = (b * b - b + 1) / (b * (b - 1) ** 2)
        budget = tolf / (2 * max(Fraction(1), prefactor))
        l00, _, _ = _inverse_q_product(b, budget)
        l11 = RigorousReal.exact(prefactor, l00.precision_bits) * l00
        return CrossoverReport(base=base, l00=l00, l11=l11, regime=regime, boundary=boundary)
    ceiling = resolve_precision_ceiling(precision_ceiling)
    precision = max(2 * _prec_for_tol(tolf), 64)
    while True:
        b = base.evaluate(precision)
        one = RigorousReal.exact(1, precision)
        prefactor = (b * b - b + one) / (b * (b - one) ** 2)
        budget = tolf / (2 * max(Fraction(1), prefactor.upper))
        l00, _, _ = _inverse_q_product(b, budget)
        l11 = prefactor * l00
        if l00.radius <= tolf and l11.radius <= tolf:
            return CrossoverReport(base=base, l00=l00, l11=l11,
                                   regime=regime, boundary=boundary)
        if 2 * precision > ceiling:
            raise UndecidableComparisonError(
                f"cannot reach tolerance {tolf} for the closed forms at base "
                f"{base.display()} within the {ceiling}-bit precision ceiling")
        precision *= 2


def base2_product_identity(tol) -> RigorousReal:
    """3 * prod_{i>=2} (1 + 1/(2^i - 1)), which equals l_{1,1} at base 2.

    The log tail past i = I is below sum_{i>I} 2^(1-i) = 2^(1-I), so the full
    product sits in [P_I, P_I * (1 + 2^(2-I))].
    """
    tolf = _to_tol(tol)
    prec = _prec_for_tol(tolf)
    partial = Fraction(3)
    i = 1
    cutoff = 8
    while True:
        while i < cutoff:
            i += 1
            partial *= 1 + Fraction(1, (1 << i) - 1)
        tail = partial * Fraction(1, 1 << (cutoff - 2))
        if tail <= tolf:
            break
        cutoff *= 2
    return RigorousReal.from_interval(partial, partial + tail, prec)
