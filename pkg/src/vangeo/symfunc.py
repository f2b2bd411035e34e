"""Power sums sigma_{i,j,n}(x): elementary symmetric functions of the
geometric node powers {x^h : 0 <= h < n, h != j}.

The workhorse is the elementary-symmetric recurrence e_k <- e_k + x^h * e_{k-1}
(one sweep over h, descending k), which costs O(n*i) ring operations and never
enumerates subsets.  A brute-force enumerator is provided purely as a testing
oracle, together with the complement identity

    sigma_{n-1-i,j,n}(b) / b^{n(n-1)/2 - j} = sigma_{i,j,n}(1/b)

which the rigorous backend also uses to keep magnitudes below 1 when x > 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .errors import DomainError, SizeError
from .scalar import Numeric, RigorousReal

_BRUTEFORCE_MAX_N = 20
_BRUTEFORCE_MAX_SUBSETS = 10 ** 6


def _is_positive(x: Numeric) -> bool:
    if isinstance(x, RigorousReal):
        return x.sign() == 1
    return x > 0


@dataclass(frozen=True)
class SigmaQuery:
    """One sigma evaluation request: subset size i, excluded exponent j,
    dimension n, and the evaluation point x > 0."""

    i: int
    j: int
    n: int
    x: Numeric

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be positive, got {self.n}")
        if not 0 <= self.i < self.n:
            raise DomainError(f"i must satisfy 0 <= i < n, got i={self.i}, n={self.n}")
        if not 0 <= self.j < self.n:
            raise DomainError(f"j must satisfy 0 <= j < n, got j={self.j}, n={self.n}")
        if not _is_positive(self.x):
            raise DomainError(f"x must be certifiably positive, got {self.x!r}")


def elementary_symmetric(values: Sequence, upto: int, one) -> List:
    """e_0..e_upto of the given sequence via the standard recurrence.

    Generic over the coefficient ring: ``one`` must be the ring's unit.
    """
    zero = one * 0
    e = [one] + [zero] * upto
    folded = 0
    for x in values:
        folded += 1
        for k in range(min(folded, upto), 0, -1):
            e[k] = e[k] + x * e[k - 1]
    return e


def _node_powers(x: Numeric, n: int, skip: int) -> List:
    pows = []
    p = x ** 0
    for h in range(n):
        if h != skip:
            pows.append(p)
        p = p * x
    return pows


def _one_like(x: Numeric):
    if isinstance(x, RigorousReal):
        return RigorousReal.exact(1, x.precision_bits)
    if isinstance(x, Fraction):
        return Fraction(1)
    return 1


def sigma_finite(q: SigmaQuery) -> Numeric:
    """sigma_{i,j,n}(x) = sum of x^{h_1+...+h_i} over strictly increasing
    i-tuples from {0,...,n-1}\\{j}; equals 1 for i = 0.

    Exact inputs sweep directly.  Rigorous inputs certifiably > 1 are routed
    through the complement identity so every swept term stays below 1, which
    keeps enclosure radii small.
    """
    x = q.x
    if isinstance(x, RigorousReal) and x.lower > 1:
        # sigma_{i,j,n}(x) = sigma_{n-1-i,j,n}(1/x) * x^{n(n-1)/2 - j}
        inv = sigma_finite(SigmaQuery(q.n - 1 - q.i, q.j, q.n, 1 / x))
        return inv * x ** (q.n * (q.n - 1) // 2 - q.j)
    if q.i == 0:
        return _one_like(x)
    e = elementary_symmetric(_node_powers(x, q.n, q.j), q.i, _one_like(x))
    return e[q.i]


def sigma_bruteforce(q: SigmaQuery) -> Numeric:
    """Independent oracle: explicit enumeration of all i-subsets.

    Guarded to n <= 20 and at most 10^6 subsets; exists only for testing.
    """
    if q.n > _BRUTEFORCE_MAX_N:
        raise SizeError(f"brute-force oracle limited to n <= {_BRUTEFORCE_MAX_N}, got n={q.n}")
    count = math.comb(q.n - 1, q.i)
    if count > _BRUTEFORCE_MAX_SUBSETS:
        raise SizeError(f"brute-force oracle limited to {_BRUTEFORCE_MAX_SUBSETS} subsets, "
                        f"got C({q.n - 1},{q.i}) = {count}")
    x = q.x
    exponents = [h for h in range(q.n) if h != q.j]
    total = _one_like(x) * 0
    for combo in itertools.combinations(exponents, q.i):
        total = total + x ** sum(combo)
    if q.i == 0:
        total = _one_like(x)
    return total


def sigma_complement_pair(i: int, j: int, n: int, b: Numeric) -> Tuple[Numeric, Numeric]:
    """The two sides of the complement identity, returned unreduced:

        (sigma_{n-1-i,j,n}(b) / b^{n(n-1)/2 - j},  sigma_{i,j,n}(1/b))

    They agree exactly in rational mode and within summed radii in rigorous
    mode; subset complementation inside {0,...,n-1}\\{j} is the bijection.
    """
    if isinstance(b, int):
        b = Fraction(b)
    lhs_sigma = sigma_finite(SigmaQuery(n - 1 - i, j, n, b))
    lhs = lhs_sigma / b ** (n * (n - 1) // 2 - j)
    rhs = sigma_finite(SigmaQuery(i, j, n, 1 / b))
    return lhs, rhs
