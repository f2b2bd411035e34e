"""Shared fixtures: a session-scoped inverse-matrix cache.

Several test modules (and several acceptance criteria) sweep the same
(base, n) grids; recomputing each inverse once per session keeps the suite
fast without hiding any computation from the tests themselves.
"""

import pytest

from vangeo import GeometricVandermonde, inverse_matrix
from vangeo.scalar import DEFAULT_PRECISION_BITS, BaseSpec


@pytest.fixture(scope="session")
def cached_inverse():
    cache = {}

    def get(base: BaseSpec, n: int, precision_bits: int = DEFAULT_PRECISION_BITS):
        key = (base, n, None if base.is_exact else precision_bits)
        if key not in cache:
            gv = GeometricVandermonde(base, n)
            cache[key] = inverse_matrix(gv, precision_bits)
        return cache[key]

    return get
