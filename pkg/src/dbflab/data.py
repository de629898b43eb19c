"""Embedded generic bosonic characteristics E_n and their provenance.

E_n = sum_mu C_mu (x) s_mu with C_mu = sum_lambda c_{lambda mu} s_lambda, stored as
``{(lambda, mu): c}``.  E_3 is the published n = 3 data; E_1 and E_2 are the
small cases, cross-checked against the oracle in the test suite.  E_4 is not
embedded: it is extracted from the oracle once and cached.
"""
from __future__ import annotations

from .tensor import TensorFrobenius, tensor_from_pairs

EMBEDDED = {
    1: {((), (1,)): 1},
    2: {((), (2,)): 1, ((1,), (1, 1)): 1},
    3: {
        ((), (3,)): 1,
        ((1,), (2, 1)): 1,
        ((2,), (2, 1)): 1,
        ((1, 1), (1, 1, 1)): 1,
        ((3,), (1, 1, 1)): 1,
    },
}

PROVENANCE = {
    1: "embedded (single cell, trivial)",
    2: "embedded (hand-derived; oracle-checked)",
    3: "embedded (published n=3 example)",
    4: "oracle extraction at (k,j)=(4,0)",
}


def generic_E(n: int, *, allow_oracle: bool = True) -> TensorFrobenius:
    """E_n as a two-index tensor; n = 4 comes from the cache or the oracle."""
    if n in EMBEDDED:
        return TensorFrobenius.bosonic(EMBEDDED[n])
    if n == 4:
        from . import cache

        lines = cache.read("en", (4,)) if cache.enabled() else None
        if lines is not None:
            return tensor_from_pairs(lines)
        if not allow_oracle:
            raise LookupError("E_4 is not cached and oracle extraction was disabled")
        from .oracle import extract_generic_E

        t = extract_generic_E(4)
        if cache.enabled():
            try:
                cache.write("en", (4,), t.format_pairs().splitlines())
            except OSError:
                pass
        return t
    from .oracle import OracleResourceError

    raise OracleResourceError(f"E_{n} is beyond the oracle bound (n <= 4)")


def store_E(n: int, t: TensorFrobenius):
    from . import cache

    return cache.write("en", (n,), t.format_pairs().splitlines())
