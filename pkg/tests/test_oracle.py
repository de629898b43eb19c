import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dbflab.data import EMBEDDED, generic_E
from dbflab.oracle import (
    CHECK_PRIME,
    PRIME,
    OracleReport,
    OracleResourceError,
    SuperMonomial,
    apply_sigma,
    coinvariant_frobenius,
    compose,
    dimension_check,
    extract_generic_E,
    invariants_of_multidegree,
    quotient_traces,
    super_monomials,
)
from dbflab.partitions import weak_compositions
from dbflab.tensor import TensorFrobenius


# -- an independent quotient dimension: span of (monomial x invariant) ----------
def _fermion_product(a_rows, b_rows):
    """Product of two theta monomials given as 0/1 rows; returns (rows, sign) or None."""
    seq = [(r, c) for r, row in enumerate(a_rows) for c, x in enumerate(row) if x]
    seq += [(r, c) for r, row in enumerate(b_rows) for c, x in enumerate(row) if x]
    if len(set(seq)) < len(seq):
        return None
    inv = sum(1 for i in range(len(seq)) for k in range(i + 1, len(seq)) if seq[i] > seq[k])
    rows = tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a_rows, b_rows))
    return rows, (-1) ** inv


def _multiply(m: SuperMonomial, f: dict) -> dict:
    out: dict = {}
    for g, c in f.items():
        prod = _fermion_product(m.fermionic, g.fermionic)
        if prod is None:
            continue
        rows, sign = prod
        bos = tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(m.bosonic, g.bosonic))
        key = SuperMonomial(bos, rows)
        out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def _rank(rows: list[dict]) -> int:
    pivots: dict = {}
    rank = 0
    for r in rows:
        r = {k: Fraction(v) for k, v in r.items()}
        while r:
            lead = max(r)
            if lead not in pivots:
                pivots[lead] = r
                rank += 1
                break
            p = pivots[lead]
            f = r[lead] / p[lead]
            for k, v in p.items():
                r[k] = r.get(k, 0) - f * v
                if r[k] == 0:
                    del r[k]
    return rank


def _key(m: SuperMonomial):
    return tuple(x for row in m.bosonic + m.fermionic for x in row)


def brute_force_dims(k, j, n):
    out = {}
    for total in range(0, n * (n - 1) // 2 + 1):
        for d in weak_compositions(total, k + j):
            if any(x > n for x in d[k:]):
                continue
            basis = super_monomials(k, j, n, d)
            if not basis:
                continue
            rows = []
            for e in itertools.product(*[range(x + 1) for x in d]):
                if not any(e):
                    continue
                rest = tuple(a - b for a, b in zip(d, e))
                for f in invariants_of_multidegree(k, j, n, e):
                    for m in super_monomials(k, j, n, rest):
                        prod = _multiply(m, f)
                        if prod:
                            rows.append({_key(x): c for x, c in prod.items()})
            dim = len(basis) - _rank(rows)
            if dim:
                out[d] = dim
    return out


@pytest.mark.parametrize("k,j,n", [(1, 0, 2), (1, 0, 3), (0, 1, 3), (1, 1, 2), (1, 1, 3), (2, 0, 2), (0, 2, 3)])
def test_dimensions_match_brute_force_span(k, j, n):
    dims, _, _ = quotient_traces(k, j, n)
    assert {d: v for d, v in dims.items() if v} == brute_force_dims(k, j, n)


# -- group action and signs -------------------------------------------------------
perms3 = st.permutations(range(3)).map(tuple)


@st.composite
def monomials(draw):
    k, j = draw(st.integers(0, 2)), draw(st.integers(0, 2))
    if k + j == 0:
        k = 1
    d = [draw(st.integers(0, 2)) for _ in range(k)] + [draw(st.integers(0, 3)) for _ in range(j)]
    ms = super_monomials(k, j, 3, d)
    return draw(st.sampled_from(ms)) if ms else SuperMonomial(((0, 0, 0),) * k, ((0, 0, 0),) * j)


@given(monomials(), perms3, perms3)
def test_apply_sigma_is_an_action(m, sigma, tau):
    assert apply_sigma(apply_sigma(m, tau), sigma) == apply_sigma(m, compose(sigma, tau))


def test_transposition_on_two_thetas_is_a_sign():
    m = SuperMonomial((), ((1, 1),))
    assert apply_sigma(m, (1, 0)) == SuperMonomial((), ((1, 1),), -1)


def test_fermionic_invariant_vanishes_when_antisymmetric():
    # theta_1 theta_2 alone averages to zero under S_2
    assert invariants_of_multidegree(0, 1, 2, (2,)) == []
    assert len(invariants_of_multidegree(0, 1, 2, (1,))) == 1


# -- reports ----------------------------------------------------------------------
KNOWN = {
    (1, 0, 3): 6, (0, 1, 3): 4, (2, 0, 3): 16, (1, 1, 3): 13, (0, 2, 3): 10,
    (2, 1, 3): 28, (3, 0, 3): 32, (2, 2, 3): 45, (1, 2, 3): 24,
}


@pytest.mark.parametrize("kjn,dim", sorted(KNOWN.items()))
def test_total_dimensions_n3(kjn, dim):
    rep = coinvariant_frobenius(*kjn)
    assert rep.total_dimension() == dim
    assert dimension_check(rep)
    assert rep.tensor.is_nonnegative()


@pytest.mark.parametrize("k,j,n", [(1, 1, 3), (2, 1, 3), (0, 2, 3)])
def test_second_prime_agrees(k, j, n):
    rep = coinvariant_frobenius(k, j, n, p=PRIME, check_prime=CHECK_PRIME)
    assert rep.total_dimension() == KNOWN[(k, j, n)]


@pytest.mark.parametrize("k,j,n", [(1, 1, 3), (2, 0, 3), (0, 2, 3), (1, 1, 2)])
def test_exact_rational_backend_agrees(k, j, n):
    a = coinvariant_frobenius(k, j, n, p=0, use_numba=False)
    b = coinvariant_frobenius(k, j, n, p=PRIME)
    assert a.tensor == b.tensor and a.dims == b.dims


@pytest.mark.parametrize("k,j,n", [(2, 1, 3), (1, 1, 4)])
def test_numba_and_numpy_backends_agree(k, j, n):
    a = quotient_traces(k, j, n, PRIME, use_numba=True)
    b = quotient_traces(k, j, n, PRIME, use_numba=False)
    assert a == b


@pytest.mark.parametrize("n", [1, 2, 3])
def test_extracted_E_matches_embedded(n):
    assert extract_generic_E(n) == TensorFrobenius.bosonic(EMBEDDED[n])


def test_extracted_E4_satisfies_support_bounds():
    E = generic_E(4)
    assert E.support_violations(4) == []
    assert E.is_nonnegative()
    assert sum(c for (_, _, mu), c in E.entries.items() if mu == (4,)) == 1


def test_report_text_round_trip():
    rep = coinvariant_frobenius(1, 1, 3)
    back = OracleReport.from_text(rep.to_text())
    assert back.dims == rep.dims and back.traces == rep.traces and back.tensor == rep.tensor


def test_oracle_refuses_large_n():
    with pytest.raises(OracleResourceError):
        coinvariant_frobenius(1, 0, 5)
