from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from dbflab.data import generic_E
from dbflab.formulas import (
    FORMULA_IDS,
    UnfilledCell,
    InterpolationError,
    calibrate_fibonacci_offset,
    closed_form,
    dbf_count,
    dimension,
    dimension_polynomial,
    eval_main_conjecture,
    expected_count,
    fibonacci,
    gaussian_binomial,
    hook_kronecker_differences,
    interpolate,
    k3j0_left,
    schur_coefficients,
    series_inverse,
    stirling2,
    super_tensor,
)
from dbflab.mpoly import MPoly
from dbflab.symfunc import format_symfunc, parse_symfunc, s

q, t, u, v = (MPoly.var(x) for x in "qtuv")
k_, j_ = MPoly.var("k"), MPoly.var("j")
E3 = generic_E(3)


def test_eval_examples():
    assert format_symfunc(eval_main_conjecture(E3, 0, 1)) == "s[3] : 1\ns[2,1] : u1\ns[1,1,1] : u1^2"
    f = eval_main_conjecture(E3, 1, 1, names="display")
    assert f == parse_symfunc("s[3] : 1\ns[2,1] : q + u + q^2 + q*u\ns[1,1,1] : q*u + u^2 + q^3 + q^2*u")
    assert dimension(eval_main_conjecture(E3, 3, 2, "ones")) == 74


def test_formal_mode_agrees_with_ones_mode():
    formal = eval_main_conjecture(E3, 0, 0, "formal")
    for a in range(4):
        for b in range(4):
            ones = eval_main_conjecture(E3, a, b, "ones")
            for mu, c in formal.items():
                assert c.evaluate({"k": a, "j": b}) == (ones.coefficient(mu) or 0)


def test_super_tensor_of_E3_matches_the_triple_expansion():
    # coefficient of s_21: s1(x)1 + 1(x)s1 + s2(x)1 + s1(x)s1 + 1(x)s11; of s_111: seven terms
    T = super_tensor(E3)
    s21 = {(nu, rho) for (nu, rho, mu) in T.entries if mu == (2, 1)}
    assert s21 == {((1,), ()), ((), (1,)), ((2,), ()), ((1,), (1,)), ((), (1, 1))}
    s111 = {(nu, rho) for (nu, rho, mu) in T.entries if mu == (1, 1, 1)}
    assert s111 == {((1, 1), ()), ((1,), (1,)), ((), (2,)), ((3,), ()), ((2,), (1,)), ((1,), (1, 1)), ((), (1, 1, 1))}
    assert all(c == 1 for c in T.entries.values())


def test_schur_coefficients_both_sides():
    qs = schur_coefficients(E3, "q")
    assert qs[(2, 1)] == s(1) + s(2) and qs[(1, 1, 1)] == s(1, 1) + s(3)
    us = schur_coefficients(E3, "u")
    assert us[(2, 1)] == s(1) + s(1, 1) and us[(1, 1, 1)] == s(2) + s(1, 1, 1)


def test_closed_form_examples():
    assert closed_form("K0J1", 3) == s(3) + s(2, 1).scale(u) + s(1, 1, 1).scale(u**2)
    assert dimension(closed_form("K0J2", 4)) == 35
    # the power-sum formula evaluates to 24 at n = 3 (the same as the conjecture)
    assert dimension(closed_form("K1J2", 3)) == 24


def test_closed_form_errors():
    with pytest.raises(KeyError):
        closed_form("K3J0", 3)
    with pytest.raises(ValueError):
        closed_form("K1J0", 3)
    with pytest.raises(ValueError):
        closed_form("LOWDEG_RHS", 3)
    assert "K3J0" not in FORMULA_IDS


@pytest.mark.parametrize("n", range(1, 6))
def test_k1j0_is_the_classical_coinvariant_character(n):
    f = closed_form("K1J0", n, comb(n, 2) + 2)
    E = generic_E(n) if n <= 4 else None
    if E is not None:
        assert f == eval_main_conjecture(E, 1, 0, names="display")
    assert dimension(f) == factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_k1j1_tableau_formula_equals_k2j1_at_t0(n):
    assert closed_form("K1J1", n) == closed_form("K1J1_FROM_K2J1", n)


@pytest.mark.parametrize("n", range(1, 6))
def test_k0j2_two_routes(n):
    assert closed_form("K0J2", n) == closed_form("K0J2_KRON", n)


@pytest.mark.parametrize("n", range(1, 8))
def test_hook_kronecker_differences_nonnegative(n):
    assert min(hook_kronecker_differences(n).values()) >= 0


@pytest.mark.parametrize("n", range(1, 5))
def test_k0jj_matches_universal_formula(n):
    E = generic_E(n)
    for j in (1, 2, 3):
        assert closed_form("K0Jj", n, E=E, j=j) == eval_main_conjecture(E, 0, j, names="display")


def test_k0j1_equals_k0jj_with_one_letter():
    for n in range(1, 5):
        assert closed_form("K0J1", n) == closed_form("K0Jj", n, E=generic_E(n), j=1)


@pytest.mark.parametrize("n", range(2, 5))
def test_k2j2_lower_bound_zero_equals_m_series(n):
    assert closed_form("K2J2", n, start=0) == closed_form("M_SERIES", n, letters=2)
    assert closed_form("K2J2", n, start=0) - closed_form("K2J2", n, start=1) == closed_form("K2J0", n)


def test_gaussian_binomial():
    assert gaussian_binomial(4, 2, q) == 1 + q + 2 * q**2 + q**3 + q**4
    assert gaussian_binomial(3, 5, q) == 0


def test_series_inverse():
    f = 1 - q
    assert series_inverse(f, 4, ["q"]) == 1 + q + q**2 + q**3 + q**4


def test_dimension_polynomial_n3():
    shown = Fraction(1, 6) * (k_ + j_ + 1) * (k_**2 + 2 * k_ * j_ + j_**2 + 11 * k_ + 5 * j_ + 6)
    P = dimension_polynomial(3)
    assert P == shown
    assert P.evaluate({"k": 2, "j": 0}) == 16


def test_dimension_polynomial_formal_route_n4():
    E = generic_E(4)
    formal = eval_main_conjecture(E, 0, 0, "formal")
    from dbflab.partitions import count_syt

    direct = sum((c * count_syt(mu) for mu, c in formal.items()), MPoly(0))
    assert dimension_polynomial(4, E) == direct


def test_dimension_polynomial_n1():
    assert dimension_polynomial(1) == MPoly(1)


def test_interpolation_detects_a_violated_bound():
    with pytest.raises(InterpolationError):
        interpolate(lambda a, b: a**3, 2)


def test_expected_counts():
    assert expected_count("dims", 5, 2, 0) == 1296
    assert expected_count("alt", 4, 2, 0) == 14
    assert expected_count("dims", 4, 1, 1) == 75
    assert expected_count("dims", 4, 2, 1) == 288
    assert expected_count("dims", 3, 3, 0) == 32
    assert expected_count("alt", 3, 2, 1) == 11
    with pytest.raises(UnfilledCell):
        expected_count("dims", 4, 2, 2)
    with pytest.raises(UnfilledCell):
        expected_count("alt", 4, 2, 3)


@given(st.integers(1, 12))
def test_stirling_row_sums_to_bell_numbers(n):
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]
    assert sum(stirling2(n, i) for i in range(n + 1)) == bell[n]


def test_fibonacci_calibration():
    assert [fibonacci(i) for i in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]
    values = {n: eval_main_conjecture(generic_E(n), 1, 3, "ones").coefficient((1,) * n) for n in range(1, 5)}
    assert values == {1: 1, 2: 4, 3: 17, 4: 72}
    assert calibrate_fibonacci_offset(values) == 1


def test_k3j0_left_side():
    f = k3j0_left(E3)
    assert f.coefficient((3,)) == 1
    assert f.coefficient((2, 1)).evaluate({"q": 0, "t": 0}) == 2
    assert dbf_count(E3, 3, 0) == 32
