from math import factorial

import pytest
from hypothesis import given, strategies as st

from dbflab.partitions import (
    character,
    class_size,
    conjugate,
    count_syt,
    descents,
    eta,
    format_partition,
    hook,
    hook_content,
    kostka,
    major_index,
    make_partition,
    parse_partition,
    partitions_of,
    standard_tableaux,
    z_value,
)

partitions = st.integers(0, 8).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_make_partition_rejects_bad_input():
    with pytest.raises(ValueError):
        make_partition([1, 2])
    with pytest.raises(ValueError):
        make_partition([2, -1])
    assert make_partition([3, 1, 0, 0]) == (3, 1)


@given(partitions)
def test_conjugate_is_an_involution(la):
    assert conjugate(conjugate(la)) == la
    assert sum(conjugate(la)) == sum(la)


@given(partitions)
def test_text_round_trip(la):
    assert parse_partition(format_partition(la)) == la


@given(partitions.filter(bool))
def test_hook_length_formula_counts_tableaux(la):
    # enumeration is an independent route to f^la
    assert count_syt(la) == sum(1 for _ in standard_tableaux(la))


@pytest.mark.parametrize("n", range(1, 8))
def test_sum_of_squares_is_n_factorial(n):
    assert sum(count_syt(la) ** 2 for la in partitions_of(n)) == factorial(n)


def test_eta_values():
    assert eta((2, 1)) == 1
    assert eta((1, 1, 1)) == 3
    assert eta((3,)) == 0


def test_hook_content_small_cases():
    assert hook_content((2, 1), 2) == 2
    assert hook_content((1, 1, 1), 2) == 0
    assert hook_content((), 5) == 1
    assert hook_content((2,), 3) == 6


def test_kostka_examples():
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((3,), (1, 2)) == 1
    assert kostka((2, 2), (1, 1, 1, 1)) == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_character_orthogonality(n):
    parts = partitions_of(n)
    for la in parts:
        for mu in parts:
            ip = sum(class_size(r) * character(la, r) * character(mu, r) for r in parts)
            assert ip == (factorial(n) if la == mu else 0)


def test_z_value():
    assert z_value((2, 1, 1)) == 4
    assert z_value((3,)) == 3


def test_descents_and_major_index():
    T = ((1, 3), (2,))
    assert descents(T) == [1]
    assert major_index(T) == 1
    col = ((1,), (2,), (3,))
    assert major_index(col) == 3


def test_hook_out_of_range():
    assert hook(4, 0) == (4,)
    assert hook(4, 3) == (1, 1, 1, 1)
    assert hook(4, 4) == ()
    assert hook(4, -1) == ()
