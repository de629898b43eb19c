"""Partitions, Young diagrams and the classical counting functions on them.

A partition is a plain ``tuple`` of positive integers in weakly decreasing
order; the empty partition is ``()``.  Everything here is cached and pure.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterator, Sequence

Partition = tuple[int, ...]


def make_partition(parts: Sequence[int]) -> Partition:
    """Validate and normalise ``parts`` (trailing zeros are dropped)."""
    la = tuple(int(x) for x in parts)
    while la and la[-1] == 0:
        la = la[:-1]
    if any(x <= 0 for x in la):
        raise ValueError(f"partition parts must be positive: {parts!r}")
    if any(la[i] < la[i + 1] for i in range(len(la) - 1)):
        raise ValueError(f"partition parts must weakly decrease: {parts!r}")
    return la


def format_partition(la: Partition) -> str:
    return "[" + ",".join(str(x) for x in la) + "]"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not a partition literal: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return make_partition([int(x) for x in body.split(",")])


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_in_box(n: int, max_len: int) -> tuple[Partition, ...]:
    return tuple(la for la in partitions_of(n) if len(la) <= max_len)


@lru_cache(maxsize=None)
def conjugate(la: Partition) -> Partition:
    if not la:
        return ()
    return tuple(sum(1 for x in la if x > i) for i in range(la[0]))


def eta(la: Partition) -> int:
    """sum_i la_i * (i - 1), rows counted from 1."""
    return sum(i * x for i, x in enumerate(la))


def contains(la: Partition, mu: Partition) -> bool:
    """Diagram inclusion mu <= la."""
    if len(mu) > len(la):
        return False
    return all(m <= l for m, l in zip(mu, la))


def dominates(la: Partition, mu: Partition) -> bool:
    """la >= mu in dominance order (same size assumed)."""
    s = t = 0
    for i in range(max(len(la), len(mu))):
        s += la[i] if i < len(la) else 0
        t += mu[i] if i < len(mu) else 0
        if s < t:
            return False
    return True


def cells(la: Partition) -> list[tuple[int, int]]:
    """Cells as (a, b): a = column (q-direction), b = row (t-direction), 0-based."""
    return [(a, b) for b, row in enumerate(la) for a in range(row)]


def arm(la: Partition, a: int, b: int) -> int:
    return la[b] - a - 1


def leg(la: Partition, a: int, b: int) -> int:
    return conjugate(la)[a] - b - 1


def hook_lengths(la: Partition) -> list[int]:
    lc = conjugate(la)
    return [la[b] - a + lc[a] - b - 1 for a, b in cells(la)]


@lru_cache(maxsize=None)
def count_syt(la: Partition) -> int:
    """Number of standard Young tableaux, by the hook-length formula."""
    if not la:
        raise ValueError("count_syt is undefined on the empty partition")
    n = sum(la)
    return factorial(n) // prod(hook_lengths(la))


def hook_content(la: Partition, k: int) -> int:
    """s_la(1^k) via the hook-content formula; zero when len(la) > k."""
    num = prod(k + a - b for a, b in cells(la))
    return num // prod(hook_lengths(la)) if la else 1


def z_value(la: Partition) -> int:
    """Order of the centraliser of a permutation of cycle type ``la``."""
    out = 1
    for part in set(la):
        m = la.count(part)
        out *= part**m * factorial(m)
    return out


def class_size(la: Partition) -> int:
    return factorial(sum(la)) // z_value(la)


def standard_tableaux(la: Partition) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every standard tableau of shape ``la`` (English rows)."""
    n = sum(la)
    if n == 0:
        yield ()
        return
    for i in range(len(la)):
        last = i == len(la) - 1
        if la[i] > (la[i + 1] if not last else 0):
            smaller = list(la)
            smaller[i] -= 1
            inner = make_partition(smaller)
            for T in standard_tableaux(inner):
                rows = [list(r) for r in T]
                if i == len(rows):
                    rows.append([])
                rows[i].append(n)
                yield tuple(tuple(r) for r in rows)


def descents(T: tuple[tuple[int, ...], ...]) -> list[int]:
    """i is a descent when i+1 sits in a strictly lower row than i."""
    row_of = {x: r for r, row in enumerate(T) for x in row}
    n = len(row_of)
    return [i for i in range(1, n) if row_of[i + 1] > row_of[i]]


def major_index(T: tuple[tuple[int, ...], ...]) -> int:
    return sum(descents(T))


def hook(n: int, legs: int) -> Partition:
    """(n - legs, 1^legs); () when legs is out of range."""
    if legs < 0 or legs >= n:
        return ()
    return (n - legs,) + (1,) * legs


@lru_cache(maxsize=None)
def _horizontal_strips_removed(la: Partition, size: int) -> tuple[Partition, ...]:
    """All nu with la/nu a horizontal strip of ``size`` cells."""
    out = []
    L = len(la)

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == L:
            if left == 0:
                out.append(make_partition(acc))
            return
        below = la[i + 1] if i + 1 < L else 0
        for r in range(min(left, la[i] - below) + 1):
            rec(i + 1, left - r, acc + [la[i] - r])

    rec(0, size, [])
    return tuple(out)


@lru_cache(maxsize=None)
def kostka(la: Partition, weight: tuple[int, ...]) -> int:
    """Number of SSYT of shape ``la`` and content ``weight`` (any order)."""
    w = tuple(sorted((x for x in weight if x), reverse=True))
    if sum(la) != sum(w):
        return 0
    if not w:
        return 1
    if not dominates(la, w):
        return 0
    last = w[-1]
    return sum(kostka(nu, w[:-1]) for nu in _horizontal_strips_removed(la, last))


@lru_cache(maxsize=None)
def character(la: Partition, rho: Partition) -> int:
    """Irreducible S_n character chi^la at cycle type rho (Murnaghan-Nakayama)."""
    if sum(la) != sum(rho):
        raise ValueError("character needs |la| == |rho|")
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    L = len(la)
    beta = [la[i] + (L - 1 - i) for i in range(L)]
    beta_set = set(beta)
    total = 0
    for i, b in enumerate(beta):
        nb = b - r
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new_beta = sorted([x for x in beta if x != b] + [nb], reverse=True)
        new_la = make_partition([new_beta[m] - (L - 1 - m) for m in range(L)])
        total += (-1) ** height * character(new_la, rest)
    return total


def weak_compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into ``parts`` parts, lexicographically decreasing."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(n, -1, -1):
        for rest in weak_compositions(n - first, parts - 1):
            yield (first,) + rest


def subsets(n: int, size: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(n), size)


def multinomial(counts: Sequence[int]) -> int:
    out, total = 1, 0
    for c in counts:
        total += c
        out *= comb(total, c)
    return out


def biexponent_generator(mu: Partition):
    """B_mu = sum over cells (a, b) of q^a t^b."""
    from .mpoly import MPoly

    return MPoly.from_terms({(("q", a), ("t", b)): 1 for a, b in cells(mu)})
