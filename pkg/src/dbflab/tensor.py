"""Variable-free Frobenius data: {(lambda, rho, mu): coefficient}.

``lambda`` indexes the bosonic GL character, ``rho`` the fermionic one and
``mu`` the S_n irreducible.  The purely bosonic two-index form has rho = ().
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

from .mpoly import MPoly
from .partitions import (
    Partition,
    conjugate,
    count_syt,
    eta,
    format_partition,
    hook_content,
    parse_partition,
)
from .symfunc import SymFunc, alphabet, schur_polynomial

Key = tuple[Partition, Partition, Partition]


@dataclass
class TensorFrobenius:
    entries: dict[Key, int] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {k: int(v) for k, v in self.entries.items() if v}

    @classmethod
    def bosonic(cls, pairs: Mapping[tuple[Partition, Partition], int]) -> "TensorFrobenius":
        return cls({(la, (), mu): c for (la, mu), c in pairs.items()})

    def __eq__(self, other):
        return isinstance(other, TensorFrobenius) and self.entries == other.entries

    def __add__(self, other: "TensorFrobenius") -> "TensorFrobenius":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return TensorFrobenius(out)

    def __sub__(self, other: "TensorFrobenius") -> "TensorFrobenius":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) - v
        return TensorFrobenius(out)

    def sorted_items(self) -> list[tuple[Key, int]]:
        def key(kv):
            (la, rho, mu), _ = kv
            return tuple((sum(x), tuple(-y for y in x)) for x in (mu, la, rho))

        return sorted(self.entries.items(), key=key)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.entries.values())

    def bosonic_pairs(self) -> dict[tuple[Partition, Partition], int]:
        if any(rho for _, rho, _ in self.entries):
            raise ValueError("tensor has fermionic entries")
        return {(la, mu): c for (la, _, mu), c in self.entries.items()}

    def restrict(self, k: int, j: int) -> "TensorFrobenius":
        """Drop terms that vanish with k bosonic and j fermionic letters."""
        return TensorFrobenius(
            {key: c for key, c in self.entries.items() if len(key[0]) <= k and len(key[1]) <= j}
        )

    def support_violations(self, n: int) -> list[Key]:
        """Keys outside |lambda| <= binom(n,2) - eta(mu') and l(lambda) <= n - mu_1."""
        bad = []
        for key in self.entries:
            la, _, mu = key
            if sum(mu) != n or sum(la) > comb(n, 2) - eta(conjugate(mu)) or len(la) > n - mu[0]:
                bad.append(key)
        return bad

    def to_symfunc(self, k: int, j: int, qnames=None, unames=None) -> SymFunc:
        """sum c s_lambda(q) s_rho(u) s_mu(z) as a SymFunc in z."""
        qn = tuple(qnames) if qnames is not None else alphabet("q", k)
        un = tuple(unames) if unames is not None else alphabet("u", j)
        acc: dict = {}
        for (la, rho, mu), c in self.entries.items():
            a = schur_polynomial(la, qn)
            b = schur_polynomial(rho, un) if a else MPoly(0)
            v = a * b * c
            if v:
                acc[mu] = acc.get(mu, MPoly(0)) + v
        return SymFunc("s", acc)

    def dimension(self, k: int, j: int) -> int:
        total = 0
        for (la, rho, mu), c in self.entries.items():
            total += c * hook_content(la, k) * hook_content(rho, j) * count_syt(mu)
        return total

    def alternating(self, k: int, j: int, n: int) -> int:
        """Multiplicity of the sign representation, q = u = 1."""
        sign = (1,) * n
        return sum(
            c * hook_content(la, k) * hook_content(rho, j)
            for (la, rho, mu), c in self.entries.items()
            if mu == sign
        )

    def to_text(self) -> str:
        return "\n".join(
            f"{format_partition(la)} {format_partition(rho)} {format_partition(mu)} {c}"
            for (la, rho, mu), c in self.sorted_items()
        )

    @classmethod
    def from_text(cls, text: str) -> "TensorFrobenius":
        out = {}
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            a, b, c, v = line.split()
            out[(parse_partition(a), parse_partition(b), parse_partition(c))] = int(v)
        return cls(out)

    def format_pairs(self) -> str:
        """Two-index text lines ``[lambda] [mu] c`` for bosonic data."""
        return "\n".join(
            f"{format_partition(la)} {format_partition(mu)} {c}"
            for (la, _, mu), c in self.sorted_items()
        )


def tensor_from_pairs(lines: Iterable[str]) -> TensorFrobenius:
    out = {}
    for line in lines:
        if line.strip():
            a, b, v = line.split()
            out[(parse_partition(a), (), parse_partition(b))] = int(v)
    return TensorFrobenius(out)
