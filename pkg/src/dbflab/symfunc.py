"""Symmetric functions with exact coefficients.

A ``SymFunc`` is a finite combination of basis elements indexed by partitions.
Coefficients are duck-typed ring elements: ``int``, ``Fraction``, ``MPoly`` or
``MFrac``.  Anything that is not already in the Schur basis is taken through
``s`` using cached transition matrices built from Kostka numbers (m, h, e) and
S_n characters (p).
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .mpoly import MFrac, MPoly
from .partitions import (
    Partition,
    character,
    conjugate,
    contains,
    format_partition,
    hook_content,
    kostka,
    make_partition,
    parse_partition,
    partitions_of,
    z_value,
)

BASES = ("m", "e", "h", "p", "s", "Htilde")


def _pkey(la: Partition):
    return (sum(la), tuple(-x for x in la))


def _add_into(acc: dict, key, value) -> None:
    if not value:
        return
    if key in acc:
        v = acc[key] + value
        if v:
            acc[key] = v
        else:
            del acc[key]
    else:
        acc[key] = value


class SymFunc:
    """Basis-tagged finite linear combination; immutable by convention."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Mapping[Partition, object] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        clean = {}
        for la, c in (terms or {}).items():
            la = make_partition(la)
            _add_into(clean, la, c)
        self.terms = clean

    @classmethod
    def _raw(cls, basis: str, terms: dict) -> "SymFunc":
        out = object.__new__(cls)
        out.basis, out.terms = basis, terms
        return out

    # -- algebra ---------------------------------------------------------------
    def _aligned(self, other: "SymFunc") -> tuple["SymFunc", "SymFunc"]:
        if self.basis == other.basis:
            return self, other
        return convert(self, "s"), convert(other, "s")

    def __add__(self, other):
        if isinstance(other, SymFunc):
            a, b = self._aligned(other)
            acc = dict(a.terms)
            for la, c in b.terms.items():
                _add_into(acc, la, c)
            return SymFunc._raw(a.basis, acc)
        if not other:
            return self
        return self + SymFunc._raw(self.basis, {(): other})

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw(self.basis, {la: -c for la, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymFunc":
        if not c:
            return SymFunc._raw(self.basis, {})
        acc = {}
        for la, v in self.terms.items():
            _add_into(acc, la, v * c)
        return SymFunc._raw(self.basis, acc)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, SymFunc):
            return (self - other).is_zero()
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------------
    def coefficient(self, la) -> object:
        return self.terms.get(make_partition(la), 0)

    def degrees(self) -> set[int]:
        return {sum(la) for la in self.terms}

    def homogeneous_part(self, n: int) -> "SymFunc":
        return SymFunc._raw(self.basis, {la: c for la, c in self.terms.items() if sum(la) == n})

    def map_coefficients(self, fn: Callable) -> "SymFunc":
        acc = {}
        for la, c in self.terms.items():
            _add_into(acc, la, fn(c))
        return SymFunc._raw(self.basis, acc)

    def subs(self, mapping) -> "SymFunc":
        def sub(c):
            if isinstance(c, (MPoly, MFrac)):
                return c.subs(mapping)
            return c

        return self.map_coefficients(sub)

    def to(self, basis: str) -> "SymFunc":
        return convert(self, basis)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _pkey(kv[0]))

    def __str__(self) -> str:
        return format_symfunc(self)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{self.basis}{format_partition(la)}" for la, c in self.items())
        return f"SymFunc<{body or '0'}>"


def basis_element(basis: str, la, coeff=1) -> SymFunc:
    return SymFunc(basis, {make_partition(sorted(la, reverse=True)): coeff})


def s(*parts: int) -> SymFunc:
    return basis_element("s", parts)


def h(*parts: int) -> SymFunc:
    return basis_element("h", parts)


def e(*parts: int) -> SymFunc:
    return basis_element("e", parts)


def p(*parts: int) -> SymFunc:
    return basis_element("p", parts)


def m(*parts: int) -> SymFunc:
    return basis_element("m", parts)


def one() -> SymFunc:
    return SymFunc._raw("s", {(): 1})


def format_symfunc(f: SymFunc) -> str:
    lines = [f"{f.basis}{format_partition(la)} : {c}" for la, c in f.items()]
    return "\n".join(lines)


def parse_symfunc(text: str) -> SymFunc:
    from .mpoly import parse_mpoly

    basis, terms = None, {}
    for line in text.strip().splitlines():
        if not line.strip():
            continue
        head, _, coeff = line.partition(":")
        head = head.strip()
        b = head[: head.index("[")]
        if basis is None:
            basis = b
        elif b != basis:
            raise ValueError("mixed bases in one SymFunc text block")
        terms[parse_partition(head[len(b):])] = parse_mpoly(coeff)
    return SymFunc(basis or "s", terms)


# -- transition matrices -------------------------------------------------------
def _invert_unitriangular(parts: tuple[Partition, ...], K: dict) -> dict:
    """Inverse of a matrix K[la][mu] that is unitriangular w.r.t. ``parts`` order."""
    idx = {la: i for i, la in enumerate(parts)}
    n = len(parts)
    inv = {la: {} for la in parts}
    # K[la][mu] nonzero only for mu at or after la in reverse-lex order (dominance)
    for col in range(n - 1, -1, -1):
        mu = parts[col]
        inv[mu][mu] = Fraction(1)
        for row in range(col - 1, -1, -1):
            la = parts[row]
            acc = Fraction(0)
            for nu, k in K[la].items():
                j = idx[nu]
                if row < j <= col:
                    acc += k * inv[nu].get(mu, 0)
            if acc:
                inv[la][mu] = -acc
    return {la: {mu: int(v) if v.denominator == 1 else v for mu, v in row.items()} for la, row in inv.items()}


@lru_cache(maxsize=None)
def _kostka_matrix(n: int) -> dict:
    parts = partitions_of(n)
    return {la: {mu: k for mu in parts if (k := kostka(la, mu))} for la in parts}


@lru_cache(maxsize=None)
def _kostka_inverse(n: int) -> dict:
    return _invert_unitriangular(partitions_of(n), _kostka_matrix(n))


@lru_cache(maxsize=None)
def to_s_matrix(basis: str, n: int) -> dict:
    """basis_mu = sum_la M[mu][la] s_la."""
    parts = partitions_of(n)
    if basis == "s":
        return {la: {la: 1} for la in parts}
    if basis == "h":
        K = _kostka_matrix(n)
        return {mu: {la: K[la][mu] for la in parts if mu in K[la]} for mu in parts}
    if basis == "e":
        K = _kostka_matrix(n)
        return {mu: {conjugate(la): K[la][mu] for la in parts if mu in K[la]} for mu in parts}
    if basis == "p":
        return {rho: {la: x for la in parts if (x := character(la, rho))} for rho in parts}
    if basis == "m":
        return _kostka_inverse(n)
    raise ValueError(f"no fixed transition matrix for basis {basis!r}")


@lru_cache(maxsize=None)
def from_s_matrix(basis: str, n: int) -> dict:
    """s_la = sum_mu M[la][mu] basis_mu."""
    parts = partitions_of(n)
    if basis == "s":
        return {la: {la: 1} for la in parts}
    if basis == "m":
        return _kostka_matrix(n)
    if basis == "p":
        return {
            la: {rho: Fraction(x, z_value(rho)) for rho in parts if (x := character(la, rho))}
            for la in parts
        }
    Kinv = _kostka_inverse(n)
    if basis == "h":
        return {la: {mu: Kinv[mu][la] for mu in parts if la in Kinv[mu]} for la in parts}
    if basis == "e":
        return {
            conjugate(la): {mu: Kinv[mu][la] for mu in parts if la in Kinv[mu]} for la in parts
        }
    raise ValueError(f"no fixed transition matrix for basis {basis!r}")


def _apply_matrix(f: SymFunc, matrix_of: Callable[[int], dict], target: str) -> SymFunc:
    acc: dict = {}
    for la, c in f.terms.items():
        for mu, x in matrix_of(sum(la))[la].items():
            _add_into(acc, mu, c if x == 1 else c * x)
    return SymFunc._raw(target, acc)


def convert(f: SymFunc, target: str) -> SymFunc:
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    if target == "Htilde":
        raise ValueError("expansion in the modified Macdonald basis lives in dbflab.macdonald")
    if f.basis == "Htilde":
        from .macdonald import modified_macdonald

        acc: dict = {}
        for mu, c in f.terms.items():
            for la, x in modified_macdonald(mu).terms.items():
                _add_into(acc, la, c * x)
        f = SymFunc._raw("s", acc)
    elif f.basis != "s":
        f = _apply_matrix(f, lambda n, b=f.basis: to_s_matrix(b, n), "s")
    if target == "s":
        return f
    return _apply_matrix(f, lambda n: from_s_matrix(target, n), target)


# -- Littlewood-Richardson ------------------------------------------------------
def _strips_added(shape: Partition, size: int):
    """Yield (new_shape, added_per_row) for horizontal strips of ``size`` cells."""
    L = len(shape)
    rows = list(shape) + [0]

    def rec(r: int, left: int, acc: list[int]):
        if r == L + 1 or left == 0:
            if left == 0:
                added = acc + [0] * (L + 1 - len(acc))
                new = [rows[i] + added[i] for i in range(L + 1)]
                yield make_partition(new), tuple(added)
            return
        cap = left if r == 0 else min(left, shape[r - 1] - rows[r])
        for x in range(cap, -1, -1):
            yield from rec(r + 1, left - x, acc + [x])

    yield from rec(0, size, [])


@lru_cache(maxsize=None)
def lr_product(la: Partition, mu: Partition) -> tuple[tuple[Partition, int], ...]:
    """s_la * s_mu = sum c_nu s_nu, by LR tableaux of shape nu/la and content mu."""
    if not mu:
        return ((la, 1),)
    if not la:
        return ((mu, 1),)
    out: dict[Partition, int] = defaultdict(int)

    def rec(i: int, shape: Partition, counts: tuple[tuple[int, ...], ...]):
        # counts[i][r] = number of entries i+1 placed in row r
        if i == len(mu):
            out[shape] += 1
            return
        for new, added in _strips_added(shape, mu[i]):
            if i > 0:
                prev = counts[i - 1]
                ok, cum_new, cum_prev = True, 0, 0
                for r, x in enumerate(added):
                    cum_new += x
                    if cum_new > cum_prev:
                        ok = False
                        break
                    cum_prev += prev[r] if r < len(prev) else 0
                if not ok:
                    continue
            rec(i + 1, new, counts + (added,))

    rec(0, la, ())
    return tuple(sorted(out.items(), key=lambda kv: _pkey(kv[0])))


def lr_coefficient(la: Partition, mu: Partition, nu: Partition) -> int:
    return dict(lr_product(la, mu)).get(nu, 0)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product; concatenation in the multiplicative bases, LR rule otherwise."""
    if f.basis == g.basis and f.basis in ("p", "h", "e"):
        acc: dict = {}
        for la, c in f.terms.items():
            for mu, d in g.terms.items():
                _add_into(acc, tuple(sorted(la + mu, reverse=True)), c * d)
        return SymFunc._raw(f.basis, acc)
    fs, gs = convert(f, "s"), convert(g, "s")
    acc = {}
    for la, c in fs.terms.items():
        for mu, d in gs.terms.items():
            cd = c * d
            for nu, k in lr_product(la, mu):
                _add_into(acc, nu, cd if k == 1 else cd * k)
    return SymFunc._raw("s", acc)


@lru_cache(maxsize=None)
def skew_schur_terms(la: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
    """s_{la/nu} expanded in Schur functions."""
    if not contains(la, nu):
        return ()
    k = sum(la) - sum(nu)
    out = []
    for mu in partitions_of(k):
        c = lr_coefficient(nu, mu, la)
        if c:
            out.append((mu, c))
    return tuple(out)


def skew_schur(la, nu) -> SymFunc:
    return SymFunc._raw("s", dict(skew_schur_terms(make_partition(la), make_partition(nu))))


def skew(f: SymFunc, g: SymFunc) -> SymFunc:
    """g^perp f, the Hall adjoint of multiplication by g."""
    fs, gs = convert(f, "s"), convert(g, "s")
    acc: dict = {}
    for la, c in fs.terms.items():
        for nu, d in gs.terms.items():
            cd = c * d
            for mu, k in skew_schur_terms(la, nu):
                _add_into(acc, mu, cd if k == 1 else cd * k)
    return SymFunc._raw("s", acc)


def kronecker(f: SymFunc, g: SymFunc) -> SymFunc:
    """Internal product: p_la * p_la = z_la p_la, other pairs vanish."""
    df, dg = f.degrees(), g.degrees()
    if f and g and (len(df) != 1 or df != dg):
        raise ValueError(f"kronecker needs equal homogeneous degrees, got {df} and {dg}")
    fp, gp = convert(f, "p"), convert(g, "p")
    acc: dict = {}
    for la, c in fp.terms.items():
        d = gp.terms.get(la)
        if d:
            _add_into(acc, la, c * d * z_value(la))
    return convert(SymFunc._raw("p", acc), "s")


@lru_cache(maxsize=None)
def kronecker_coefficient(al: Partition, be: Partition, mu: Partition) -> int:
    n = sum(al)
    if sum(be) != n or sum(mu) != n:
        return 0
    total = Fraction(0)
    for rho in partitions_of(n):
        total += Fraction(character(al, rho) * character(be, rho) * character(mu, rho), z_value(rho))
    if total.denominator != 1:
        raise ArithmeticError("non-integral Kronecker coefficient")
    return int(total)


def hall_inner(f: SymFunc, g: SymFunc):
    fs, gs = convert(f, "s"), convert(g, "s")
    total = 0
    for la, c in fs.terms.items():
        d = gs.terms.get(la)
        if d:
            total = total + c * d
    if isinstance(total, (int, Fraction)):
        return MPoly(total)
    return total


def omega(f: SymFunc) -> SymFunc:
    fs = convert(f, "s")
    return SymFunc._raw("s", {conjugate(la): c for la, c in fs.terms.items()})


# -- finite alphabets ------------------------------------------------------------
def alphabet(prefix: str, k: int) -> tuple[str, ...]:
    """Variable names of a k-letter alphabet: q1, ..., qk."""
    return tuple(f"{prefix}{i}" for i in range(1, k + 1))


def _distinct_permutations(vec: tuple[int, ...]):
    if not vec:
        yield ()
        return
    seen = set()
    for i, x in enumerate(vec):
        if x in seen:
            continue
        seen.add(x)
        for rest in _distinct_permutations(vec[:i] + vec[i + 1:]):
            yield (x,) + rest


@lru_cache(maxsize=None)
def monomial_polynomial(mu: Partition, names: tuple[str, ...]) -> MPoly:
    if len(mu) > len(names):
        return MPoly(0)
    vec = tuple(mu) + (0,) * (len(names) - len(mu))
    return MPoly.from_terms({tuple(zip(names, ex)): 1 for ex in _distinct_permutations(vec)})


@lru_cache(maxsize=None)
def schur_polynomial(la: Partition, names: tuple[str, ...]) -> MPoly:
    """s_la(x_1, ..., x_k) as an explicit polynomial."""
    if len(la) > len(names):
        return MPoly(0)
    if not la:
        return MPoly(1)
    out = MPoly(0)
    for mu, k in _kostka_matrix(sum(la))[la].items():
        if len(mu) <= len(names):
            out = out + monomial_polynomial(mu, names) * k
    return out


def evaluate_in(f: SymFunc, names: Iterable[str]) -> MPoly:
    """f(x_1, ..., x_k) for the alphabet ``names``."""
    names = tuple(names)
    total = MPoly(0)
    for la, c in convert(f, "s").terms.items():
        sp = schur_polynomial(la, names)
        if sp:
            total = total + sp * c
    return total


def specialize_ones(f: SymFunc, k: int):
    """f(1^k), s_la(1^k) by the hook-content formula."""
    total = 0
    for la, c in convert(f, "s").terms.items():
        v = hook_content(la, k)
        if v:
            total = total + c * v
    return total


def drop_alphabet(f: SymFunc):
    """Replace s_mu by the number f^mu of standard tableaux (z alphabet dropped)."""
    from .partitions import count_syt

    total = 0
    for la, c in convert(f, "s").terms.items():
        total = total + c * (count_syt(la) if la else 1)
    return total


def specialize(f: SymFunc, assignment) -> object:
    """Dispatch: ('ones', k), ('syt',), or a tuple of variable names."""
    if isinstance(assignment, tuple) and assignment and assignment[0] == "ones":
        return specialize_ones(f, assignment[1])
    if assignment == ("syt",):
        return drop_alphabet(f)
    return evaluate_in(f, assignment)


def random_symfunc(rng, n: int, basis: str = "s", coeff_range: int = 3) -> SymFunc:
    """Helper for property tests: integer coefficients in [-r, r]."""
    terms = {}
    for la in partitions_of(n):
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[la] = c
    return SymFunc(basis, terms)


__all__ = [
    "BASES", "SymFunc", "alphabet", "basis_element", "convert", "drop_alphabet", "e",
    "evaluate_in", "format_symfunc", "h", "hall_inner", "kronecker", "kronecker_coefficient",
    "lr_coefficient", "lr_product", "m", "monomial_polynomial", "multiply", "omega", "one", "p",
    "parse_symfunc", "s", "schur_polynomial", "skew", "skew_schur", "specialize",
    "specialize_ones",
]
