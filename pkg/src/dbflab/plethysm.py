"""Plethystic substitution.

An ``Alphabet`` is a formal expression ``(a*Z + b) / prod_i (1 - d_i)`` where
``Z`` is the z alphabet, ``a`` and ``b`` are polynomials in the parameters
(possibly involving the sign letter ``eps``) and each ``d_i`` is a parameter
monomial.  That covers every alphabet the conjectures need: ``Z/(1-q)``,
``Z/((1-q)(1-t))``, ``Omega(q)``, ``q - eps*u``, ``Z(1-q)``, ``B_mu - 1``.

Denominators expand as geometric series, so evaluating into such an alphabet
needs either an explicit degree cap (series mode, polynomial output truncated
by total degree in the denominator variables) or ``exact=True`` (rational
function coefficients).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .mpoly import MFrac, MPoly
from .partitions import Partition, conjugate, contains, partitions_of
from .symfunc import SymFunc, _add_into, alphabet, convert, lr_coefficient, schur_polynomial

SIGN = "eps"


class DegreeCapError(ValueError):
    """Raised when a series alphabet is used without a truncation degree."""


def _is_monomial(x: MPoly) -> bool:
    terms = x.sparse_terms()
    return len(terms) == 1 and terms[0][1] == 1 and len(terms[0][0]) > 0


@dataclass(frozen=True)
class Alphabet:
    z: MPoly = MPoly(0)
    const: MPoly = MPoly(0)
    den: tuple[MPoly, ...] = ()

    @classmethod
    def Z(cls) -> "Alphabet":
        return cls(z=MPoly(1))

    @classmethod
    def scalar(cls, c) -> "Alphabet":
        return cls(const=MPoly._lift(c))

    @classmethod
    def letters(cls, names) -> "Alphabet":
        return cls(const=sum((MPoly.var(n) for n in names), MPoly(0)))

    @classmethod
    def omega(cls, names) -> "Alphabet":
        """Omega(x) = sum of all monomials = 1/prod(1 - x_i)."""
        return cls(const=MPoly(1), den=tuple(MPoly.var(n) for n in names))

    def over(self, *monomials) -> "Alphabet":
        ds = tuple(MPoly._lift(d) for d in monomials)
        for d in ds:
            if not _is_monomial(d) or SIGN in d.variables():
                raise ValueError(f"series denominators must be parameter monomials, got {d}")
        return Alphabet(self.z, self.const, self.den + ds)

    def _lift(self, other) -> "Alphabet":
        return other if isinstance(other, Alphabet) else Alphabet.scalar(other)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return Alphabet(self.z + o.z, self.const + o.const, self.den)
        # common denominator by cross multiplication with the other factors
        fa = reduce(lambda x, y: x * (1 - y), o.den, MPoly(1))
        fb = reduce(lambda x, y: x * (1 - y), self.den, MPoly(1))
        return Alphabet(self.z * fa + o.z * fb, self.const * fa + o.const * fb, self.den + o.den)

    __radd__ = __add__

    def __neg__(self):
        return Alphabet(-self.z, -self.const, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.z and o.z:
            raise ValueError("Z*Z alphabets are not supported")
        return Alphabet(
            self.z * o.const + o.z * self.const, self.const * o.const, self.den + o.den
        )

    __rmul__ = __mul__

    def power_image(self, k: int) -> tuple[MPoly, MPoly, tuple[MPoly, ...]]:
        """p_k[A] as (coefficient of p_k, constant, denominators)."""
        return (
            self.z.adams(k, (SIGN,)),
            self.const.adams(k, (SIGN,)),
            tuple(d.adams(k, (SIGN,)) for d in self.den),
        )

    def series_variables(self) -> tuple[str, ...]:
        names = set()
        for d in self.den:
            names.update(d.variables())
        return tuple(sorted(names))


def geometric_inverse(dens: tuple[MPoly, ...], cap: int, names) -> MPoly:
    """prod 1/(1-d) truncated at total degree ``cap`` in ``names``."""
    out = MPoly(1)
    for d in dens:
        deg = d.total_degree(names)
        if deg <= 0:
            raise ValueError(f"denominator monomial {d} has no positive degree")
        series = sum((d**i for i in range(cap // deg + 1)), MPoly(0))
        out = (out * series).truncate(cap, names)
    return out


def _compose(f: SymFunc, g: SymFunc) -> SymFunc:
    """f[g] for symmetric functions: p_k[g] replaces p_i by p_{ki} and applies adams to coefficients."""
    fp, gp = convert(f, "p"), convert(g, "p")
    cache: dict[int, dict] = {}

    def pk(k: int) -> dict:
        if k not in cache:
            acc: dict = {}
            for la, c in gp.terms.items():
                ck = c.adams(k, (SIGN,)) if isinstance(c, MPoly) else c
                _add_into(acc, tuple(k * x for x in la), ck)
            cache[k] = acc
        return cache[k]

    out: dict = {}
    for la, c in fp.terms.items():
        prod = {(): c}
        for k in la:
            nxt: dict = {}
            for a, x in prod.items():
                for b, y in pk(k).items():
                    _add_into(nxt, tuple(sorted(a + b, reverse=True)), x * y)
            prod = nxt
        for key, v in prod.items():
            _add_into(out, key, v)
    return SymFunc._raw("p", out)


def plethysm(
    f: SymFunc,
    g,
    degree_cap: int | None = None,
    *,
    exact: bool = False,
    target: str = "s",
) -> SymFunc:
    """f[g] for g a SymFunc or an ``Alphabet``; output in basis ``target``."""
    if isinstance(g, SymFunc):
        return convert(_compose(f, g), target)
    if not isinstance(g, Alphabet):
        g = Alphabet.scalar(g)
    names = g.series_variables()
    if g.den and not exact and degree_cap is None:
        raise DegreeCapError("plethysm into a series alphabet needs a degree cap")
    fp = convert(f, "p")
    images: dict[int, dict] = {}

    def image(k: int) -> dict:
        if k in images:
            return images[k]
        zk, ck, dk = g.power_image(k)
        if not dk:
            vals = {(k,): zk, (): ck}
        elif exact:
            D = reduce(lambda x, y: x * (1 - y), dk, MPoly(1))
            vals = {(k,): MFrac(zk, D), (): MFrac(ck, D)}
        else:
            S = geometric_inverse(dk, degree_cap, names)
            vals = {(k,): (zk * S).truncate(degree_cap, names), (): (ck * S).truncate(degree_cap, names)}
        images[k] = {la: v for la, v in vals.items() if v}
        return images[k]

    def trunc(x):
        if g.den and not exact and isinstance(x, MPoly):
            return x.truncate(degree_cap, names)
        return x

    out: dict = {}
    for la, c in fp.terms.items():
        prod: dict = {(): MFrac(1) if exact else 1}
        for k in la:
            nxt: dict = {}
            for a, x in prod.items():
                for b, y in image(k).items():
                    _add_into(nxt, tuple(sorted(a + b, reverse=True)), trunc(x * y))
            prod = nxt
        for key, v in prod.items():
            _add_into(out, key, trunc(v * c))
    if exact:
        out = {la: (v.to_mpoly() if isinstance(v, MFrac) and v.is_polynomial() else v) for la, v in out.items()}
    return convert(SymFunc._raw("p", out), target)


def scalar_plethysm(f: SymFunc, g: Alphabet, degree_cap: int | None = None, *, exact: bool = False):
    """f[g] for a Z-free alphabet: a polynomial (or rational function)."""
    if g.z:
        raise ValueError("scalar_plethysm needs an alphabet without Z")
    res = plethysm(f, g, degree_cap, exact=exact, target="p")
    c = res.terms.get((), 0)
    return MPoly(c) if isinstance(c, int) else c


def super_schur_terms(theta: Partition) -> dict[tuple[Partition, Partition], int]:
    """s_theta[q - eps u] = sum c * s_nu(q) s_rho(u) as {(nu, rho): c}."""
    tc = conjugate(theta)
    out: dict = {}
    n = sum(theta)
    for d in range(n + 1):
        for nu in partitions_of(d):
            if not contains(theta, nu):
                continue
            nc = conjugate(nu)
            for rho in partitions_of(n - d):
                c = lr_coefficient(nc, rho, tc)
                if c:
                    out[(nu, rho)] = c
    return out


def super_schur(theta: Partition, k: int, j: int) -> MPoly:
    """Sum over nu inside theta of s_nu(q_1..q_k) s_{theta'/nu'}(u_1..u_j)."""
    qn, un = alphabet("q", k) if k else (), alphabet("u", j) if j else ()
    total = MPoly(0)
    for (nu, rho), c in super_schur_terms(tuple(theta)).items():
        a = schur_polynomial(nu, qn)
        if not a:
            continue
        b = schur_polynomial(rho, un)
        if b:
            total = total + a * b * c
    return total


def super_schur_by_plethysm(theta: Partition, k: int, j: int) -> MPoly:
    qn, un = alphabet("q", k) if k else (), alphabet("u", j) if j else ()
    A = Alphabet.letters(qn) - Alphabet.letters(un) * MPoly.var(SIGN)
    return scalar_plethysm(SymFunc("s", {tuple(theta): 1}), A)


def polyring_coefficient(mu: Partition, k: int, degree_cap: int) -> MPoly:
    """s_mu[Omega(q)] in k letters, truncated at total degree ``degree_cap``."""
    if degree_cap < 0:
        raise ValueError("degree_cap must be nonnegative")
    f = SymFunc("s", {tuple(mu): 1})
    return scalar_plethysm(f, Alphabet.omega(alphabet("q", k)), degree_cap)
