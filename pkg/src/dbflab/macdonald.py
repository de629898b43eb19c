"""Modified Macdonald functions and the operators diagonal in their basis.

``modified_macdonald`` builds H~_mu from the combinatorial inv/maj formula over
fillings of the diagram (kernel in :mod:`dbflab.kernels`).  Expansion of an
arbitrary f in the H~ basis uses the *-scalar product, under which the H~_mu are
orthogonal with squared norms ``w_mu``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .mpoly import MFrac, MPoly, common_sum
from .partitions import (
    Partition,
    arm,
    cells,
    conjugate,
    eta,
    leg,
    make_partition,
    partitions_of,
    z_value,
)
from .plethysm import Alphabet, plethysm, scalar_plethysm
from .symfunc import SymFunc, _add_into, convert, e as e_basis

MAX_DEGREE = 8
_q, _t = MPoly.var("q"), MPoly.var("t")


class DenominatorError(ArithmeticError):
    """An expansion that must be polynomial left a nontrivial denominator."""


@lru_cache(maxsize=None)
def _htilde_monomial(mu: Partition) -> dict:
    from .kernels import hhl_histogram

    n = sum(mu)
    out = {}
    for la in partitions_of(n):
        hist, bound = hhl_histogram(mu, la)
        terms = {}
        for i, j in zip(*hist.nonzero()):
            inv = int(i) - hist.shape[0] // 2
            if inv < 0:
                raise ArithmeticError(f"negative inv statistic for {mu}")
            terms[(("q", inv), ("t", int(j)))] = int(hist[i, j])
        out[la] = MPoly.from_terms(terms)
    return out


def _compute_htilde(mu: Partition) -> SymFunc:
    f = convert(SymFunc._raw("m", dict(_htilde_monomial(mu))), "s")
    for c in f.terms.values():
        if any(x.denominator != 1 for _, x in c.sparse_terms()):
            raise DenominatorError(f"non-integral coefficient in H~_{mu}")
    return f


@lru_cache(maxsize=None)
def htilde_table(n: int, persist: bool = True) -> dict[Partition, SymFunc]:
    """H~_mu for every mu of n, read from the cache or built and then stored."""
    from . import cache

    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the configured bound {MAX_DEGREE}")
    stored = cache.load_htilde_degree(n) if persist else None
    if stored is not None and set(stored) == set(partitions_of(n)):
        return stored
    table = {mu: _compute_htilde(mu) for mu in partitions_of(n)}
    if persist:
        try:
            cache.save_htilde(n, table)
        except OSError:
            pass
    return table


def modified_macdonald(mu) -> SymFunc:
    """H~_mu in the Schur basis with coefficients in Z[q, t]."""
    mu = make_partition(mu)
    if not mu:
        return SymFunc._raw("s", {(): MPoly(1)})
    return htilde_table(sum(mu))[mu]


@lru_cache(maxsize=None)
def _htilde_p(mu: Partition) -> dict:
    return convert(modified_macdonald(mu), "p").terms


@lru_cache(maxsize=None)
def star_weight(rho: Partition) -> MPoly:
    """<p_rho, p_rho>_* ."""
    n = sum(rho)
    out = MPoly((-1) ** (n - len(rho)) * z_value(rho))
    for r in rho:
        out = out * (1 - _q**r) * (1 - _t**r)
    return out


def star_pairing(f: SymFunc, g: SymFunc):
    fp, gp = convert(f, "p"), convert(g, "p")
    total = 0
    for rho, c in fp.terms.items():
        d = gp.terms.get(rho)
        if d:
            total = total + c * d * star_weight(rho)
    return total


@lru_cache(maxsize=None)
def w_norm(mu: Partition) -> MPoly:
    """<H~_mu, H~_mu>_* = prod over cells of (q^a - t^(l+1)) (t^l - q^(a+1))."""
    out = MPoly(1)
    for a_, b_ in cells(mu):
        a, l = arm(mu, a_, b_), leg(mu, a_, b_)
        out = out * (_q**a - _t ** (l + 1)) * (_t**l - _q ** (a + 1))
    return out


@lru_cache(maxsize=None)
def _lcm_norms(n: int) -> tuple[MPoly, dict]:
    lcm = MPoly(1)
    for mu in partitions_of(n):
        w = w_norm(mu)
        if not w.divides(lcm):
            lcm = lcm * (w / lcm.gcd(w))
    return lcm, {mu: lcm / w_norm(mu) for mu in partitions_of(n)}


def _pairings(f: SymFunc) -> dict:
    """{mu: <f, H~_mu>_*} for every degree present in f."""
    fp = convert(f, "p")
    by_deg: dict[int, dict] = {}
    for rho, c in fp.terms.items():
        by_deg.setdefault(sum(rho), {})[rho] = c
    out = {}
    for n, terms in by_deg.items():
        for mu in partitions_of(n):
            hp = _htilde_p(mu)
            acc = []
            for rho, c in terms.items():
                d = hp.get(rho)
                if d:
                    acc.append(c * (d * star_weight(rho)))
            if acc:
                total = _sum(acc)
                if total:
                    out[mu] = total
    return out


def _sum(values: list):
    if all(not isinstance(v, MFrac) for v in values):
        total = 0
        for v in values:
            total = total + v
        return total
    fr = [MFrac.lift(v) for v in values]
    return common_sum((x.num, x.den) for x in fr)


def expand_in_macdonald(f: SymFunc) -> dict[Partition, MFrac]:
    if f.basis == "Htilde":
        return {mu: MFrac.lift(c) for mu, c in f.terms.items()}
    return {mu: MFrac.lift(c) / w_norm(mu) for mu, c in _pairings(f).items()}


def _recombine(pairs: Mapping[Partition, object], eig: Callable[[Partition], object], polynomial: bool) -> SymFunc:
    """sum_mu eig(mu) * pairs[mu] / w_mu * H~_mu in the s basis."""
    if not pairs:
        return SymFunc._raw("s", {})
    plain = all(isinstance(c, (MPoly, int, Fraction)) for c in pairs.values()) and all(
        not isinstance(eig(mu), MFrac) for mu in pairs
    )
    if plain:
        by_deg: dict[int, dict] = {}
        for mu, c in pairs.items():
            by_deg.setdefault(sum(mu), {})[mu] = c
        acc: dict = {}
        for n, group in by_deg.items():
            lcm, mult = _lcm_norms(n)
            num: dict = {}
            for mu, c in group.items():
                scale = eig(mu) * c * mult[mu]
                for la, x in modified_macdonald(mu).terms.items():
                    _add_into(num, la, scale * x)
            for la, x in num.items():
                fr = MFrac(x, lcm)
                if fr.is_polynomial():
                    _add_into(acc, la, fr.to_mpoly())
                elif polynomial:
                    raise DenominatorError(f"denominator {fr.den} survived at s{la}")
                else:
                    _add_into(acc, la, fr)
        return SymFunc._raw("s", acc)
    per_la: dict = {}
    for mu, c in pairs.items():
        coeff = MFrac.lift(eig(mu)) * MFrac.lift(c) / w_norm(mu)
        for la, x in modified_macdonald(mu).terms.items():
            v = coeff * x
            per_la.setdefault(la, []).append((v.num, v.den))
    acc = {}
    for la, items in per_la.items():
        fr = common_sum(items)
        if fr.is_polynomial():
            _add_into(acc, la, fr.to_mpoly())
        elif polynomial:
            raise DenominatorError(f"denominator {fr.den} survived at s{la}")
        else:
            _add_into(acc, la, fr)
    return SymFunc._raw("s", acc)


def from_macdonald(coeffs: Mapping[Partition, object], polynomial: bool = False) -> SymFunc:
    """sum c_mu H~_mu in the s basis."""
    pairs = {mu: MFrac.lift(c) * w_norm(mu) for mu, c in coeffs.items() if c}
    return _recombine(pairs, lambda mu: MPoly(1), polynomial)


def diagonal_operator(f: SymFunc, eig: Callable[[Partition], object], polynomial: bool = True) -> SymFunc:
    """Apply the operator with H~_mu -> eig(mu) H~_mu; result in the s basis."""
    if f.basis == "Htilde":
        return from_macdonald({mu: MFrac.lift(c) * eig(mu) for mu, c in f.terms.items()}, polynomial)
    return _recombine(_pairings(f), eig, polynomial)


# -- eigenvalues -------------------------------------------------------------
@lru_cache(maxsize=None)
def nabla_eigenvalue(mu: Partition) -> MPoly:
    return _q ** eta(conjugate(mu)) * _t ** eta(mu)


@lru_cache(maxsize=None)
def delta_eigenvalue(g_key: tuple, mu: Partition) -> MPoly:
    """g[B_mu] for g = e_k (key ('e', k)) or g[B_mu - 1] for key ('e-1', k)."""
    from .partitions import biexponent_generator

    kind, k = g_key
    B = biexponent_generator(mu)
    if kind == "e-1":
        B = B - 1
    return scalar_plethysm(e_basis(k) if k else SymFunc._raw("e", {(): 1}), Alphabet.scalar(B))


@lru_cache(maxsize=None)
def pi_eigenvalue(mu: Partition) -> MPoly:
    out = MPoly(1)
    for a, b in cells(mu):
        if (a, b) != (0, 0):
            out = out * (1 - _q**a * _t**b)
    return out


def nabla(f: SymFunc) -> SymFunc:
    return diagonal_operator(f, nabla_eigenvalue)


def delta_prime(k: int, f: SymFunc) -> SymFunc:
    """Delta'_{e_k}: H~_mu -> e_k[B_mu - 1] H~_mu."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return diagonal_operator(f, lambda mu: delta_eigenvalue(("e-1", k), mu))


def delta(k: int, f: SymFunc) -> SymFunc:
    return diagonal_operator(f, lambda mu: delta_eigenvalue(("e", k), mu))


def pi_op(f: SymFunc, inverse: bool = False) -> SymFunc:
    if inverse:
        return diagonal_operator(f, lambda mu: MFrac(1, pi_eigenvalue(mu)), polynomial=False)
    return diagonal_operator(f, pi_eigenvalue, polynomial=False)


def star(g: SymFunc, degree_cap: int | None = None, *, exact: bool = False) -> SymFunc:
    """g* = g[Z/((1-q)(1-t))], returned in the p basis."""
    A = Alphabet.Z().over(_q, _t)
    return plethysm(g, A, degree_cap, exact=exact, target="p")


def theta(g: SymFunc, f: SymFunc, polynomial: bool = True) -> SymFunc:
    """Theta_g f = Pi g* Pi^{-1} f."""
    if g.degrees() == {0} or not g:
        c = convert(g, "s").terms.get((), 0)
        return convert(f, "s").scale(c)
    inv = _pairings(f)
    step = _recombine(inv, lambda mu: MFrac(1, pi_eigenvalue(mu)), polynomial=False)
    prod = _multiply_p(convert(step, "p"), star(g, exact=True))
    return _recombine(_pairings(prod), pi_eigenvalue, polynomial)


def _multiply_p(a: SymFunc, b: SymFunc) -> SymFunc:
    per: dict = {}
    for la, c in a.terms.items():
        for mu, d in b.terms.items():
            v = MFrac.lift(c) * MFrac.lift(d)
            per.setdefault(tuple(sorted(la + mu, reverse=True)), []).append((v.num, v.den))
    out: dict = {}
    for key, items in per.items():
        fr = common_sum(items)
        _add_into(out, key, fr.to_mpoly() if fr.is_polynomial() else fr)
    return SymFunc._raw("p", out)


def nabla_en(n: int) -> SymFunc:
    return nabla(e_basis(n))


def e_expansion_weight(mu: Partition) -> MFrac:
    """Coefficient of H~_mu in e_n: M B_mu Pi_mu / w_mu with M = (1-q)(1-t)."""
    from .partitions import biexponent_generator

    M = (1 - _q) * (1 - _t)
    return MFrac(M * biexponent_generator(mu) * pi_eigenvalue(mu), w_norm(mu))
