"""Exact sparse multivariate polynomials over Q and their fraction field.

``MPoly`` keeps its terms in a FLINT ``fmpq_mpoly`` whose generators are the
variables the polynomial has touched, sorted by the global variable order
``q < t < u < v < q1 < q2 < ... < u1 < u2 < ... < (anything else, by name)``.
Operands over different variable sets are moved into the union context.
Text rendering is graded-lexicographic, highest degree first.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

import flint

_BASE = {"q": 0, "t": 1, "u": 2, "v": 3}
_INDEXED = re.compile(r"([a-z]+)(\d+)$")


def var_key(name: str) -> tuple:
    if name in _BASE:
        return (0, _BASE[name], 0, "")
    m = _INDEXED.match(name)
    if m and m.group(1) in _BASE:
        return (1, _BASE[m.group(1)], int(m.group(2)), "")
    return (2, 0, 0, name)


@lru_cache(maxsize=None)
def _ctx(names: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(names, "lex")


@lru_cache(maxsize=None)
def _union(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=var_key))


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _scalar(x) -> flint.fmpq:
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Rational):
        return flint.fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


class MPoly:
    """Immutable exact polynomial with rational coefficients."""

    __slots__ = ("names", "poly", "_hash")

    def __init__(self, value=0):
        if isinstance(value, MPoly):
            self.names, self.poly = value.names, value.poly
        else:
            self.names = ()
            self.poly = _ctx(()).from_dict({(): _scalar(value)}) if value else _ctx(()).from_dict({})
        self._hash = None

    @classmethod
    def _wrap(cls, names: tuple[str, ...], poly) -> "MPoly":
        out = object.__new__(cls)
        out.names, out.poly, out._hash = names, poly, None
        return out

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls._wrap((name,), _ctx((name,)).gens()[0])

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, object]) -> "MPoly":
        """Build from ``{((name, exp), ...): coeff}``; repeated monomials add."""
        names = set()
        for mono in terms:
            names.update(n for n, e in mono if e)
        order = tuple(sorted(names, key=var_key))
        pos = {n: i for i, n in enumerate(order)}
        acc: dict[tuple[int, ...], Fraction] = {}
        for mono, c in terms.items():
            exps = [0] * len(order)
            for n, e in mono:
                if e:
                    exps[pos[n]] += e
            key = tuple(exps)
            acc[key] = acc.get(key, 0) + Fraction(c)
        data = {k: _scalar(v) for k, v in acc.items() if v}
        return cls._wrap(order, _ctx(order).from_dict(data))

    # -- coercion -----------------------------------------------------------
    def _in(self, names: tuple[str, ...]):
        if names == self.names:
            return self.poly
        return self.poly.project_to_context(_ctx(names))

    @staticmethod
    def _lift(x) -> "MPoly":
        return x if isinstance(x, MPoly) else MPoly(x)

    def _binary(self, other, op):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction, flint.fmpq)):
                return MPoly._wrap(self.names, op(self.poly, _scalar(other)))
            return NotImplemented
        names = _union(self.names, other.names)
        return MPoly._wrap(names, op(self._in(names), other._in(names)))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: b * a)

    def __neg__(self):
        return MPoly._wrap(self.names, -self.poly)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("MPoly powers must be nonnegative integers")
        return MPoly._wrap(self.names, self.poly**k)

    def __truediv__(self, other):
        """Division by a nonzero scalar, or exact division by a polynomial."""
        if isinstance(other, MPoly):
            if other.is_zero():
                raise ZeroDivisionError("division by the zero polynomial")
            if other.is_constant():
                return self / other.constant()
            names = _union(self.names, other.names)
            try:
                return MPoly._wrap(names, self._in(names) / other._in(names))
            except Exception as exc:
                raise ValueError("polynomial division is not exact") from exc
        c = _scalar(other)
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return MPoly._wrap(self.names, self.poly / c)

    def divides(self, other: "MPoly") -> bool:
        names = _union(self.names, other.names)
        _, r = divmod(other._in(names), self._in(names))
        return r.is_zero()

    def __eq__(self, other):
        if isinstance(other, MFrac):
            return other == self
        if not isinstance(other, MPoly):
            try:
                other = MPoly(other)
            except TypeError:
                return NotImplemented
        return (self - other).poly.is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.sparse_terms()))
        return self._hash

    def __bool__(self):
        return not self.poly.is_zero()

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.poly.is_constant()

    def constant(self) -> Fraction:
        """Constant term."""
        zero = (0,) * len(self.names)
        return _to_fraction(self.poly.to_dict().get(zero, flint.fmpq(0)))

    def sparse_terms(self) -> list[tuple[tuple[tuple[str, int], ...], Fraction]]:
        out = []
        for exps, c in self.poly.to_dict().items():
            mono = tuple((n, e) for n, e in zip(self.names, exps) if e)
            out.append((mono, _to_fraction(c)))
        return out

    def terms_dense(self, names: Iterable[str]) -> dict[tuple[int, ...], Fraction]:
        names = tuple(names)
        extra = set(self.variables()) - set(names)
        if extra:
            raise ValueError(f"variables {sorted(extra)} not in {names}")
        pos = {n: i for i, n in enumerate(names)}
        out = {}
        for mono, c in self.sparse_terms():
            e = [0] * len(names)
            for n, k in mono:
                e[pos[n]] = k
            out[tuple(e)] = c
        return out

    def variables(self) -> tuple[str, ...]:
        used = set()
        for mono, _ in self.sparse_terms():
            used.update(n for n, _ in mono)
        return tuple(sorted(used, key=var_key))

    def degree(self, name: str) -> int:
        if name not in self.names or self.is_zero():
            return 0 if not self.is_zero() else -1
        return int(self.poly.degrees()[self.names.index(name)])

    def total_degree(self, names: Iterable[str] | None = None) -> int:
        if self.is_zero():
            return -1
        if names is None:
            return int(self.poly.total_degree())
        names = set(names)
        return max(sum(e for n, e in mono if n in names) for mono, _ in self.sparse_terms())

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the grlex-largest monomial."""
        if self.is_zero():
            return Fraction(0)
        best = max(self.poly.to_dict().items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return _to_fraction(best[1])

    def coefficient(self, mono: Mapping[str, int] | tuple) -> Fraction:
        mono = dict(mono)
        if any(e and n not in self.names for n, e in mono.items()):
            return Fraction(0)
        exps = tuple(mono.get(n, 0) for n in self.names)
        return _to_fraction(self.poly.to_dict().get(exps, flint.fmpq(0)))

    # -- transformations ----------------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute variables by polynomials or numbers."""
        mapping = {n: v for n, v in mapping.items() if n in self.names}
        if not mapping:
            return self
        images = [MPoly._lift(mapping[n]) if n in mapping else MPoly.var(n) for n in self.names]
        names: tuple[str, ...] = ()
        for im in images:
            names = _union(names, im.names)
        keep = tuple(n for n in self.names if n not in mapping)
        names = _union(names, keep)
        ctx = _ctx(names)
        gens = [im._in(names) for im in images]
        if not self.names:
            return self
        return MPoly._wrap(names, self.poly.compose(*gens, ctx=ctx))

    def evaluate(self, mapping: Mapping[str, object]) -> Fraction:
        out = self.subs(mapping)
        if not out.is_constant():
            raise ValueError(f"variables left after evaluation: {out.variables()}")
        return out.constant()

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        return self.subs({a: MPoly.var(b) for a, b in mapping.items()})

    def truncate(self, cap: int, names: Iterable[str] | None = None) -> "MPoly":
        """Drop every term whose degree in ``names`` (default: all) exceeds ``cap``."""
        sel = None if names is None else set(names)
        data = {}
        for exps, c in self.poly.to_dict().items():
            d = sum(e for n, e in zip(self.names, exps) if sel is None or n in sel)
            if d <= cap:
                data[exps] = c
        return MPoly._wrap(self.names, _ctx(self.names).from_dict(data))

    def homogeneous_part(self, degree: int, names: Iterable[str] | None = None) -> "MPoly":
        sel = None if names is None else set(names)
        data = {}
        for exps, c in self.poly.to_dict().items():
            d = sum(e for n, e in zip(self.names, exps) if sel is None or n in sel)
            if d == degree:
                data[exps] = c
        return MPoly._wrap(self.names, _ctx(self.names).from_dict(data))

    def adams(self, k: int, sign_vars: tuple[str, ...] = ("eps",)) -> "MPoly":
        """Plethystic p_k image: x -> x^k, and each sign letter eps -> (-1)^k."""
        data = {}
        keep = tuple(n for n in self.names if n not in sign_vars)
        kpos = [i for i, n in enumerate(self.names) if n not in sign_vars]
        spos = [i for i, n in enumerate(self.names) if n in sign_vars]
        for exps, c in self.poly.to_dict().items():
            sgn = -1 if (k * sum(exps[i] for i in spos)) % 2 else 1
            key = tuple(k * exps[i] for i in kpos)
            data[key] = data.get(key, flint.fmpq(0)) + sgn * c
        return MPoly._wrap(keep, _ctx(keep).from_dict(data))

    def gcd(self, other: "MPoly") -> "MPoly":
        names = _union(self.names, other.names)
        return MPoly._wrap(names, self._in(names).gcd(other._in(names)))

    def map_coefficients(self, fn) -> "MPoly":
        data = {e: _scalar(fn(_to_fraction(c))) for e, c in self.poly.to_dict().items()}
        return MPoly._wrap(self.names, _ctx(self.names).from_dict({e: c for e, c in data.items() if c}))

    # -- text ---------------------------------------------------------------
    def __str__(self) -> str:
        return render_mpoly(self)

    def __repr__(self) -> str:
        return f"MPoly({render_mpoly(self)!r})"


def render_mpoly(p: MPoly) -> str:
    items = sorted(p.poly.to_dict().items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))
    if not items:
        return "0"
    pieces = []
    for exps, c in items:
        c = _to_fraction(c)
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(p.names, exps) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_mpoly(text: str) -> MPoly:
    """Inverse of :func:`render_mpoly` (also accepts missing spaces)."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    terms: dict[tuple, Fraction] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        mono = []
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
            elif re.fullmatch(r"[A-Za-z_]\w*(\^\d+)?", factor):
                name, _, e = factor.partition("^")
                mono.append((name, int(e) if e else 1))
            else:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
        key = tuple(mono)
        terms[key] = terms.get(key, 0) + coeff
    return MPoly.from_terms(terms)


def _leading_key(p: MPoly):
    return max(p.poly.to_dict().items(), key=lambda kv: (sum(kv[0]), kv[0]))


class MFrac:
    """Rational function num/den kept in lowest terms, den with leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, normalize: bool = True):
        num = MPoly._lift(num) if not isinstance(num, MPoly) else num
        den = MPoly._lift(den) if not isinstance(den, MPoly) else den
        if den.is_zero():
            raise ZeroDivisionError("MFrac with zero denominator")
        self.num, self.den = num, den
        if normalize:
            self._normalize()

    def _normalize(self) -> None:
        num, den = self.num, self.den
        if num.is_zero():
            self.num, self.den = MPoly(0), MPoly(1)
            return
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_constant():
                num, den = num / g, den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den = num, den

    @staticmethod
    def lift(x) -> "MFrac":
        return x if isinstance(x, MFrac) else MFrac(x)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def to_mpoly(self) -> MPoly:
        if not self.den.is_constant():
            raise ValueError(f"not a polynomial: ({self.num})/({self.den})")
        return self.num / self.den.constant()

    def __add__(self, other):
        if not isinstance(other, (MFrac, MPoly, int, Fraction)):
            return NotImplemented
        o = MFrac.lift(other)
        if o.num.is_zero():
            return self
        if self.den == o.den:
            return MFrac(self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        a, b = self.den / g, o.den / g
        return MFrac(self.num * b + o.num * a, a * o.den)

    __radd__ = __add__

    def __neg__(self):
        return MFrac(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        if not isinstance(other, (MFrac, MPoly, int, Fraction)):
            return NotImplemented
        return self + (-MFrac.lift(other))

    def __rsub__(self, other):
        return MFrac.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MFrac(self.num * other, self.den, normalize=False) if other else MFrac(0)
        if not isinstance(other, (MFrac, MPoly)):
            return NotImplemented
        o = MFrac.lift(other)
        return MFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = MFrac.lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return MFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return MFrac.lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return MFrac(self.den**-k, self.num**-k)
        return MFrac(self.num**k, self.den**k, normalize=False)

    def __eq__(self, other):
        if not isinstance(other, (MFrac, MPoly, int, Fraction)):
            return NotImplemented
        o = MFrac.lift(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def subs(self, mapping) -> "MFrac":
        return MFrac(self.num.subs(mapping), self.den.subs(mapping))

    def __str__(self):
        if self.den.is_constant() and self.den.constant() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def to_exact(c):
    """Collapse an MFrac with constant denominator to an MPoly."""
    if isinstance(c, MFrac) and c.is_polynomial():
        return c.to_mpoly()
    return c


def common_sum(pairs: Iterable[tuple[MPoly, MPoly]]) -> MFrac:
    """Sum of num/den fractions via one lcm and a single final gcd."""
    pairs = [(n, d) for n, d in pairs if not n.is_zero()]
    if not pairs:
        return MFrac(0)
    lcm = pairs[0][1]
    for _, d in pairs[1:]:
        if not d.divides(lcm):
            lcm = lcm * (d / lcm.gcd(d))
    total = MPoly(0)
    for n, d in pairs:
        total = total + n * (lcm / d)
    return MFrac(total, lcm)


Q = MPoly.var
