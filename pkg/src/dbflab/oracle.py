"""Brute-force coinvariant quotient of the boson/fermion polynomial ring.

R_{k,j;n} has k rows of n commuting variables x[r][c] and j rows of n
anticommuting variables th[r][c]; S_n permutes columns.  The quotient by the
ideal generated by all positive-degree invariants is computed one multidegree
at a time, using

    I_d = sum_v v * I_{d - v} + Inv_d,

where v runs over the variables and Inv_d is spanned by Reynolds images of the
monomials of multidegree d.  Linear algebra runs over exact rationals by
default (``p = 0``).  A nonzero ``p`` selects GF(p) with the numba kernels of
:mod:`dbflab.kernels`; results are then lifted to integers and can be
cross-checked against a second prime.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import kernels
from .partitions import (
    Partition,
    format_partition,
    kostka,
    parse_partition,
    partitions_of,
    weak_compositions,
    z_value,
)
from .symfunc import SymFunc, convert
from .tensor import TensorFrobenius

PRIME = 2147483647
CHECK_PRIME = 2147483629
MAX_N = 4


class DegreeBoundAnomaly(RuntimeError):
    """A nonzero quotient component turned up beyond the theoretical degree cap."""


class OracleResourceError(RuntimeError):
    """Requested oracle run is outside the configured size bound."""


# -- monomials and the group action ---------------------------------------------
@dataclass(frozen=True)
class SuperMonomial:
    bosonic: tuple[tuple[int, ...], ...]
    fermionic: tuple[tuple[int, ...], ...]
    sign: int = 1

    def multidegree(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.bosonic) + tuple(sum(r) for r in self.fermionic)

    def __str__(self) -> str:
        parts = []
        for r, row in enumerate(self.bosonic):
            for c, e in enumerate(row):
                if e:
                    parts.append(f"x{r + 1}{c + 1}" + (f"^{e}" if e > 1 else ""))
        for r, row in enumerate(self.fermionic):
            for c, e in enumerate(row):
                if e:
                    parts.append(f"th{r + 1}{c + 1}")
        body = "*".join(parts) or "1"
        return ("-" if self.sign < 0 else "") + body


def _row_options(k: int, j: int, n: int, d: tuple[int, ...]) -> list[list[tuple[int, ...]]]:
    opts = [list(weak_compositions(d[r], n)) for r in range(k)]
    for r in range(j):
        e = d[k + r]
        opts.append(
            [tuple(1 if c in s else 0 for c in range(n)) for s in itertools.combinations(range(n), e)]
        )
    return opts


def super_monomials(k: int, j: int, n: int, multidegree) -> list[SuperMonomial]:
    d = tuple(multidegree)
    if len(d) != k + j or any(x < 0 for x in d) or any(x > n for x in d[k:]):
        return []
    out = []
    for rows in itertools.product(*_row_options(k, j, n, d)):
        out.append(SuperMonomial(tuple(rows[:k]), tuple(rows[k:])))
    out.sort(key=lambda m: tuple(x for row in m.bosonic + m.fermionic for x in row))
    return out


def _perm_parity_on(support: list[int], sigma) -> int:
    inv = 0
    imgs = [sigma[c] for c in support]
    for a in range(len(imgs)):
        for b in range(a + 1, len(imgs)):
            if imgs[a] > imgs[b]:
                inv += 1
    return inv & 1


def apply_sigma(m: SuperMonomial, sigma) -> SuperMonomial:
    """Column c goes to sigma[c]; the theta factors are re-sorted with a sign."""
    n = len(sigma)
    bos = []
    for row in m.bosonic:
        new = [0] * n
        for c, e in enumerate(row):
            new[sigma[c]] = e
        bos.append(tuple(new))
    ferm, sign = [], m.sign
    for row in m.fermionic:
        new = [0] * n
        for c, e in enumerate(row):
            new[sigma[c]] = e
        ferm.append(tuple(new))
        if _perm_parity_on([c for c in range(n) if row[c]], sigma):
            sign = -sign
    return SuperMonomial(tuple(bos), tuple(ferm), sign)


def compose(sigma, tau) -> tuple[int, ...]:
    """(sigma tau)(c) = sigma(tau(c))."""
    return tuple(sigma[tau[c]] for c in range(len(tau)))


def class_representative(rho: Partition) -> tuple[int, ...]:
    perm, start = [], 0
    for part in rho:
        perm.extend(start + (i + 1) % part for i in range(part))
        start += part
    return tuple(perm)


def invariants_of_multidegree(k: int, j: int, n: int, d) -> list[dict]:
    """Reynolds images sum_sigma sigma.m as {monomial: coefficient}, deduplicated, zeros dropped."""
    seen, out = set(), []
    perms = list(itertools.permutations(range(n)))
    for m in super_monomials(k, j, n, d):
        acc: dict = {}
        for s in perms:
            im = apply_sigma(m, s)
            key = SuperMonomial(im.bosonic, im.fermionic)
            acc[key] = acc.get(key, 0) + im.sign
        acc = {a: c for a, c in acc.items() if c}
        frozen = frozenset(acc.items())
        if acc and frozen not in seen:
            seen.add(frozen)
            out.append(acc)
    return out


# -- the quotient engine -----------------------------------------------------------
@dataclass
class _Degree:
    keys: np.ndarray
    exps: np.ndarray
    std_col: np.ndarray  # column of the monomial among standard ones, -1 if not standard
    nf: np.ndarray  # rows: monomials, columns: standard monomials (ascending)
    n_u: int = 0


@dataclass
class OracleReport:
    k: int
    j: int
    n: int
    prime: int
    dims: dict[tuple[int, ...], int] = field(default_factory=dict)
    traces: dict[tuple[int, ...], dict[Partition, int]] = field(default_factory=dict)
    tensor: TensorFrobenius = field(default_factory=TensorFrobenius)
    seconds: float = 0.0
    top_degree: int = 0

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def frobenius(self, d) -> SymFunc:
        return graded_frobenius(self.traces[tuple(d)], self.n)

    def hilbert_terms(self) -> dict[tuple[int, ...], int]:
        return {d: v for d, v in self.dims.items() if v}

    def to_text(self) -> str:
        lines = [f"oracle k={self.k} j={self.j} n={self.n}"]
        classes = partitions_of(self.n)
        for d in sorted(self.dims, key=lambda x: (sum(x), x)):
            if not self.dims[d]:
                continue
            b = ",".join(map(str, d[: self.k]))
            f = ",".join(map(str, d[self.k:]))
            tr = " ".join(f"trace{format_partition(r)}={self.traces[d][r]}" for r in classes)
            lines.append(f"deg ({b}|{f}) dim {self.dims[d]} {tr}")
        lines.append("frobenius")
        lines.append(self.tensor.to_text())
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "OracleReport":
        lines = text.strip().splitlines()
        head = dict(x.split("=") for x in lines[0].split()[1:])
        rep = cls(int(head["k"]), int(head["j"]), int(head["n"]), 0)
        i = 1
        while lines[i] != "frobenius":
            fields = lines[i].split()
            bos, _, fer = fields[1].strip("()").partition("|")
            d = tuple(int(x) for x in bos.split(",") if x) + tuple(int(x) for x in fer.split(",") if x)
            rep.dims[d] = int(fields[3])
            tr = {}
            for item in fields[4:]:
                lab, val = item.split("=")
                tr[parse_partition(lab[len("trace"):])] = int(val)
            rep.traces[d] = tr
            i += 1
        rep.tensor = TensorFrobenius.from_text("\n".join(lines[i + 1:]))
        return rep


def graded_frobenius(traces: dict[Partition, int], n: int) -> SymFunc:
    terms = {rho: Fraction(t, z_value(rho)) for rho, t in traces.items() if t}
    f = convert(SymFunc("p", terms), "s")
    for la, c in f.terms.items():
        if c.denominator != 1 or c < 0:
            raise ArithmeticError(f"non-character class function: coefficient {c} at {la}")
    return f.map_coefficients(int)


class _Engine:
    def __init__(self, k: int, j: int, n: int, p: int, use_numba: bool | None):
        self.k, self.j, self.n, self.p = k, j, n, p
        self.rows = k + j
        self.L = self.rows * n
        self.cap = comb(n, 2) + 1
        base = self.cap + 1
        if self.L * np.log2(base) >= 62:
            raise OracleResourceError("monomial keys do not fit in 64 bits")
        self.weights = np.array([base ** (self.L - 1 - i) for i in range(self.L)], dtype=np.int64)
        self.is_ferm = np.array([(i // n) >= k for i in range(self.L)])
        self.kern = kernels.backend(p, use_numba)
        self.perms = list(itertools.permutations(range(n)))
        self._perm_data = [self._perm_arrays(s) for s in self.perms]

    def _perm_arrays(self, sigma):
        n = self.n
        dest = np.empty(self.L, dtype=np.int64)
        for i in range(self.L):
            r, c = divmod(i, n)
            dest[i] = r * n + sigma[c]
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if sigma[a] > sigma[b]]
        return dest, pairs

    def act(self, exps: np.ndarray, sigma_index: int) -> tuple[np.ndarray, np.ndarray]:
        """Keys and signs of sigma . m for every row of ``exps``."""
        dest, pairs = self._perm_data[sigma_index]
        new = np.empty_like(exps)
        new[:, dest] = exps
        par = np.zeros(exps.shape[0], dtype=np.int64)
        for r in range(self.k, self.rows):
            base = r * self.n
            for a, b in pairs:
                par += exps[:, base + a] * exps[:, base + b]
        return new @ self.weights, np.where(par & 1, -1, 1).astype(np.int64)

    def monomials(self, d: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
        rows = [
            np.array(opt, dtype=np.int64).reshape(len(opt), self.n)
            for opt in _row_options(self.k, self.j, self.n, d)
        ]
        if any(r.shape[0] == 0 for r in rows):
            return np.zeros(0, np.int64), np.zeros((0, self.L), np.int64)
        grids = np.meshgrid(*[np.arange(r.shape[0]) for r in rows], indexing="ij")
        idx = [g.ravel() for g in grids]
        exps = np.hstack([rows[r][idx[r]] for r in range(len(rows))])
        keys = exps @ self.weights
        order = np.argsort(keys, kind="stable")
        return keys[order], exps[order]

    def ferm_sign_before(self, exps: np.ndarray, i: int) -> np.ndarray:
        """(-1)^(number of theta factors placed before position i)."""
        if not self.is_ferm[i]:
            return np.ones(exps.shape[0], dtype=np.int64)
        start = self.k * self.n
        cnt = exps[:, start:i].sum(axis=1) if i > start else np.zeros(exps.shape[0], np.int64)
        return np.where(cnt & 1, -1, 1).astype(np.int64)

    def process(self, d: tuple[int, ...], prev: dict) -> _Degree:
        keys, exps = self.monomials(d)
        N = keys.shape[0]
        p, kern = self.p, self.kern
        zeros = kern["zeros"]
        if N == 0:
            return _Degree(keys, exps, np.zeros(0, np.int64), zeros((0, 0)))
        # parents through every variable
        cand_var, cand_m, cand_par, cand_eps = [], [], [], []
        par_deg_of_row = {}
        for i in range(self.L):
            r = i // self.n
            if d[r] == 0:
                continue
            pd = tuple(x - (1 if t == r else 0) for t, x in enumerate(d))
            par_deg_of_row[r] = pd
            P = prev[pd]
            has = np.nonzero(exps[:, i] > 0)[0]
            if has.size == 0:
                continue
            pk = keys[has] - self.weights[i]
            pidx = np.searchsorted(P.keys, pk)
            nonstd = P.std_col[pidx] < 0
            if not nonstd.any():
                continue
            ms = has[nonstd]
            cand_var.append(np.full(ms.size, i, dtype=np.int64))
            cand_m.append(ms)
            cand_par.append(pidx[nonstd])
            cand_eps.append(self.ferm_sign_before(exps[ms], i))
        if cand_m:
            cv, cm = np.concatenate(cand_var), np.concatenate(cand_m)
            cp, ce = np.concatenate(cand_par), np.concatenate(cand_eps)
            order = np.lexsort((cv, cm))
            cv, cm, cp, ce = cv[order], cm[order], cp[order], ce[order]
            first = np.ones(cm.size, dtype=bool)
            first[1:] = cm[1:] != cm[:-1]
        else:
            cv = cm = cp = ce = np.zeros(0, np.int64)
            first = np.zeros(0, bool)
        cover_var = np.full(N, -1, dtype=np.int64)
        cover_parent = np.zeros(N, dtype=np.int64)
        cover_eps = np.ones(N, dtype=np.int64)
        cover_var[cm[first]] = cv[first]
        cover_parent[cm[first]] = cp[first]
        cover_eps[cm[first]] = ce[first]
        in_u = cover_var < 0
        u_list = np.nonzero(in_u)[0]
        n_u = u_list.size
        u_pos = np.full(N, -1, dtype=np.int64)
        u_pos[u_list] = np.arange(n_u)
        if n_u == 0:
            return _Degree(keys, exps, np.full(N, -1, np.int64), zeros((N, 0)), 0)

        # flat buffers: parent normal forms (one block per row) and shift maps
        nf_blocks, nf_off_row, off = [], {}, 0
        for r, pd in par_deg_of_row.items():
            P = prev[pd]
            nf_off_row[r] = off
            flat = P.nf.reshape(-1)
            nf_blocks.append(flat)
            off += flat.size
        nf_flat = np.concatenate(nf_blocks) if nf_blocks else zeros(0)
        nf_off = np.zeros(self.L, dtype=np.int64)
        nf_width = np.zeros(self.L, dtype=np.int64)
        sh_off = np.zeros(self.L, dtype=np.int64)
        tgts, sgns, soff = [], [], 0
        for i in range(self.L):
            r = i // self.n
            if r not in par_deg_of_row:
                sh_off[i] = soff
                continue
            P = prev[par_deg_of_row[r]]
            nf_off[i] = nf_off_row[r]
            nf_width[i] = P.nf.shape[1]
            std_rows = np.nonzero(P.std_col >= 0)[0]
            std_rows = std_rows[np.argsort(P.std_col[std_rows])]
            sexp = P.exps[std_rows]
            tk = P.keys[std_rows] + self.weights[i]
            tgt = np.searchsorted(keys, tk)
            ok = np.ones(std_rows.size, dtype=bool)
            if self.is_ferm[i]:
                ok = sexp[:, i] == 0
            tgt = np.where(ok, tgt, -1)
            sh_off[i] = soff
            tgts.append(tgt.astype(np.int64))
            sgns.append(self.ferm_sign_before(sexp, i))
            soff += std_rows.size
        tgt_flat = np.concatenate(tgts) if tgts else np.zeros(0, np.int64)
        sgn_flat = np.concatenate(sgns) if sgns else np.zeros(0, np.int64)

        nfu = kern["nfu"](u_pos, cover_var, cover_parent, cover_eps, nf_flat, nf_off, nf_width,
                          tgt_flat, sgn_flat, sh_off, n_u, p)

        basis = zeros((n_u, n_u))
        pivot_col = np.full(n_u, -1, dtype=np.int64)
        col_row = np.full(n_u, -1, dtype=np.int64)
        rank = 0
        chunk = 1024

        # Reynolds images of orbit representatives
        img_keys, img_sgn = zip(*(self.act(exps, s) for s in range(len(self.perms))))
        img_keys = np.stack(img_keys, axis=1)
        img_sgn = np.stack(img_sgn, axis=1)
        reps = np.nonzero(keys == img_keys.min(axis=1))[0]
        img_idx = np.searchsorted(keys, img_keys)
        for a in range(0, reps.size, chunk):
            if rank == n_u:
                break
            sel = reps[a:a + chunk]
            rows = kern["reynolds"](img_idx[sel], img_sgn[sel], nfu, p)
            rank = kern["rref"](basis, pivot_col, col_row, rank, rows, p)

        # fermionic collisions: theta * (m' - NF(m')) with theta already in m'
        rel = [(cm[~first], cv[~first], cp[~first], ce[~first])]
        for i in range(self.L):
            if not self.is_ferm[i]:
                continue
            r = i // self.n
            if r not in par_deg_of_row:
                continue
            P = prev[par_deg_of_row[r]]
            hit = np.nonzero((P.exps[:, i] == 1) & (P.std_col < 0))[0]
            if hit.size:
                rel.insert(0, (np.full(hit.size, -1, np.int64), np.full(hit.size, i, np.int64),
                               hit.astype(np.int64), np.ones(hit.size, np.int64)))
        for rm, rv, rp, re_ in rel:
            for a in range(0, rm.size, chunk):
                if rank == n_u:
                    break
                rows = kern["relations"](rm[a:a + chunk], rv[a:a + chunk], rp[a:a + chunk],
                                         re_[a:a + chunk], nfu, nf_flat, nf_off, nf_width,
                                         tgt_flat, sgn_flat, sh_off, p)
                rank = kern["rref"](basis, pivot_col, col_row, rank, rows, p)

        free = np.nonzero(col_row < 0)[0]
        reduced = kern["reduce"](nfu, basis[:rank] if rank else basis[:0], col_row, p) if rank else nfu
        nf = np.ascontiguousarray(reduced[:, free])
        std_col = np.full(N, -1, dtype=np.int64)
        std_col[u_list[free]] = np.arange(free.size)
        return _Degree(keys, exps, std_col, nf, n_u)

    def traces(self, D: _Degree, classes) -> dict[Partition, int]:
        std_rows = np.nonzero(D.std_col >= 0)[0]
        out = {}
        for rho in classes:
            sigma = class_representative(rho)
            s_index = self.perms.index(sigma)
            k_img, sg = self.act(D.exps[std_rows], s_index)
            idx = np.searchsorted(D.keys, k_img)
            cols = D.std_col[std_rows]
            vals = D.nf[idx, cols]
            total = 0
            for v, s in zip(vals.tolist(), sg.tolist()):
                total += s * v
            out[rho] = _lift(total, self.p)
        return out


def _lift(x, p: int) -> int:
    if not p:
        if isinstance(x, Fraction) and x.denominator != 1:
            raise ArithmeticError(f"non-integral trace {x}")
        return int(x)
    x %= p
    return x - p if x > p // 2 else x


def _compositions(total: int, k: int, j: int, n: int):
    for d in weak_compositions(total, k + j):
        if all(x <= n for x in d[k:]):
            yield d


def quotient_traces(k: int, j: int, n: int, p: int = 0, use_numba: bool | None = None,
                    progress=None) -> tuple[dict, dict, int]:
    """dims and class traces for every multidegree with a nonzero quotient."""
    eng = _Engine(k, j, n, p, use_numba)
    zero = (0,) * (k + j)
    one = kernels.backend(p, use_numba)["zeros"]((1, 1))
    one[0, 0] = 1
    prev = {zero: _Degree(np.zeros(1, np.int64), np.zeros((1, eng.L), np.int64),
                          np.zeros(1, np.int64), one, 1)}
    classes = partitions_of(n)
    dims = {zero: 1}
    traces = {zero: {rho: 1 for rho in classes}}
    top = 0
    for total in range(1, eng.cap + 1):
        layer = {}
        alive = False
        for d in _compositions(total, k, j, n):
            D = eng.process(d, prev)
            layer[d] = D
            dim = int((D.std_col >= 0).sum())
            if dim:
                alive = True
                dims[d] = dim
                traces[d] = eng.traces(D, classes)
        if progress:
            progress(total, sum(dims.get(d, 0) for d in layer))
        if not alive:
            break
        if total == eng.cap:
            raise DegreeBoundAnomaly(
                f"nonzero quotient in total degree {total} > binom({n},2) for (k,j)=({k},{j})"
            )
        top = total
        prev = layer
    return dims, traces, top


def _gl_peel(series: dict[tuple[int, ...], int], k: int, j: int) -> dict[tuple[Partition, Partition], int]:
    """Write a (GL_k x GL_j)-symmetric multigraded series as sum c s_la(q) s_rho(u)."""

    def dominant(w):
        return all(w[i] >= w[i + 1] for i in range(k - 1)) and all(
            w[k + i] >= w[k + i + 1] for i in range(j - 1)
        )

    rest = {w: c for w, c in series.items() if c and dominant(w)}
    out = {}
    while rest:
        w = max(rest)
        c = rest[w]
        la = tuple(x for x in w[:k] if x)
        rho = tuple(x for x in w[k:] if x)
        out[(la, rho)] = c
        for v in list(rest):
            kb = kostka(la, v[:k]) if sum(v[:k]) == sum(la) else 0
            if not kb:
                continue
            kf = kostka(rho, v[k:]) if sum(v[k:]) == sum(rho) else 0
            if not kf:
                continue
            nv = rest[v] - c * kb * kf
            if nv:
                rest[v] = nv
            else:
                del rest[v]
        if c < 0:
            raise ArithmeticError(f"negative GL multiplicity at {(la, rho)}")
    return out


def coinvariant_frobenius(k: int, j: int, n: int, *, p: int = 0, check_prime: int | None = None,
                          use_numba: bool | None = None, max_n: int = MAX_N, progress=None) -> OracleReport:
    if k + j < 1:
        raise ValueError("need at least one row of variables")
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise OracleResourceError(f"oracle bound is n <= {max_n}")
    t0 = time.perf_counter()
    dims, traces, top = quotient_traces(k, j, n, p, use_numba, progress)
    if check_prime:
        dims2, traces2, _ = quotient_traces(k, j, n, check_prime, use_numba)
        if dims2 != dims or traces2 != traces:
            raise ArithmeticError("oracle results differ between the two primes")
    rep = OracleReport(k, j, n, p, dims, traces, top_degree=top)
    per_mu: dict[Partition, dict] = {}
    for d, tr in traces.items():
        for mu, c in graded_frobenius(tr, n).terms.items():
            per_mu.setdefault(mu, {})[d] = c
    entries = {}
    for mu, series in per_mu.items():
        for (la, rho), c in _gl_peel(series, k, j).items():
            entries[(la, rho, mu)] = c
    rep.tensor = TensorFrobenius(entries)
    rep.seconds = time.perf_counter() - t0
    return rep


def ring_frobenius_truncated(k: int, j: int, n: int, degree_cap: int, p: int = 0) -> dict:
    """Graded Frobenius of the full ring (no quotient) up to ``degree_cap``: {d: SymFunc}."""
    eng = _Engine(k, j, n, p, None)
    classes = partitions_of(n)
    out = {}
    for total in range(degree_cap + 1):
        for d in _compositions(total, k, j, n):
            keys, exps = eng.monomials(d)
            if keys.size == 0:
                continue
            tr = {}
            for rho in classes:
                s_index = eng.perms.index(class_representative(rho))
                k_img, sg = eng.act(exps, s_index)
                tr[rho] = int(sg[k_img == keys].sum())
            out[d] = graded_frobenius(tr, n)
    return out


def extract_generic_E(n: int, **kw) -> TensorFrobenius:
    """E_n from the oracle with n bosonic rows (coefficient-stable range)."""
    rep = coinvariant_frobenius(n, 0, n, **kw)
    t = rep.tensor
    if not t.is_nonnegative():
        raise ArithmeticError("negative Schur coefficient in the extracted E_n")
    return t


def dimension_check(rep: OracleReport) -> bool:
    """Sum over mu of (coefficient of s_mu) * f^mu equals the raw dimension, per multidegree."""
    from .partitions import count_syt

    for d, tr in rep.traces.items():
        f = graded_frobenius(tr, rep.n)
        if sum(c * count_syt(mu) for mu, c in f.terms.items()) != rep.dims[d]:
            return False
        if tr[(1,) * rep.n] != rep.dims[d]:
            return False
    return True


__all__ = [
    "CHECK_PRIME", "DegreeBoundAnomaly", "OracleReport", "OracleResourceError", "PRIME",
    "SuperMonomial", "apply_sigma", "class_representative", "coinvariant_frobenius", "compose",
    "dimension_check", "extract_generic_E", "invariants_of_multidegree", "quotient_traces",
    "ring_frobenius_truncated", "super_monomials",
]


def cached_frobenius(k: int, j: int, n: int, **kw) -> OracleReport:
    """coinvariant_frobenius through the text cache ``oracle.<k>.<j>.<n>.dat``."""
    from . import cache

    if cache.enabled():
        lines = cache.read("oracle", (k, j, n))
        if lines is not None:
            return OracleReport.from_text("\n".join(lines))
    rep = coinvariant_frobenius(k, j, n, **kw)
    if cache.enabled():
        cache.write("oracle", (k, j, n), rep.to_text().splitlines())
    return rep
