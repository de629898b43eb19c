"""Hot loops, compiled with numba when available.

Each kernel has a numba implementation and a vectorized numpy fallback with the
same signature; ``DBFLAB_JIT=0`` selects the fallback everywhere.  The public
wrappers at the bottom pick the backend.
"""
from __future__ import annotations

import numpy as np

from . import _jit
from ._jit import njit

# ----------------------------------------------------------------------------
# HHL statistics on fillings of a diagram
# ----------------------------------------------------------------------------


@njit
def _hhl_histogram_jit(content, att_i, att_j, below, arm, legp1, hist):
    """Accumulate (inv, maj) over every distinct rearrangement of ``content``.

    ``content`` is sorted ascending and is permuted in place (lexicographic
    next-permutation over a multiset).  ``hist[inv + shift, maj]`` is bumped.
    """
    n = content.shape[0]
    shift = hist.shape[0] // 2
    w = content
    while True:
        inv = 0
        for k in range(att_i.shape[0]):
            if w[att_i[k]] > w[att_j[k]]:
                inv += 1
        maj = 0
        for c in range(n):
            b = below[c]
            if b >= 0 and w[c] > w[b]:
                maj += legp1[c]
                inv -= arm[c]
        hist[inv + shift, maj] += 1
        i = n - 2
        while i >= 0 and w[i] >= w[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while w[j] <= w[i]:
            j -= 1
        tmp = w[i]
        w[i] = w[j]
        w[j] = tmp
        lo, hi = i + 1, n - 1
        while lo < hi:
            tmp = w[lo]
            w[lo] = w[hi]
            w[hi] = tmp
            lo += 1
            hi -= 1


def _multiset_permutations(content: np.ndarray) -> np.ndarray:
    """All distinct rearrangements as rows (lexicographic), built column by column."""
    values, counts = np.unique(content, return_counts=True)
    rows = np.zeros((1, 0), dtype=np.int64)
    left = np.tile(counts, (1, 1))
    for _ in range(content.shape[0]):
        new_rows, new_left = [], []
        for vi, v in enumerate(values):
            ok = left[:, vi] > 0
            if not ok.any():
                continue
            r = rows[ok]
            new_rows.append(np.hstack([r, np.full((r.shape[0], 1), v, dtype=np.int64)]))
            lft = left[ok].copy()
            lft[:, vi] -= 1
            new_left.append(lft)
        rows = np.vstack(new_rows)
        left = np.vstack(new_left)
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def _hhl_histogram_numpy(content, att_i, att_j, below, arm, legp1, hist):
    W = _multiset_permutations(content)
    inv = (W[:, att_i] > W[:, att_j]).sum(axis=1) if att_i.size else np.zeros(len(W), np.int64)
    has = below >= 0
    idx = np.nonzero(has)[0]
    if idx.size:
        des = W[:, idx] > W[:, below[idx]]
        maj = (des * legp1[idx]).sum(axis=1)
        inv = inv - (des * arm[idx]).sum(axis=1)
    else:
        maj = np.zeros(len(W), np.int64)
    shift = hist.shape[0] // 2
    np.add.at(hist, (inv + shift, maj), 1)


def hhl_geometry(mu: tuple[int, ...]):
    """Cells of the French diagram in reading order plus attack/descent data."""
    conj = [sum(1 for x in mu if x > a) for a in range(mu[0])] if mu else []
    order = [(a, b) for b in range(len(mu) - 1, -1, -1) for a in range(mu[b])]
    pos = {c: i for i, c in enumerate(order)}
    att_i, att_j = [], []
    for i, (a, b) in enumerate(order):
        for j in range(i + 1, len(order)):
            c, d = order[j]
            if d == b or (d == b - 1 and c < a):
                att_i.append(i)
                att_j.append(j)
    below = [pos.get((a, b - 1), -1) for a, b in order]
    arm = [mu[b] - a - 1 for a, b in order]
    legp1 = [conj[a] - b for a, b in order]
    as_arr = lambda x: np.asarray(x, dtype=np.int64)  # noqa: E731
    return as_arr(att_i), as_arr(att_j), as_arr(below), as_arr(arm), as_arr(legp1)


def hhl_histogram(mu: tuple[int, ...], content: tuple[int, ...], use_numba: bool | None = None):
    """Return an array H with H[i, j] = #fillings of content with inv = i - shift, maj = j."""
    n = sum(mu)
    geo = hhl_geometry(mu)
    bound = n * (n - 1) // 2 + n + 1
    hist = np.zeros((2 * bound + 1, bound + 1), dtype=np.int64)
    word = np.repeat(np.arange(len(content), dtype=np.int64), np.asarray(content, dtype=np.int64))
    word = np.sort(word)
    if use_numba is None:
        use_numba = _jit.USE_NUMBA
    if use_numba:
        _hhl_histogram_jit(word.copy(), *geo, hist)
    else:
        _hhl_histogram_numpy(word, *geo, hist)
    return hist, bound


# ----------------------------------------------------------------------------
# Normal forms in the coinvariant quotient over GF(p)
#
# Per multidegree d the quotient is computed in two steps.  Every monomial m is
# first rewritten through one "cover" v * m' (m' non-standard one degree lower)
# into the span of the uncovered monomials U; the remaining ideal relations are
# then row-reduced inside U.  Parents of all covers share flat buffers:
#   nf_flat[nf_off[i] + r * nf_width[i] + s]  normal form of parent row r, variable i
#   tgt_flat[sh_off[i] + s], sgn_flat[...]    index/sign of v_i * (standard s) in degree d
# ----------------------------------------------------------------------------


@njit
def _nfu_fill_jit(u_pos, cover_var, cover_parent, cover_eps, nf_flat, nf_off, nf_width,
                  tgt_flat, sgn_flat, sh_off, n_u, p):
    N = u_pos.shape[0]
    out = np.zeros((N, n_u), dtype=np.int64)
    for m in range(N):
        if u_pos[m] >= 0:
            out[m, u_pos[m]] = 1
            continue
        i = cover_var[m]
        w = nf_width[i]
        base = nf_off[i] + cover_parent[m] * w
        for s in range(w):
            a = nf_flat[base + s]
            if a == 0:
                continue
            t = tgt_flat[sh_off[i] + s]
            if t < 0:
                continue
            c = (a * (sgn_flat[sh_off[i] + s] * cover_eps[m] % p)) % p
            for col in range(n_u):
                x = out[t, col]
                if x != 0:
                    out[m, col] = (out[m, col] + c * x) % p
    return out


@njit
def _relation_rows_jit(rel_m, rel_var, rel_parent, rel_eps, nfu, nf_flat, nf_off, nf_width,
                       tgt_flat, sgn_flat, sh_off, p):
    R = rel_m.shape[0]
    n_u = nfu.shape[1]
    out = np.zeros((R, n_u), dtype=np.int64)
    for r in range(R):
        m = rel_m[r]
        if m >= 0:
            for col in range(n_u):
                out[r, col] = nfu[m, col]
        i = rel_var[r]
        w = nf_width[i]
        base = nf_off[i] + rel_parent[r] * w
        for s in range(w):
            a = nf_flat[base + s]
            if a == 0:
                continue
            t = tgt_flat[sh_off[i] + s]
            if t < 0:
                continue
            c = (p - (a * (sgn_flat[sh_off[i] + s] * rel_eps[r] % p)) % p) % p
            for col in range(n_u):
                x = nfu[t, col]
                if x != 0:
                    out[r, col] = (out[r, col] + c * x) % p
    return out


@njit
def _reynolds_rows_jit(img, sgn, nfu, p):
    R, P = img.shape
    n_u = nfu.shape[1]
    out = np.zeros((R, n_u), dtype=np.int64)
    for r in range(R):
        for k in range(P):
            t = img[r, k]
            c = sgn[r, k] % p
            for col in range(n_u):
                x = nfu[t, col]
                if x != 0:
                    out[r, col] = (out[r, col] + c * x) % p
    return out


@njit
def _rref_insert_jit(basis, pivot_col, col_row, rank, rows, p):
    """Insert ``rows`` into a reduced echelon basis whose pivots are the largest columns.

    basis[:rank] are the basis rows, pivot_col[r] their pivots, col_row[c] the
    basis row owning column c (or -1).  Returns the new rank.
    """
    n_u = basis.shape[1]
    for r in range(rows.shape[0]):
        if rank == n_u:
            break
        row = rows[r].copy()
        for c in range(n_u):
            if row[c] == 0:
                continue
            b = col_row[c]
            if b >= 0:
                f = row[c]
                for cc in range(n_u):
                    if basis[b, cc] != 0:
                        row[cc] = (row[cc] - f * basis[b, cc]) % p
        lead = -1
        for c in range(n_u - 1, -1, -1):
            if row[c] != 0:
                lead = c
                break
        if lead < 0:
            continue
        inv = 1
        e, base = p - 2, row[lead]
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for cc in range(n_u):
            row[cc] = row[cc] * inv % p
        for b in range(rank):
            f = basis[b, lead]
            if f != 0:
                for cc in range(n_u):
                    if row[cc] != 0:
                        basis[b, cc] = (basis[b, cc] - f * row[cc]) % p
        basis[rank] = row
        pivot_col[rank] = lead
        col_row[lead] = rank
        rank += 1
    return rank


@njit
def _reduce_rows_jit(nfu, basis, col_row, p):
    out = nfu.copy()
    N, n_u = out.shape
    for m in range(N):
        for c in range(n_u):
            b = col_row[c]
            if b < 0:
                continue
            f = out[m, c]
            if f == 0:
                continue
            for cc in range(n_u):
                if basis[b, cc] != 0:
                    out[m, cc] = (out[m, cc] - f * basis[b, cc]) % p
    return out


# -- numpy / exact fallbacks --------------------------------------------------------
def _mod(x, p):
    return x % p if p else x


def _inverse(x, p):
    from fractions import Fraction

    return pow(int(x), p - 2, p) if p else Fraction(1) / x


def _zeros(shape, p):
    if p:
        return np.zeros(shape, dtype=np.int64)
    return np.zeros(shape, dtype=object)


def _nfu_fill_numpy(u_pos, cover_var, cover_parent, cover_eps, nf_flat, nf_off, nf_width,
                    tgt_flat, sgn_flat, sh_off, n_u, p):
    N = u_pos.shape[0]
    out = _zeros((N, n_u), p)
    for m in range(N):
        if u_pos[m] >= 0:
            out[m, u_pos[m]] = 1
            continue
        i = cover_var[m]
        w = int(nf_width[i])
        row = nf_flat[nf_off[i] + cover_parent[m] * w: nf_off[i] + (cover_parent[m] + 1) * w]
        tg = tgt_flat[sh_off[i]: sh_off[i] + w]
        sg = sgn_flat[sh_off[i]: sh_off[i] + w]
        ok = (row != 0) & (tg >= 0)
        if ok.any():
            coef = _mod(row[ok] * (sg[ok] * int(cover_eps[m])), p)
            if p:
                out[m] = ((coef[:, None] * out[tg[ok]]) % p).sum(axis=0) % p
            else:
                out[m] = coef @ out[tg[ok]]
    return out


def _relation_rows_numpy(rel_m, rel_var, rel_parent, rel_eps, nfu, nf_flat, nf_off, nf_width,
                         tgt_flat, sgn_flat, sh_off, p):
    R = rel_m.shape[0]
    out = _zeros((R, nfu.shape[1]), p)
    for r in range(R):
        if rel_m[r] >= 0:
            out[r] = nfu[rel_m[r]]
        i = rel_var[r]
        w = int(nf_width[i])
        row = nf_flat[nf_off[i] + rel_parent[r] * w: nf_off[i] + (rel_parent[r] + 1) * w]
        tg = tgt_flat[sh_off[i]: sh_off[i] + w]
        sg = sgn_flat[sh_off[i]: sh_off[i] + w]
        ok = (row != 0) & (tg >= 0)
        if ok.any():
            coef = row[ok] * (sg[ok] * int(rel_eps[r]))
            if p:
                contrib = ((coef % p)[:, None] * nfu[tg[ok]] % p).sum(axis=0) % p
            else:
                contrib = coef @ nfu[tg[ok]]
            out[r] = _mod(out[r] - contrib, p)
    return out


def _reynolds_rows_numpy(img, sgn, nfu, p):
    R, P = img.shape
    out = _zeros((R, nfu.shape[1]), p)
    for k in range(P):
        out = _mod(out + sgn[:, k:k + 1] * nfu[img[:, k]], p)
    return out


def _rref_insert_numpy(basis, pivot_col, col_row, rank, rows, p):
    n_u = basis.shape[1]
    for r in range(rows.shape[0]):
        if rank == n_u:
            break
        row = rows[r].copy()
        for c in np.nonzero(col_row >= 0)[0]:
            f = row[c]
            if f != 0:
                row = _mod(row - f * basis[col_row[c]], p)
        nz = np.nonzero(row != 0)[0]
        if nz.size == 0:
            continue
        lead = int(nz[-1])
        row = _mod(row * _inverse(row[lead], p), p)
        col = basis[:rank, lead].copy()
        hit = np.nonzero(col != 0)[0]
        if hit.size:
            basis[hit] = _mod(basis[hit] - col[hit, None] * row[None, :], p)
        basis[rank] = row
        pivot_col[rank] = lead
        col_row[lead] = rank
        rank += 1
    return rank


def _reduce_rows_numpy(nfu, basis, col_row, p):
    out = nfu.copy()
    for c in np.nonzero(col_row >= 0)[0]:
        f = out[:, c].copy()
        hit = np.nonzero(f != 0)[0]
        if hit.size:
            out[hit] = _mod(out[hit] - f[hit, None] * basis[col_row[c]][None, :], p)
    return out


def backend(p: int, use_numba: bool | None = None) -> dict:
    """Kernel table for prime ``p`` (0 selects exact rational arithmetic)."""
    if use_numba is None:
        use_numba = _jit.USE_NUMBA
    if p and use_numba:
        return {
            "nfu": _nfu_fill_jit,
            "relations": _relation_rows_jit,
            "reynolds": _reynolds_rows_jit,
            "rref": _rref_insert_jit,
            "reduce": _reduce_rows_jit,
            "zeros": lambda shape: np.zeros(shape, dtype=np.int64),
        }
    return {
        "nfu": _nfu_fill_numpy,
        "relations": _relation_rows_numpy,
        "reynolds": _reynolds_rows_numpy,
        "rref": _rref_insert_numpy,
        "reduce": _reduce_rows_numpy,
        "zeros": lambda shape: _zeros(shape, p),
    }
