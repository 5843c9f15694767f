"""Vanishing flats read off the difference square, and their closed forms.

A value hit 2k times in row a comes from k pairs {y, y + a}; any two of
those pairs form a flat {y1, y1 + a, y2, y2 + a} on which G sums to zero.
Each flat shows up once for each of its three difference directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defect import d_value
from .diffcore import DDTable, ddt
from .errors import NonIntegralCount, OddN, ZeroAlpha
from .field import FieldCtx
from .functions import FuncTable

Flat = tuple[int, int, int, int]


@dataclass(frozen=True)
class FlatSet:
    flats: frozenset
    raw_count: int

    def __len__(self):
        return len(self.flats)

    def sorted(self) -> list[Flat]:
        return sorted(self.flats)

    def to_json(self, ctx: FieldCtx, render=None) -> dict:
        render = render or ctx.label
        pos = ctx.position
        rows = [sorted(f, key=lambda e: int(pos[e])) for f in self.flats]
        rows.sort(key=lambda f: [int(pos[e]) for e in f])
        return {
            "count": len(self.flats),
            "raw_count": self.raw_count,
            "flats": [[render(e) for e in f] for f in rows],
        }


def _pair_flats(a: int, reps: np.ndarray) -> np.ndarray:
    """All flats from choosing two of the pairs {r, r + a}, r in reps."""
    i, j = np.triu_indices(reps.size, 1)
    y1, y2 = reps[i], reps[j]
    return np.stack([y1, y1 ^ a, y2, y2 ^ a], axis=1)


def _dedup(chunks) -> tuple[frozenset, int]:
    chunks = [c for c in chunks if c.size]
    if not chunks:
        return frozenset(), 0
    raw = np.sort(np.concatenate(chunks), axis=1)
    # pack the sorted 4-tuple into one 64-bit key (elements fit in 16 bits)
    keys = (raw[:, 0] << 48) | (raw[:, 1] << 32) | (raw[:, 2] << 16) | raw[:, 3]
    uniq = np.unique(keys)
    mask = 0xFFFF
    flats = frozenset(
        zip(
            ((uniq >> 48) & mask).tolist(),
            ((uniq >> 32) & mask).tolist(),
            ((uniq >> 16) & mask).tolist(),
            (uniq & mask).tolist(),
        )
    )
    return flats, raw.shape[0]


def _all_pairs(G: FuncTable) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(a, r) for every pair {r, r + a} with r < r + a, and the value D_aG(r)."""
    q = G.ctx.q
    t = G.table
    x = np.arange(q)
    a = np.arange(1, q)[:, None]
    partner = x[None, :] ^ a
    keep = x[None, :] < partner
    aa = np.broadcast_to(a, keep.shape)[keep]
    rr = np.broadcast_to(x, keep.shape)[keep]
    return aa, rr, t[rr] ^ t[rr ^ aa]


def vanishing_flats(G: FuncTable) -> FlatSet:
    q = G.ctx.q
    aa, rr, vals = _all_pairs(G)
    order = np.lexsort((rr, vals, aa))
    aa, rr, key = aa[order], rr[order], aa[order] * q + vals[order]
    starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
    sizes = np.diff(np.r_[starts, key.size])
    chunks = []
    # groups of k pairs in the same row with the same value give C(k, 2) flats
    for k in np.unique(sizes[sizes >= 2]).tolist():
        s = starts[sizes == k]
        i, j = np.triu_indices(k, 1)
        y1 = rr[s[:, None] + i[None, :]].ravel()
        y2 = rr[s[:, None] + j[None, :]].ravel()
        a = np.repeat(aa[s], i.size)
        chunks.append(np.stack([y1, y1 ^ a, y2, y2 ^ a], axis=1))
    flats, raw = _dedup(chunks)
    return FlatSet(flats, raw)


def is_vanishing_flat(G: FuncTable, flat) -> bool:
    x, y, z, w = flat
    return (
        len({x, y, z, w}) == 4
        and x ^ y ^ z ^ w == 0
        and G(x) ^ G(y) ^ G(z) ^ G(w) == 0
    )


def vf_count_formula(table: DDTable) -> int:
    """|VF| = (1/3) sum_{a, b} C(delta(a, b)/2, 2)."""
    half = np.asarray(table.counts, dtype=np.int64) // 2
    total = int((half * (half - 1) // 2).sum())
    if total % 3:
        raise NonIntegralCount(f"sum of C(delta/2, 2) is {total}, not divisible by 3")
    return total // 3


def closed_vf_inverse(ctx: FieldCtx) -> FlatSet:
    """{0, z^i, z^i w, z^i w^2} for 0 <= i < (q-1)/3."""
    if ctx.n % 2:
        raise OddN("the inverse has no vanishing flats for odd n")
    w = ctx.omega()
    w2 = ctx.mul(w, w)
    flats = set()
    for i in range((ctx.q - 1) // 3):
        b = ctx.zeta(i)
        flats.add(tuple(sorted((0, b, ctx.mul(b, w), ctx.mul(b, w2)))))
    return FlatSet(frozenset(flats), 3 * len(flats))


def _root(ctx: FieldCtx, c: int) -> int:
    """Either root of x^2 + x + c; the flats below do not depend on which."""
    return min(ctx.solve_quadratic(1, 1, c))


def closed_vf_f0a(ctx: FieldCtx, alpha: int) -> FlatSet:
    """VF of the inverse with 0 -> 1/alpha, alpha -> 0, built from its 4- and 6-point dsets."""
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    m, div, tr = ctx.mul, ctx.div, ctx.trace
    chunks = []

    def emit(a: int, reps):
        chunks.append(_pair_flats(a, np.array(reps, dtype=np.int64)))

    if ctx.n % 2:
        special = {0, alpha}
    else:
        w = ctx.omega()
        aw, aw2 = m(alpha, w), m(alpha, m(w, w))
        special = {0, alpha, aw, aw2}
        # direction alpha pairs 0 with alpha and alpha*w with alpha*w^2
        emit(alpha, [0, aw])
        if ctx.n % 4 == 2:
            emit(aw, [0, alpha])
            emit(aw2, [0, alpha])
        else:
            for a, c in ((aw, w), (aw2, m(w, w))):
                rho = _root(ctx, c)
                emit(a, [0, alpha, m(a, rho)])

    for a in range(1, ctx.q):
        if a in special:
            continue
        if tr(div(alpha, a ^ alpha)) == 0:
            rho = _root(ctx, div(alpha, a ^ alpha))
            emit(a, [0, m(a, rho)])
        if tr(div(alpha, a)) == ctx.n % 2:
            rho = _root(ctx, div(a ^ alpha, a))
            emit(a, [alpha, m(a, rho)])
    flats, raw = _dedup(chunks)
    return FlatSet(flats, raw)


@dataclass(frozen=True)
class VFIdentity:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def defect_vf_identity_check(G: FuncTable) -> VFIdentity:
    """APN-def(G) against q - 12|VF| + sum_a (3 w_a - chi_a) - 1."""
    q = G.ctx.q
    rep = d_value(G)
    vf = vf_count_formula(ddt(G))
    rhs = q - 12 * vf + sum(3 * r.w - r.chi for r in rep.per_row) - 1
    return VFIdentity(rep.apn_defect, rhs)


def vf_count_f0a_formula(n: int, k: int, ell_or_s: int) -> int:
    """|VF| of the modified inverse from its trace counters."""
    q = 1 << n
    if n % 2 or n % 4 == 2:
        num = q + ell_or_s - k - 1
    else:
        num = q + ell_or_s - k + 3
    if num % 3:
        raise NonIntegralCount(f"{num} is not divisible by 3")
    return num // 3

