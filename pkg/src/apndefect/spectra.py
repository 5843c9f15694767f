"""Row and column spectra, JWR triples, and local APN-ness of power maps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diffcore import DDTable, ddt, derivative_row, difference_square
from .errors import NotAPermutation, NotAPowerFunction, ZeroAlpha
from .field import FieldCtx
from .functions import FuncTable, is_permutation


def nabla_table(G: FuncTable, table: DDTable | None = None) -> np.ndarray:
    """nabla(a, x) for all (a, x), read off the DDT: delta(a, D_aG(x))."""
    table = table or ddt(G)
    sq = difference_square(G)
    return np.take_along_axis(table.counts, sq.data.astype(np.int64), axis=1)


@dataclass(frozen=True)
class SpectraReport:
    row_spec: frozenset
    col_spec: frozenset
    is_apn: bool

    def to_json(self, ctx: FieldCtx, render=None) -> dict:
        render = render or ctx.label
        return {
            "row_spec": [render(a) for a in canonical_sort(ctx, self.row_spec)],
            "col_spec": [render(x) for x in canonical_sort(ctx, self.col_spec)],
            "is_apn": self.is_apn,
        }


def canonical_sort(ctx: FieldCtx, elems) -> list[int]:
    return sorted(elems, key=lambda e: int(ctx.position[e]))


def row_spectrum(G: FuncTable, nab: np.ndarray | None = None) -> frozenset:
    """{a : D_aG is 2-to-1}."""
    nab = nabla_table(G) if nab is None else nab
    return frozenset((np.flatnonzero((nab == 2).all(axis=1)) + 1).tolist())


def column_spectrum(G: FuncTable, nab: np.ndarray | None = None) -> frozenset:
    """{x0 : nabla(a, x0) = 2 for every a != 0}."""
    nab = nabla_table(G) if nab is None else nab
    return frozenset(np.flatnonzero((nab == 2).all(axis=0)).tolist())


def spectra_report(G: FuncTable) -> SpectraReport:
    nab = nabla_table(G)
    return SpectraReport(
        row_spectrum(G, nab), column_spectrum(G, nab), bool((nab == 2).all())
    )


def _f0a_traces(ctx: FieldCtx, alpha: int):
    """Elements a (or x) with Tr(alpha/(a+alpha)) and Tr(alpha/a), a not in {0, alpha}."""
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    a = ctx.elements()
    a = a[(a != 0) & (a != alpha)]
    t_shift = ctx.trace_arr(ctx.mul_arr(alpha, ctx.inv_arr(a ^ alpha)))
    t_plain = ctx.trace_arr(ctx.mul_arr(alpha, ctx.inv_arr(a)))
    return a, t_shift, t_plain


def _f0a_excluded(ctx: FieldCtx, alpha: int) -> set[int]:
    w = ctx.omega()
    return {0, alpha, ctx.mul(alpha, w), ctx.mul(alpha, ctx.mul(w, w))}


def predicted_row_spectrum_f0a(ctx: FieldCtx, alpha: int) -> frozenset:
    a, t_shift, t_plain = _f0a_traces(ctx, alpha)
    if ctx.n % 2:
        hit = a[(t_shift * (t_plain ^ 1)) == 1]
        return frozenset([alpha, *hit.tolist()])
    excl = _f0a_excluded(ctx, alpha)
    hit = a[(t_shift == 1) & (t_plain == 1)]
    return frozenset(v for v in hit.tolist() if v not in excl)


def predicted_column_spectrum_f0a(ctx: FieldCtx, alpha: int) -> frozenset:
    a, t_shift, _ = _f0a_traces(ctx, alpha)
    if ctx.n % 2:
        return frozenset()
    excl = _f0a_excluded(ctx, alpha)
    return frozenset(v for v in a[t_shift == 1].tolist() if v not in excl)


def jwr_violating_triples(G: FuncTable) -> list[tuple[int, int, int]]:
    """Pairwise-distinct x < y < z with G(x)+G(y)+G(z)+G(x+y+z) = 0.

    Cubic in q; intended for n <= 8.
    """
    q = G.ctx.q
    t = G.table
    out = []
    zs = np.arange(q)
    for x in range(q):
        for y in range(x + 1, q):
            z = zs[y + 1 :]
            hit = (t[x] ^ t[y] ^ t[z] ^ t[x ^ y ^ z]) == 0
            out.extend((x, y, int(v)) for v in z[hit])
    return out


def flats_from_triples(triples) -> set[tuple[int, int, int, int]]:
    return {tuple(sorted((x, y, z, x ^ y ^ z))) for x, y, z in triples}


def _require_power(G: FuncTable):
    if not G.is_power:
        raise NotAPowerFunction(f"{G!r} was not built as a power function")


def is_locally_apn(G: FuncTable) -> bool:
    """delta_G(1, b) <= 2 for every b outside F_2."""
    _require_power(G)
    counts = np.bincount(derivative_row(G, 1), minlength=G.ctx.q)
    return bool((counts[2:] <= 2).all())


@dataclass(frozen=True)
class PowerEquivalences:
    apn: bool
    p1: bool
    one_papn: bool
    s1_full: bool

    def all_equal(self) -> bool:
        return len({self.apn, self.p1, self.one_papn, self.s1_full}) == 1


def power_equivalences_check(G: FuncTable) -> PowerEquivalences:
    _require_power(G)
    table = ddt(G)
    nab = nabla_table(G, table)
    return PowerEquivalences(
        apn=int(table.counts.max()) == 2,
        p1=bool((table.counts[0][table.counts[0] > 0] == 2).all()),
        one_papn=bool((nab[:, 1] == 2).all()),
        s1_full=int((nab[0] == 2).sum()) == G.ctx.q,
    )


@dataclass(frozen=True)
class LocalApnImplications:
    locally_apn: bool
    zero_papn: bool
    apn: bool


def locally_apn_implications(G: FuncTable) -> LocalApnImplications:
    _require_power(G)
    if not is_permutation(G):
        raise NotAPermutation(f"{G!r} is not a permutation")
    table = ddt(G)
    nab = nabla_table(G, table)
    return LocalApnImplications(
        locally_apn=is_locally_apn(G),
        zero_papn=bool((nab[:, 0] == 2).all()),
        apn=int(table.counts.max()) == 2,
    )
