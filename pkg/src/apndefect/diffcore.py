"""Derivatives, difference squares, DDTs and differential spectra.

Arrays are indexed by the integer encoding of field elements, so that
``x + a`` is ``x ^ a``. Row ``a`` of a square is stored at index ``a - 1``.
Use :meth:`DiffSquare.canonical` for the 0, 1, z, z^2, ... layout.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroDirection
from .field import FieldCtx
from .functions import FuncTable


def _check_direction(ctx: FieldCtx, a: int):
    if a == 0:
        raise ZeroDirection("derivative direction must be nonzero")
    if not 0 < a < ctx.q:
        raise ValueError(f"{a} is not an element of GF(2^{ctx.n})")


def derivative_row(G: FuncTable, a: int) -> np.ndarray:
    """D_aG(x) = G(x) + G(x + a) for every x."""
    _check_direction(G.ctx, a)
    t = G.table
    idx = np.arange(G.ctx.q)
    return t ^ t[idx ^ a]


def row_multiplicities(row: np.ndarray) -> np.ndarray:
    """For each x, how often row[x] occurs in the row (nabla along a row)."""
    _, inverse, counts = np.unique(row, return_inverse=True, return_counts=True)
    return counts[inverse]


@dataclass(frozen=True, eq=False)
class DiffSquare:
    ctx: FieldCtx
    data: np.ndarray  # shape (q-1, q); data[a-1, x] = D_aG(x)

    def row(self, a: int) -> np.ndarray:
        _check_direction(self.ctx, a)
        return self.data[a - 1]

    def canonical(self) -> np.ndarray:
        """Rows and columns permuted into the canonical element order."""
        order = self.ctx.ordering
        return self.data[order[1:] - 1][:, order]

    def nabla_matrix(self) -> np.ndarray:
        """nabla(a, x) for all a, x, counted by grouping each row's values."""
        return np.vstack([row_multiplicities(r) for r in self.data])


def difference_square(G: FuncTable) -> DiffSquare:
    q = G.ctx.q
    t = G.table
    idx = np.arange(q)
    a = np.arange(1, q)[:, None]
    data = t[None, :] ^ t[idx[None, :] ^ a]
    data = data.astype(np.uint16 if q <= 1 << 16 else np.int64)
    data.setflags(write=False)
    return DiffSquare(G.ctx, data)


def dset(G: FuncTable, a: int, x: int) -> set[int]:
    """{y : D_aG(y) = D_aG(x)}."""
    row = derivative_row(G, a)
    return set(np.flatnonzero(row == row[x]).tolist())


def nabla(G: FuncTable, a: int, x: int) -> int:
    return len(dset(G, a, x))


@dataclass(frozen=True, eq=False)
class DDTable:
    ctx: FieldCtx
    counts: np.ndarray  # shape (q-1, q); counts[a-1, b] = delta_G(a, b)

    def entry(self, a: int, b: int) -> int:
        _check_direction(self.ctx, a)
        return int(self.counts[a - 1, b])

    def to_json(self) -> dict:
        return {
            "n": self.ctx.n,
            "rows": [
                {"a": a, "counts": self.counts[a - 1].tolist()}
                for a in range(1, self.ctx.q)
            ],
        }


def ddt_from_rows(ctx: FieldCtx, rows) -> np.ndarray:
    q = ctx.q
    rows = np.asarray(rows, dtype=np.int64)
    offsets = np.arange(rows.shape[0])[:, None] * q
    return np.bincount((rows + offsets).ravel(), minlength=rows.shape[0] * q).reshape(
        rows.shape[0], q
    )


def ddt(G: FuncTable) -> DDTable:
    """Counts delta_G(a, b) straight from the value table."""
    q = G.ctx.q
    t = G.table
    idx = np.arange(q)
    counts = np.empty((q - 1, q), dtype=np.int64)
    # chunked so that n = 12..13 stays within a few hundred MiB
    step = max(1, (1 << 22) // q)
    for start in range(1, q, step):
        a = np.arange(start, min(q, start + step))[:, None]
        counts[start - 1 : start - 1 + a.shape[0]] = ddt_from_rows(
            G.ctx, t[None, :] ^ t[idx[None, :] ^ a]
        )
    counts.setflags(write=False)
    return DDTable(G.ctx, counts)


def delta_uniformity(G: FuncTable | DDTable) -> int:
    table = G if isinstance(G, DDTable) else ddt(G)
    return int(table.counts.max())


@dataclass(frozen=True)
class DiffSpectrum:
    q: int
    frequencies: dict[int, int] = field(default_factory=dict)

    def normalized(self) -> dict[int, float]:
        """omega_v = frequency of v divided by q - 1 (the per-row count)."""
        return {v: c / (self.q - 1) for v, c in self.frequencies.items()}

    def per_row(self) -> dict[int, int]:
        """Exact per-row frequencies; only valid when every row agrees."""
        out = {}
        for v, c in self.frequencies.items():
            if c % (self.q - 1):
                raise ValueError("rows do not share a common spectrum")
            out[v] = c // (self.q - 1)
        return out


def diff_spectrum(G: FuncTable | DDTable) -> DiffSpectrum:
    table = G if isinstance(G, DDTable) else ddt(G)
    values, counts = np.unique(table.counts, return_counts=True)
    return DiffSpectrum(
        table.ctx.q, {int(v): int(c) for v, c in zip(values, counts)}
    )


def marked_rows(G: FuncTable | DiffSquare) -> dict[int, set[int]]:
    """A_a: the values occurring more than twice in row a."""
    sq = G if isinstance(G, DiffSquare) else difference_square(G)
    out = {}
    for a in range(1, sq.ctx.q):
        c = Counter(sq.data[a - 1].tolist())
        out[a] = {v for v, m in c.items() if m > 2}
    return out


def marked_mask(G: FuncTable | DiffSquare) -> np.ndarray:
    """Boolean (q-1, q) mask of the entries whose value lies in A_a."""
    sq = G if isinstance(G, DiffSquare) else difference_square(G)
    return sq.nabla_matrix() > 2


def is_apn(G: FuncTable) -> bool:
    return delta_uniformity(G) == 2
