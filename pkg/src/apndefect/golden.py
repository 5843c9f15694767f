"""Reference difference squares over GF(16) and a loader for them."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .field import FieldCtx

EXAMPLE_F0Z = "example1_f0z_n4.txt"
EXAMPLE_INVERSE = "example2_inverse_n4.txt"


@dataclass(frozen=True)
class GoldenSquare:
    """Rows a = 1, z, ..., z^14, columns x = 0, 1, z, ..., z^14 (canonical order)."""

    values: np.ndarray  # (15, 16) field elements as integers
    marked: np.ndarray  # (15, 16) bool
    marked_columns: np.ndarray  # (16,) bool, circles in the header line


def _element(ctx: FieldCtx, tok: str) -> int:
    return 0 if tok == "-" else ctx.zeta(int(tok))


def load_golden(ctx: FieldCtx, name: str) -> GoldenSquare:
    if ctx.n != 4:
        raise ValueError("reference squares are over GF(16)")
    text = resources.files("apndefect.data").joinpath(name).read_text()
    header = None
    rows, marks = [], []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# columns:"):
            header = line.split(":", 1)[1].split()
            continue
        if not line or line.startswith("#"):
            continue
        label, *cells = line.split()
        if ctx.zeta(int(label)) != ctx.zeta(len(rows)):
            raise ValueError(f"{name}: rows out of canonical order at {label}")
        rows.append([_element(ctx, c.rstrip("*")) for c in cells])
        marks.append([c.endswith("*") for c in cells])
    cols = np.array([h.endswith("*") for h in header or []], dtype=bool)
    return GoldenSquare(np.array(rows, dtype=np.int64), np.array(marks, dtype=bool), cols)


# Entries where the reference transcription is known to be wrong, as
# (row index, column index), both in canonical order, -> the z-exponent that
# actually belongs there. In the inverse square, row z^10 would otherwise hold
# the value z^5 five times, which no derivative of a permutation can do.
KNOWN_MISPRINTS = {EXAMPLE_INVERSE: {(10, 13): 10}, EXAMPLE_F0Z: {}}
