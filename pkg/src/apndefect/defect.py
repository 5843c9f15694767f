"""APN-defect: per-row partitions, D(G), and the closed forms it is checked against.

For a direction a, S_a is the set of x with nabla(a, x) = 2. Every value
hit more than twice is hit 2k times (k >= 2); w collects sum k^2 over those
values and chi flags a fully 2-to-1 row. Then

    D(G) = sum_a (|S_a| - w_a + chi_a),   APN-def(G) = q^2 - 1 - D(G).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .diffcore import DDTable, derivative_row
from .errors import MalformedDDT, NotShiftedLinear, OddN, RowNotApplicable, ZeroAlpha
from .field import FieldCtx, divides_indicator, kloosterman
from .functions import FuncTable
from .spectra import predicted_row_spectrum_f0a


@dataclass(frozen=True)
class RowPartition:
    a: int
    s_size: int
    ks: tuple[int, ...]
    chi: int

    @property
    def t_a(self) -> int:
        return len(self.ks)

    @property
    def w(self) -> int:
        return sum(k * k for k in self.ks)

    @property
    def contribution(self) -> int:
        return self.s_size - self.w + self.chi


def partition_of_row(a: int, row: np.ndarray, q: int) -> RowPartition:
    _, counts = np.unique(row, return_counts=True)
    return partition_from_counts(a, counts, q)


def partition_from_counts(a: int, counts: np.ndarray, q: int) -> RowPartition:
    """Same, from the multiplicity of each value (zero entries are ignored)."""
    s_size = 2 * int((counts == 2).sum())
    big = counts[counts > 2]
    ks = tuple(sorted((big // 2).tolist()))
    return RowPartition(a, s_size, ks, int(s_size == q))


def row_partition(G: FuncTable, a: int) -> RowPartition:
    return partition_of_row(a, derivative_row(G, a), G.ctx.q)


@dataclass(frozen=True)
class DefectReport:
    q: int
    d_value: int
    per_row: tuple[RowPartition, ...] = ()

    @property
    def apn_defect(self) -> int:
        return self.q * self.q - 1 - self.d_value

    @property
    def ratio(self) -> tuple[int, int]:
        """R(G) as an unreduced (numerator, denominator) pair."""
        return self.d_value, self.q * self.q - 1

    @property
    def ratio_fraction(self) -> Fraction:
        return Fraction(*self.ratio)

    @property
    def quasi_apn(self) -> bool:
        return self.d_value > 0

    @property
    def boundary(self) -> bool:
        """D(G) = 0: not quasi-APN, but on the edge of it."""
        return self.d_value == 0

    def to_json(self, ctx: FieldCtx, function: str = "", render=None) -> dict:
        render = render or ctx.label
        num, den = self.ratio
        rows = sorted(self.per_row, key=lambda r: int(ctx.position[r.a]))
        return {
            "n": ctx.n,
            "function": function,
            "d_value": self.d_value,
            "apn_defect": self.apn_defect,
            "ratio": {"num": num, "den": den},
            "quasi_apn": self.quasi_apn,
            "quasi_apn_boundary": self.boundary,
            "rows": [
                {"a": render(r.a), "s_size": r.s_size, "ks": list(r.ks), "chi": r.chi}
                for r in rows
            ],
        }


def d_value(G: FuncTable) -> DefectReport:
    """D(G) by partitioning every row of the difference square."""
    q = G.ctx.q
    rows = tuple(row_partition(G, a) for a in range(1, q))
    return DefectReport(q, sum(r.contribution for r in rows), rows)


def apn_defect(G: FuncTable) -> int:
    return d_value(G).apn_defect


def _validate_ddt(counts: np.ndarray, q: int):
    if counts.shape != (q - 1, q):
        raise MalformedDDT(f"expected shape {(q - 1, q)}, got {counts.shape}")
    if (counts.sum(axis=1) != q).any():
        raise MalformedDDT("every DDT row must sum to q")
    if (counts % 2).any() or (counts < 0).any():
        raise MalformedDDT("DDT entries must be non-negative and even")


def d_value_from_spectrum(table: DDTable) -> int:
    """D(G) from the counts delta(a, b) alone."""
    q = table.ctx.q
    c = np.asarray(table.counts, dtype=np.int64)
    _validate_ddt(c, q)
    s = (c * (c == 2)).sum(axis=1)
    w = ((c // 2) ** 2 * (c > 2)).sum(axis=1)
    chi = (s == q).astype(np.int64)
    return int((s - w + chi).sum())


def power_bounds(n: int) -> tuple[int, int]:
    """Bounds on APN-def(x^d) for non-APN power maps."""
    q = 1 << n
    return 9 * (q - 1), (q * q + 4 * q + 4) * (q - 1) // 4


def two_valued_closed_form(n: int, s: int) -> int:
    """D(G) when every delta(a, b) lies in {0, 2^s}, 2 <= s <= n."""
    if not 2 <= s <= n:
        raise ValueError("need 2 <= s <= n")
    q = 1 << n
    return -(q - 1) * q * (1 << s) // 4


def two_valued_defect_bounds(n: int) -> tuple[int, int]:
    """The displayed defect range for non-APN two-valued functions.

    The lower end is not attained: for s = 2 the defect is (q-1)(2q+1).
    """
    q = 1 << n
    return (q - 1) * (3 * q + 2) // 2, (q * q + 4 * q + 4) * (q - 1) // 4


def shifted_linear_kernel_dims(G: FuncTable) -> list[int]:
    """s_a = dim ker(x -> D_aG(x) + G(a) + G(0)) for each a, in encoding order.

    Raises NotShiftedLinear unless each such map is F_2-linear.
    """
    ctx = G.ctx
    q, n = ctx.q, ctx.n
    x = ctx.elements()
    bits = (x[:, None] >> np.arange(n)[None, :]) & 1
    dims = []
    for a in range(1, q):
        lin = derivative_row(G, a) ^ G(a) ^ G(0)
        basis = lin[1 << np.arange(n)]
        # linear iff it agrees with the XOR of its basis images everywhere
        span = np.bitwise_xor.reduce(bits * basis[None, :], axis=1)
        if not np.array_equal(span, lin):
            raise NotShiftedLinear(f"D_aG + G(a) + G(0) is not additive for a={a}")
        zeros = int((lin == 0).sum())
        dims.append(zeros.bit_length() - 1)
    return dims


def do_closed_form(G: FuncTable) -> int:
    """APN-def via kernel dimensions: (q+1)|N| + q * sum_{s_a > 1} 2^(s_a - 2)."""
    q = G.ctx.q
    big = [s for s in shifted_linear_kernel_dims(G) if s > 1]
    return (q + 1) * len(big) + q * sum(1 << (s - 2) for s in big)


# ---------------------------------------------------------------------------
# Power maps with known spectra. Each row stores its applicability test, the
# printed per-row spectrum {delta: count}, and the printed closed form for D.


@dataclass(frozen=True)
class Table1Row:
    row_id: int
    label: str
    exponents: object  # (n, params) -> list of d
    applies: object  # (n, params) -> str | None, the violated condition
    spectrum: object  # (n, params) -> {delta: count per row}
    printed_d: object  # (n, params) -> Fraction


def _gold_s(n, p):
    return gcd(n, p["t"])


def _row1_applies(n, p):
    t = p.get("t")
    if t is None or not 1 <= t <= n // 2:
        return "needs 1 <= t <= n/2"
    if gcd(n, t) < 2:
        return "gcd(n, t) = 1 makes x^d APN; the two-valued form needs s >= 2"
    return None


def _row2_applies(n, p):
    t = p.get("t")
    if t is None or not 2 <= t <= n // 2:
        return "needs 2 <= t <= n/2"
    if n == 3 * t:
        return "needs n != 3t"
    s = gcd(n, t)
    if (n // s) % 2 == 0:
        return "needs n/s odd"
    if s < 2:
        return "s = 1 makes x^d APN; the two-valued form needs s >= 2"
    return None


def _two_valued_spectrum(n, p):
    s = _gold_s(n, p)
    return {0: (1 << n) - (1 << (n - s)), 1 << s: 1 << (n - s)}


def _two_valued_printed(n, p):
    s = _gold_s(n, p)
    return Fraction(-((1 << n) - 1) * (1 << (n + s - 2)))


def _w7(n):
    K = kloosterman(n)
    w4 = divides_indicator(2, n)
    w6 = Fraction((1 << (n - 2)) + 1 - 5 * w4, 6) + (-1) ** n * Fraction(K, 8)
    w2 = (1 << (n - 1)) - 3 * w6 - 2 * w4
    w0 = (1 << (n - 1)) + 2 * w6 + w4
    return {0: w0, 2: w2, 4: w4, 6: w6}


def _printed_d7(n, p):
    q, K = 1 << n, kloosterman(n)
    inner = (
        q - (1 << (n - 2)) - 1
        - Fraction(13 * divides_indicator(2, n), 6)
        - Fraction(9 * (1 << (n - 2)) + 9, 6)
        - (-1) ** n * Fraction(15 * K, 8)
    )
    return (q - 1) * inner


def _w_row6(n):
    K = kloosterman(n)
    w8 = divides_indicator(3, n)
    w6 = Fraction((1 << (n - 1)) - 3 - (-1) ** n * 5, 12) + (-1) ** n * Fraction(K, 8) - w8
    w2 = (1 << (n - 1)) - 3 * w6 - 4 * w8
    w0 = (1 << (n - 1)) + 2 * w6 + 3 * w8
    return {0: w0, 2: w2, 6: w6, 8: w8}


def _printed_d6(n, p):
    q, K = 1 << n, kloosterman(n)
    inner = q - 14 * divides_indicator(3, n) + Fraction(
        -10 * (1 << (n - 1)) + 30 + (20 - 15 * K) * (-1) ** n, 8
    )
    return (q - 1) * inner


def _w_half_minus(n):
    w4 = 1 - divides_indicator(4, n)
    h = 1 << (n // 2 - 1)
    return {
        0: (1 << (n - 1)) + h - 2 + w4,
        2: (1 << (n - 1)) - h + 1 - 2 * w4,
        4: w4,
        (1 << (n // 2)) - 2: 1,
    }


def _printed_half_minus(n, p):
    q = 1 << n
    return Fraction((q - 1) * (q - (1 << (n - 2)) - 4 + 4 * divides_indicator(4, n) + 1))


def _w_half_plus(n):
    h = 1 << (n // 2 - 1)
    return {0: (1 << (n - 1)) + h - 1, 2: (1 << (n - 1)) - h, 1 << (n // 2): 1}


def _printed_half_plus(n, p):
    return Fraction(
        (1 << (2 * n)) - (1 << (3 * n // 2)) - (1 << (2 * n - 2))
        - (1 << n) + (1 << (n // 2)) + (1 << (n - 2))
    )


def _w_row8(n):
    K = kloosterman(n)
    d3 = divides_indicator(3, n)
    w6 = Fraction((1 << (n - 2)) + 1, 6) - Fraction(K, 8)
    return {0: (1 << (n - 1)) + 2 * w6 + 2 * d3, 2: (1 << (n - 1)) - 3 * w6 - 3 * d3, 6: w6}


def _printed_d8(n, p):
    q, K = 1 << n, kloosterman(n)
    inner = (
        q - (1 << (n - 2)) - 1 - 6 * divides_indicator(3, n)
        - Fraction(9 * (1 << (n - 2)) + 9, 2) + Fraction(15 * K, 8)
    )
    return (q - 1) * inner


def _w_row9(n):
    t = n // 2
    X = 4 - kloosterman(n)
    return {
        0: 89 * Fraction(1 << n, 1 << 7) + 7 * Fraction(1 << t, 1 << 7) * X,
        2: 5 * Fraction(1 << n, 32) - 5 * Fraction(1 << t, 32) * X,
        4: 7 * Fraction(1 << n, 64) + 9 * Fraction(1 << t, 64) * X,
        6: Fraction(1 << n, 32) - Fraction(1 << t, 32) * X,
        8: Fraction(1 << n, 128) - Fraction(1 << t, 128) * X,
    }


def _printed_d9(n, p):
    t = n // 2
    X = 4 - kloosterman(n)
    first = (
        5 * Fraction(1 << n, 16) - 28 * Fraction(1 << n, 64)
        - 9 * Fraction(1 << n, 32) - 16 * Fraction(1 << n, 128)
    )
    second = X * (
        5 * Fraction(1 << t, 16) + 36 * Fraction(1 << t, 64)
        - 16 * Fraction(1 << t, 128) - 9 * Fraction(1 << t, 32)
    )
    return ((1 << n) - 1) * (first - second)


def _need(cond, msg):
    return None if cond else msg


TABLE1 = {
    1: Table1Row(
        1, "2^t+1 (Gold)",
        lambda n, p: [(1 << p["t"]) + 1],
        _row1_applies, lambda n, p: _two_valued_spectrum(n, p), _two_valued_printed,
    ),
    2: Table1Row(
        2, "2^(2t)-2^t+1 (Kasami)",
        lambda n, p: [(1 << (2 * p["t"])) - (1 << p["t"]) + 1],
        _row2_applies, lambda n, p: _two_valued_spectrum(n, p), _two_valued_printed,
    ),
    3: Table1Row(
        3, "2^n-2 (inverse)",
        lambda n, p: [(1 << n) - 2],
        lambda n, p: _need(n % 2 == 0, "needs n even"),
        lambda n, p: {0: (1 << (n - 1)) + 1, 2: (1 << (n - 1)) - 2, 4: 1},
        lambda n, p: Fraction(((1 << n) - 1) * ((1 << n) - 8)),
    ),
    4: Table1Row(
        4, "2^(2t)+2^t+1, n=4t",
        lambda n, p: [(1 << (n // 2)) + (1 << (n // 4)) + 1],
        lambda n, p: _need(n % 4 == 0, "needs n = 4t"),
        lambda n, p: {
            0: 5 * (1 << (n - 3)) - (1 << (3 * n // 4 - 3)),
            2: (1 << (n - 2)) + (1 << (3 * n // 4 - 2)),
            4: (1 << (n - 3)) - (1 << (3 * n // 4 - 3)),
        },
        lambda n, p: Fraction(((1 << n) - 1) * (1 << (3 * n // 4))),
    ),
    5: Table1Row(
        5, "7",
        lambda n, p: [7],
        lambda n, p: _need(n >= 6, "needs n >= 6"),
        lambda n, p: _w7(n), _printed_d7,
    ),
    6: Table1Row(
        6, "2^(n-2)-1, or 2^((n-1)/2)-1 for odd n",
        lambda n, p: [(1 << (n - 2)) - 1] + ([(1 << ((n - 1) // 2)) - 1] if n % 2 else []),
        lambda n, p: _need(n >= 6, "needs n >= 6"),
        lambda n, p: _w_row6(n), _printed_d6,
    ),
    7: Table1Row(
        7, "2^(n/2)-1",
        lambda n, p: [(1 << (n // 2)) - 1],
        lambda n, p: _need(n >= 6 and n % 2 == 0, "needs n >= 6 even"),
        lambda n, p: _w_half_minus(n), _printed_half_minus,
    ),
    8: Table1Row(
        8, "2^(n/2+1)-1",
        lambda n, p: [(1 << (n // 2 + 1)) - 1],
        lambda n, p: _need(n >= 6 and n % 2 == 0, "needs n >= 6 even"),
        lambda n, p: _w_half_plus(n), _printed_half_plus,
    ),
    9: Table1Row(
        9, "2^((n+3)/2)-1",
        lambda n, p: [(1 << ((n + 3) // 2)) - 1],
        lambda n, p: _need(n >= 7 and n % 2 == 1, "needs n >= 7 odd"),
        lambda n, p: _w_row8(n), _printed_d8,
    ),
    10: Table1Row(
        10, "2^(t+1)+2^((t+1)/2)+1 or 2^(t+1)+3, n=2t",
        lambda n, p: [(1 << (n // 2 + 1)) + (1 << ((n // 2 + 1) // 2)) + 1, (1 << (n // 2 + 1)) + 3],
        lambda n, p: _need(
            n % 2 == 0 and n // 2 >= 5 and (n // 2) % 2 == 1, "needs n = 2t, t >= 5 odd"
        ),
        lambda n, p: _w_row9(n), _printed_d9,
    ),
}


def _table1_row(row_id: int, n: int, params) -> Table1Row:
    try:
        row = TABLE1[row_id]
    except KeyError:
        raise RowNotApplicable(f"no tabulated row {row_id}") from None
    why = row.applies(n, params or {})
    if why:
        raise RowNotApplicable(f"row {row_id} ({row.label}) at n={n}: {why}")
    return row


def table1_spectrum(row_id: int, n: int, params=None) -> dict[int, Fraction]:
    """The row's per-direction spectrum {delta: number of b}."""
    row = _table1_row(row_id, n, params)
    return {v: Fraction(c) for v, c in row.spectrum(n, params or {}).items() if c}


def d_from_row_spectrum(n: int, spectrum) -> Fraction:
    """D(x^d) for a power map whose rows all have the given spectrum."""
    q = 1 << n
    w2 = Fraction(spectrum.get(2, 0))
    w = sum(Fraction(c) * Fraction(v, 2) ** 2 for v, c in spectrum.items() if v > 2)
    chi = 1 if 2 * w2 == q else 0
    return (q - 1) * (2 * w2 - w + chi)


def table1_d_value(row_id: int, n: int, params=None) -> int:
    """D(x^d) for a tabulated power-map row, evaluated from the row's spectrum column.

    Several printed closed forms disagree with their own spectra (see
    :func:`table1_printed_d_value`); the spectrum is what defines D.
    """
    d = d_from_row_spectrum(n, table1_spectrum(row_id, n, params))
    if d.denominator != 1:
        raise RowNotApplicable(f"row {row_id} spectrum is not integral at n={n}")
    return int(d)


def table1_printed_d_value(row_id: int, n: int, params=None) -> Fraction:
    """The printed D(x^d) expression, evaluated verbatim."""
    row = _table1_row(row_id, n, params)
    return Fraction(row.printed_d(n, params or {}))


def table1_exponents(row_id: int, n: int, params=None) -> list[int]:
    row = _table1_row(row_id, n, params)
    return row.exponents(n, params or {})


# ---------------------------------------------------------------------------
# F_{0,alpha}


@dataclass(frozen=True)
class TraceCounters:
    k: int
    ell: int | None  # odd n only
    s: int | None  # even n only


def trace_counters_f0a(ctx: FieldCtx, alpha: int) -> TraceCounters:
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    k = len(predicted_row_spectrum_f0a(ctx, alpha))
    a = ctx.elements()
    a = a[(a != 0) & (a != alpha)]
    t_shift = ctx.trace_arr(ctx.mul_arr(alpha, ctx.inv_arr(a ^ alpha)))
    t_plain = ctx.trace_arr(ctx.mul_arr(alpha, ctx.inv_arr(a)))
    if ctx.n % 2:
        return TraceCounters(k, int(((t_shift == 0) & (t_plain == 1)).sum()), None)
    w = ctx.omega()
    excl = np.array([ctx.mul(alpha, w), ctx.mul(alpha, ctx.mul(w, w))])
    both = a[(t_shift == 0) & (t_plain == 0)]
    s = int((~np.isin(both, excl)).sum())
    return TraceCounters(k, None, s)


def f0a_defect_closed_form(n: int, counters: TraceCounters) -> int:
    q, k = 1 << n, counters.k
    if n % 2:
        return 9 * q + 8 * counters.ell - 9 * k - 9
    if n % 4 == 2:
        return 9 * q + 8 * counters.s - 9 * k - 9
    return 9 * q + 8 * counters.s - 9 * k + 5


def ferruh_relation_check(n: int, counters: TraceCounters) -> bool:
    """k = s for n = 2 mod 4, k = s + 4 for n = 0 mod 4."""
    if n % 2:
        raise OddN("the k/s relation is stated for even n")
    offset = 0 if n % 4 == 2 else 4
    return counters.k == counters.s + offset


def ozlem_relation(n: int, k: int) -> int:
    """APN-def(F_{0,alpha}) as APN-def(inverse) - k (- 18 when 4 | n)."""
    if n % 2:
        raise OddN("the relation is stated for even n")
    q = 1 << n
    return 9 * (q - 1) - k - (18 if n % 4 == 0 else 0)
