"""Function families on GF(2^n), materialised as full value tables."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateAlpha,
    IndexOutOfRange,
    ZeroAlpha,
    ZeroLeadingCoefficient,
)
from .field import FieldCtx


class FuncTable:
    """G: GF(2^n) -> GF(2^n) as a value table.

    ``table[x]`` is G(x) for the integer encoding x; ``values`` gives the
    same data in the canonical order 0, 1, z, z^2, .... ``exponent`` is set
    only for tables built by :func:`from_power`.
    """

    def __init__(self, ctx: FieldCtx, table, name: str = "", exponent: int | None = None):
        table = np.array(table, dtype=np.int64)
        if table.shape != (ctx.q,):
            raise ValueError(f"expected {ctx.q} values, got shape {table.shape}")
        if table.min() < 0 or table.max() >= ctx.q:
            raise ValueError("table values must be field elements")
        table.setflags(write=False)
        self.ctx = ctx
        self.table = table
        self.name = name
        self.exponent = exponent

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __len__(self):
        return self.ctx.q

    def __eq__(self, other):
        return (
            isinstance(other, FuncTable)
            and self.ctx == other.ctx
            and np.array_equal(self.table, other.table)
        )

    def __repr__(self):
        return f"FuncTable({self.name or '<table>'}, n={self.ctx.n})"

    @property
    def values(self) -> np.ndarray:
        return self.table[self.ctx.ordering]

    @property
    def is_power(self) -> bool:
        return self.exponent is not None


def is_permutation(G: FuncTable) -> bool:
    return np.unique(G.table).size == G.ctx.q


def from_power(ctx: FieldCtx, d: int) -> FuncTable:
    """x -> x^d, with 0^d = 0 for d > 0 and 0^0 = 1."""
    if d < 0:
        raise ValueError("exponent must be non-negative")
    return FuncTable(ctx, ctx.pow_arr(ctx.elements(), d), name=f"power:{d}", exponent=d)


def inverse(ctx: FieldCtx) -> FuncTable:
    G = from_power(ctx, ctx.q - 2)
    G.name = "inverse"
    return G


def gold(ctx: FieldCtx, t: int) -> FuncTable:
    G = from_power(ctx, (1 << t) + 1)
    G.name = f"gold:{t}"
    return G


@dataclass(frozen=True)
class DOSpec:
    """Terms (i, j, c) of sum c * x^(2^i + 2^j) with 1 <= j < i < n."""

    terms: tuple[tuple[int, int, int], ...]

    def validate(self, n: int):
        seen = set()
        for i, j, _ in self.terms:
            if not 1 <= j < i < n:
                raise IndexOutOfRange(f"DO term ({i}, {j}) violates 1 <= j < i < {n}")
            if (i, j) in seen:
                raise IndexOutOfRange(f"duplicate DO term ({i}, {j})")
            seen.add((i, j))


def from_do(ctx: FieldCtx, spec: DOSpec) -> FuncTable:
    spec.validate(ctx.n)
    x = ctx.elements()
    acc = np.zeros(ctx.q, dtype=np.int64)
    for i, j, c in spec.terms:
        acc ^= ctx.mul_arr(c, ctx.pow_arr(x, (1 << i) + (1 << j)))
    name = "do:" + ";".join(f"{i},{j},{c:x}" for i, j, c in spec.terms)
    return FuncTable(ctx, acc, name=name)


@dataclass(frozen=True)
class ModInvSpec:
    alphas: tuple[int, ...]

    def __post_init__(self):
        if len(self.alphas) < 2:
            raise ValueError("a cycle needs at least two points")
        if len(set(self.alphas)) != len(self.alphas):
            raise DuplicateAlpha(f"points must be pairwise distinct: {self.alphas}")


def modified_inverse(ctx: FieldCtx, spec: ModInvSpec) -> FuncTable:
    """The inverse map followed by the value cycle (a_1^-1 ... a_l^-1).

    So alpha_i is sent to alpha_{i+1}^-1 (indices cyclic); for alphas
    (0, alpha) this gives 0 -> alpha^-1 and alpha -> 0.
    """
    alphas = spec.alphas
    for a in alphas:
        if not 0 <= a < ctx.q:
            raise ValueError(f"{a} is not an element of GF(2^{ctx.n})")
    table = ctx.inv_arr(ctx.elements()).copy()
    ell = len(alphas)
    for i, a in enumerate(alphas):
        table[a] = ctx.inv_table[alphas[(i + 1) % ell]]
    name = "modinv:" + ",".join(f"{a:x}" for a in alphas)
    return FuncTable(ctx, table, name=name)


def f0a(ctx: FieldCtx, alpha: int) -> FuncTable:
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    return modified_inverse(ctx, ModInvSpec((0, alpha)))


@dataclass(frozen=True)
class CarlitzChain:
    """(...((a_0 x + a_1)^(q-2) + a_2)^(q-2) + ... )^(q-2) + a_{k+1}."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) < 2:
            raise ValueError("need at least a_0 and a_1")
        if self.coefficients[0] == 0:
            raise ZeroLeadingCoefficient("a_0 must be nonzero")

    @property
    def k(self) -> int:
        return len(self.coefficients) - 2


def eval_chain(ctx: FieldCtx, chain: CarlitzChain) -> FuncTable:
    a = chain.coefficients
    v = ctx.mul_arr(a[0], ctx.elements()) ^ a[1]
    for c in a[2:]:
        v = ctx.inv_arr(v) ^ c
    return FuncTable(ctx, v, name=f"chain:k={chain.k}")


def f2_chain(ctx: FieldCtx, alpha: int) -> CarlitzChain:
    """((d^2 x + d)^(q-2) + d^-1)^(q-2) + d with d = 1/alpha."""
    d = ctx.inv(alpha)
    return CarlitzChain((ctx.mul(d, d), d, alpha, d))


def f4_chain(ctx: FieldCtx, alpha: int, beta: int) -> CarlitzChain:
    """Rank-4 chain for the inverse with the values at alpha, beta swapped."""
    m, inv = ctx.mul, ctx.inv
    a2, b2 = m(alpha, alpha), m(beta, beta)
    s2 = a2 ^ b2
    s1 = alpha ^ beta
    ab = m(alpha, beta)
    return CarlitzChain(
        (
            m(s2, inv(m(a2, b2))),
            0,
            m(m(alpha, b2), inv(s2)),
            m(s1, inv(ab)),
            m(ab, inv(s1)),
            inv(beta),
        )
    )


def carlitz_rank_formula(m: int, cycle_lengths, zero_in_support: bool, q: int) -> tuple[int, bool]:
    """Chain length for tau_1...tau_m composed with the inverse.

    Returns (k, certified) where ``certified`` says k < (q-1)/2, the range
    in which k is guaranteed to be the Carlitz rank.
    """
    lengths = list(cycle_lengths)
    if len(lengths) != m:
        raise ValueError("m must equal the number of cycles")
    if any(ell < 2 for ell in lengths):
        raise ValueError("cycle lengths must be >= 2")
    k = m + sum(lengths) + (-1 if zero_in_support else 1)
    return k, 2 * k < q - 1


def from_table_file(ctx: FieldCtx, path) -> FuncTable:
    """One hex value per line, q lines, in canonical order."""
    lines = [s.strip() for s in Path(path).read_text().splitlines()]
    lines = [s for s in lines if s and not s.startswith("#")]
    if len(lines) != ctx.q:
        raise ValueError(f"{path}: expected {ctx.q} values, found {len(lines)}")
    vals = np.array([int(s, 16) for s in lines], dtype=np.int64)
    table = np.empty(ctx.q, dtype=np.int64)
    table[ctx.ordering] = vals
    return FuncTable(ctx, table, name=f"table:{path}")


def write_table_file(G: FuncTable, path):
    Path(path).write_text("".join(f"{v:x}\n" for v in G.values.tolist()))


def parse_func(ctx: FieldCtx, text: str) -> FuncTable:
    """Build a function from its command-line description.

    inverse | power:<d> | gold:<t> | do:<i>,<j>,<hex>[;...] |
    modinv:<hex>,<hex>[,...] | table:<path>
    """
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "inverse" and not arg:
        return inverse(ctx)
    if kind == "power":
        return from_power(ctx, int(arg))
    if kind == "gold":
        return gold(ctx, int(arg))
    if kind == "do":
        terms = []
        for chunk in filter(None, arg.split(";")):
            i, j, c = chunk.split(",")
            terms.append((int(i), int(j), int(c, 16)))
        return from_do(ctx, DOSpec(tuple(terms)))
    if kind == "modinv":
        return modified_inverse(ctx, ModInvSpec(tuple(int(s, 16) for s in arg.split(","))))
    if kind == "table":
        return from_table_file(ctx, arg)
    raise ValueError(f"unrecognised function spec {text!r}")
