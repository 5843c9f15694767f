"""Arithmetic in GF(2^n) for 2 <= n <= 16.

Elements are plain ints in [0, 2^n) read as coefficient vectors in the
polynomial basis. Addition is XOR; multiplication goes through log/antilog
tables built from the smallest primitive element. ``clmul_mod`` is an
independent carry-less implementation kept for cross-checking the tables.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import (
    DegenerateAllZero,
    ReducibleModulus,
    UnsupportedDegree,
    ZeroInverse,
)

MIN_DEGREE = 2
MAX_DEGREE = 16


def degree(p: int) -> int:
    return p.bit_length() - 1


def clmul_mod(x: int, y: int, modulus: int) -> int:
    """Shift-and-add product of x and y reduced by ``modulus``."""
    n = degree(modulus)
    top = 1 << n
    r = 0
    while y:
        if y & 1:
            r ^= x
        y >>= 1
        x <<= 1
        if x & top:
            x ^= modulus
    return r


def poly_mod(a: int, b: int) -> int:
    db = degree(b)
    while a and degree(a) >= db:
        a ^= b << (degree(a) - db)
    return a


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree <= deg(p) / 2."""
    n = degree(p)
    if n < 1:
        return False
    if n == 1:
        return True
    if not p & 1:
        return False
    for d in range(2, 1 << (n // 2 + 1)):
        if poly_mod(p, d) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(n: int) -> int:
    for p in range((1 << n) | 1, 1 << (n + 1), 2):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _pow_ref(x: int, e: int, modulus: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = clmul_mod(r, x, modulus)
        x = clmul_mod(x, x, modulus)
        e >>= 1
    return r


def _smallest_primitive(modulus: int) -> int:
    n = degree(modulus)
    order = (1 << n) - 1
    cofactors = [order // p for p in _prime_factors(order)]
    for g in range(2, 1 << n):
        if all(_pow_ref(g, c, modulus) != 1 for c in cofactors):
            return g
    raise AssertionError("unreachable: the multiplicative group is cyclic")


class FieldCtx:
    """Immutable GF(2^n) context.

    ``ordering`` lists the elements as 0, 1, z, z^2, ..., z^(q-2) where z is
    the generator; tables and reports use it as the canonical order.
    """

    def __init__(self, n: int, modulus: int, generator: int):
        self.n = n
        self.q = 1 << n
        self.modulus = modulus
        self.generator = generator
        q = self.q

        antilog = np.empty(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            antilog[i] = x
            log[x] = i
            x = clmul_mod(x, generator, modulus)
        antilog[q - 1 :] = antilog[: q - 1]
        self.antilog = antilog
        self.log = log

        ordering = np.empty(q, dtype=np.int64)
        ordering[0] = 0
        ordering[1:] = antilog[: q - 1]
        self.ordering = ordering
        self.position = np.argsort(ordering)

        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = antilog[(q - 1 - log[1:]) % (q - 1)]
        self.inv_table = inv

        # Tr is F_2-linear: Tr(x) = <x, basis traces> mod 2.
        mask = 0
        for i in range(n):
            if self._trace_slow(1 << i):
                mask |= 1 << i
        self.trace_mask = mask
        elems = np.arange(q, dtype=np.int64)
        self.trace_table = _popcount_parity(elems & mask)

        for arr in (antilog, log, ordering, self.position, inv, self.trace_table):
            arr.setflags(write=False)

    def __repr__(self):
        return f"FieldCtx(n={self.n}, modulus={self.modulus:#x}, generator={self.generator:#x})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.n == other.n
            and self.modulus == other.modulus
            and self.generator == other.generator
        )

    def __hash__(self):
        return hash((self.n, self.modulus, self.generator))

    def _trace_slow(self, x: int) -> int:
        t, z = 0, x
        for _ in range(self.n):
            t ^= z
            z = clmul_mod(z, z, self.modulus)
        assert t in (0, 1)
        return t

    # scalar arithmetic

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.antilog[self.log[x] + self.log[y]])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return int(self.inv_table[x])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, d: int) -> int:
        """x^d with 0^0 = 1; negative d means the inverse's power.

        The exponent q-2 hits the inverse table directly, so 0 maps to 0.
        """
        if d == self.q - 2:
            return int(self.inv_table[x])
        if d < 0:
            return self.pow(self.inv(x), -d)
        r, base = 1, x
        while d:
            if d & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            d >>= 1
        return r

    def sqrt(self, x: int) -> int:
        # Frobenius has order n, so x^(2^(n-1)) is the unique square root.
        return self.pow(x, 1 << (self.n - 1))

    def trace(self, x: int) -> int:
        return int(self.trace_table[x])

    def zeta(self, k: int) -> int:
        """The element z^k for the context generator z."""
        return int(self.antilog[k % (self.q - 1)])

    def zeta_log(self, x: int) -> int:
        if x == 0:
            raise ZeroInverse("0 is not a power of the generator")
        return int(self.log[x])

    def omega(self) -> int:
        """A fixed element of F_4 minus F_2, z^((q-1)/3); n must be even."""
        if self.n % 2:
            raise ValueError("F_4 is a subfield only for even n")
        return self.zeta((self.q - 1) // 3)

    def label(self, x: int) -> str:
        if x == 0:
            return "0"
        k = int(self.log[x])
        return "1" if k == 0 else f"z^{k}"

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # vectorised arithmetic over numpy int arrays

    def mul_arr(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self.antilog[self.log[x] + self.log[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def inv_arr(self, x):
        """Elementwise x^(q-2); 0 maps to 0."""
        return self.inv_table[np.asarray(x, dtype=np.int64)]

    def pow_arr(self, x, d: int):
        x = np.asarray(x, dtype=np.int64)
        if d == 0:
            return np.ones_like(x)
        e = self.antilog[(self.log[x] * d) % (self.q - 1)]
        return np.where(x == 0, 0, e)

    def trace_arr(self, x):
        return self.trace_table[np.asarray(x, dtype=np.int64)]

    # quadratic equations

    def solve_quadratic(self, a: int, b: int, c: int) -> set[int]:
        """Exact root set of a*x^2 + b*x + c."""
        if a == 0 and b == 0:
            if c == 0:
                raise DegenerateAllZero("0*x^2 + 0*x + 0 vanishes everywhere")
            return set()
        if a == 0:
            return {self.div(c, b)}
        if b == 0:
            return {self.sqrt(self.div(c, a))}
        # x = (b/a) y turns the equation into y^2 + y = ac/b^2
        t = self.div(self.mul(a, c), self.mul(b, b))
        if self.trace(t):
            return set()
        y = self._artin_schreier(t)
        scale = self.div(b, a)
        return {self.mul(scale, y), self.mul(scale, y ^ 1)}

    def _artin_schreier(self, t: int) -> int:
        """One root of y^2 + y = t, assuming Tr(t) = 0."""
        n = self.n
        if n % 2:
            # half-trace
            y, z = 0, t
            for _ in range((n + 1) // 2):
                y ^= z
                z = self.mul(self.mul(z, z), self.mul(z, z))
            return y
        w = next(e for e in range(1, self.q) if self.trace_table[e])
        # y = sum_{i=1}^{n-1} t^(2^i) * (w + w^2 + ... + w^(2^(i-1)))
        y, tp, wsum, wp = 0, t, 0, w
        for _ in range(1, n):
            tp = self.mul(tp, tp)
            wsum ^= wp
            wp = self.mul(wp, wp)
            y ^= self.mul(tp, wsum)
        return y


def _popcount_parity(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    p = np.zeros_like(v)
    while np.any(v):
        p ^= v & 1
        v >>= 1
    return p.astype(np.int64)


@lru_cache(maxsize=64)
def mk_field(n: int, modulus: int | None = None) -> FieldCtx:
    """Build (and cache) the GF(2^n) context.

    Without ``modulus`` the smallest irreducible polynomial of degree n (by
    integer encoding) is used. The generator is always the smallest
    primitive element under the chosen modulus.
    """
    if not MIN_DEGREE <= n <= MAX_DEGREE:
        raise UnsupportedDegree(f"n={n} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    if modulus is None:
        modulus = smallest_irreducible(n)
    elif degree(modulus) != n:
        raise ReducibleModulus(f"modulus {modulus:#x} does not have degree {n}")
    elif not is_irreducible(modulus):
        raise ReducibleModulus(f"modulus {modulus:#x} factors over F_2")
    return FieldCtx(n, modulus, _smallest_primitive(modulus))


def parse_modulus(text: str) -> int:
    return int(text, 16) if text.lower().startswith("0x") else int(text, 0)


def kloosterman(n: int) -> int:
    """K = 1 + (-1)^(n-1) / 2^(n-1) * sum_i (-1)^i C(n, 2i) 7^i.

    The sum is 2^(n-1) times the trace of ((1 + sqrt(-7)) / 2)^n, an
    algebraic integer, so the division is exact.
    """
    if n < 1:
        raise ValueError("n must be positive")
    s = sum((-1) ** i * comb(n, 2 * i) * 7**i for i in range(n // 2 + 1))
    k = 1 + Fraction((-1) ** (n - 1) * s, 2 ** (n - 1))
    assert k.denominator == 1
    return int(k)


def divides_indicator(a: int, b: int) -> int:
    """Delta(a, b): 1 when a divides b, else 0."""
    if a < 1:
        raise ValueError("a must be >= 1")
    return int(b % a == 0)
