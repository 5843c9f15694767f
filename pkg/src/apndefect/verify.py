"""Named check suites: each check compares an independently computed value
against a closed form or a reference table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import defect as dm
from . import flats as fm
from .diffcore import ddt, diff_spectrum, difference_square, marked_mask
from .field import mk_field
from .functions import (
    FuncTable,
    ModInvSpec,
    carlitz_rank_formula,
    eval_chain,
    f0a,
    f2_chain,
    f4_chain,
    from_power,
    gold,
    inverse,
    modified_inverse,
)
from .golden import EXAMPLE_F0Z, EXAMPLE_INVERSE, KNOWN_MISPRINTS, load_golden
from .spectra import (
    column_spectrum,
    flats_from_triples,
    jwr_violating_triples,
    locally_apn_implications,
    nabla_table,
    power_equivalences_check,
    predicted_column_spectrum_f0a,
    predicted_row_spectrum_f0a,
    row_spectrum,
)

SUITES = ("examples", "power", "f0a", "identities")


@dataclass(frozen=True)
class VerifyConfig:
    n_max: int = 8
    samples: int = 100
    seed: int = 0


@dataclass(frozen=True)
class Check:
    tag: str
    instance: str
    expected: object
    measured: object

    @property
    def passed(self) -> bool:
        return self.expected == self.measured

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.tag} [{self.instance}] expected={self.expected} measured={self.measured}"


def _labels(ctx, elems):
    return sorted(ctx.label(e) for e in elems)


def _canonical_mask(ctx, mask):
    return mask[ctx.ordering[1:] - 1][:, ctx.ordering]


def examples(cfg: VerifyConfig):
    ctx = mk_field(4)
    z = ctx.generator

    G = f0a(ctx, z)
    gold_sq = load_golden(ctx, EXAMPLE_F0Z)
    sq = difference_square(G)
    yield Check("f0z-square", "n=4", 0, int((sq.canonical() != gold_sq.values).sum()))
    yield Check(
        "f0z-marked-mask", "n=4", 0,
        int((_canonical_mask(ctx, marked_mask(sq)) != gold_sq.marked).sum()),
    )
    nab = nabla_table(G)
    yield Check(
        "f0z-row-spectrum", "n=4",
        _labels(ctx, [ctx.zeta(k) for k in (2, 3, 5, 9)]),
        _labels(ctx, row_spectrum(G, nab)),
    )
    yield Check(
        "f0z-column-spectrum", "n=4",
        _labels(ctx, [ctx.zeta(k) for k in (0, 2, 3, 5, 8, 9, 12, 14)]),
        _labels(ctx, column_spectrum(G, nab)),
    )
    yield Check("f0z-uniformity", "n=4", 6, int(ddt(G).counts.max()))
    yield Check("f0z-defect", "n=4", 113, dm.d_value(G).apn_defect)

    F = inverse(ctx)
    gold_sq = load_golden(ctx, EXAMPLE_INVERSE)
    expected = gold_sq.values.copy()
    for (i, j), k in KNOWN_MISPRINTS[EXAMPLE_INVERSE].items():
        expected[i, j] = ctx.zeta(k)
    sq = difference_square(F)
    yield Check("inverse-square", "n=4", 0, int((sq.canonical() != expected).sum()))
    yield Check("inverse-uniformity", "n=4", 4, int(ddt(F).counts.max()))
    col0 = sq.data[:, 0]
    yield Check(
        "inverse-column-zero", "n=4", 0,
        int((col0 != ctx.inv_arr(np.arange(1, ctx.q))).sum()),
    )
    listed = {
        tuple(sorted((0, ctx.zeta(i), ctx.zeta(i + 5), ctx.zeta(i + 10)))) for i in range(5)
    }
    yield Check("inverse-flats", "n=4", sorted(listed), fm.vanishing_flats(F).sorted())
    yield Check("inverse-defect", "n=4", 135, dm.d_value(F).apn_defect)


def _even_upto(lo, hi):
    return [n for n in range(lo, hi + 1) if n % 2 == 0]


def power(cfg: VerifyConfig):
    n_max = cfg.n_max
    for n in _even_upto(4, max(n_max, 4)):
        F = inverse(mk_field(n))
        yield Check("inverse-defect", f"n={n}", 9 * ((1 << n) - 1), dm.d_value(F).apn_defect)

    for n in range(3, n_max + 1):
        ctx = mk_field(n)
        lo, hi = dm.power_bounds(n)
        outside = []
        for d in range(1, ctx.q - 1):
            table = ddt(from_power(ctx, d))
            if int(table.counts.max()) == 2:
                continue
            defect = ctx.q * ctx.q - 1 - dm.d_value_from_spectrum(table)
            if not lo <= defect <= hi:
                outside.append(d)
        yield Check("power-defect-bounds", f"n={n}", [], outside)

    for n in range(2, n_max + 1):
        ctx = mk_field(n)
        yield Check(
            "two-valued-linear", f"n={n}",
            dm.two_valued_closed_form(n, n), dm.d_value(from_power(ctx, 2)).d_value,
        )
        for t in range(1, n):
            s = gcd(n, t)
            if s < 2:
                continue
            G = gold(ctx, t)
            yield Check(
                "two-valued-gold", f"n={n},t={t}",
                dm.two_valued_closed_form(n, s), dm.d_value(G).d_value,
            )
            q = ctx.q
            yield Check(
                "gold-kernel-defect", f"n={n},t={t}",
                q * q - 1 + q * (q - 1) * (1 << (s - 2)), dm.do_closed_form(G),
            )

    spots = [(3, n, {}) for n in (4, 6, 8)]
    spots += [(1, 4, {"t": 2}), (1, 6, {"t": 3})]
    spots += [(5, n, {}) for n in (6, 7, 8)]
    spots += [(7, n, {}) for n in (6, 8)]
    for row_id, n, params in spots:
        if n > n_max:
            continue
        ctx = mk_field(n)
        for d in dm.table1_exponents(row_id, n, params):
            G = from_power(ctx, d)
            inst = f"row={row_id},n={n},d={d}"
            spec = diff_spectrum(G).per_row()
            printed = {v: int(c) for v, c in dm.table1_spectrum(row_id, n, params).items()}
            yield Check("known-spectrum", inst, printed, {v: c for v, c in spec.items() if c})
            yield Check(
                "known-spectrum-d", inst, dm.table1_d_value(row_id, n, params),
                dm.d_value(G).d_value,
            )

    for n in range(4, n_max + 1):
        ctx = mk_field(n)
        unequal, counter = [], []
        for d in range(1, ctx.q - 1):
            G = from_power(ctx, d)
            if not power_equivalences_check(G).all_equal():
                unequal.append(d)
            if gcd(d, ctx.q - 1) == 1:
                imp = locally_apn_implications(G)
                if imp.locally_apn and imp.zero_papn and not imp.apn:
                    counter.append(d)
        yield Check("power-apn-equivalence", f"n={n}", [], unequal)
        yield Check("local-apn-implication", f"n={n}", [], counter)
        if n % 2 == 0:
            imp = locally_apn_implications(inverse(ctx))
            yield Check(
                "inverse-local-apn", f"n={n}", (True, False, False),
                (imp.locally_apn, imp.zero_papn, imp.apn),
            )


def _alphas(ctx, limit: int | None, seed: int):
    alphas = list(range(1, ctx.q))
    if limit is None or limit >= len(alphas):
        return alphas
    return sorted(random.Random(seed).sample(alphas, limit))


def f0a_suite(cfg: VerifyConfig):
    for n in range(3, cfg.n_max + 1):
        ctx = mk_field(n)
        limit = None if n <= 8 else 8
        bad_row, bad_col, bad_def, bad_vf, bad_count, counters = [], [], [], [], [], set()
        for alpha in _alphas(ctx, limit, cfg.seed):
            G = f0a(ctx, alpha)
            nab = nabla_table(G)
            if row_spectrum(G, nab) != predicted_row_spectrum_f0a(ctx, alpha):
                bad_row.append(alpha)
            if column_spectrum(G, nab) != predicted_column_spectrum_f0a(ctx, alpha):
                bad_col.append(alpha)
            tc = dm.trace_counters_f0a(ctx, alpha)
            counters.add(tc)
            if dm.d_value(G).apn_defect != dm.f0a_defect_closed_form(n, tc):
                bad_def.append(alpha)
            vf = fm.vanishing_flats(G)
            if n <= 8 and vf.flats != fm.closed_vf_f0a(ctx, alpha).flats:
                bad_vf.append(alpha)
            other = tc.ell if n % 2 else tc.s
            if len(vf) != fm.vf_count_f0a_formula(n, tc.k, other):
                bad_count.append(alpha)
        yield Check("f0a-row-spectrum", f"n={n}", [], bad_row)
        yield Check("f0a-column-spectrum", f"n={n}", [], bad_col)
        yield Check("f0a-defect", f"n={n}", [], bad_def)
        yield Check("f0a-flats", f"n={n}", [], bad_vf)
        yield Check("f0a-flat-count", f"n={n}", [], bad_count)
        yield Check("f0a-counters-alpha-free", f"n={n}", 1, len(counters))
        if n % 2 == 0:
            tc = next(iter(counters))
            yield Check("f0a-k-s-relation", f"n={n}", True, dm.ferruh_relation_check(n, tc))
            yield Check(
                "f0a-vs-inverse-defect", f"n={n}",
                dm.f0a_defect_closed_form(n, tc), dm.ozlem_relation(n, tc.k),
            )
            yield Check(
                "f0a-flat-count-even", f"n={n}", ((1 << n) - 1) // 3,
                len(fm.vanishing_flats(f0a(ctx, 1))),
            )

    rng = random.Random(cfg.seed)
    for n in range(3, cfg.n_max + 1):
        ctx = mk_field(n)
        bad = [a for a in range(1, ctx.q) if eval_chain(ctx, f2_chain(ctx, a)) != f0a(ctx, a)]
        yield Check("rank-two-chain", f"n={n}", [], bad)
        if n >= 4:
            bad = []
            for _ in range(cfg.samples):
                a, b = rng.sample(range(1, ctx.q), 2)
                chain = eval_chain(ctx, f4_chain(ctx, a, b))
                if chain != modified_inverse(ctx, ModInvSpec((a, b))):
                    bad.append((a, b))
            yield Check("rank-four-chain", f"n={n}", [], bad)
    q = 1 << 4
    yield Check("carlitz-rank", "two transpositions", 7, carlitz_rank_formula(2, [2, 2], False, q)[0])
    yield Check("carlitz-rank", "one transposition", 4, carlitz_rank_formula(1, [2], False, q)[0])
    yield Check("carlitz-rank", "transposition with 0", 2, carlitz_rank_formula(1, [2], True, q)[0])


def random_table(ctx, rng: np.random.Generator) -> FuncTable:
    return FuncTable(ctx, rng.integers(0, ctx.q, ctx.q), name="random")


def consistency_checks(G: FuncTable, inst: str, jwr: bool = True):
    table = ddt(G)
    rep = dm.d_value(G)
    yield Check("defect-from-spectrum", inst, rep.d_value, dm.d_value_from_spectrum(table))
    vf = fm.vanishing_flats(G)
    yield Check("flat-count-formula", inst, fm.vf_count_formula(table), len(vf))
    yield Check("flat-incidence", inst, 3 * len(vf), vf.raw_count)
    ident = fm.defect_vf_identity_check(G)
    yield Check("defect-flat-identity", inst, ident.lhs, ident.rhs)
    if jwr:
        yield Check(
            "jwr-flats", inst, sorted(vf.flats),
            sorted(flats_from_triples(jwr_violating_triples(G))),
        )


def identities(cfg: VerifyConfig):
    rng = np.random.default_rng(cfg.seed)
    for n in (4, 5, 6):
        ctx = mk_field(n)
        fails = []
        for i in range(cfg.samples):
            G = random_table(ctx, rng)
            for c in consistency_checks(G, f"n={n}#{i}", jwr=n <= 5):
                if not c.passed:
                    fails.append(c.instance + ":" + c.tag)
        yield Check("random-tables", f"n={n},samples={cfg.samples}", [], fails)
    for n in range(2, min(cfg.n_max, 8) + 1):
        ctx = mk_field(n)
        fails = []
        named = [from_power(ctx, d) for d in range(1, ctx.q - 1)]
        if n >= 3:
            named += [f0a(ctx, a) for a in range(1, ctx.q)]
        for G in named:
            for c in consistency_checks(G, G.name, jwr=n <= 6):
                if not c.passed:
                    fails.append(f"{G.name}:{c.tag}")
        yield Check("named-families", f"n={n}", [], fails)


RUNNERS = {
    "examples": examples,
    "power": power,
    "f0a": f0a_suite,
    "identities": identities,
}


def run_suite(name: str, cfg: VerifyConfig):
    names = SUITES if name == "all" else (name,)
    for s in names:
        yield from RUNNERS[s](cfg)
