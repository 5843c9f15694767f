"""Acceptance criteria 1-15, one test each, all exact equalities."""

import random
from math import gcd

import numpy as np
import pytest

from apndefect import defect as dm
from apndefect import flats as fm
from apndefect.diffcore import ddt, diff_spectrum, difference_square, marked_mask
from apndefect.field import mk_field
from apndefect.functions import (
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
from apndefect.golden import EXAMPLE_F0Z, EXAMPLE_INVERSE, KNOWN_MISPRINTS, load_golden
from apndefect.spectra import (
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


def _canonical_rows(ctx, arr):
    return arr[ctx.ordering[1:] - 1][:, ctx.ordering]


@pytest.mark.criterion(1, "modified inverse F_{0,z}, n=4: spectra, uniformity, square and marks")
def test_c01_modified_inverse_reference_square(detail):
    ctx = mk_field(4)
    z = ctx.zeta
    G = f0a(ctx, z(1))
    ref = load_golden(ctx, EXAMPLE_F0Z)
    sq = difference_square(G)
    nab = nabla_table(G)
    assert row_spectrum(G, nab) == {z(2), z(3), z(5), z(9)}
    assert column_spectrum(G, nab) == {z(k) for k in (0, 2, 3, 5, 8, 9, 12, 14)}
    assert int(ddt(G).counts.max()) == 6
    assert np.array_equal(sq.canonical(), ref.values)
    assert np.array_equal(_canonical_rows(ctx, marked_mask(sq)), ref.marked)
    detail(f"{int(ref.marked.sum())} marked cells match")


@pytest.mark.criterion(2, "inverse, n=4: uniformity 4, five flats, D_aF(0) = 1/a")
def test_c02_inverse_reference_square(detail):
    ctx = mk_field(4)
    z = ctx.zeta
    F = inverse(ctx)
    assert int(ddt(F).counts.max()) == 4
    listed = {tuple(sorted((0, z(i), z(i + 5), z(i + 10)))) for i in range(5)}
    assert fm.vanishing_flats(F).flats == listed
    sq = difference_square(F)
    assert all(sq.row(a)[0] == ctx.inv(a) for a in range(1, ctx.q))
    ref = load_golden(ctx, EXAMPLE_INVERSE)
    diff = {tuple(p) for p in np.argwhere(sq.canonical() != ref.values).tolist()}
    assert diff == set(KNOWN_MISPRINTS[EXAMPLE_INVERSE])
    for (i, j), k in KNOWN_MISPRINTS[EXAMPLE_INVERSE].items():
        assert sq.canonical()[i, j] == z(k)
    # only the row a = 1 carries marks in the reference
    assert np.array_equal(_canonical_rows(ctx, marked_mask(sq))[0], ref.marked[0])
    detail(f"reference misprints pinned: {len(diff)}")


@pytest.mark.criterion(3, "APN-def(inverse) = 9(2^n - 1), n in {4,6,8,10}")
def test_c03_inverse_defect(detail):
    got = {}
    for n in (4, 6, 8, 10):
        got[n] = dm.d_value(inverse(mk_field(n))).apn_defect
        assert got[n] == 9 * ((1 << n) - 1)
    assert list(got.values()) == [135, 567, 2295, 9207]
    detail(" ".join(f"n={n}:{v}" for n, v in got.items()))


@pytest.mark.criterion(4, "F_{0,a}: defect 113 at n=4, |R-Spec| 12 at n=6, differs from inverse at n=6,10")
def test_c04_modified_inverse_values(detail):
    ctx = mk_field(4)
    assert {dm.d_value(f0a(ctx, a)).apn_defect for a in range(1, 16)} == {113}
    ctx = mk_field(6)
    assert {len(row_spectrum(f0a(ctx, a))) for a in range(1, 64)} == {12}
    inv6 = dm.d_value(inverse(ctx)).apn_defect
    assert all(dm.d_value(f0a(ctx, a)).apn_defect != inv6 for a in range(1, 64))
    ctx = mk_field(10)
    inv10 = dm.d_value(inverse(ctx)).apn_defect
    spots = [1, ctx.generator, ctx.zeta(500)]
    vals = [dm.d_value(f0a(ctx, a)).apn_defect for a in spots]
    assert all(v != inv10 for v in vals)
    detail(f"n=10: inverse {inv10}, F_0a {sorted(set(vals))}")


def _alpha_sample(ctx, n, k=8):
    if n <= 8:
        return range(1, ctx.q)
    return random.Random(n).sample(range(1, ctx.q), k)


@pytest.mark.criterion(5, "F_{0,a}: defect and spectra equal the trace-condition forms, n=3..9")
def test_c05_modified_inverse_closed_forms(detail):
    checked = 0
    for n in range(3, 10):
        ctx = mk_field(n)
        for alpha in _alpha_sample(ctx, n):
            G = f0a(ctx, alpha)
            nab = nabla_table(G)
            assert row_spectrum(G, nab) == predicted_row_spectrum_f0a(ctx, alpha)
            assert column_spectrum(G, nab) == predicted_column_spectrum_f0a(ctx, alpha)
            tc = dm.trace_counters_f0a(ctx, alpha)
            assert dm.d_value(G).apn_defect == dm.f0a_defect_closed_form(n, tc)
            checked += 1
    detail(f"{checked} (n, alpha) pairs")


@pytest.mark.criterion(6, "k = s (n=6,10), k = s + 4 (n=4,8); relation to inverse defect")
def test_c06_k_s_relation(detail):
    out = []
    for n in (4, 6, 8, 10):
        ctx = mk_field(n)
        tc = dm.trace_counters_f0a(ctx, 1)
        offset = 4 if n % 4 == 0 else 0
        assert tc.k == tc.s + offset
        assert dm.ferruh_relation_check(n, tc)
        assert dm.ozlem_relation(n, tc.k) == dm.f0a_defect_closed_form(n, tc)
        out.append(f"n={n}:k={tc.k},s={tc.s}")
    detail(" ".join(out))


@pytest.mark.criterion(7, "kernel-based defect of Gold maps = q^2-1+q(q-1)2^(s-2)")
def test_c07_gold_kernel_defect(detail):
    for n, t in [(4, 2), (6, 2), (6, 3), (8, 2), (8, 4)]:
        q, s = 1 << n, gcd(n, t)
        G = gold(mk_field(n), t)
        expect = q * q - 1 + q * (q - 1) * (1 << (s - 2))
        assert dm.do_closed_form(G) == expect
        assert dm.d_value(G).apn_defect == expect


@pytest.mark.criterion(8, "two-valued maps: D = -(q-1)q 2^(s-2); linear maps give -(q-1)q^2/4")
def test_c08_two_valued(detail):
    count = 0
    for n in range(2, 9):
        ctx = mk_field(n)
        q = ctx.q
        for e in range(n):
            lin = from_power(ctx, 1 << e)
            assert dm.d_value(lin).d_value == dm.two_valued_closed_form(n, n) == -(q - 1) * q * q // 4
        for t in range(1, n):
            s = gcd(n, t)
            if s > 1:
                assert dm.d_value(gold(ctx, t)).d_value == dm.two_valued_closed_form(n, s)
                count += 1
    detail(f"{count} Gold instances with s > 1")


TABLE_SPOTS = (
    [(3, n, {}) for n in (4, 6, 8)]
    + [(1, 4, {"t": 2}), (1, 6, {"t": 3})]
    + [(5, n, {}) for n in (6, 7, 8)]
    + [(7, n, {}) for n in (6, 8)]
)


@pytest.mark.criterion(9, "tabulated power-map spectra and D vs brute force")
def test_c09_table_rows(detail):
    disagree = []
    for row_id, n, params in TABLE_SPOTS:
        ctx = mk_field(n)
        for d in dm.table1_exponents(row_id, n, params):
            G = from_power(ctx, d)
            spec = {v: c for v, c in diff_spectrum(G).per_row().items() if c}
            assert spec == dm.table1_spectrum(row_id, n, params)
            brute = dm.d_value(G).d_value
            assert dm.table1_d_value(row_id, n, params) == brute
            if dm.table1_printed_d_value(row_id, n, params) != brute:
                disagree.append(f"row {row_id} d={d} n={n}")
    detail("printed closed form differs from brute force at " + ", ".join(disagree))


def _family_n_le_8():
    for n in range(2, 9):
        ctx = mk_field(n)
        for d in range(1, ctx.q - 1):
            yield from_power(ctx, d)
        if n >= 3:
            for a in range(1, ctx.q):
                yield f0a(ctx, a)


def _random_tables(ns, samples, seed):
    rng = np.random.default_rng(seed)
    for n in ns:
        ctx = mk_field(n)
        for _ in range(samples):
            yield FuncTable(ctx, rng.integers(0, ctx.q, ctx.q), name="random")


@pytest.mark.criterion(10, "APN-def = q - 12|VF| + sum(3w - chi) - 1")
def test_c10_defect_flat_identity(detail):
    count = 0
    for G in _family_n_le_8():
        assert fm.defect_vf_identity_check(G).equal, G.name
        count += 1
    for G in _random_tables((4, 5, 6), 100, 10):
        assert fm.defect_vf_identity_check(G).equal
        count += 1
    detail(f"{count} functions")


@pytest.mark.criterion(11, "flat counts and closed flat sets for the inverse and F_{0,a}")
def test_c11_flat_counts(detail):
    for n in (4, 6, 8):
        ctx = mk_field(n)
        expect = ((1 << n) - 1) // 3
        assert len(fm.vanishing_flats(inverse(ctx))) == expect
        assert fm.closed_vf_inverse(ctx).flats == fm.vanishing_flats(inverse(ctx)).flats
        for a in range(1, ctx.q):
            assert len(fm.vanishing_flats(f0a(ctx, a))) == expect
    for n in (3, 5, 7):
        ctx = mk_field(n)
        for a in range(1, ctx.q):
            tc = dm.trace_counters_f0a(ctx, a)
            assert len(fm.vanishing_flats(f0a(ctx, a))) * 3 == ctx.q + tc.ell - tc.k - 1
    for n in (4, 6):
        ctx = mk_field(n)
        for a in range(1, ctx.q):
            assert fm.closed_vf_f0a(ctx, a).flats == fm.vanishing_flats(f0a(ctx, a)).flats


@pytest.mark.criterion(12, "every flat is seen exactly three times in the difference square")
def test_c12_flat_multiplicity(detail):
    funcs = []
    for row_id, n, params in TABLE_SPOTS:
        ctx = mk_field(n)
        funcs += [from_power(ctx, d) for d in dm.table1_exponents(row_id, n, params)]
    for n in (3, 4, 5, 6, 7, 8):
        ctx = mk_field(n)
        funcs.append(inverse(ctx))
        funcs += [f0a(ctx, a) for a in range(1, ctx.q)]
    count = 0
    for G in funcs:
        vf = fm.vanishing_flats(G)
        assert vf.raw_count == 3 * len(vf), G.name
        count += 1
    detail(f"{count} functions")


@pytest.mark.criterion(13, "rank-2 and rank-4 chains, and chain-length formula on three instances")
def test_c13_carlitz_chains(detail):
    for n in range(3, 9):
        ctx = mk_field(n)
        for a in range(1, ctx.q):
            assert eval_chain(ctx, f2_chain(ctx, a)) == f0a(ctx, a)
    for n in range(4, 9):
        ctx = mk_field(n)
        rng = random.Random(1000 + n)
        for _ in range(100):
            a, b = rng.sample(range(1, ctx.q), 2)
            assert eval_chain(ctx, f4_chain(ctx, a, b)) == modified_inverse(ctx, ModInvSpec((a, b)))
    ks = [
        carlitz_rank_formula(2, [2, 2], False, 16)[0],
        carlitz_rank_formula(1, [2], False, 16)[0],
        carlitz_rank_formula(1, [2], True, 16)[0],
    ]
    assert ks == [7, 4, 2]


@pytest.mark.criterion(14, "power maps: APN equivalences; locally-APN and 0-pAPN imply APN")
def test_c14_power_equivalences(detail):
    tested = 0
    for n in range(4, 9):
        ctx = mk_field(n)
        for d in range(1, ctx.q - 1):
            G = from_power(ctx, d)
            assert power_equivalences_check(G).all_equal(), (n, d)
            if gcd(d, ctx.q - 1) == 1:
                imp = locally_apn_implications(G)
                assert not (imp.locally_apn and imp.zero_papn and not imp.apn), (n, d)
                tested += 1
        if n % 2 == 0:
            imp = locally_apn_implications(inverse(ctx))
            assert (imp.locally_apn, imp.zero_papn, imp.apn) == (True, False, False)
    detail(f"{tested} permutation exponents, no counterexample")


@pytest.mark.criterion(15, "oracle agreement: D paths, flat counts, triple-based flats")
def test_c15_oracle_consistency(detail):
    funcs = list(_random_tables((4, 5), 100, 15))
    for n in range(2, 7):
        ctx = mk_field(n)
        funcs += [from_power(ctx, d) for d in range(1, ctx.q - 1)]
        if n >= 3:
            funcs += [f0a(ctx, a) for a in range(1, ctx.q)]
        if n % 2 == 0:
            funcs.append(gold(ctx, 2))
    for G in funcs:
        table = ddt(G)
        assert dm.d_value(G).d_value == dm.d_value_from_spectrum(table)
        vf = fm.vanishing_flats(G)
        assert len(vf) == fm.vf_count_formula(table)
        assert set(vf.flats) == flats_from_triples(jwr_violating_triples(G))
    detail(f"{len(funcs)} functions")
