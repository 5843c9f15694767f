import numpy as np
import pytest
from hypothesis import given, strategies as st

from apndefect import flats as fm
from apndefect.defect import trace_counters_f0a
from apndefect.diffcore import DDTable, ddt
from apndefect.errors import NonIntegralCount, OddN, ZeroAlpha
from apndefect.field import mk_field
from apndefect.functions import FuncTable, f0a, from_power, gold, inverse
from apndefect.spectra import flats_from_triples, jwr_violating_triples
from oracles import ref_flats


def test_inverse_n4_five_flats():
    ctx = mk_field(4)
    vf = fm.vanishing_flats(inverse(ctx))
    z = ctx.zeta
    assert vf.flats == {tuple(sorted((0, z(i), z(i + 5), z(i + 10)))) for i in range(5)}
    assert vf.raw_count == 15


def test_f0z_n4_flats():
    ctx = mk_field(4)
    z = ctx.zeta
    vf = fm.vanishing_flats(f0a(ctx, z(1)))
    assert len(vf) == 5
    assert tuple(sorted((z(1), z(4), z(6), z(13)))) in vf.flats


def test_apn_has_no_flats():
    vf = fm.vanishing_flats(gold(mk_field(5), 1))
    assert len(vf) == 0 and vf.raw_count == 0


@given(st.integers(2, 4), st.data())
def test_flats_against_reference(n, data):
    ctx = mk_field(n)
    vals = data.draw(st.lists(st.integers(0, ctx.q - 1), min_size=ctx.q, max_size=ctx.q))
    G = FuncTable(ctx, vals)
    vf = fm.vanishing_flats(G)
    assert set(vf.flats) == ref_flats(vals)
    assert vf.raw_count == 3 * len(vf)
    assert len(vf) == fm.vf_count_formula(ddt(G))
    assert all(fm.is_vanishing_flat(G, f) for f in vf.flats)


@given(st.integers(5, 6), st.integers(0, 2**32 - 1))
def test_flats_random_tables_larger(n, seed):
    ctx = mk_field(n)
    G = FuncTable(ctx, np.random.default_rng(seed).integers(0, ctx.q, ctx.q))
    vf = fm.vanishing_flats(G)
    assert vf.raw_count == 3 * len(vf) == 3 * fm.vf_count_formula(ddt(G))
    assert fm.defect_vf_identity_check(G).equal
    if n == 5:
        assert set(vf.flats) == flats_from_triples(jwr_violating_triples(G))


def test_vf_count_formula_non_integral():
    ctx = mk_field(2)
    counts = np.array([[4, 0, 0, 0], [2, 2, 0, 0], [2, 2, 0, 0]])
    with pytest.raises(NonIntegralCount):
        fm.vf_count_formula(DDTable(ctx, counts))


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_closed_vf_inverse(n):
    ctx = mk_field(n)
    closed = fm.closed_vf_inverse(ctx)
    assert len(closed) == (ctx.q - 1) // 3
    assert closed.flats == fm.vanishing_flats(inverse(ctx)).flats
    assert fm.vf_count_formula(ddt(inverse(ctx))) == (ctx.q - 1) // 3


def test_closed_vf_inverse_odd():
    with pytest.raises(OddN):
        fm.closed_vf_inverse(mk_field(5))


@pytest.mark.parametrize("n", range(3, 9))
def test_closed_vf_f0a_equals_enumeration(n):
    ctx = mk_field(n)
    for alpha in range(1, ctx.q):
        vf = fm.vanishing_flats(f0a(ctx, alpha))
        assert fm.closed_vf_f0a(ctx, alpha).flats == vf.flats
        tc = trace_counters_f0a(ctx, alpha)
        other = tc.ell if n % 2 else tc.s
        assert len(vf) == fm.vf_count_f0a_formula(n, tc.k, other)
        if n % 2 == 0:
            assert len(vf) == (ctx.q - 1) // 3


def test_closed_vf_f0a_root_choice_irrelevant():
    ctx = mk_field(6)
    for c in range(1, ctx.q):
        roots = ctx.solve_quadratic(1, 1, c)
        for a in (1, 7, 33):
            pairs = {frozenset((ctx.mul(a, r), ctx.mul(a, r) ^ a)) for r in roots}
            assert len(pairs) <= 1


def test_closed_vf_f0a_zero_alpha():
    with pytest.raises(ZeroAlpha):
        fm.closed_vf_f0a(mk_field(4), 0)


@pytest.mark.parametrize("n", range(2, 8))
def test_identity_all_powers(n):
    ctx = mk_field(n)
    for d in range(1, ctx.q - 1):
        assert fm.defect_vf_identity_check(from_power(ctx, d)).equal


def test_identity_inverse_n4_components():
    ident = fm.defect_vf_identity_check(inverse(mk_field(4)))
    assert ident.lhs == ident.rhs == 16 - 60 + 180 - 0 - 1


def test_flatset_json():
    ctx = mk_field(4)
    doc = fm.vanishing_flats(inverse(ctx)).to_json(ctx)
    assert doc["count"] == 5
    assert doc["flats"][0] == ["0", "1", "z^5", "z^10"]
