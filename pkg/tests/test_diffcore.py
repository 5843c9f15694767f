import numpy as np
import pytest
from hypothesis import given, strategies as st

from apndefect.diffcore import (
    DiffSpectrum,
    ddt,
    delta_uniformity,
    derivative_row,
    diff_spectrum,
    difference_square,
    dset,
    is_apn,
    marked_mask,
    marked_rows,
    nabla,
)
from apndefect.errors import ZeroDirection
from apndefect.field import mk_field
from apndefect.functions import FuncTable, f0a, from_power, gold, inverse
from oracles import ref_ddt


def random_tables(n_range=(2, 6)):
    @st.composite
    def build(draw):
        n = draw(st.integers(*n_range))
        ctx = mk_field(n)
        vals = draw(st.lists(st.integers(0, ctx.q - 1), min_size=ctx.q, max_size=ctx.q))
        return FuncTable(ctx, vals, name="random")

    return build()


@given(random_tables((2, 4)))
def test_ddt_matches_reference(G):
    assert ddt(G).counts.tolist() == ref_ddt(G.table.tolist())


@given(random_tables())
def test_square_rows_are_derivatives(G):
    sq = difference_square(G)
    t = G.table.tolist()
    for a in range(1, G.ctx.q):
        assert sq.row(a).tolist() == [t[x] ^ t[x ^ a] for x in range(G.ctx.q)]


@given(random_tables())
def test_ddt_rows_sum_to_q_and_are_even(G):
    c = ddt(G).counts
    assert (c.sum(axis=1) == G.ctx.q).all()
    assert (c % 2 == 0).all()


@given(random_tables())
def test_nabla_paths_agree(G):
    """Row grouping vs. DDT lookup vs. dset size."""
    from apndefect.spectra import nabla_table

    sq = difference_square(G)
    by_group = sq.nabla_matrix()
    assert np.array_equal(by_group, nabla_table(G))
    a, x = 1, G.ctx.q - 1
    assert nabla(G, a, x) == by_group[a - 1, x]


def test_dset_structure():
    ctx = mk_field(4)
    G = inverse(ctx)
    for a in range(1, ctx.q):
        for x in range(ctx.q):
            s = dset(G, a, x)
            assert x in s and (x ^ a) in s
            assert all((y ^ a) in s for y in s)


def test_zero_direction():
    G = inverse(mk_field(3))
    with pytest.raises(ZeroDirection):
        derivative_row(G, 0)
    with pytest.raises(ZeroDirection):
        ddt(G).entry(0, 1)


def test_apn_examples():
    assert is_apn(gold(mk_field(5), 1))
    assert is_apn(inverse(mk_field(5)))
    assert delta_uniformity(inverse(mk_field(4))) == 4
    assert delta_uniformity(f0a(mk_field(4), 2)) == 6
    assert delta_uniformity(from_power(mk_field(4), 1)) == 16


def test_diff_spectrum_inverse_even():
    ctx = mk_field(6)
    spec = diff_spectrum(inverse(ctx))
    q = ctx.q
    assert spec.per_row() == {0: q // 2 + 1, 2: q // 2 - 2, 4: 1}
    assert sum(spec.normalized().values()) == pytest.approx(q)


def test_diff_spectrum_uneven_rows():
    spec = DiffSpectrum(4, {0: 5, 2: 7})
    with pytest.raises(ValueError):
        spec.per_row()


def test_square_canonical_layout():
    ctx = mk_field(4)
    sq = difference_square(inverse(ctx))
    can = sq.canonical()
    # row a = z^k, column x = 0 holds a^(-1)
    for k in range(ctx.q - 1):
        assert can[k, 0] == ctx.inv(ctx.zeta(k))


def test_marked_rows_match_mask():
    G = f0a(mk_field(4), 2)
    sq = difference_square(G)
    rows = marked_rows(sq)
    mask = marked_mask(sq)
    for a in range(1, 16):
        assert set(sq.row(a)[mask[a - 1]].tolist()) == rows[a]


def test_ddt_json():
    doc = ddt(inverse(mk_field(2))).to_json()
    assert doc["n"] == 2 and len(doc["rows"]) == 3
