import itertools

import pytest
from hypothesis import given, strategies as st

from mincode import MatrixGF, PointSet, field_new, gaussian_binomial, hyperplanes, pg_points, point_index
from mincode.errors import Overflow, ZeroVector
from mincode.geometry import normalize, space, subspace_from_dual, subspaces_codim

from conftest import SMALL_SPACES

SPACES_Q4_K5 = [(q, k) for q in (2, 3, 4) for k in range(1, 6)]


def test_point_counts():
    assert len(pg_points(field_new(2), 3)) == 7
    assert len(pg_points(field_new(3), 3)) == 13


def test_normalization():
    f = field_new(3)
    assert normalize(f, (0, 2, 1)) == (0, 1, 2)
    assert point_index(f, 3, (0, 2, 1)) == point_index(f, 3, (0, 1, 2))
    with pytest.raises(ZeroVector):
        normalize(f, (0, 0, 0))


def test_point_index_examples():
    f2, f3 = field_new(2), field_new(3)
    assert point_index(f2, 3, pg_points(f2, 3)[0]) == 0
    assert point_index(f3, 2, (2, 1)) == point_index(f3, 2, (1, 2))
    # over GF(2) the index is the binary value minus one
    for v in itertools.product((0, 1), repeat=4):
        if any(v):
            assert point_index(field_new(2), 4, v) == int("".join(map(str, v)), 2) - 1


@pytest.mark.parametrize("q,k", SPACES_Q4_K5)
def test_points_are_normalized_and_sorted(q, k):
    pts = pg_points(field_new(q), k)
    assert pts == sorted(pts)
    assert all(next(x for x in p if x) == 1 for p in pts)
    assert len(pts) == gaussian_binomial(k, 1, q)


def test_gaussian_binomial_examples():
    assert gaussian_binomial(5, 0, 3) == 1
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    with pytest.raises(ValueError):
        gaussian_binomial(3, 4, 2)
    with pytest.raises(Overflow):
        gaussian_binomial(40, 20, 16)


@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(0, 8), st.integers(0, 8))
def test_gaussian_binomial_symmetry_and_pascal(q, k, l):
    if l > k:
        return
    assert gaussian_binomial(k, l, q) == gaussian_binomial(k, k - l, q)
    if 1 <= l <= k - 1:
        assert gaussian_binomial(k, l, q) == (gaussian_binomial(k - 1, l - 1, q)
                                              + q ** l * gaussian_binomial(k - 1, l, q))


def test_fano_hyperplanes():
    f = field_new(2)
    hs = hyperplanes(f, 3)
    assert len(hs) == 7 and all(h.num_points == 3 for h in hs)
    h = subspace_from_dual(f, 3, MatrixGF.from_rows(f, [[0, 1, 1]]))
    assert h.incident >> point_index(f, 3, (1, 0, 0)) & 1


def test_pg3_2_hyperplanes():
    hs = hyperplanes(field_new(2), 4)
    assert len(hs) == 15 and all(h.num_points == 7 for h in hs)


def test_subspace_examples():
    f = field_new(2)
    assert list(subspaces_codim(f, 3, 1)) == hyperplanes(f, 3)
    lines = list(subspaces_codim(f, 4, 2))
    assert len(lines) == 35 and all(w.num_points == 3 for w in lines)
    for q, k in [(2, 3), (3, 4)]:
        top = list(subspaces_codim(field_new(q), k, k))
        assert len(top) == 1 and top[0].num_points == 0
    whole = list(subspaces_codim(f, 3, 0))
    assert len(whole) == 1 and whole[0].num_points == 7


@pytest.mark.parametrize("q,k", SPACES_Q4_K5)
def test_subspace_counts(q, k):
    pg = space(q, k)
    for l in range(0, k + 1):
        subs = pg.subspaces(l)
        assert len(subs) == gaussian_binomial(k, l, q)
        assert len(set(subs)) == len(subs)
        assert all(w.num_points == (q ** (k - l) - 1) // (q - 1) for w in subs)


@pytest.mark.parametrize("q,k", [(q, k) for q, k in SPACES_Q4_K5 if k >= 2])
def test_flag_double_count(q, k):
    pg = space(q, k)
    total = sum(h.num_points for h in pg.hyperplanes())
    assert total == gaussian_binomial(k, 1, q) * gaussian_binomial(k - 1, 1, q)


@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (3, 3), (3, 4), (4, 3), (2, 5)])
def test_hyperplane_pairs_meet_in_codim_two(q, k):
    hs = space(q, k).hyperplanes()
    expect = gaussian_binomial(k - 2, 1, q)
    for a, b in itertools.combinations(hs, 2):
        assert (a.incident & b.incident).bit_count() == expect


@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (3, 3), (3, 4), (4, 3), (4, 4), (2, 5)])
def test_codim_two_lies_in_q_plus_one_hyperplanes(q, k):
    pg = space(q, k)
    hs = pg.hyperplanes()
    for u in pg.subspaces(2):
        assert sum(h.contains(u) for h in hs) == q + 1


@pytest.mark.parametrize("q,k", SMALL_SPACES)
def test_incidence_matches_dot_products(q, k):
    f = field_new(q)
    pg = space(q, k)
    for h in pg.hyperplanes()[:20]:
        form = h.dual_basis.tolist()[0]
        for i, p in enumerate(pg.points):
            dot = 0
            for a, b in zip(form, p):
                dot = f.add(dot, f.mul(a, b))
            assert (h.incident >> i & 1) == (dot == 0)


def test_subspace_from_dual_normalizes():
    f = field_new(3)
    a = subspace_from_dual(f, 3, MatrixGF.from_rows(f, [[2, 0, 1], [0, 1, 1]]))
    b = subspace_from_dual(f, 3, MatrixGF.from_rows(f, [[2, 1, 2], [0, 2, 2]]))
    assert a == b and a.codim == 2 and a.num_points == 1


def test_point_set_kinds():
    f = field_new(2)
    s = PointSet.from_indices(f, 3, [0, 2, 4])
    assert s.kind == "set" and s.cardinality == 3
    m = PointSet.from_indices(f, 3, [0, 0, 4])
    assert m.kind == "multiset" and m.cardinality == 3 and m.multiplicity(0) == 2
    assert m.support_mask == 0b10001
    assert m.count_in(0b1) == 2
