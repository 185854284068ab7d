import itertools
import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mincode import (MatrixGF, code_from_matrix, count_minimal, count_support_minimal,
                     field_new, gaussian_binomial, ghw, is_minimal_hyperplane, min_distance,
                     oracle_count_minimal, oracle_count_support_minimal, reduce_to_projective,
                     subcode_of_subspace, subspace_of_subcode, weight_hierarchy)
from mincode.code import (code_from_points, is_support_minimal, minimality_reports, oracle_ghw,
                          subcode_support)
from mincode.errors import NotACodeword, RankDeficient, ZeroColumn
from mincode.geometry import space, subspace_from_dual
from mincode.linalg import matmul

from conftest import SMALL_SPACES, random_code, simplex

codes = st.builds(lambda qk, seed: random_code(random.Random(seed), *qk),
                  st.sampled_from([(q, k) for q, k in SMALL_SPACES if q ** k <= 256]),
                  st.integers(0, 2**32))


def test_identity_code_is_projective():
    for q, k in [(2, 3), (3, 4), (4, 2)]:
        c = code_from_matrix(field_new(q), MatrixGF.identity(field_new(q), k))
        assert (c.n, c.k) == (k, k) and c.is_projective
        assert count_minimal(c) == k
        assert min_distance(c) == 1


def test_simplex_basics(simplex_7_3):
    c = simplex_7_3
    assert c.is_projective and (c.n, c.k) == (7, 3)
    assert count_minimal(c) == 7 == oracle_count_minimal(c)
    assert min_distance(c) == 4
    assert all(r.minimal for r in minimality_reports(c))
    assert weight_hierarchy(c) == [4, 6, 7]
    assert [count_support_minimal(c, l) for l in (1, 2, 3)] == [7, 7, 1]


def test_proportional_columns_not_projective():
    c = code_from_matrix(field_new(3), [[1, 2, 0], [0, 0, 1]])
    assert not c.is_projective


def test_invalid_generators():
    f = field_new(2)
    with pytest.raises(RankDeficient):
        code_from_matrix(f, [[1, 1, 0], [1, 1, 0]])
    with pytest.raises(ZeroColumn):
        code_from_matrix(f, [[1, 0, 0], [0, 1, 0]])


def test_reduce_to_projective(simplex_7_3):
    c = simplex_7_3
    assert reduce_to_projective(c) == (c, 0)
    doubled = code_from_matrix(c.field, np.concatenate([c.gen.data, c.gen.data[:, :1]], axis=1))
    assert doubled.n == 8 and not doubled.is_projective
    red, removed = reduce_to_projective(doubled)
    assert removed == 1 and red.mask == c.mask and red.n == 7
    assert oracle_count_minimal(doubled) == count_minimal(red) == 7


def test_complement_of_hyperplane_minus_point_has_witness():
    f = field_new(2)
    pg = space(2, 3)
    h = pg.hyperplanes()[0]
    u = next(u for u in pg.subspaces(2) if h.contains(u))
    c = code_from_points(f, 3, pg.full_mask & ~(h.incident & ~u.incident))
    assert c.n == 5
    rep = is_minimal_hyperplane(c, h)
    assert not rep.minimal and rep.witness_codim2 == u
    assert rep.weight == 4


@pytest.mark.parametrize("q", [2, 3, 4])
def test_two_dimensional_codes(q, rng):
    for _ in range(5):
        c = random_code(rng, q, 2)
        for rep in minimality_reports(c):
            assert rep.minimal == (rep.weight < c.n)


def test_any_6_3_binary_code_is_minimal():
    pg = space(2, 3)
    for p in range(7):
        assert count_minimal(code_from_points(field_new(2), 3, pg.full_mask & ~(1 << p))) == 7


def test_oracle_on_identity():
    c = code_from_matrix(field_new(2), [[1, 0], [0, 1]])
    assert oracle_count_minimal(c) == 2 == count_minimal(c)


def test_conic_code(conic_4_3_3):
    c = conic_4_3_3
    assert c.is_projective and min_distance(c) == 2
    assert weight_hierarchy(c) == [2, 3, 4]
    assert count_minimal(c) == comb(4, 2) == oracle_count_minimal(c)
    for h in c.space.hyperplanes():
        rep = is_minimal_hyperplane(c, h)
        assert is_support_minimal(c, h) == rep.minimal == (rep.weight == 2)


def test_subcode_examples(simplex_7_3, rng):
    c = simplex_7_3
    w = subspace_of_subcode(c, c.gen)
    assert w.num_points == 0 and subcode_support(c, w) == (tuple(range(7)), 7)
    m = MatrixGF.from_rows(c.field, [[1, 0, 1]])
    h = subspace_of_subcode(c, matmul(m, c.gen))
    assert h == subspace_from_dual(c.field, 3, m)
    for _ in range(10):
        while True:
            coeffs = MatrixGF.from_rows(c.field, [[rng.randrange(2) for _ in range(3)] for _ in range(2)])
            if np.linalg.matrix_rank(coeffs.data.astype(float)) == 2:
                break
        w = subspace_of_subcode(c, matmul(coeffs, c.gen))
        assert w.num_points == 1
        support, weight = subcode_support(c, w)
        point = w.incident.bit_length() - 1
        assert support == tuple(i for i, p in enumerate(c.columns) if p != point)
        assert weight == 6
        assert is_support_minimal(c, w)


def test_subcode_errors(simplex_7_3):
    c = simplex_7_3
    with pytest.raises(RankDeficient):
        subspace_of_subcode(c, MatrixGF.from_rows(c.field, [c.gen.tolist()[0]] * 2))
    even = code_from_matrix(field_new(2), [[1, 0, 1], [0, 1, 1]])
    with pytest.raises(NotACodeword):
        subspace_of_subcode(even, MatrixGF.from_rows(field_new(2), [[1, 0, 0]]))


@pytest.mark.parametrize("q,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 3)])
def test_simplex_all_subcodes_support_minimal(q, k):
    c = simplex(q, k)
    for l in range(1, k + 1):
        assert count_support_minimal(c, l) == gaussian_binomial(k, l, q)


@given(codes)
def test_oracle_equivalence(c):
    assert count_minimal(c) == oracle_count_minimal(c)
    for l in range(1, c.k + 1):
        assert count_support_minimal(c, l) == oracle_count_support_minimal(c, l)
        assert ghw(c, l) == oracle_ghw(c, l)


@given(codes)
def test_weight_window(c):
    d = min_distance(c)
    for rep in minimality_reports(c):
        if rep.minimal:
            assert d <= rep.weight <= c.n - c.k + 1


@given(codes)
def test_count_bounds(c):
    M = count_minimal(c)
    assert M <= min(gaussian_binomial(c.k, 1, c.q), comb(c.n, c.k - 1))
    if c.k >= 2 and M == comb(c.n, c.k - 1):
        pts = c.points.indices()
        pg = c.space
        spans = set()
        for sub in itertools.combinations(pts, c.k - 1):
            mask = sum(1 << p for p in sub)
            assert pg.rank_of_mask(mask) == c.k - 1
            spans.add(next(h for h in pg.hyperplanes() if mask & ~h.incident == 0))
        assert len(spans) == M


@given(codes)
def test_ghw_strictly_increasing(c):
    d = weight_hierarchy(c)
    assert all(a < b for a, b in zip(d, d[1:]))
    assert d[-1] == c.n
    assert d[0] == min_distance(c)


@given(codes)
def test_support_minimal_l1_is_minimal(c):
    assert count_support_minimal(c, 1) == count_minimal(c)


@given(codes, st.integers(0, 2**32))
def test_reduction_preserves_minimal_count(c, seed):
    r = random.Random(seed)
    f = c.field
    extra = [r.randrange(c.n) for _ in range(r.randint(1, 3))]
    cols = []
    for j in extra:
        col = c.gen.data[:, j]
        s = r.randrange(1, c.q)
        cols.append(f.mul_table[s, col])
    bigger = code_from_matrix(f, np.concatenate([c.gen.data, np.stack(cols, axis=1)], axis=1))
    red, removed = reduce_to_projective(bigger)
    assert removed == len(extra) and red.mask == c.mask
    assert oracle_count_minimal(bigger) == count_minimal(red) == count_minimal(bigger)


@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (3, 3), (4, 3)])
def test_subcode_subspace_bijection(q, k, rng):
    c = random_code(rng, q, k)
    for l in range(1, k + 1):
        seen = set()
        for w in c.space.subspaces(l):
            D = subcode_of_subspace(c, w)
            back = subspace_of_subcode(c, D)
            assert back == w
            seen.add(back)
        assert len(seen) == gaussian_binomial(k, l, q)
