import json

import pytest

from mincode import M_value, SearchTask, bound_M, class_counts, code_from_matrix, count_minimal, field_new, m_table, m_value
from mincode.alpha import exact_m
from mincode.errors import GuardExceeded, InvalidInput, OutOfRange
from mincode.search import (CANON, SUBSET, WINDOW, canon_extreme, enumerate_projective_codes,
                            has_weight_one, subset_class_counts, subset_extreme)


def test_task_validation():
    with pytest.raises(OutOfRange):
        SearchTask(2, 3, 8)
    with pytest.raises(OutOfRange):
        SearchTask(2, 4, 3)
    with pytest.raises(ValueError):
        SearchTask(2, 3, 5, mode="median")


@pytest.mark.parametrize("n,expected,spanning", [(7, 1, 1), (6, 1, 7), (5, 1, 21), (3, 1, 28)])
def test_fano_enumeration(n, expected, spanning):
    seen = []
    stats = enumerate_projective_codes(SearchTask(2, 3, n), seen.append, CANON)
    assert stats.classes == len(seen) == expected
    brute = []
    enumerate_projective_codes(SearchTask(2, 3, n), brute.append, SUBSET)
    assert len(brute) == spanning
    assert subset_class_counts(2, 3, n) == expected


def test_subset_guard():
    with pytest.raises(GuardExceeded):
        enumerate_projective_codes(SearchTask(2, 5, 10, brute_limit=1000), lambda m: None, SUBSET)
    with pytest.raises(GuardExceeded):
        subset_extreme(2, 5, 10, limit=1000)


@pytest.mark.parametrize("q,k,n_max", [(2, 3, 7), (3, 3, 7), (2, 4, 7), (4, 3, 4), (5, 3, 3)])
def test_class_counts_match_partition(q, k, n_max):
    counts = class_counts(q, k, n_max)
    for n in range(k, n_max + 1):
        assert counts[n] == subset_class_counts(q, k, n), n


def test_known_class_counts():
    assert list(class_counts(2, 4).values()) == [1, 3, 4, 5, 6, 5, 4, 3, 2, 1, 1, 1]


def test_restriction_skips_weight_one():
    # the identity code has weight-1 codewords
    assert has_weight_one(2, 3, 0b1011)
    assert not has_weight_one(2, 3, 0b1111111)
    kept = []
    enumerate_projective_codes(SearchTask(2, 4, 5, restrict_min_dist_2=True), kept.append, CANON)
    assert all(not has_weight_one(2, 4, m) for m in kept)


def test_m_value_examples():
    assert m_value(2, 3, 6).value == 7
    assert m_value(2, 4, 9).value == 12
    assert m_value(2, 5, 11, engine=CANON).value == 15


def test_M_value_examples():
    assert M_value(3, 3, 4).value == 6
    assert M_value(2, 3, 4).value == 6
    assert M_value(2, 3, 7).value == 7


@pytest.mark.parametrize("k", [3, 4])
def test_engines_agree(k):
    for n in range(k, 2 ** k):
        a = m_value(2, k, n, engine=SUBSET)
        b = m_value(2, k, n, engine=CANON)
        c = m_value(2, k, n, engine=CANON, restrict=False)
        assert a.value == b.value == c.value
        for mode_fn in (M_value,):
            assert mode_fn(2, k, n, engine=SUBSET).value == mode_fn(2, k, n, engine=CANON).value


def test_worker_count_does_not_change_result():
    one = canon_extreme(2, 5, 9, "min", True, workers=1)
    two = canon_extreme(2, 5, 9, "min", True, workers=2)
    assert one == two


def test_checkpoint_resume(tmp_path):
    path = str(tmp_path / "ck.json")
    full = canon_extreme(2, 4, 8, "min", True, checkpoint=path)
    data = json.loads(open(path).read())
    assert set(data["done"]) == set(data["frontier"])
    # forget half of the finished subtrees and resume
    for key in list(data["done"])[::2]:
        del data["done"][key]
    with open(path, "w") as fh:
        json.dump(data, fh)
    assert canon_extreme(2, 4, 8, "min", True, checkpoint=path) == full
    with pytest.raises(InvalidInput):
        canon_extreme(2, 4, 9, "min", True, checkpoint=path)


@pytest.fixture(scope="module")
def table_q2():
    return m_table(2, 15, 4, k_min=2)


def test_table_invariants(table_q2):
    for (n, k), e in table_q2.items():
        assert e.value is not None
        assert e.value >= n
        assert bound_M(2, k, n) <= e.value
        cert = code_from_matrix(field_new(2), e.certificate)
        assert (cert.n, cert.k) == (n, k) and cert.is_projective
        assert count_minimal(cert) == e.value
    for k in (2, 3, 4):
        assert table_q2[(k, k)].value == k
        full = 2 ** k - 1
        assert table_q2[(full, k)].value == full
        col = [table_q2[(n, k)].value for n in range(k, full + 1)]
        assert col == sorted(col)


def test_table_windows_match_search(table_q2):
    for (n, k), e in table_q2.items():
        if e.method == WINDOW:
            assert m_value(2, k, n).value == e.value == exact_m(2, k, n)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_near_diagonal_values(n):
    assert m_value(2, n - 1, n, engine=CANON).value == n
    assert m_value(2, n - 2, n, engine=CANON).value == n


def test_table_reports_guard():
    table = m_table(2, 7, 5, k_min=5, limit=10, engine=SUBSET, use_windows=False)
    assert set(table) == {(5, 5), (6, 5), (7, 5)}
    assert all(e.value is None and e.method == "guard" and e.error for e in table.values())
