import pytest

from mincode import MatrixGF, field_new
from mincode.alpha import alpha_brute, alpha_construction
from mincode.errors import InvalidInput
from mincode.io import (format_matrix, parse_matrix, table_from_json, table_to_json, table_to_tsv,
                        witness_from_text, witness_to_text)
from mincode.search import TableEntry, m_table


def test_matrix_round_trip():
    text = "# simplex\n2 3 7\n1 0 0 1 1 0 1\n0 1 0 1 0 1 1  # row two\n0 0 1 0 1 1 1\n"
    f, m = parse_matrix(text)
    assert f.q == 2 and m.shape == (3, 7)
    assert parse_matrix(format_matrix(m))[1] == m


@pytest.mark.parametrize("text", [
    "",
    "2 3\n1 0 0\n",
    "6 1 2\n1 0\n",
    "2 2 2\n1 0\n",
    "2 2 2\n1 0\n0 1 1\n",
    "3 1 2\n1 3\n",
    "3 1 2\n1 x\n",
])
def test_bad_matrices(text):
    with pytest.raises(InvalidInput):
        parse_matrix(text)


@pytest.mark.parametrize("w", [alpha_brute(2, 3, 2)[1], alpha_construction(3, 4, 3),
                               alpha_brute(2, 4, 2, l=2)[1], alpha_brute(2, 3, 0)[1]])
def test_witness_round_trip(w):
    back = witness_from_text(witness_to_text(w))
    assert back == w


def test_bad_witness():
    with pytest.raises(InvalidInput):
        witness_from_text("2 3 2 1\n0 0 1 | 0 1 0; 0 0 1\n")
    with pytest.raises(ValueError):
        # inner subspace not inside the hyperplane
        witness_from_text("2 3 1 1\n0 0 1 | 1 0 0; 0 1 0\n")


def test_table_json_round_trip():
    table = m_table(2, 7, 3, k_min=2)
    text = table_to_json(2, table)
    q, mode, entries = table_from_json(text)
    assert (q, mode) == (2, "min")
    assert table_to_json(q, {(e.n, e.k): e for e in entries}, mode) == text
    guard = {(5, 5): TableEntry(2, 5, 5, None, None, "guard", "too big")}
    text = table_to_json(2, guard, "max")
    assert table_to_json(2, {(e.n, e.k): e for e in table_from_json(text)[2]}, "max") == text


def test_table_tsv():
    table = m_table(2, 7, 3, k_min=2)
    lines = table_to_tsv(table, 7, 3, k_min=2).splitlines()
    assert lines[0] == "n/k\t2\t3"
    assert lines[1] == "2\t2\t-"
    assert lines[-1] == "7\t-\t7"


def test_table_json_rejects_garbage():
    with pytest.raises(InvalidInput):
        table_from_json("[1, 2]")
    with pytest.raises(InvalidInput):
        table_from_json('{"q": 2, "entries": [{"n": 3}]}')
