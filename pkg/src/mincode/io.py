"""Text formats: generator matrices, cover witnesses and m/M tables.

Matrix file::

    # comment
    q k n
    k lines of n element codes

Witness file: a header line ``q k r l`` followed by one line per pair,
``<H dual rows> | <U dual rows>``, rows separated by ``;``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .alpha import CoverWitness
from .errors import InvalidInput, MincodeError
from .geometry import subspace_from_dual
from .gf import FieldSpec, field_new
from .linalg import MatrixGF
from .search import TableEntry


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_matrix(text: str) -> tuple[FieldSpec, MatrixGF]:
    lines = _content_lines(text)
    if not lines:
        raise InvalidInput("empty matrix file")
    try:
        q, k, n = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise InvalidInput(f"header must be 'q k n', got {lines[0]!r}") from exc
    try:
        f = field_new(q)
    except MincodeError as exc:
        raise InvalidInput(str(exc)) from exc
    if len(lines) - 1 != k:
        raise InvalidInput(f"expected {k} matrix rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        try:
            row = [int(x) for x in line.split()]
        except ValueError as exc:
            raise InvalidInput(f"non-integer entry in row {line!r}") from exc
        if len(row) != n:
            raise InvalidInput(f"row {line!r} has {len(row)} entries, expected {n}")
        if any(not 0 <= x < q for x in row):
            raise InvalidInput(f"row {line!r} has entries outside 0..{q - 1}")
        rows.append(row)
    return f, MatrixGF.from_rows(f, rows)


def read_matrix(path: str | Path) -> tuple[FieldSpec, MatrixGF]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    return parse_matrix(text)


def format_matrix(m: MatrixGF) -> str:
    lines = [f"{m.field.q} {m.rows} {m.cols}"]
    lines += [" ".join(str(x) for x in row) for row in m.tolist()]
    return "\n".join(lines) + "\n"


def _rows_text(m: MatrixGF) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in m.tolist())


def witness_to_text(w: CoverWitness) -> str:
    lines = [f"{w.q} {w.k} {w.r} {w.l}"]
    for h, u in zip(w.hyperplanes, w.inner):
        lines.append(f"{_rows_text(h.dual_basis)} | {_rows_text(u.dual_basis)}")
    return "\n".join(lines) + "\n"


def witness_from_text(text: str) -> CoverWitness:
    lines = _content_lines(text)
    try:
        q, k, r, l = (int(x) for x in lines[0].split())
        f = field_new(q)
        hyps, inner = [], []
        for line in lines[1:]:
            left, right = line.split("|")
            for part, out in ((left, hyps), (right, inner)):
                rows = [[int(x) for x in row.split()] for row in part.split(";")]
                out.append(subspace_from_dual(f, k, MatrixGF.from_rows(f, rows)))
        if len(hyps) != r:
            raise InvalidInput(f"header announces r={r} pairs, found {len(hyps)}")
        return CoverWitness.build(q, k, l, hyps, inner)
    except (IndexError, ValueError) as exc:
        raise InvalidInput(f"malformed witness: {exc}") from exc


def table_to_json(q: int, table: dict[tuple[int, int], TableEntry], mode: str = "min") -> str:
    entries = [table[key].to_json() for key in sorted(table, key=lambda nk: (nk[1], nk[0]))]
    return json.dumps({"q": q, "mode": mode, "entries": entries}, sort_keys=True, indent=2) + "\n"


def table_from_json(text: str) -> tuple[int, str, list[TableEntry]]:
    try:
        data = json.loads(text)
        q = int(data["q"])
        mode = data.get("mode", "min")
        raw = data["entries"] if "entries" in data else [data]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"not a table file: {exc}") from exc
    return q, mode, [TableEntry.from_json(q, e) for e in raw]


def table_to_tsv(table: dict[tuple[int, int], TableEntry], n_max: int, k_max: int,
                 k_min: int = 1) -> str:
    """Rows n, columns k; "-" marks undefined entries and "?" guard-limited ones."""
    ks = list(range(k_min, k_max + 1))
    lines = ["n/k\t" + "\t".join(str(k) for k in ks)]
    for n in range(k_min, n_max + 1):
        cells = []
        for k in ks:
            entry = table.get((n, k))
            if entry is None:
                cells.append("-")
            else:
                cells.append("?" if entry.value is None else str(entry.value))
        lines.append(f"{n}\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"
