"""Exhaustive computation of m_q(n, k) and M_q(n, k).

Two engines enumerate projective [n, k]_q codes as spanning n-subsets of
PG(F_q^k):

* ``subset``: every n-subset of point indices, no equivalence handling.
* ``canon``: orderly generation.  A set is kept only if it equals its own
  canonical form (see :mod:`mincode.canon`); children are formed by adding a
  point above the current maximum, and since removing the largest point of a
  canonical set gives a canonical set, every equivalence class is reached
  exactly once, from its canonical parent.

For minimisation the search can skip codes with a weight-1 codeword: such a
code is [1, 1] (+) C' with C' a projective [n-1, k-1] code and
M(C) = 1 + M(C'), so the d = 1 part of the optimum is 1 + m_q(n-1, k-1).
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Iterable

import numpy as np

from .alpha import (alpha_brute, alpha_construction, alpha_value, CLOSED, construction_size,
                    exact_m_window)
from .canon import canonical_mask, is_canonical_mask
from .code import code_from_points, count_minimal_mask
from .errors import GuardExceeded, InvalidInput, OutOfRange
from .geometry import gaussian_binomial, mask_indices, space
from .gf import field_new
from .linalg import MatrixGF

log = logging.getLogger(__name__)

BRUTE_SUBSET_LIMIT = 2 * 10**6
CANON_MAX_POINTS = 63
PARTITION_DEPTH = 4

SUBSET = "brute-subset"
CANON = "canonical-augmentation"
WINDOW = "window-exact"


@dataclass
class SearchTask:
    q: int
    k: int
    n: int
    mode: str = "min"
    restrict_min_dist_2: bool = False
    workers: int = 1
    brute_limit: int = BRUTE_SUBSET_LIMIT

    def __post_init__(self):
        field_new(self.q)
        if self.mode not in ("min", "max"):
            raise ValueError(f"mode must be 'min' or 'max', not {self.mode!r}")
        total = gaussian_binomial(self.k, 1, self.q)
        if not 1 <= self.k <= self.n <= total:
            raise OutOfRange(f"need 1 <= k <= n <= {total}, got k={self.k}, n={self.n}")


@dataclass
class TableEntry:
    q: int
    n: int
    k: int
    value: int | None
    certificate: MatrixGF | None
    method: str
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "value": self.value,
            "method": self.method,
            "certificate": None if self.certificate is None else self.certificate.tolist(),
            "error": self.error,
        }

    @classmethod
    def from_json(cls, q: int, d: dict) -> TableEntry:
        try:
            cert = d.get("certificate")
            return cls(q, int(d["n"]), int(d["k"]), d.get("value"),
                       None if cert is None else MatrixGF.from_rows(field_new(q), cert),
                       d.get("method", ""), d.get("error"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad table entry {d!r}: {exc}") from exc


@dataclass
class EnumerationStats:
    classes: int = 0
    nodes: int = 0
    canonicity_tests: int = 0
    per_size: dict[int, int] = field(default_factory=dict)


# --- helpers ------------------------------------------------------------------

def has_weight_one(q: int, k: int, mask: int) -> bool:
    """Whether the code has a codeword of weight 1 (all points but one on a hyperplane)."""
    n = mask.bit_count()
    return any((mask & h.incident).bit_count() == n - 1 for h in space(q, k).hyperplanes())


def _better(mode: str, value: int, mask: int, best_value: int | None, best_mask: int | None) -> bool:
    if best_value is None:
        return True
    if value != best_value:
        return value < best_value if mode == "min" else value > best_value
    return mask < best_mask


def certificate_matrix(q: int, k: int, mask: int) -> MatrixGF:
    return code_from_points(field_new(q), k, mask).gen


def _direct_sum_unit(q: int, k: int, cert: MatrixGF) -> MatrixGF:
    """Generator matrix of [1, 1] (+) the code of ``cert`` (a (k-1)-row matrix)."""
    rows, cols = cert.shape
    data = np.zeros((rows + 1, cols + 1), dtype=np.uint8)
    data[0, 0] = 1
    data[1:, 1:] = cert.data
    return MatrixGF(field_new(q), data)


# --- engines ------------------------------------------------------------------

def subset_masks(q: int, k: int, n: int) -> Iterable[int]:
    """Spanning n-subsets of PG(F_q^k), in lexicographic order of their index tuples."""
    from itertools import combinations
    pg = space(q, k)
    for combo in combinations(range(pg.num_points), n):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if pg.rank_of_mask(mask) == k:
            yield mask


def _orderly(q: int, k: int, n: int, root: int, visit: Callable[[int], None],
             stats: EnumerationStats, stop_depth: int | None = None) -> None:
    pg = space(q, k)
    boundary = [(q ** j - 1) // (q - 1) for j in range(k + 1)]

    def grow(mask: int, size: int, rank: int, top: int) -> None:
        stats.nodes += 1
        if size == n or size == stop_depth:
            if size == stop_depth or rank == k:
                visit(mask)
            return
        if rank + (n - size) < k:
            return
        upper = boundary[rank] if rank < k else pg.num_points - 1
        for p in range(top + 1, min(upper, pg.num_points - 1) + 1):
            child = mask | 1 << p
            stats.canonicity_tests += 1
            if is_canonical_mask(q, k, child):
                grow(child, size + 1, rank + (p == boundary[rank] if rank < k else 0), p)

    size = root.bit_count()
    top = root.bit_length() - 1
    grow(root, size, pg.rank_of_mask(root), top)


def enumerate_projective_codes(task: SearchTask, visitor: Callable[[int], None],
                               engine: str = CANON) -> EnumerationStats:
    """Visit one point mask per class (canon) or every spanning n-subset (subset).

    With ``restrict_min_dist_2`` codes with a weight-1 codeword are skipped.
    """
    q, k, n = task.q, task.k, task.n
    stats = EnumerationStats()

    def visit(mask: int) -> None:
        if task.restrict_min_dist_2 and has_weight_one(q, k, mask):
            return
        stats.classes += 1
        visitor(mask)

    if engine == SUBSET:
        total = comb(space(q, k).num_points, n)
        if total > task.brute_limit:
            raise GuardExceeded(f"C({space(q, k).num_points},{n}) = {total} subsets exceed the guard")
        for mask in subset_masks(q, k, n):
            stats.nodes += 1
            visit(mask)
    elif engine == CANON:
        if space(q, k).num_points > CANON_MAX_POINTS and q > 2:
            raise GuardExceeded(f"PG(F_{q}^{k}) is too large for canonical augmentation")
        _orderly(q, k, n, 0, visit, stats)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    stats.per_size[n] = stats.classes
    return stats


def class_counts(q: int, k: int, n_max: int | None = None) -> dict[int, int]:
    """Spanning equivalence classes per size, from one orderly-generation pass."""
    pg = space(q, k)
    n_max = pg.num_points if n_max is None else n_max
    counts = {n: 0 for n in range(k, n_max + 1)}
    stats = EnumerationStats()
    boundary = [(q ** j - 1) // (q - 1) for j in range(k + 1)]

    def grow(mask: int, size: int, rank: int, top: int) -> None:
        if rank == k:
            counts[size] += 1
        if size == n_max:
            return
        upper = boundary[rank] if rank < k else pg.num_points - 1
        for p in range(top + 1, upper + 1):
            child = mask | 1 << p
            stats.canonicity_tests += 1
            if is_canonical_mask(q, k, child):
                grow(child, size + 1, rank + (rank < k and p == boundary[rank]), p)

    grow(0, 0, 0, -1)
    return counts


def subset_class_counts(q: int, k: int, n: int) -> int:
    """Spanning classes of size n by partitioning all n-subsets by canonical form.

    Sets and complements are equivalent together, so the larger half is
    canonised through its complement.
    """
    pg = space(q, k)
    forms = set()
    for mask in subset_masks(q, k, n):
        if 2 * n > pg.num_points:
            forms.add(("c", canonical_mask(q, k, pg.full_mask & ~mask)))
        else:
            forms.add(canonical_mask(q, k, mask))
    return len(forms)


# --- parallel / resumable extremal search -------------------------------------

def _subtree_extreme(args) -> tuple[int, int | None, int | None]:
    q, k, n, root, mode, restrict = args
    best: list = [None, None, 0]
    stats = EnumerationStats()
    pg = space(q, k)

    def visit(mask: int) -> None:
        if restrict and has_weight_one(q, k, mask):
            return
        best[2] += 1
        value = count_minimal_mask(pg, mask)
        if _better(mode, value, mask, best[0], best[1]):
            best[0], best[1] = value, mask

    _orderly(q, k, n, root, visit, stats)
    return best[2], best[0], best[1]


def _frontier(q: int, k: int, n: int, depth: int) -> list[int]:
    roots: list[int] = []
    _orderly(q, k, n, 0, roots.append, EnumerationStats(), stop_depth=depth)
    return roots


def _load_checkpoint(path: str, header: dict) -> dict:
    if not os.path.exists(path):
        return {**header, "frontier": None, "done": {}}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"unreadable checkpoint {path}: {exc}") from exc
    if any(data.get(key) != value for key, value in header.items()):
        raise InvalidInput(f"checkpoint {path} belongs to a different search")
    return data


def _save_checkpoint(path: str, data: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, path)


def canon_extreme(q: int, k: int, n: int, mode: str = "min", restrict: bool = False,
                  workers: int = 1, checkpoint: str | None = None,
                  depth: int = PARTITION_DEPTH) -> tuple[int | None, int | None, int]:
    """Extremal M over classes, split into subtrees at ``depth`` points.

    Returns (value, certificate mask, number of classes examined).
    """
    depth = min(depth, n)
    header = {"q": q, "k": k, "n": n, "mode": mode, "restrict": restrict, "depth": depth}
    state = _load_checkpoint(checkpoint, header) if checkpoint else {"frontier": None, "done": {}}
    if state["frontier"] is None:
        state["frontier"] = [str(m) for m in _frontier(q, k, n, depth)]
        if checkpoint:
            _save_checkpoint(checkpoint, state)
    todo = [int(m) for m in state["frontier"] if m not in state["done"]]
    jobs = [(q, k, n, root, mode, restrict) for root in todo]

    def record(root: int, result) -> None:
        state["done"][str(root)] = list(result)
        if checkpoint:
            _save_checkpoint(checkpoint, state)

    if workers > 1 and len(jobs) > 1:
        from multiprocessing import Pool
        with Pool(workers) as pool:
            for job, result in zip(jobs, pool.imap(_subtree_extreme, jobs)):
                record(job[3], result)
    else:
        for job in jobs:
            record(job[3], _subtree_extreme(job))

    best_value, best_mask, classes = None, None, 0
    for count, value, mask in state["done"].values():
        classes += count
        if value is not None and _better(mode, value, mask, best_value, best_mask):
            best_value, best_mask = value, mask
    return best_value, best_mask, classes


def subset_extreme(q: int, k: int, n: int, mode: str = "min", restrict: bool = False,
                   limit: int = BRUTE_SUBSET_LIMIT) -> tuple[int | None, int | None, int]:
    pg = space(q, k)
    total = comb(pg.num_points, n)
    if total > limit:
        raise GuardExceeded(f"C({pg.num_points},{n}) = {total} subsets exceed the guard {limit}")
    best_value, best_mask, seen = None, None, 0
    for mask in subset_masks(q, k, n):
        if restrict and has_weight_one(q, k, mask):
            continue
        seen += 1
        value = count_minimal_mask(pg, mask)
        if _better(mode, value, mask, best_value, best_mask):
            best_value, best_mask = value, mask
    return best_value, best_mask, seen


# --- m and M values -------------------------------------------------------------

def choose_engine(q: int, k: int, n: int, limit: int = BRUTE_SUBSET_LIMIT) -> str:
    return SUBSET if comb(space(q, k).num_points, n) <= limit else CANON


def _extreme_value(q: int, k: int, n: int, mode: str, engine: str | None, restrict: bool,
                   workers: int, checkpoint: str | None, limit: int) -> TableEntry:
    SearchTask(q, k, n, mode)
    if k == 1:
        return TableEntry(q, n, k, 1, MatrixGF.identity(field_new(q), 1), SUBSET)
    engine = engine or choose_engine(q, k, n, limit)
    if engine == SUBSET:
        value, mask, _ = subset_extreme(q, k, n, mode, restrict, limit)
    elif engine == CANON:
        value, mask, _ = canon_extreme(q, k, n, mode, restrict, workers, checkpoint)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    cert = None if mask is None else certificate_matrix(q, k, mask)
    if restrict and n - 1 <= gaussian_binomial(k - 1, 1, q):
        # codes with a weight-1 codeword: [1,1] (+) an [n-1, k-1] code
        sub = _extreme_value(q, k - 1, n - 1, mode, engine if k - 1 > 1 else None, restrict,
                             workers, None, limit)
        if sub.value is not None:
            cand = sub.value + 1
            if value is None or (cand < value if mode == "min" else cand > value):
                value, cert = cand, _direct_sum_unit(q, k, sub.certificate)
    return TableEntry(q, n, k, value, cert, engine)


def m_value(q: int, k: int, n: int, *, engine: str | None = None, restrict: bool = True,
            workers: int = 1, checkpoint: str | None = None,
            limit: int = BRUTE_SUBSET_LIMIT) -> TableEntry:
    """m_q(n, k): the least M(C) over projective [n, k]_q codes, with an extremal code."""
    return _extreme_value(q, k, n, "min", engine, restrict, workers, checkpoint, limit)


def M_value(q: int, k: int, n: int, *, engine: str | None = None, restrict: bool = True,
            workers: int = 1, checkpoint: str | None = None,
            limit: int = BRUTE_SUBSET_LIMIT) -> TableEntry:
    """M_q(n, k): the largest M(C) over projective [n, k]_q codes, with an extremal code."""
    return _extreme_value(q, k, n, "max", engine, restrict, workers, checkpoint, limit)


def window_certificate(q: int, k: int, n: int, r: int) -> MatrixGF:
    """A spanning n-subset of the complement of an optimal (r-1)-cover.

    Every such code keeps the r-1 non-minimal witness hyperplanes and, inside
    the window, has no others.
    """
    f = field_new(q)
    pg = space(q, k)
    if r == 1:
        comp = pg.full_mask
    else:
        value, provenance = alpha_value(q, k, r - 1)
        limit = q + 1 if q % 2 == 0 else q
        if provenance == CLOSED and k >= 3 and r - 1 <= max(limit, 2) \
                and construction_size(q, k, r - 1) == value:
            witness = alpha_construction(q, k, r - 1)
        else:
            witness = alpha_brute(q, k, r - 1)[1]
        comp = pg.full_mask & ~witness.union_points
    chosen = 0
    for i in mask_indices(comp):
        if pg.rank_of_mask(chosen | 1 << i) > pg.rank_of_mask(chosen):
            chosen |= 1 << i
    for i in mask_indices(comp & ~chosen):
        if chosen.bit_count() >= n:
            break
        chosen |= 1 << i
    if chosen.bit_count() != n or pg.rank_of_mask(chosen) != k:
        raise AssertionError("window certificate construction failed")
    return code_from_points(f, k, chosen).gen


def m_table(q: int, n_max: int, k_max: int, *, mode: str = "min", k_min: int = 1,
            use_windows: bool = True, restrict: bool = True, workers: int = 1,
            limit: int = BRUTE_SUBSET_LIMIT,
            engine: str | None = None) -> dict[tuple[int, int], TableEntry]:
    """Grid of m_q(n, k) (or M_q(n, k)) for k_min <= k <= k_max, k <= n <= n_max."""
    table: dict[tuple[int, int], TableEntry] = {}
    for k in range(k_min, k_max + 1):
        total = gaussian_binomial(k, 1, q)
        for n in range(k, min(n_max, total) + 1):
            entry = None
            if mode == "min" and use_windows and k >= 2:
                window = exact_m_window(q, k, n)
                if window is not None:
                    value, r = window
                    entry = TableEntry(q, n, k, value, window_certificate(q, k, n, r), WINDOW)
            if entry is None:
                try:
                    entry = _extreme_value(q, k, n, mode, engine, restrict, workers, None, limit)
                except GuardExceeded as exc:
                    entry = TableEntry(q, n, k, None, None, "guard", str(exc))
            log.info("q=%d k=%d n=%d -> %s (%s)", q, k, n, entry.value, entry.method)
            table[(n, k)] = entry
    return table
