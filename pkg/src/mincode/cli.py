"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard
exceeded, 4 invalid input file.  Errors are reported as a single line
``error: kind=<Kind> message=<text>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import alpha as alpha_mod
from .code import (code_from_matrix, count_minimal, count_support_minimal, ghw,
                   min_distance, minimality_reports, reduce_to_projective)
from .errors import GuardExceeded, InvalidInput, MincodeError, RankDeficient, ZeroColumn
from .geometry import gaussian_binomial
from .gf import field_new
from .io import (format_matrix, read_matrix, table_from_json, table_to_json, table_to_tsv,
                 witness_to_text)
from .search import BRUTE_SUBSET_LIMIT, CANON, SUBSET, WINDOW, M_value, m_table, m_value

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD, EXIT_INPUT = 0, 1, 2, 3, 4

ENGINES = {"subset": SUBSET, "canon": CANON}


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return
    for key, value in payload.items():
        if isinstance(value, (list, dict)) or (isinstance(value, str) and "\n" in value):
            continue
        out.write(f"{key}={value}\n")


def _rows(m) -> str:
    return ";".join(" ".join(str(x) for x in row) for row in m.tolist())


def cmd_analyze(args, out) -> int:
    f, gen = read_matrix(args.matrix)
    try:
        code = code_from_matrix(f, gen)
    except (RankDeficient, ZeroColumn) as exc:
        raise InvalidInput(str(exc)) from exc
    proj, removed = reduce_to_projective(code)
    M = count_minimal(proj)
    payload = {
        "q": f.q, "n": code.n, "k": code.k,
        "projective": code.is_projective,
        "removed_columns": removed,
        "d": min_distance(code),
        "M": M,
        "minimal_codewords": (f.q - 1) * M,
    }
    if args.subcodes is not None:
        l = args.subcodes
        if not 1 <= l <= code.k:
            raise alpha_mod.OutOfRange(f"--subcodes must lie in 1..{code.k}")
        payload["l"] = l
        payload["d_l"] = ghw(proj, l) if code.is_projective else ghw(code, l)
        payload["M_l"] = count_support_minimal(proj, l)
        payload["subcodes_total"] = gaussian_binomial(code.k, l, f.q)
    if args.list:
        hyps = []
        for rep in minimality_reports(proj):
            item = {"dual": _rows(rep.hyperplane.dual_basis), "weight": rep.weight,
                    "minimal": rep.minimal}
            if rep.witness_codim2 is not None:
                item["witness"] = _rows(rep.witness_codim2.dual_basis)
            hyps.append(item)
        payload["hyperplanes"] = hyps
    _emit(payload, args.format, out)
    if args.list and args.format == "text":
        for item in payload["hyperplanes"]:
            line = f"hyperplane {item['dual']} weight={item['weight']} minimal={item['minimal']}"
            if "witness" in item:
                line += f" witness={item['witness']}"
            out.write(line + "\n")
    return EXIT_OK


def cmd_alpha(args, out) -> int:
    q, k, r, l = args.q, args.k, args.r, args.l
    alpha_mod.AlphaConfig(q, k, r, l)
    witness = None
    if args.method == "closed":
        if l != 1:
            raise alpha_mod.OutOfRange("closed forms exist only for l = 1")
        value, provenance = alpha_mod.alpha_closed(q, k, r), alpha_mod.CLOSED
    elif args.method == "brute":
        value, witness = alpha_mod.alpha_brute(q, k, r, l, max_subspaces=args.max_subspaces)
        provenance = alpha_mod.BRUTE
    else:
        if l != 1:
            raise alpha_mod.OutOfRange("the dual-arc construction is for l = 1")
        witness = alpha_mod.alpha_construction(q, k, r)
        value, provenance = witness.cardinality, alpha_mod.CONSTRUCTION
    payload = {"q": q, "k": k, "r": r, "l": l,
               "value": "not covered" if value is None else value,
               "provenance": provenance}
    if witness is not None and args.witness:
        payload["witness"] = witness_to_text(witness)
    _emit(payload, args.format, out)
    if witness is not None and args.witness and args.format == "text":
        out.write(witness_to_text(witness))
    return EXIT_OK


def cmd_bound(args, out) -> int:
    q, k, n, l = args.q, args.k, args.n, args.l
    field_new(q)
    payload = {"q": q, "k": k, "n": n, "l": l}
    if l == 1:
        payload["lower_bound"] = alpha_mod.bound_M(q, k, n)
        window = alpha_mod.exact_m_window(q, k, n) if k >= 2 else None
        payload["exact"] = "not applicable" if window is None else window[0]
        if window is not None:
            payload["window_r"] = window[1]
    else:
        payload["lower_bound"] = alpha_mod.bound_Ml(q, k, l, n)
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    field_new(args.q)
    table = m_table(args.q, args.nmax, args.kmax, mode=args.mode, k_min=args.kmin,
                    use_windows=not args.no_windows, workers=args.workers,
                    engine=ENGINES.get(args.engine), limit=args.brute_limit)
    if args.format == "json":
        out.write(table_to_json(args.q, table, args.mode))
    else:
        out.write(table_to_tsv(table, args.nmax, args.kmax, args.kmin))
        if args.format == "text":
            for (n, k), e in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
                out.write(f"n={n} k={k} value={e.value} method={e.method}\n")
    return EXIT_OK


def cmd_search(args, out) -> int:
    fn = m_value if args.mode == "min" else M_value
    entry = fn(args.q, args.k, args.n, engine=ENGINES.get(args.engine), workers=args.workers,
               checkpoint=args.checkpoint, restrict=not args.all_codes,
               limit=args.brute_limit)
    if args.format == "json":
        out.write(table_to_json(args.q, {(entry.n, entry.k): entry}, args.mode))
        return EXIT_OK
    out.write(f"q={entry.q} n={entry.n} k={entry.k} mode={args.mode} "
              f"value={entry.value} method={entry.method}\n")
    if entry.certificate is not None:
        out.write(format_matrix(entry.certificate))
    return EXIT_OK


def _verify_entry(q: int, mode: str, entry) -> str | None:
    if entry.value is None:
        return None if entry.error else "entry has neither value nor error"
    if entry.certificate is None:
        return "missing certificate"
    code = code_from_matrix(field_new(q), entry.certificate)
    if (code.n, code.k) != (entry.n, entry.k):
        return f"certificate is [{code.n},{code.k}], entry claims [{entry.n},{entry.k}]"
    if not code.is_projective:
        return "certificate is not projective"
    M = count_minimal(code)
    if M != entry.value:
        return f"certificate has M={M}, entry claims {entry.value}"
    if mode == "min" and entry.k >= 2 and alpha_mod.bound_M(q, entry.k, entry.n) > entry.value:
        return "value is below the proven lower bound"
    if entry.method == WINDOW and alpha_mod.exact_m(q, entry.k, entry.n) != entry.value:
        return "window value disagrees with exact_m"
    return None


def cmd_verify(args, out) -> int:
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        q, mode, entries = table_from_json(text)
        failures = 0
        for entry in entries:
            problem = _verify_entry(q, mode, entry)
            status = "ok" if problem is None else f"FAIL {problem}"
            failures += problem is not None
            out.write(f"n={entry.n} k={entry.k} value={entry.value} {status}\n")
        out.write(f"verified={len(entries) - failures}/{len(entries)}\n")
        return EXIT_OK if failures == 0 else EXIT_FAIL
    f, gen = read_matrix(path)
    try:
        code = code_from_matrix(f, gen)
    except (RankDeficient, ZeroColumn) as exc:
        raise InvalidInput(str(exc)) from exc
    out.write(f"valid [{code.n},{code.k}]_{f.q} code projective={code.is_projective} "
              f"M={count_minimal(reduce_to_projective(code)[0])}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mincode",
                                     description="Minimal codewords of linear codes via projective geometry.")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("text", "json"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("analyze", help="analyze a generator matrix file")
    p.add_argument("matrix")
    p.add_argument("--subcodes", type=int, metavar="L")
    p.add_argument("--list", action="store_true", help="per-hyperplane minimality report")
    fmt(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("alpha", help="compute alpha_q(k, r)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--method", choices=("closed", "brute", "construct"), default="closed")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--max-subspaces", type=int, default=alpha_mod.BRUTE_MAX_SUBSPACES)
    fmt(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("bound", help="lower bound / exact value of m_q(n, k)")
    for name in ("q", "k", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    fmt(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("table", help="table of m_q(n, k) or M_q(n, k)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--mode", choices=("min", "max"), default="min")
    p.add_argument("--engine", choices=("subset", "canon"))
    p.add_argument("--no-windows", action="store_true", help="search every entry")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--brute-limit", type=int, default=BRUTE_SUBSET_LIMIT,
                   help="largest C(N, n) the subset engine may enumerate")
    fmt(p, ("tsv", "json", "text"), "tsv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("search", help="exhaustive m_q(n, k) or M_q(n, k)")
    for name in ("q", "k", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--mode", choices=("min", "max"), default="min")
    p.add_argument("--engine", choices=("subset", "canon"))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--brute-limit", type=int, default=BRUTE_SUBSET_LIMIT)
    p.add_argument("--checkpoint", help="resumable checkpoint file (canon engine)")
    p.add_argument("--all-codes", action="store_true",
                   help="do not use the weight-1 reduction")
    fmt(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="re-check a matrix file or table/search JSON")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args, out)
    except MincodeError as exc:
        message = str(exc).splitlines()[0] if str(exc) else ""
        sys.stderr.write(f"error: kind={exc.kind} message={message}\n")
        if isinstance(exc, GuardExceeded):
            return EXIT_GUARD
        if isinstance(exc, InvalidInput):
            return EXIT_INPUT
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
