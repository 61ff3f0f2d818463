"""Command-line frontend: weigh, rank, table, and sweep subcommands.

Data streams go to stdout (or --output) and are byte-identical across runs
for identical inputs and flags; diagnostics go to stderr. Exit codes:
0 success, 1 I/O failure, 2 invalid input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .corpus import (
    TermDocumentMatrix,
    ingest_counts,
    ingest_text,
    read_corpus_jsonl,
    read_counts_csv,
    read_stopwords,
    read_text_dir,
)
from .errors import InputFormatError, TermfisherError
from .verify import (
    FORMULAS,
    QuotientPoint,
    binomial_decay_check,
    check_reference_tables,
    cor2_convergence,
    lemma1_sweep,
    render_sweep_csv,
    render_sweep_text,
    render_tables_csv,
    render_tables_text,
)
from .weights import SCHEMES, WeightRecord, weigh_matrix

TSV_COLUMNS = (
    "term", "doc", "tf", "idf", "icf", "tfidf", "tficf",
    "neg_log_p", "q", "phi", "psi", "thm1_approx", "cor1_approx",
)

RANK_SCHEMES = (
    "tf", "idf", "icf", "tfidf", "tficf", "fisher", "phi", "psi",
    "thm1_approx", "cor1_approx",
)

_RANK_FIELD = {name: name for name in RANK_SCHEMES} | {"fisher": "neg_log_p"}
_RANK_NEEDS = {
    "tf": "tf", "idf": "idf", "icf": "icf", "tfidf": "tfidf", "tficf": "tficf",
    "fisher": "fisher", "phi": "phi", "psi": "psi",
    "thm1_approx": "approximations", "cor1_approx": "approximations",
}


class _ValidationFailure(Exception):
    """Invalid CLI input combination; reported on stderr with exit 2."""


def _fmt(value: float | int | None) -> str:
    if value is None:
        return "NA"
    if isinstance(value, int):
        return str(value)
    return f"{value:.6f}"


def _record_line(record: WeightRecord) -> str:
    cells = [record.term, record.doc]
    cells.extend(_fmt(getattr(record, name)) for name in TSV_COLUMNS[2:])
    return "\t".join(cells)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _load_matrix(args: argparse.Namespace) -> TermDocumentMatrix:
    stopwords = read_stopwords(args.stopwords) if args.stopwords else frozenset()
    if args.format == "counts":
        if args.stopwords:
            raise _ValidationFailure(
                "--stopwords applies to tokenized input only (jsonl or textdir)"
            )
        return ingest_counts(read_counts_csv(args.input))
    if args.format == "jsonl":
        documents = read_corpus_jsonl(args.input)
    else:  # textdir
        documents = read_text_dir(args.input)
    return ingest_text(documents, stopwords=stopwords)


def _parse_schemes(raw: str | None) -> frozenset[str] | None:
    if raw is None:
        return None
    names = frozenset(name.strip() for name in raw.split(",") if name.strip())
    unknown = names - SCHEMES
    if unknown:
        raise _ValidationFailure(
            f"unknown schemes {sorted(unknown)}; valid: {sorted(SCHEMES)}"
        )
    return names


def cmd_weigh(args: argparse.Namespace) -> int:
    matrix = _load_matrix(args)
    records = weigh_matrix(matrix, _parse_schemes(args.schemes), include_zeros=args.include_zeros)
    lines = ["\t".join(TSV_COLUMNS)]
    lines.extend(_record_line(r) for r in records)
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    if args.top_k < 1:
        raise _ValidationFailure("--top-k must be >= 1")
    matrix = _load_matrix(args)
    records = weigh_matrix(matrix, {_RANK_NEEDS[args.scheme]})
    field = _RANK_FIELD[args.scheme]
    by_doc: dict[str, list[tuple[float, str]]] = {}
    for record in records:
        score = getattr(record, field)
        if score is None:
            continue
        by_doc.setdefault(record.doc, []).append((float(score), record.term))
    lines = ["doc\trank\tterm\tscore"]
    for doc in matrix.docs:
        scored = sorted(by_doc.get(doc, ()), key=lambda pair: (-pair[0], pair[1]))
        for rank, (score, term) in enumerate(scored[: args.top_k], start=1):
            lines.append(f"{doc}\t{rank}\t{term}\t{score:.6f}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    perturb = None
    if args.inject_error:
        parts = args.inject_error.split("/")
        if len(parts) != 3 or parts[2] not in FORMULAS:
            raise _ValidationFailure("--inject-error expects BLOCK/LABEL/FORMULA")
        perturb = (parts[0], parts[1], parts[2])
    rows, mismatches = check_reference_tables(perturb=perturb)
    validation, typical = rows[:6], rows[6:]
    if args.table_format == "csv":
        _emit(render_tables_csv(validation, typical), args.output)
    else:
        _emit(render_tables_text(validation, typical), args.output)
    if mismatches:
        for mismatch in mismatches:
            print(f"mismatch: {mismatch}", file=sys.stderr)
        return 3
    return 0


def _read_grid_file(path: str) -> list[QuotientPoint]:
    import csv as _csv

    points = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = _csv.reader(handle)
        header = next(reader, None)
        if header != ["n", "n_i", "n_j", "n_ij"]:
            raise InputFormatError(
                f"expected header 'n,n_i,n_j,n_ij', got {header!r}", path=path, line=1
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                n, n_i, n_j, n_ij = (int(cell) for cell in row)
            except ValueError:
                raise InputFormatError(
                    "grid rows must be four integers", path=path, line=lineno
                ) from None
            points.append(QuotientPoint(n=n, n_i=n_i, n_j=n_j, n_ij=n_ij))
    return points


def _parse_int_list(raw: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise _ValidationFailure(f"{flag} expects a comma-separated integer list") from None


def cmd_sweep(args: argparse.Namespace) -> int:
    grid = _read_grid_file(args.grid_file) if args.grid_file else None
    quotient = lemma1_sweep(grid)
    convergence = cor2_convergence(
        args.cor2_R, args.cor2_beta, _parse_int_list(args.cor2_d, "--cor2-d")
    )
    decay = binomial_decay_check(
        args.decay_p, args.decay_k, args.decay_s, _parse_int_list(args.decay_N, "--decay-N")
    )
    if args.sweep_format == "csv":
        _emit(render_sweep_csv(quotient, convergence, decay), args.output)
    else:
        _emit(render_sweep_text(quotient, convergence, decay), args.output)
    failed = False
    for result in quotient.failures:
        p = result.point
        print(
            f"sweep failure: quotient at n={p.n} n_i={p.n_i} n_j={p.n_j} n_ij={p.n_ij}: "
            f"q={result.q} {result.note}",
            file=sys.stderr,
        )
        failed = True
    if not convergence.passed:
        print("sweep failure: convergence errors not halving as required", file=sys.stderr)
        failed = True
    if not decay.passed:
        print("sweep failure: pmf gap not halving as required", file=sys.stderr)
        failed = True
    return 3 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termfisher",
        description="Term weighting (TF-IDF family and the Fisher's exact test "
        "enrichment weight) with built-in numerical validation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="input file or directory")
        p.add_argument(
            "--format",
            required=True,
            choices=("jsonl", "counts", "textdir"),
            help="jsonl: corpus lines with id/text; counts: term,doc,count CSV; "
            "textdir: directory of .txt files",
        )
        p.add_argument("--stopwords", help="stopword list, one token per line")
        p.add_argument("--output", help="write the data stream here instead of stdout")

    weigh = sub.add_parser("weigh", help="emit every weight for every nonzero cell as TSV")
    add_input_flags(weigh)
    weigh.add_argument(
        "--schemes",
        help=f"comma-separated subset of {sorted(SCHEMES)}; default: all",
    )
    weigh.add_argument(
        "--include-zeros", action="store_true", help="also emit zero-count cells"
    )
    weigh.set_defaults(func=cmd_weigh)

    rank = sub.add_parser("rank", help="top-k terms per document under one scheme")
    add_input_flags(rank)
    rank.add_argument("--scheme", default="fisher", choices=RANK_SCHEMES)
    rank.add_argument("--top-k", type=int, required=True, dest="top_k")
    rank.set_defaults(func=cmd_rank)

    table = sub.add_parser(
        "table", help="recompute the built-in reference tables and check every value"
    )
    table.add_argument(
        "--format", dest="table_format", default="text", choices=("text", "csv")
    )
    table.add_argument("--output", help="write the tables here instead of stdout")
    table.add_argument("--inject-error", help=argparse.SUPPRESS)
    table.set_defaults(func=cmd_table)

    sweep = sub.add_parser(
        "sweep", help="run the quotient, convergence, and pmf-decay property sweeps"
    )
    sweep.add_argument(
        "--grid-file", help="CSV (n,n_i,n_j,n_ij) of quotient grid points to evaluate"
    )
    sweep.add_argument("--cor2-R", type=int, default=20, dest="cor2_R")
    sweep.add_argument("--cor2-beta", type=float, default=0.2, dest="cor2_beta")
    sweep.add_argument("--cor2-d", default="100,200,400,800", dest="cor2_d")
    sweep.add_argument("--decay-p", type=float, default=0.1, dest="decay_p")
    sweep.add_argument("--decay-k", type=int, default=5, dest="decay_k")
    sweep.add_argument("--decay-s", type=int, default=20, dest="decay_s")
    sweep.add_argument("--decay-N", default="200,400,800,1600", dest="decay_N")
    sweep.add_argument(
        "--format", dest="sweep_format", default="text", choices=("text", "csv")
    )
    sweep.add_argument("--output", help="write the report here instead of stdout")
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TermfisherError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
