"""Term-document matrix construction and per-cell statistics.

A collection of documents is reduced to an immutable sparse matrix of
nonnegative integer counts: rows are distinct terms, columns are documents.
Every statistic used elsewhere in the package (totals, document frequencies,
proportions) is derived from these integers on demand; floats are never
cached in the matrix.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateCellError,
    DuplicateDocIdError,
    EmptyCollectionError,
    IndexOutOfRangeError,
    InputFormatError,
    NegativeCountError,
)

# Tokens are maximal runs of alphanumeric characters (Unicode-aware, underscore
# excluded); everything else separates.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

COUNTS_CSV_HEADER = ("term", "doc", "count")


def tokenize(text: str, *, lowercase: bool = True, stopwords: frozenset[str] = frozenset()) -> list[str]:
    """Split text into bag-of-words tokens.

    Deterministic: lowercase (optionally), split on any maximal run of
    non-alphanumeric characters, drop empties, then drop stopwords.
    """
    if lowercase:
        text = text.lower()
    tokens = _TOKEN_RE.findall(text)
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    return tokens


@dataclass(frozen=True)
class CellStats:
    """Full statistics bundle for one (term, document) cell.

    Integer fields are exact; the proportion properties are derived in double
    precision at access time.
    """

    n_ij: int  # occurrences of the term in the document
    n_i: int   # occurrences of the term in the collection
    n_j: int   # terms in the document
    n: int     # terms in the collection
    b_i: int   # documents containing the term
    d: int     # documents in the collection
    i: int = 0
    j: int = 0

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1:
            raise ValueError("collection must contain at least one term and one document")
        if min(self.n_ij, self.n_i, self.n_j, self.b_i) < 0:
            raise ValueError("counts must be nonnegative")
        if self.n_ij > min(self.n_i, self.n_j):
            raise ValueError("n_ij cannot exceed min(n_i, n_j)")
        if self.n_i > self.n or self.n_j > self.n:
            raise ValueError("marginal totals cannot exceed the grand total")
        if not 1 <= self.b_i <= self.d:
            raise ValueError("b_i must lie in [1, d]")

    @property
    def p_ij(self) -> float:
        """Proportion of the document made up by the term."""
        return self.n_ij / self.n_j

    @property
    def p_i(self) -> float:
        """Proportion of the collection made up by the term."""
        return self.n_i / self.n

    @property
    def p_tilde(self) -> float:
        """Proportion of the term's occurrences outside the document.

        Raises ZeroDivisionError when the document is the whole collection.
        """
        return (self.n_i - self.n_ij) / (self.n - self.n_j)

    @property
    def p_check(self) -> float:
        """p_ij shifted up by one document slot: p_ij + 1/n_j."""
        return self.p_ij + 1.0 / self.n_j


class TermDocumentMatrix:
    """Immutable sparse count matrix with term/document registries.

    Registries keep first-seen order, which fixes all output orderings.
    Terms whose total count is zero are dropped; documents are retained even
    when empty (they still count toward d).
    """

    def __init__(self, vocab: Sequence[str], docs: Sequence[str], counts: dict[tuple[int, int], int]):
        self._vocab: tuple[str, ...] = tuple(vocab)
        self._docs: tuple[str, ...] = tuple(docs)
        self._counts: dict[tuple[int, int], int] = dict(counts)
        self._term_index = {t: i for i, t in enumerate(self._vocab)}
        self._doc_index = {doc: j for j, doc in enumerate(self._docs)}

        m, d = len(self._vocab), len(self._docs)
        if m < 1 or d < 1:
            raise EmptyCollectionError("matrix must contain at least one term and one document")
        row = [0] * m
        col = [0] * d
        freq = [0] * m
        for (i, j), c in self._counts.items():
            if not (0 <= i < m and 0 <= j < d):
                raise IndexOutOfRangeError(f"cell ({i}, {j}) outside {m}x{d} matrix")
            if c < 0:
                raise NegativeCountError(f"negative count at cell ({i}, {j})")
            if c > 0:
                row[i] += c
                col[j] += c
                freq[i] += 1
        if any(r == 0 for r in row):
            raise EmptyCollectionError("every retained term must have a positive total")
        self._row_totals = tuple(row)
        self._col_totals = tuple(col)
        self._doc_freq = tuple(freq)
        self._grand_total = sum(row)

    # -- registries ---------------------------------------------------------

    @property
    def vocab(self) -> tuple[str, ...]:
        return self._vocab

    @property
    def docs(self) -> tuple[str, ...]:
        return self._docs

    @property
    def m(self) -> int:
        return len(self._vocab)

    @property
    def d(self) -> int:
        return len(self._docs)

    def term_index(self, term: str) -> int:
        try:
            return self._term_index[term]
        except KeyError:
            raise IndexOutOfRangeError(f"unknown term {term!r}") from None

    def doc_index(self, doc: str) -> int:
        try:
            return self._doc_index[doc]
        except KeyError:
            raise IndexOutOfRangeError(f"unknown document {doc!r}") from None

    # -- totals -------------------------------------------------------------

    @property
    def row_totals(self) -> tuple[int, ...]:
        """n_i per term."""
        return self._row_totals

    @property
    def col_totals(self) -> tuple[int, ...]:
        """n_j per document."""
        return self._col_totals

    @property
    def doc_freq(self) -> tuple[int, ...]:
        """b_i per term: number of documents with a positive count."""
        return self._doc_freq

    @property
    def grand_total(self) -> int:
        """n: total term occurrences in the collection."""
        return self._grand_total

    # -- cells --------------------------------------------------------------

    def count(self, i: int, j: int) -> int:
        self._check_indices(i, j)
        return self._counts.get((i, j), 0)

    def cell_stats(self, i: int, j: int) -> CellStats:
        """All integer totals and derived proportions for cell (i, j)."""
        self._check_indices(i, j)
        return CellStats(
            n_ij=self._counts.get((i, j), 0),
            n_i=self._row_totals[i],
            n_j=self._col_totals[j],
            n=self._grand_total,
            b_i=self._doc_freq[i],
            d=self.d,
            i=i,
            j=j,
        )

    def nonzero_cells(self) -> Iterator[tuple[int, int]]:
        """Yield (i, j) with positive count, document-major then term index."""
        by_doc: dict[int, list[int]] = {}
        for (i, j), c in self._counts.items():
            if c > 0:
                by_doc.setdefault(j, []).append(i)
        for j in range(self.d):
            for i in sorted(by_doc.get(j, ())):
                yield i, j

    def _check_indices(self, i: int, j: int) -> None:
        if not 0 <= i < self.m:
            raise IndexOutOfRangeError(f"term index {i} outside [0, {self.m})")
        if not 0 <= j < self.d:
            raise IndexOutOfRangeError(f"document index {j} outside [0, {self.d})")

    # -- round-trip ---------------------------------------------------------

    def export_counts(self) -> list[tuple[str, str, int]]:
        """Rows that rebuild this matrix exactly via ingest_counts.

        The first pass lists every term against document 0 (zero counts
        included) so that re-ingestion re-seeds the vocabulary order; later
        documents contribute their nonzero cells, with a single zero row for
        documents that would otherwise go unmentioned.
        """
        rows: list[tuple[str, str, int]] = []
        for i, term in enumerate(self._vocab):
            rows.append((term, self._docs[0], self._counts.get((i, 0), 0)))
        for j in range(1, self.d):
            doc = self._docs[j]
            cells = [(i, c) for (i, jj), c in self._counts.items() if jj == j and c > 0]
            if not cells:
                rows.append((self._vocab[0], doc, 0))
                continue
            for i, c in sorted(cells):
                rows.append((self._vocab[i], doc, c))
        return rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TermDocumentMatrix):
            return NotImplemented
        return (
            self._vocab == other._vocab
            and self._docs == other._docs
            and {k: v for k, v in self._counts.items() if v > 0}
            == {k: v for k, v in other._counts.items() if v > 0}
        )

    def __repr__(self) -> str:
        return f"TermDocumentMatrix(m={self.m}, d={self.d}, n={self._grand_total})"


def ingest_text(
    documents: Iterable[tuple[str, str]],
    *,
    lowercase: bool = True,
    stopwords: frozenset[str] = frozenset(),
) -> TermDocumentMatrix:
    """Build a matrix from (doc id, raw text) pairs.

    Token order within documents is discarded. Documents that tokenize to
    nothing are retained with an empty column.
    """
    vocab: list[str] = []
    term_index: dict[str, int] = {}
    docs: list[str] = []
    doc_index: dict[str, int] = {}
    counts: dict[tuple[int, int], int] = {}

    for doc_id, text in documents:
        if doc_id in doc_index:
            raise DuplicateDocIdError(f"duplicate document id {doc_id!r}")
        j = len(docs)
        doc_index[doc_id] = j
        docs.append(doc_id)
        for token in tokenize(text, lowercase=lowercase, stopwords=stopwords):
            i = term_index.get(token)
            if i is None:
                i = len(vocab)
                term_index[token] = i
                vocab.append(token)
            counts[(i, j)] = counts.get((i, j), 0) + 1

    if not docs:
        raise EmptyCollectionError("no documents provided")
    if not vocab:
        raise EmptyCollectionError("no tokens survived tokenization")
    return TermDocumentMatrix(vocab, docs, counts)


def ingest_counts(rows: Iterable[tuple[str, str, int]]) -> TermDocumentMatrix:
    """Build a matrix from explicit (term, doc, count) rows.

    Counts must be nonnegative and (term, doc) pairs unique. Zero rows
    register the document (and establish mention order) but contribute no
    occurrences; terms whose total ends up zero are dropped from the
    vocabulary.
    """
    vocab: list[str] = []
    term_index: dict[str, int] = {}
    docs: list[str] = []
    doc_index: dict[str, int] = {}
    counts: dict[tuple[int, int], int] = {}
    totals: dict[int, int] = {}

    for term, doc, count in rows:
        if count < 0:
            raise NegativeCountError(f"negative count {count} for ({term!r}, {doc!r})")
        i = term_index.get(term)
        if i is None:
            i = len(vocab)
            term_index[term] = i
            vocab.append(term)
        j = doc_index.get(doc)
        if j is None:
            j = len(docs)
            doc_index[doc] = j
            docs.append(doc)
        if (i, j) in counts:
            raise DuplicateCellError(f"duplicate cell ({term!r}, {doc!r})")
        counts[(i, j)] = count
        totals[i] = totals.get(i, 0) + count

    if not docs:
        raise EmptyCollectionError("no count rows provided")
    kept = [i for i in range(len(vocab)) if totals.get(i, 0) > 0]
    if not kept:
        raise EmptyCollectionError("all terms have zero total count")
    remap = {i: new_i for new_i, i in enumerate(kept)}
    new_counts = {
        (remap[i], j): c for (i, j), c in counts.items() if i in remap and c > 0
    }
    return TermDocumentMatrix([vocab[i] for i in kept], docs, new_counts)


# -- file formats -------------------------------------------------------------


def read_counts_csv(path: str | Path) -> list[tuple[str, str, int]]:
    """Read a counts CSV with the exact header term,doc,count."""
    path = Path(path)
    rows: list[tuple[str, str, int]] = []
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != COUNTS_CSV_HEADER:
            raise InputFormatError(
                f"expected header {','.join(COUNTS_CSV_HEADER)!r}, got {header!r}",
                path=str(path),
                line=1,
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise InputFormatError(
                    f"expected 3 fields, got {len(row)}", path=str(path), line=lineno
                )
            term, doc, raw = row
            try:
                count = int(raw)
            except ValueError:
                raise InputFormatError(
                    f"count {raw!r} is not an integer", path=str(path), line=lineno
                ) from None
            if count < 0:
                raise InputFormatError(
                    f"count {count} is negative", path=str(path), line=lineno
                )
            rows.append((term, doc, count))
    return rows


def write_counts_csv(path: str | Path, rows: Iterable[tuple[str, str, int]]) -> None:
    """Write counts rows as UTF-8 CSV with LF line endings."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(COUNTS_CSV_HEADER)
        writer.writerows(rows)


def read_corpus_jsonl(path: str | Path) -> list[tuple[str, str]]:
    """Read a corpus JSONL file: one object per line with id and text."""
    path = Path(path)
    documents: list[tuple[str, str]] = []
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputFormatError(
                    f"invalid JSON: {exc.msg}", path=str(path), line=lineno
                ) from None
            if not isinstance(obj, dict) or not isinstance(obj.get("id"), str) or not isinstance(obj.get("text"), str):
                raise InputFormatError(
                    "each line must be an object with string fields 'id' and 'text'",
                    path=str(path),
                    line=lineno,
                )
            documents.append((obj["id"], obj["text"]))
    return documents


def read_text_dir(path: str | Path) -> list[tuple[str, str]]:
    """Read every .txt file in a directory; doc id is the file stem."""
    path = Path(path)
    documents: list[tuple[str, str]] = []
    for file in sorted(path.glob("*.txt")):
        documents.append((file.stem, file.read_text(encoding="utf-8")))
    return documents


def read_stopwords(path: str | Path) -> frozenset[str]:
    """One stopword per line; blanks skipped; lowercased to match tokenization."""
    words = set()
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            word = line.strip().lower()
            if word:
                words.add(word)
    return frozenset(words)
