"""Term-weighting schemes over a term-document matrix.

Covers the classical TF-IDF family, the enrichment weight -log H (negative
log of the one-tailed Fisher's exact test p-value, i.e. the hypergeometric
upper tail), and the correction terms that bridge the enrichment weight to
TF-ICF and TF-IDF.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import exp, log
from typing import Iterable

from .corpus import CellStats, TermDocumentMatrix
from .errors import (
    UndefinedPhiError,
    UndefinedQuotientError,
    UndefinedWeightError,
)
from .numerics import (
    NEG_INFINITY,
    HypergeomParams,
    log_binom_pmf,
    log_hypergeom_tail,
)

SCHEMES = frozenset(
    {"tf", "idf", "icf", "tfidf", "tficf", "fisher", "phi", "psi", "approximations"}
)


def idf(stats: CellStats) -> float:
    """Inverse document frequency ln(d / b_i); 0 for a term in every document."""
    if stats.b_i < 1:
        raise UndefinedWeightError("idf requires b_i >= 1")
    return log(stats.d / stats.b_i)


def icf(stats: CellStats) -> float:
    """Inverse collection frequency ln(n / n_i)."""
    if stats.n_i < 1:
        raise UndefinedWeightError("icf requires n_i >= 1")
    return log(stats.n / stats.n_i)


def tfidf(stats: CellStats) -> float:
    """Term frequency times inverse document frequency: n_ij * ln(d / b_i)."""
    return stats.n_ij * idf(stats)


def tficf(stats: CellStats) -> float:
    """Term frequency times inverse collection frequency: n_ij * ln(n / n_i)."""
    return stats.n_ij * icf(stats)


def fisher_weight(stats: CellStats) -> float:
    """Enrichment weight: -ln of the upper-tail probability P(X >= n_ij).

    Zero when n_ij = 0 (the tail is the whole distribution), and grows with
    the degree to which the term is over-represented in the document.
    """
    tail = log_hypergeom_tail(
        HypergeomParams(k=stats.n_ij, K=stats.n_i, s=stats.n_j, N=stats.n)
    )
    return -tail if tail != 0.0 else 0.0


def q_ij(stats: CellStats) -> float:
    """Quotient of the tail just past n_ij over the binomial mass at n_ij.

    q = P(X >= n_ij + 1) / b(n_ij; n_j, p_i), evaluated in log space.
    Exactly 0 when the tail past n_ij is empty.
    """
    p_i = stats.p_i
    if p_i <= 0.0 or p_i >= 1.0:
        raise UndefinedQuotientError("quotient requires 0 < p_i < 1")
    tail = log_hypergeom_tail(
        HypergeomParams(k=stats.n_ij + 1, K=stats.n_i, s=stats.n_j, N=stats.n)
    )
    if tail == NEG_INFINITY:
        return 0.0
    return exp(tail - log_binom_pmf(stats.n_ij, stats.n_j, p_i))


def phi(stats: CellStats) -> float:
    """Correction closing the gap between the enrichment weight and TF-ICF.

    n_ij*ln(p_ij) + (n_j - n_ij)*(p_i - p_ij) - q. Undefined at n_ij = 0.
    """
    if stats.n_ij < 1:
        raise UndefinedPhiError("phi requires n_ij >= 1")
    p_ij = stats.p_ij
    return (
        stats.n_ij * log(p_ij)
        + (stats.n_j - stats.n_ij) * (stats.p_i - p_ij)
        - q_ij(stats)
    )


def psi(stats: CellStats) -> float:
    """Correction closing the gap between the enrichment weight and TF-IDF.

    -n_ij*(1 - b_i/d)*(1 - p_ij) - q.
    """
    if not 1 <= stats.b_i <= stats.d:
        raise UndefinedWeightError("psi requires 1 <= b_i <= d")
    return -stats.n_ij * (1.0 - stats.b_i / stats.d) * (1.0 - stats.p_ij) - q_ij(stats)


@dataclass(frozen=True)
class WeightRecord:
    """All weights for one cell; None marks values not computed or undefined."""

    term: str
    doc: str
    tf: int
    idf: float | None = None
    icf: float | None = None
    tfidf: float | None = None
    tficf: float | None = None
    neg_log_p: float | None = None
    q: float | None = None
    phi: float | None = None
    psi: float | None = None
    thm1_approx: float | None = None
    cor1_approx: float | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)


def _cell_record(term: str, doc: str, stats: CellStats, schemes: frozenset[str]) -> WeightRecord:
    values: dict[str, float | None] = {}
    notes: list[str] = []

    idf_v = idf(stats)
    icf_v = icf(stats)
    if "idf" in schemes:
        values["idf"] = idf_v
    if "icf" in schemes:
        values["icf"] = icf_v
    if "tfidf" in schemes:
        values["tfidf"] = stats.n_ij * idf_v
    if "tficf" in schemes:
        values["tficf"] = stats.n_ij * icf_v
    if "fisher" in schemes:
        values["neg_log_p"] = fisher_weight(stats)

    want_q = schemes & {"phi", "psi", "approximations"}
    q_v: float | None = None
    if want_q:
        try:
            q_v = q_ij(stats)
            values["q"] = q_v
        except UndefinedQuotientError as exc:
            notes.append(f"q: {exc}")
    phi_v: float | None = None
    if schemes & {"phi", "approximations"}:
        if q_v is None:
            notes.append("phi: requires q")
        else:
            try:
                phi_v = phi(stats)
                values["phi"] = phi_v
            except UndefinedPhiError as exc:
                notes.append(f"phi: {exc}")
    psi_v: float | None = None
    if schemes & {"psi", "approximations"}:
        if q_v is None:
            notes.append("psi: requires q")
        else:
            psi_v = psi(stats)
            values["psi"] = psi_v
    if "approximations" in schemes:
        if phi_v is not None:
            values["thm1_approx"] = stats.n_ij * icf_v + phi_v
        if psi_v is not None:
            values["cor1_approx"] = stats.n_ij * idf_v + psi_v

    return WeightRecord(term=term, doc=doc, tf=stats.n_ij, notes=tuple(notes), **values)


def weigh_matrix(
    matrix: TermDocumentMatrix,
    schemes: Iterable[str] | None = None,
    *,
    include_zeros: bool = False,
) -> list[WeightRecord]:
    """Compute one WeightRecord per nonzero cell (all cells with include_zeros).

    Records are ordered document-major, then by term index. Per-cell
    preconditions that fail (e.g. phi at tf = 0, q when the term saturates
    the collection) leave the affected fields as None with a note; the batch
    never aborts.
    """
    if schemes is None:
        selected = SCHEMES
    else:
        selected = frozenset(schemes)
        unknown = selected - SCHEMES
        if unknown:
            raise ValueError(f"unknown schemes: {sorted(unknown)}")

    records = []
    if include_zeros:
        cells: Iterable[tuple[int, int]] = (
            (i, j) for j in range(matrix.d) for i in range(matrix.m)
        )
    else:
        cells = matrix.nonzero_cells()
    for i, j in cells:
        stats = matrix.cell_stats(i, j)
        if stats.n_j == 0:
            continue  # empty document: no cell statistics are defined
        records.append(
            _cell_record(matrix.vocab[i], matrix.docs[j], stats, selected)
        )
    return records
