"""Response matrices: validation, CSV ingestion and summary moments."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import BinaryIO, Literal, Sequence

import numpy as np

from .errors import (
    DuplicateLabelError,
    NonNumericCellError,
    RaggedRowError,
    ReliabilityError,
    TooFewRespondentsError,
)

VarianceMode = Literal["sample", "population"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ResponseMatrix:
    """N respondents by K items of finite real responses.

    Rows are respondents, columns are items. The value array is copied and
    made read-only on construction.
    """

    values: np.ndarray
    item_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ReliabilityError(f"responses must be 2-D, got shape {values.shape}")
        n, k = values.shape
        if k < 1:
            raise ReliabilityError("at least one item is required")
        if n < 2:
            raise TooFewRespondentsError(f"need at least 2 respondents, got {n}")
        if not np.all(np.isfinite(values)):
            raise NonNumericCellError("responses contain NaN or infinite values")
        labels = tuple(self.item_labels) or tuple(f"item{i + 1}" for i in range(k))
        if len(labels) != k:
            raise ReliabilityError(f"{len(labels)} labels for {k} items")
        if len(set(labels)) != k:
            dupes = sorted({lab for lab in labels if labels.count(lab) > 1})
            raise DuplicateLabelError(f"duplicate item labels: {', '.join(dupes)}")
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "item_labels", labels)

    @property
    def n_respondents(self) -> int:
        return self.values.shape[0]

    @property
    def n_items(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def select_items(self, columns: Sequence[int]) -> "ResponseMatrix":
        columns = list(columns)
        return ResponseMatrix(self.values[:, columns], tuple(self.item_labels[c] for c in columns))

    def __eq__(self, other):
        if not isinstance(other, ResponseMatrix):
            return NotImplemented
        return self.item_labels == other.item_labels and np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True)
class SummaryStats:
    total_scores: np.ndarray
    item_variances: np.ndarray
    total_variance: float
    covariance: np.ndarray


def _parse_cell(text: str, row: int, col: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise NonNumericCellError(f"row {row}, column {col}: cannot parse {text!r}") from None
    if not math.isfinite(value):
        raise NonNumericCellError(f"row {row}, column {col}: non-finite value {text!r}")
    return value


def load_csv(source: BinaryIO | bytes) -> ResponseMatrix:
    """Read a response matrix from UTF-8 CSV bytes.

    The first row holds the item labels; every following row is one
    respondent. Empty cells are treated as missing data and rejected. Blank
    lines are skipped.

    Raises
    ------
    RaggedRowError, NonNumericCellError, TooFewRespondentsError, DuplicateLabelError
    """
    raw = source if isinstance(source, (bytes, bytearray)) else source.read()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise NonNumericCellError(f"input is not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(text))
    header = None
    rows = []
    for line_no, record in enumerate(reader, start=1):
        if not record:
            continue
        if header is None:
            header = [h.strip() for h in record]
            if len(set(header)) != len(header):
                dupes = sorted({h for h in header if header.count(h) > 1})
                raise DuplicateLabelError(f"duplicate item labels: {', '.join(dupes)}")
            continue
        if len(record) != len(header):
            raise RaggedRowError(f"line {line_no}: expected {len(header)} fields, got {len(record)}")
        rows.append([_parse_cell(cell.strip(), line_no, c + 1) for c, cell in enumerate(record)])
    if header is None:
        raise TooFewRespondentsError("empty input: no header row")
    if len(rows) < 2:
        raise TooFewRespondentsError(f"need at least 2 respondents, got {len(rows)}")
    return ResponseMatrix(np.array(rows, dtype=float), tuple(header))


def read_csv(path) -> ResponseMatrix:
    with open(path, "rb") as fh:
        return load_csv(fh)


def to_csv(m: ResponseMatrix) -> str:
    """Serialize ``m`` in the format accepted by :func:`load_csv`."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(m.item_labels)
    for row in m.values:
        writer.writerow([repr(float(v)) if not float(v).is_integer() else str(int(v)) for v in row])
    return buf.getvalue()


def _ddof(variance_mode: VarianceMode) -> int:
    if variance_mode == "sample":
        return 1
    if variance_mode == "population":
        return 0
    raise ValueError(f"unknown variance mode {variance_mode!r}")


def covariance(values: np.ndarray, variance_mode: VarianceMode = "sample") -> np.ndarray:
    """Item covariance matrix of an N x K array."""
    values = np.asarray(values, dtype=float)
    centered = values - values.mean(axis=0)
    cov = centered.T @ centered / (values.shape[0] - _ddof(variance_mode))
    # exact symmetry regardless of BLAS accumulation order
    return (cov + cov.T) / 2


def summarize(m: ResponseMatrix, variance_mode: VarianceMode = "sample") -> SummaryStats:
    """Total scores and the variance/covariance moments of ``m``.

    ``total_variance`` is computed as the sum of all covariance entries, which
    equals the variance of the total scores.
    """
    cov = covariance(m.values, variance_mode)
    return SummaryStats(
        total_scores=_frozen(m.values.sum(axis=1)),
        item_variances=_frozen(np.diag(cov)),
        total_variance=float(cov.sum()),
        covariance=_frozen(cov),
    )
