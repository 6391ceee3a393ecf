"""Dataset parsing, seeded splitting, and bootstrap sampling.

Two text formats are read (both accept '#'-prefixed comment lines and skip
blank lines, labels may be -1/+1 or 0/1 with 0 meaning -1):

  - CSV: ``label,feat1,...,featd`` per line, one consistent dimensionality.
  - Sparse: ``label idx:val ...`` per line, 1-based strictly ascending
    indices; omitted indices are 0 and the dimension is the largest index
    seen anywhere in the file.

A dataset is split into test part T (held-out labeled), labeled part L and
unlabeled part U (labels stripped): after a seeded shuffle the first
round-half-up(test_fraction * n) rows form T, then round-half-up(
labeled_fraction * pool) of the remainder form L and the rest form U. L is
re-drawn from the pool, consuming the same generator, until it contains
both classes (at most 1000 retries). Feature vectors in all three parts
get the trailing bias constant 1.

All randomness comes from numpy's PCG64 generator
(numpy.random.default_rng(seed)); the seed-to-stream mapping is part of
the package contract, so equal seeds give byte-identical splits and
bootstrap samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    TrainingData,
    as_feature_matrix,
    as_label_vector,
    augment_bias_matrix,
)
from .errors import DataFormatError, UdeedError

#: Re-draw budget for a labeled part with both classes.
_MAX_LABEL_RETRIES = 1000


@dataclass(frozen=True)
class RawDataset:
    """Parsed dataset: raw (unaugmented) features and -1/+1 labels."""

    features: np.ndarray
    labels: np.ndarray
    name: str = "dataset"

    def __post_init__(self):
        feats = as_feature_matrix(self.features, "features")
        labels = as_label_vector(self.labels, "labels")
        if feats.shape[0] != labels.shape[0]:
            raise UdeedError(
                f"{feats.shape[0]} feature rows but {labels.shape[0]} labels"
            )
        if feats.shape[0] < 4:
            raise UdeedError(
                f"dataset needs at least 4 examples, got {feats.shape[0]}"
            )
        if feats.shape[1] < 1:
            raise UdeedError("dataset has no features")
        if np.unique(labels).size < 2:
            raise UdeedError("dataset must contain both classes")
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "labels", labels)

    @property
    def n_examples(self) -> int:
        return self.features.shape[0]

    @property
    def dimension(self) -> int:
        """Raw feature dimension, without the bias constant."""
        return self.features.shape[1]


@dataclass(frozen=True)
class SplitSpec:
    """Split fractions plus the seed that fixes the shuffle.

    labeled_fraction may be 1.0, making U empty; such a split trains LC
    and LCD but is rejected by LCUD.
    """

    test_fraction: float = 0.5
    labeled_fraction: float = 0.25
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise UdeedError(
                f"test_fraction must be in (0, 1), got {self.test_fraction}"
            )
        if not 0.0 < self.labeled_fraction <= 1.0:
            raise UdeedError(
                f"labeled_fraction must be in (0, 1], got {self.labeled_fraction}"
            )
        if self.seed < 0:
            raise UdeedError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True)
class Split:
    """L/U/T partition with bias-augmented features throughout."""

    train: TrainingData
    test_x: np.ndarray
    test_y: np.ndarray

    def __post_init__(self):
        tx = as_feature_matrix(self.test_x, "test_x")
        ty = as_label_vector(self.test_y, "test_y")
        if tx.shape[0] != ty.shape[0] or tx.shape[0] == 0:
            raise UdeedError("test part must be non-empty with matching labels")
        if tx.shape[1] != self.train.dimension:
            raise UdeedError("test dimension does not match training dimension")
        object.__setattr__(self, "test_x", tx)
        object.__setattr__(self, "test_y", ty)

    @property
    def n_test(self) -> int:
        return self.test_x.shape[0]


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def _parse_label(token: str, line_number: int) -> int:
    try:
        value = float(token)
    except ValueError:
        raise DataFormatError(f"label {token!r} is not numeric", line_number) from None
    if value == 1.0:
        return 1
    if value == -1.0 or value == 0.0:
        return -1
    raise DataFormatError(
        f"label {token!r} not in {{-1, +1}} or {{0, 1}}", line_number
    )


def _parse_feature(token: str, line_number: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataFormatError(
            f"feature {token!r} is not numeric", line_number
        ) from None
    if not math.isfinite(value):
        raise DataFormatError(f"feature {token!r} is not finite", line_number)
    return value


def _data_lines(stream):
    """Yield (1-based line number, stripped line), skipping comments/blanks."""
    lines = stream.splitlines() if isinstance(stream, str) else stream
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def parse_csv(stream, name: str = "dataset") -> RawDataset:
    """Parse ``label,feat1,...,featd`` lines into a RawDataset.

    stream is a string or an iterable of lines (an open text file works).
    Ragged rows, non-numeric fields, and out-of-range labels raise
    DataFormatError with the offending 1-based line number.
    """
    labels, rows = [], []
    dimension = None
    for number, line in _data_lines(stream):
        tokens = [t.strip() for t in line.split(",")]
        if len(tokens) < 2:
            raise DataFormatError("expected a label and at least one feature", number)
        labels.append(_parse_label(tokens[0], number))
        if dimension is None:
            dimension = len(tokens) - 1
        elif len(tokens) - 1 != dimension:
            raise DataFormatError(
                f"row has {len(tokens) - 1} features, expected {dimension}", number
            )
        rows.append([_parse_feature(t, number) for t in tokens[1:]])
    if not rows:
        raise DataFormatError("no data rows found")
    return RawDataset(np.array(rows, dtype=np.float64), np.array(labels), name)


def parse_sparse(stream, name: str = "dataset") -> RawDataset:
    """Parse ``label idx:val ...`` lines into a dense RawDataset.

    Indices are 1-based and must be strictly ascending within a row; the
    dataset dimension is the largest index seen in the file. A line with
    only a label is an all-zero row.
    """
    labels, rows = [], []
    dimension = 0
    for number, line in _data_lines(stream):
        tokens = line.split()
        labels.append(_parse_label(tokens[0], number))
        row = []
        previous = 0
        for token in tokens[1:]:
            index_text, _, value_text = token.partition(":")
            try:
                index = int(index_text)
            except ValueError:
                raise DataFormatError(
                    f"malformed index:value pair {token!r}", number
                ) from None
            if not value_text:
                raise DataFormatError(
                    f"malformed index:value pair {token!r}", number
                )
            if index < 1:
                raise DataFormatError(f"index {index} is not 1-based", number)
            if index <= previous:
                raise DataFormatError(
                    f"index {index} not strictly ascending (duplicate or "
                    f"out of order after {previous})",
                    number,
                )
            row.append((index, _parse_feature(value_text, number)))
            previous = index
        dimension = max(dimension, previous)
        rows.append(row)
    if not rows:
        raise DataFormatError("no data rows found")
    if dimension == 0:
        raise DataFormatError("no features found in any row")
    dense = np.zeros((len(rows), dimension))
    for i, row in enumerate(rows):
        for index, value in row:
            dense[i, index - 1] = value
    return RawDataset(dense, np.array(labels), name)


def load_dataset(path, fmt: str, name: str | None = None) -> RawDataset:
    """Read a dataset file in the named format ('csv' or 'sparse')."""
    parser = {"csv": parse_csv, "sparse": parse_sparse}.get(fmt)
    if parser is None:
        raise UdeedError(f"unknown dataset format {fmt!r} (expected csv or sparse)")
    try:
        with open(path, encoding="utf-8") as handle:
            return parser(handle, name if name is not None else str(path))
    except OSError as exc:
        raise UdeedError(f"cannot read dataset file {path}: {exc}") from exc


def min_max_scale(data: RawDataset) -> RawDataset:
    """Rescale each feature column to [0, 1]; constant columns become 0.

    Off by default everywhere: the reference protocol runs on raw features.
    """
    feats = data.features
    low = feats.min(axis=0)
    span = feats.max(axis=0) - low
    span[span == 0.0] = 1.0
    return RawDataset((feats - low) / span, data.labels, data.name)


def split_lut(data: RawDataset, spec: SplitSpec) -> Split:
    """Partition a dataset into labeled L, unlabeled U, and test T.

    The shuffle and any labeled re-draws consume one generator seeded with
    spec.seed, so equal (data, spec) pairs give identical splits. Raises
    when the resulting sizes are degenerate (|T| < 1, |L| < 2, pool empty)
    or when 1000 re-draws cannot give L both classes.
    """
    n = data.n_examples
    rng = np.random.default_rng(spec.seed)
    order = rng.permutation(n)
    n_test = _round_half_up(spec.test_fraction * n)
    if n_test < 1 or n_test >= n:
        raise UdeedError(f"test_fraction {spec.test_fraction} leaves |T| = {n_test}")
    test_idx = order[:n_test]
    pool = order[n_test:]
    n_labeled = _round_half_up(spec.labeled_fraction * pool.size)
    if n_labeled < 2:
        raise UdeedError(
            f"labeled_fraction {spec.labeled_fraction} of a {pool.size}-example "
            f"pool leaves |L| = {n_labeled}, need at least 2"
        )
    pool_classes = np.unique(data.labels[pool])
    if pool_classes.size < 2 and n_labeled <= pool.size:
        raise UdeedError(
            "training pool contains a single class; cannot draw a two-class "
            "labeled set"
        )
    for _ in range(_MAX_LABEL_RETRIES):
        if np.unique(data.labels[pool[:n_labeled]]).size == 2:
            break
        pool = rng.permutation(pool)
    else:
        raise UdeedError(
            f"no two-class labeled set found in {_MAX_LABEL_RETRIES} re-draws"
        )
    labeled_idx = pool[:n_labeled]
    unlabeled_idx = pool[n_labeled:]
    augmented = augment_bias_matrix(data.features)
    train = TrainingData(
        augmented[labeled_idx],
        data.labels[labeled_idx],
        augmented[unlabeled_idx],
    )
    return Split(train, augmented[test_idx], data.labels[test_idx])


def bootstrap_sample(features, labels, rng):
    """Draw |L| examples uniformly with replacement from a labeled set.

    Consumes exactly one integers() call on rng, so the draw sequence is
    fixed by the generator state. Returns (features, labels) arrays of the
    same length as the input.
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    if features.ndim != 2 or features.shape[0] == 0:
        raise UdeedError("bootstrap needs a non-empty labeled set")
    if labels.shape[0] != features.shape[0]:
        raise UdeedError("bootstrap features and labels must align")
    indices = rng.integers(0, features.shape[0], size=features.shape[0])
    return np.ascontiguousarray(features[indices]), np.ascontiguousarray(labels[indices])


def two_gaussian_dataset(n_examples: int, dimension: int,
                         separation: float = 0.5, seed: int = 0) -> RawDataset:
    """Synthetic binary dataset: unit-covariance Gaussians at ±separation·1.

    The first ceil(n/2) examples are +1, the rest -1; features are the
    class mean plus standard normal noise from the seeded generator.
    """
    if n_examples < 4 or dimension < 1:
        raise UdeedError("need at least 4 examples and 1 dimension")
    rng = np.random.default_rng(seed)
    n_pos = (n_examples + 1) // 2
    labels = np.concatenate(
        [np.ones(n_pos, dtype=np.int64), -np.ones(n_examples - n_pos, dtype=np.int64)]
    )
    features = labels[:, None] * separation + rng.standard_normal(
        (n_examples, dimension)
    )
    return RawDataset(
        features, labels, f"two-gaussians-n{n_examples}-d{dimension}-s{seed}"
    )
