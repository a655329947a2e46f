"""
### Datasets

A `Dataset` is a numeric table with a subject grouping and a binary response.
It is what every other part of the package consumes: selectors rank its columns,
the evaluation harness splits it by subject, the benchmark times selections on it.

Load one from a CSV file:

```python
from dcsis import load_csv, CsvSchema

data = load_csv('pd_speech_features.csv', CsvSchema(id_column='id', response_column='class'))
data.n_obs, data.n_features  # -> (756, 753)
```

All columns except the id and the response are features, in header order.
Every feature cell must be a finite real number: missing values are rejected, not imputed.
The response is binary: cells equal to `positive_label` become 1, everything else 0.

Or make a synthetic one, shaped like the PD voice data or a common benchmarking dataset:

```python
from dcsis import synth_generate

data = synth_generate(n=756, p=753, n_informative=30, seed=1)
```

Datasets are immutable: transformations (`apply_scaler()`, `take()`, `select_columns()`) return new objects,
so one instance is safely shared by concurrent fold workers.
"""
import logging
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from math import ceil
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .exc import (InvalidInputError, DimensionMismatchError, EmptyDatasetError, DegenerateFoldError,
                  SchemaError, DuplicateHeaderError, ParseError, DatasetFormatError)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CsvSchema:
    """ How to find the subject id and the response in a CSV file """
    #: Column with subject identifiers
    id_column: str = 'id'
    #: Column with the class label
    response_column: str = 'class'
    #: The label of the positive class (1 = PD). Everything else is 0.
    positive_label: str = '1'
    #: The label written for the negative class by `write_csv()`
    negative_label: str = '0'
    #: Lines to skip before the header. `None`: find the header among the first lines.
    skip_rows: Optional[int] = None


@dataclass(frozen=True, eq=False)
class Dataset:
    """ n observations × p predictors, with subject ids and a binary response

    Features are stored column-major: selectors read them one column at a time.
    """
    #: n × p matrix of finite reals
    features: np.ndarray
    #: p names, in file order
    feature_names: Tuple[str, ...]
    #: n opaque subject labels
    subject_ids: np.ndarray
    #: n labels in {0, 1}
    response: np.ndarray

    def __post_init__(self):
        features = np.asfortranarray(self.features, dtype=np.float64)
        subject_ids = np.asarray(self.subject_ids, dtype=object)
        response = np.asarray(self.response, dtype=np.int8)
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'feature_names', tuple(self.feature_names))
        object.__setattr__(self, 'subject_ids', subject_ids)
        object.__setattr__(self, 'response', response)

        # Validate
        if features.ndim != 2:
            raise InvalidInputError('features must be a 2-D matrix, got {} dimensions'.format(features.ndim))
        n, p = features.shape
        if n == 0:
            raise EmptyDatasetError('the dataset has no observations')
        if len(self.feature_names) != p:
            raise DimensionMismatchError('feature names', p, len(self.feature_names))
        if subject_ids.shape != (n,):
            raise DimensionMismatchError('subject ids', n, subject_ids.shape[0])
        if response.shape != (n,):
            raise DimensionMismatchError('response', n, response.shape[0])
        if not np.isin(response, (0, 1)).all():
            raise InvalidInputError('the response may only contain 0 and 1')
        if not np.isfinite(features).all():
            raise InvalidInputError('features must be finite')

    @property
    def n_obs(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def subjects(self) -> np.ndarray:
        """ Distinct subject ids, in the order of their first appearance """
        return pd.unique(self.subject_ids)

    def observations_per_subject(self) -> pd.Series:
        return pd.Series(self.subject_ids).value_counts(sort=False)

    def take(self, rows: Sequence[int]) -> 'Dataset':
        """ A dataset with only the given observations """
        rows = np.asarray(rows)
        return replace(self,
                       features=self.features[rows],
                       subject_ids=self.subject_ids[rows],
                       response=self.response[rows])

    def select_columns(self, columns: Sequence[int]) -> 'Dataset':
        """ A dataset with only the given features, in the given order """
        columns = np.asarray(columns, dtype=np.intp)
        return replace(self,
                       features=self.features[:, columns],
                       feature_names=tuple(self.feature_names[c] for c in columns))

    def with_features(self, features: np.ndarray) -> 'Dataset':
        return replace(self, features=features)

    def equals(self, other: 'Dataset') -> bool:
        """ Exact equality: same names, same subjects, same response, bit-identical features """
        return (self.feature_names == other.feature_names
                and self.features.shape == other.features.shape
                and np.array_equal(self.features, other.features)
                and np.array_equal(self.subject_ids, other.subject_ids)
                and np.array_equal(self.response, other.response))

    def __repr__(self):
        return '{}(n={}, p={}, subjects={})'.format(
            self.__class__.__name__, self.n_obs, self.n_features, len(self.subjects))


# region CSV

def load_csv(path, schema: CsvSchema = None) -> Dataset:
    """ Load a dataset from a CSV file

    :param path: The file to read: comma-separated, UTF-8, with a header row
    :param schema: Where the id and the response are
    :raises SchemaError: the id or the response column is missing; the response is not binary
    :raises DuplicateHeaderError: the header names a column twice
    :raises ParseError: a feature cell is not a finite number
    :raises EmptyDatasetError: there are no data rows
    """
    schema = schema or CsvSchema()
    path = str(path)

    # Header
    skip_rows, header = _find_header(path, schema)
    duplicated = pd.Index(header).duplicated()
    if duplicated.any():
        raise DuplicateHeaderError(path, header[int(np.flatnonzero(duplicated)[0])])

    # Body: every cell as a string; we convert ourselves to report good errors
    try:
        raw = pd.read_csv(path, skiprows=skip_rows + 1, header=None, dtype=str,
                          keep_default_na=False, encoding='utf-8')
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError('"{}" has a header but no data rows'.format(path))
    if raw.shape[1] != len(header):
        raise DatasetFormatError('"{}": the header has {} columns, the data has {}'
                                 .format(path, len(header), raw.shape[1]))
    raw.columns = header

    # Features: everything but the id and the response
    feature_names = [name for name in header
                     if name not in (schema.id_column, schema.response_column)]
    features = _parse_features(path, raw, feature_names, first_line=skip_rows + 2)

    # Response
    labels = raw[schema.response_column].str.strip()
    distinct = pd.unique(labels)
    if len(distinct) > 2:
        raise SchemaError(path, 'the response column "{}" has {} distinct labels; it must be binary'
                          .format(schema.response_column, len(distinct)))
    if len(distinct) == 2 and schema.positive_label not in distinct:
        raise SchemaError(path, 'the positive label {!r} does not occur in "{}"'
                          .format(schema.positive_label, schema.response_column))
    response = (labels == schema.positive_label).to_numpy().astype(np.int8)

    # Done
    data = Dataset(features=features,
                   feature_names=tuple(feature_names),
                   subject_ids=raw[schema.id_column].str.strip().to_numpy(dtype=object),
                   response=response)
    logger.info('Loaded %s: n=%d p=%d subjects=%d', path, data.n_obs, data.n_features, len(data.subjects))
    return data


def write_csv(data: Dataset, path, schema: CsvSchema = None):
    """ Write a dataset in the format load_csv() reads: id first, features, the response last """
    schema = schema or CsvSchema()
    df = pd.DataFrame(data.features, columns=list(data.feature_names))
    df.insert(0, schema.id_column, data.subject_ids)
    df[schema.response_column] = np.where(data.response == 1, schema.positive_label, schema.negative_label)
    # %.17g: every double survives the round trip
    df.to_csv(path if hasattr(path, 'write') else str(path), index=False, float_format='%.17g')


def _find_header(path: str, schema: CsvSchema) -> Tuple[int, List[str]]:
    """ Locate the header line

    Some files (the UCI PD one among them) carry a line of group names above the real header.
    Unless `skip_rows` is given, the header is the first of the first few lines that names both
    the id and the response columns.
    """
    try:
        preview = pd.read_csv(path, header=None, nrows=5, dtype=str, keep_default_na=False, encoding='utf-8')
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError('"{}" is empty'.format(path))

    rows = [[str(v).strip() for v in row] for row in preview.itertuples(index=False)]
    required = (schema.id_column, schema.response_column)

    # Explicit
    if schema.skip_rows is not None:
        if schema.skip_rows >= len(rows):
            raise SchemaError(path, 'cannot skip {} lines, the preview has {}'.format(schema.skip_rows, len(rows)))
        header = rows[schema.skip_rows]
        for name in required:
            if name not in header:
                raise SchemaError(path, 'column "{}" is missing'.format(name))
        return schema.skip_rows, header

    # Detect
    for i, row in enumerate(rows):
        if all(name in row for name in required):
            return i, row

    missing = [name for name in required if name not in rows[0]]
    raise SchemaError(path, 'column "{}" is missing'.format(missing[0]))


def _parse_features(path: str, raw: pd.DataFrame, feature_names: List[str], first_line: int) -> np.ndarray:
    """ Convert feature cells to floats, pointing at the first bad one

    Cells go through Python's own float parser, which is exact: a `%.17g` cell comes back bit for bit.
    """
    if not feature_names:
        raise EmptyDatasetError('"{}" has no feature columns'.format(path))

    try:
        values = raw[feature_names].astype(np.float64).to_numpy()
    except ValueError:
        # Some cell is not a number at all: go cell by cell, it becomes NaN
        values = np.vectorize(_to_float, otypes=[np.float64])(raw[feature_names].to_numpy())

    bad = ~np.isfinite(values)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        name = feature_names[col]
        raise ParseError(path, first_line + int(row), name, raw[name].iat[row])
    return values


def _to_float(cell: str) -> float:
    try:
        return float(cell)
    except ValueError:
        return np.nan

# endregion


# region Scaling

class ScalerKind(str, Enum):
    standardize = 'standardize'
    predictor_normalize = 'predictor_normalize'
    sample_normalize = 'sample_normalize'

    @classmethod
    def parse(cls, value: Union[str, 'ScalerKind']) -> 'ScalerKind':
        """ Accept the enum, its value, or the CLI spelling (`predictor-norm`, `sample-norm`) """
        if isinstance(value, cls):
            return value
        value = str(value).strip().lower().replace('-', '_')
        value = {'predictor_norm': 'predictor_normalize', 'sample_norm': 'sample_normalize'}.get(value, value)
        try:
            return cls(value)
        except ValueError:
            raise InvalidInputError('unknown scaler {!r}; use one of: {}'
                                    .format(value, ', '.join(k.value for k in cls)))


@dataclass(frozen=True, eq=False)
class ScalerParams:
    """ Per-feature affine parameters, fitted on a training fold """
    kind: ScalerKind
    n_features: int
    #: p reals; empty for sample_normalize
    center: np.ndarray = field(default_factory=lambda: np.zeros(0))
    #: p strictly positive reals; empty for sample_normalize
    scale: np.ndarray = field(default_factory=lambda: np.zeros(0))


def fit_scaler(train: Dataset, kind: Union[str, ScalerKind] = ScalerKind.standardize) -> ScalerParams:
    """ Fit scaling parameters on the training data

    * standardize: center = mean, scale = population standard deviation
    * predictor_normalize: center = min, scale = max - min
    * sample_normalize: nothing to fit; every row is scaled by its own norm

    Constant features get scale 1 and are centered on their value: they become constant zero.
    """
    kind = ScalerKind.parse(kind)
    x = train.features

    if kind is ScalerKind.sample_normalize:
        return ScalerParams(kind=kind, n_features=train.n_features)

    if kind is ScalerKind.standardize:
        center = x.mean(axis=0)
        scale = x.std(axis=0)
    else:
        center = x.min(axis=0)
        scale = x.max(axis=0) - center

    # Degenerate features: constant columns
    constant = np.ptp(x, axis=0) == 0
    center = np.where(constant, x[0], center)
    scale = np.where(constant | (scale == 0), 1.0, scale)

    return ScalerParams(kind=kind, n_features=train.n_features, center=center, scale=scale)


def apply_scaler(data: Dataset, params: ScalerParams) -> Dataset:
    """ Transform a dataset with parameters fitted by fit_scaler()

    :raises DimensionMismatchError: the feature count differs from the fitted one
    """
    if data.n_features != params.n_features:
        raise DimensionMismatchError('feature count', params.n_features, data.n_features)

    if params.kind is ScalerKind.sample_normalize:
        norms = np.linalg.norm(data.features, axis=1)
        norms[norms == 0] = 1.0  # zero rows stay as they are
        return data.with_features(data.features / norms[:, None])

    return data.with_features((data.features - params.center) / params.scale)

# endregion


# region Folds

class Fold(NamedTuple):
    """ One leave-one-subject-out split """
    train: np.ndarray
    test: np.ndarray


def loso_folds(data: Dataset) -> List[Fold]:
    """ Leave-one-subject-out folds

    One fold per subject, in the order subjects first appear in the data.
    The test part is every observation of that subject; the train part is everything else.

    :raises DegenerateFoldError: fewer than two subjects
    """
    codes, subjects = pd.factorize(data.subject_ids)
    if len(subjects) < 2:
        raise DegenerateFoldError('leave-one-subject-out needs at least 2 subjects, got {}'.format(len(subjects)))

    return [Fold(train=np.flatnonzero(codes != i), test=np.flatnonzero(codes == i))
            for i in range(len(subjects))]

# endregion


# region Synthetic data

#: Shapes (n, p): the PD voice data and three benchmarking datasets
SHAPES = {
    'pd': (756, 753),
    'setap': (74, 84),
    'ulc': (168, 147),
    'arr': (452, 279),
}


def parse_shape(value: str) -> Tuple[int, int]:
    """ Parse a shape: a name from SHAPES, or `NxP` """
    value = value.strip().lower()
    if value in SHAPES:
        return SHAPES[value]
    m = re.fullmatch(r'(\d+)\s*[x×]\s*(\d+)', value)
    if not m:
        raise InvalidInputError('shape must be NxP or one of {}; got {!r}'.format(', '.join(SHAPES), value))
    return int(m.group(1)), int(m.group(2))


def synth_generate(n: int, p: int, n_informative: int, seed: int, shift: float = 1.0) -> Dataset:
    """ Generate a dataset with a known set of informative features

    Subjects own three consecutive observations and one class label; labels are balanced over subjects.
    The first `n_informative` features are standard normal noise shifted by `shift` for the positive class,
    the rest are standard normal noise.
    A pure function of its arguments.
    """
    if n < 2 or p < 1:
        raise InvalidInputError('need n >= 2 and p >= 1, got n={}, p={}'.format(n, p))
    if not 1 <= n_informative <= p:
        raise InvalidInputError('need 1 <= n_informative <= p, got {} with p={}'.format(n_informative, p))

    rng = np.random.default_rng(seed)

    # Subjects: consecutive triples, balanced labels
    subject_index = np.arange(n) // 3
    n_subjects = int(ceil(n / 3))
    subject_labels = rng.permutation(np.arange(n_subjects) % 2)
    response = subject_labels[subject_index].astype(np.int8)

    # Features
    features = rng.standard_normal((n, p))
    features[:, :n_informative] += shift * response[:, None]

    names = tuple('informative_{:04d}'.format(j) if j < n_informative else 'noise_{:04d}'.format(j)
                  for j in range(p))
    subject_ids = np.array(['s{:04d}'.format(i) for i in subject_index], dtype=object)
    return Dataset(features=features, feature_names=names, subject_ids=subject_ids, response=response)

# endregion
