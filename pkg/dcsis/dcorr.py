"""
### Distance correlation

Kernels behind the screener: pairwise distances, double centering,
the squared distance covariance and the squared distance correlation.

```python
from dcsis.dcorr import distance_correlation_sq, Metric

distance_correlation_sq(x, y)                          # euclidean
distance_correlation_sq(x, y, Metric.parse('minkowski:3'))
```

The squared distance covariance is normalized by 1/n², the V-statistic convention.
Some texts print 1/n; the factor cancels in the correlation, which is the only value
the selectors consume, but raw covariances in reports follow 1/n².

When either variable has (numerically) zero distance variance, the correlation is defined as 0:
constant features rank last.

The screener computes the response matrix once and correlates every feature against it
with `distance_correlation_sq_precentered()`.
"""
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .exc import InvalidInputError, DimensionMismatchError, SpecSyntaxError

#: Distance variances below this are treated as zero
DEGENERATE_VARIANCE = 1e-14


@dataclass(frozen=True)
class Metric:
    """ A distance between samples """
    kind: str = 'euclidean'
    #: Minkowski order; only for `minkowski`
    order: Optional[float] = None

    KINDS = ('euclidean', 'manhattan', 'minkowski', 'cosine')

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidInputError('unknown metric {!r}; use one of: {}'.format(self.kind, ', '.join(self.KINDS)))
        if self.kind == 'minkowski':
            if self.order is None or not self.order >= 1:
                raise InvalidInputError('minkowski order must be >= 1, got {}'.format(self.order))
        elif self.order is not None:
            raise InvalidInputError('only minkowski takes an order')

    @classmethod
    def parse(cls, value: Union[str, 'Metric']) -> 'Metric':
        """ Parse `euclidean`, `manhattan`, `cosine` or `minkowski:<order>` """
        if isinstance(value, Metric):
            return value

        name, _, arg = str(value).strip().lower().partition(':')
        if name != 'minkowski':
            if arg:
                raise SpecSyntaxError('metric', value, 'only minkowski takes an argument')
            return cls(kind=name)

        try:
            order = float(arg)
        except ValueError:
            raise SpecSyntaxError('metric', value, 'expected minkowski:<order>, e.g. minkowski:3')
        return cls(kind='minkowski', order=order)

    def __str__(self):
        if self.kind == 'minkowski':
            return 'minkowski:{:g}'.format(self.order)
        return self.kind


EUCLIDEAN = Metric()


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """ A symmetric n×n table of pairwise distances, possibly doubly centered """
    values: np.ndarray
    centered: bool = False

    @property
    def n(self) -> int:
        return self.values.shape[0]


def pairwise_distances(x: np.ndarray, metric: Metric = EUCLIDEAN) -> DistanceMatrix:
    """ Distances between all pairs of samples

    :param x: n values, or an n×d matrix of n samples
    :param metric: The distance
    :raises InvalidInputError: fewer than 2 samples
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[0] < 2:
        raise InvalidInputError('need at least 2 samples to compute distances, got {}'.format(x.shape[0]))

    # One dimension: every Minkowski-type metric is the absolute difference
    if x.shape[1] == 1 and metric.kind != 'cosine':
        col = x[:, 0]
        values = np.subtract.outer(col, col)
        np.abs(values, out=values)
        return DistanceMatrix(values)

    if metric.kind == 'cosine':
        with np.errstate(invalid='ignore', divide='ignore'):
            values = squareform(np.nan_to_num(pdist(x, 'cosine'), nan=0.0))
        # Zero vectors have no direction: call them identical to everything
        zero = ~np.any(x, axis=1)
        values[zero, :] = 0.0
        values[:, zero] = 0.0
        return DistanceMatrix(values)
    if metric.kind == 'minkowski':
        condensed = pdist(x, 'minkowski', p=metric.order)
    else:
        condensed = pdist(x, {'euclidean': 'euclidean', 'manhattan': 'cityblock'}[metric.kind])
    return DistanceMatrix(squareform(condensed))


def double_center(m: DistanceMatrix) -> DistanceMatrix:
    """ Subtract row and column means, add the grand mean back

    Centered input is returned as is.
    """
    if m.centered:
        return m

    v = m.values
    row_means = v.mean(axis=1)
    col_means = v.mean(axis=0)
    grand_mean = row_means.mean()
    out = v - row_means[:, None] - col_means[None, :] + grand_mean
    return DistanceMatrix(out, centered=True)


def distance_covariance_sq(a: DistanceMatrix, b: DistanceMatrix) -> float:
    """ Squared distance covariance: Σ A·B / n² over two doubly centered matrices

    :raises DimensionMismatchError: the matrices differ in size
    :raises InvalidInputError: a matrix is not centered
    """
    _check_same_size(a, b)
    if not (a.centered and b.centered):
        raise InvalidInputError('distance covariance needs doubly centered matrices')
    return max(0.0, _sum_products(a.values, b.values) / a.n ** 2)


def distance_correlation_sq(x: np.ndarray, y: np.ndarray, metric: Metric = EUCLIDEAN) -> float:
    """ Squared distance correlation of two samples, in [0, 1]

    :raises DimensionMismatchError: the samples differ in length
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape[0] != y.shape[0]:
        raise DimensionMismatchError('sample length', x.shape[0], y.shape[0])

    a = double_center(pairwise_distances(x, metric))
    b = double_center(pairwise_distances(y, metric))
    return _correlation(distance_covariance_sq(a, b),
                        distance_covariance_sq(a, a),
                        distance_covariance_sq(b, b))


def distance_correlation_sq_precentered(ax: DistanceMatrix, b_y: DistanceMatrix, vy: float) -> float:
    """ Squared distance correlation against a response matrix that was centered once

    `b_y` must be doubly centered; `vy` is its distance variance, `distance_covariance_sq(b_y, b_y)`.

    `ax` may be centered or not. An uncentered predictor matrix saves two full passes:
    since `b_y` is doubly centered, Σ a·B = Σ A·B, and the distance variance of x
    follows from the moments of `a`:

        Σ A² = Σ a² − 2n Σ rowmean² + n² grandmean²

    :raises DimensionMismatchError: the matrices differ in size
    """
    _check_same_size(ax, b_y)
    if not b_y.centered:
        raise InvalidInputError('the response matrix must be doubly centered')
    if vy < DEGENERATE_VARIANCE:
        return 0.0

    n = ax.n
    a = ax.values
    vxy = _sum_products(a, b_y.values) / n ** 2
    if ax.centered:
        vx = _sum_products(a, a) / n ** 2
    else:
        row_means = a.mean(axis=1)
        grand_mean = row_means.mean()
        vx = (_sum_products(a, a) - 2 * n * row_means.dot(row_means) + n ** 2 * grand_mean ** 2) / n ** 2
    return _correlation(max(0.0, vxy), max(0.0, vx), vy)


def _correlation(vxy: float, vx: float, vy: float) -> float:
    if vx < DEGENERATE_VARIANCE or vy < DEGENERATE_VARIANCE:
        return 0.0
    return max(0.0, vxy / np.sqrt(vx * vy))


def _sum_products(a: np.ndarray, b: np.ndarray) -> float:
    """ Σ a_ij·b_ij, without a temporary n×n product """
    return float(np.dot(a.ravel(), b.ravel()))


def _check_same_size(a: DistanceMatrix, b: DistanceMatrix):
    if a.values.shape != b.values.shape:
        raise DimensionMismatchError('distance matrix size', b.values.shape, a.values.shape)
