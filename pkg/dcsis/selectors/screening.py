"""
### DC-SIS screening

Every feature is scored, in isolation, by its squared distance correlation with the response.
Features are then sorted: the best `k` are the first `k` of the list.

Redundancy between features is ignored, so the scores are independent of each other
and of `k`: the whole ranking costs the same whether you keep 2 features or 50.

The response distance matrix is computed and centered once, then shared read-only
by the workers that score blocks of feature columns.
The metric applies to the features only: the 0/1 response always uses the euclidean distance.
"""
import logging
from typing import List, Optional, Union

import numpy as np

from .base import FeatureSelectorBase, FeatureRanking, register_selector
from ..dataset import Dataset
from ..dcorr import (Metric, EUCLIDEAN, DistanceMatrix, pairwise_distances, double_center,
                     distance_covariance_sq, distance_correlation_sq_precentered)
from ..util.parallel import ordered_map, resolve_workers, split_blocks
from ..util.timers import Nanotimers

logger = logging.getLogger(__name__)


@register_selector
class DcsisSelector(FeatureSelectorBase):
    """ Sure independence screening by distance correlation """

    method_name = 'dcsis'
    ranks_all_features = True

    def __init__(self, metric: Union[str, Metric] = 'euclidean', workers: Optional[int] = None):
        """ Init the screener

        :param metric: Distance on the predictors. The 0/1 response always uses |y − y'|.
        :param workers: Worker pool size
        """
        super(DcsisSelector, self).__init__(workers=workers)
        self.metric = Metric.parse(metric)

    def rank(self, train: Dataset, k: int = None) -> FeatureRanking:
        """ Score and sort all features. `k` is only validated. """
        self.check_input(train, k)
        return dcsis_rank(train, self.metric, workers=self.workers)


def dcsis_rank(train: Dataset, metric: Metric = EUCLIDEAN, workers: Optional[int] = None) -> FeatureRanking:
    """ Rank all features by squared distance correlation with the response

    Scores are in [0, 1]. Sorted descending; equal scores keep ascending column order.

    :param train: Standardized training data
    :param metric: Distance used on every feature; never on the response
    :param workers: Worker pool size; the ranking does not depend on it
    """
    timers = Nanotimers()
    timers.start('total')
    p = train.n_features
    workers = resolve_workers(workers)

    # Response: once
    with timers.measure('response_matrix'):
        b = double_center(pairwise_distances(train.response.astype(np.float64), EUCLIDEAN))
        vy = distance_covariance_sq(b, b)

    # Features, by blocks of columns
    with timers.measure('screening'):
        blocks = split_blocks(np.arange(p), workers)
        parts = ordered_map(lambda columns: _screen_columns(train.features, columns, metric, b, vy),
                            blocks, workers=workers)
        scores = np.concatenate(parts)

    # Sort: descending score, ascending index
    with timers.measure('sort'):
        order = np.lexsort((np.arange(p), -scores))

    timers.stop('total')
    logger.debug('DC-SIS ranked p=%d features of n=%d observations in %.3fs (workers=%d)',
                 p, train.n_obs, timers['total'], workers)
    return FeatureRanking(indices=order,
                          scores=scores[order],
                          method=DcsisSelector.method_name,
                          k_requested=p,
                          timings=timers.dict())


def dcsis_select(ranking: FeatureRanking, k: int) -> List[int]:
    """ The first `k` features of a DC-SIS ranking

    :raises InvalidInputError: k > p
    """
    return ranking.select(k)


def _screen_columns(features: np.ndarray, columns: np.ndarray, metric: Metric,
                    b: DistanceMatrix, vy: float) -> np.ndarray:
    """ Squared distance correlation of some columns with the shared response matrix """
    out = np.empty(len(columns))
    for i, j in enumerate(columns):
        # Uncentered on purpose: the kernel centers implicitly against `b`
        a = pairwise_distances(features[:, j], metric)
        out[i] = distance_correlation_sq_precentered(a, b, vy)
    return out
