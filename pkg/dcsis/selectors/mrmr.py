"""
### mRMR

Minimum redundancy, maximum relevance: a greedy forward selection.

The first feature is the one with the highest mutual information with the response (relevance).
Every next feature maximizes its relevance penalized by the mean mutual information
with the features already selected (redundancy):

* `mid`: relevance − redundancy
* `miq`: relevance / redundancy

Mutual information is estimated from discretized features: every feature is cut into bins
around its training mean, by default the three bins below μ − σ, inside μ ± σ and above μ + σ.
Features with no more distinct values than bins (binary ones) keep their values as codes.
The estimate is the plug-in one, in bits.

Ties go to the lowest column index, everywhere.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from sklearn.metrics import mutual_info_score

from .base import FeatureSelectorBase, FeatureRanking, register_selector
from ..dataset import Dataset
from ..exc import InvalidInputError, DimensionMismatchError
from ..util.parallel import ordered_map, resolve_workers, split_blocks
from ..util.timers import Nanotimers

logger = logging.getLogger(__name__)

VARIANTS = ('mid', 'miq')

#: nats per bit
LN2 = np.log(2.0)


# region Discretization

@dataclass(frozen=True, eq=False)
class DiscretizedMatrix:
    """ Bin codes of every feature, with the bin edges they were cut at """
    #: n × p bin codes in [0, n_bins)
    codes: np.ndarray
    #: p × (n_bins − 1) ascending edges
    edges: np.ndarray
    n_bins: int

    @property
    def thresholds(self) -> np.ndarray:
        """ p × 2: the (low, high) edges of every feature """
        return np.stack([self.edges[:, 0], self.edges[:, -1]], axis=1)

    def apply(self, features: np.ndarray) -> np.ndarray:
        """ Discretize other observations with the stored edges """
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] != self.edges.shape[0]:
            raise DimensionMismatchError('feature count', self.edges.shape[0], features.shape[-1])
        return _bin_codes(features, self.edges)


def discretize(train: Dataset, bins: int = 3, bin_width_sigmas: float = 1.0) -> DiscretizedMatrix:
    """ Cut every feature into bins around its mean

    Edges are spread evenly over μ ± w·σ (population σ, computed on `train`).
    With 3 bins and w = 1: code 0 below μ − σ, 1 within [μ − σ, μ + σ], 2 above μ + σ.
    With 2 bins the cut is at μ.

    A feature with at most `bins` distinct values (a binary one, say) is not cut around its mean:
    each value gets its own code, in ascending order, with the edges halfway between the values
    (unused edges are +∞).

    A constant feature has all its edges at its value: all its codes are 1.
    """
    if bins < 2:
        raise InvalidInputError('need at least 2 bins, got {}'.format(bins))
    if not bin_width_sigmas > 0:
        raise InvalidInputError('bin width must be positive, got {}'.format(bin_width_sigmas))

    x = train.features
    mean = x.mean(axis=0)
    std = x.std(axis=0)

    if bins == 2:
        offsets = np.zeros(1)
    else:
        offsets = np.linspace(-1.0, 1.0, bins - 1) * bin_width_sigmas
    edges = mean[:, None] + std[:, None] * offsets[None, :]

    # Few distinct values: the values are the categories
    n_distinct = 1 + np.count_nonzero(np.diff(np.sort(x, axis=0), axis=0) > 0, axis=0)
    for j in np.flatnonzero((n_distinct >= 2) & (n_distinct <= bins)):
        values = np.unique(x[:, j])
        midpoints = (values[:-1] + values[1:]) / 2
        edges[j] = np.concatenate([midpoints, np.full(bins - len(values), np.inf)])

    return DiscretizedMatrix(codes=_bin_codes(x, edges), edges=edges, n_bins=bins)


def _bin_codes(x: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """ code = [x ≥ e₀] + Σ [x > eᵢ]: the middle bin is closed on both ends """
    codes = (x >= edges[:, 0]).astype(np.int8)
    for e in range(1, edges.shape[1]):
        codes += x > edges[:, e]
    return np.asfortranarray(codes)

# endregion


# region Mutual information

def mutual_information(a: Sequence, b: Sequence) -> float:
    """ Plug-in mutual information of two discrete samples, in bits

    Any labels are accepted: they are recoded to 0..m−1 first.

    :raises DimensionMismatchError: the lengths differ
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatchError('sample length', a.shape, b.shape)
    if a.size == 0:
        raise InvalidInputError('mutual information of empty samples')

    a_values, a_codes = np.unique(a, return_inverse=True)
    b_values, b_codes = np.unique(b, return_inverse=True)
    return _mutual_information_codes(a_codes, b_codes, len(a_values), len(b_values))


def _mutual_information_codes(a: np.ndarray, b: np.ndarray, na: int, nb: int) -> float:
    """ MI of two code vectors with values in [0, na) and [0, nb) """
    counts = np.bincount(a.astype(np.intp) * nb + b, minlength=na * nb).reshape(na, nb)
    return max(0.0, float(mutual_info_score(None, None, contingency=counts)) / LN2)

# endregion


# region Greedy selection

def mrmr_select(disc: DiscretizedMatrix, response: np.ndarray, k: int, variant: str = 'mid',
                memoize_redundancy: bool = False, workers: Optional[int] = 1,
                timers: Nanotimers = None) -> FeatureRanking:
    """ Greedy mRMR selection of `k` features

    :param disc: Discretized training features
    :param response: Training labels, 0/1
    :param k: Features to select
    :param variant: 'mid' (difference) or 'miq' (quotient)
    :param memoize_redundancy: Remember pairwise MI between greedy steps.
        When off, every step recomputes the MI of each candidate with every selected feature.
        The selection is the same either way.
    :param workers: Worker pool for the candidate scan within a step
    :param timers: Record 'relevance' and 'greedy' phases here
    :raises InvalidInputError: k out of range, unknown variant
    """
    codes = disc.codes
    n, p = codes.shape
    if variant not in VARIANTS:
        raise InvalidInputError('unknown mRMR variant {!r}; use one of: {}'.format(variant, ', '.join(VARIANTS)))
    if not 1 <= k <= p:
        raise InvalidInputError('k must be between 1 and p={}, got {}'.format(p, k))
    if n < 2:
        raise InvalidInputError('need at least 2 observations, got {}'.format(n))
    response = np.asarray(response, dtype=np.intp)
    if response.shape != (n,):
        raise DimensionMismatchError('response', n, response.shape[0])

    timers = timers or Nanotimers()
    workers = resolve_workers(workers)
    nb = disc.n_bins

    def mi(i: int, j: int) -> float:
        return _mutual_information_codes(codes[:, i], codes[:, j], nb, nb)

    # Relevance of every feature
    with timers.measure('relevance'):
        relevance = np.array([_mutual_information_codes(codes[:, j], response, nb, 2) for j in range(p)])

    with timers.measure('greedy'):
        first = int(np.argmax(relevance))  # lowest index wins ties
        selected = [first]
        scores = [float(relevance[first])]
        available = np.ones(p, dtype=bool)
        available[first] = False
        redundancy_sums = np.zeros(p)  # memoized: Σ MI(j, s) over selected s

        while len(selected) < k:
            candidates = np.flatnonzero(available)

            # Redundancy of every candidate
            if memoize_redundancy:
                newest = selected[-1]
                parts = ordered_map(lambda block: np.array([mi(j, newest) for j in block]),
                                    split_blocks(candidates, workers), workers=workers)
                redundancy_sums[candidates] += np.concatenate(parts)
                sums = redundancy_sums[candidates]
            else:
                parts = ordered_map(lambda block: _redundancy_sums(mi, block, selected),
                                    split_blocks(candidates, workers), workers=workers)
                sums = np.concatenate(parts)
            redundancy = sums / len(selected)

            # Criterion
            phi = _criterion(relevance[candidates], redundancy, variant)
            best = int(np.argmax(phi))  # candidates are ascending: lowest index wins ties
            pick = int(candidates[best])

            selected.append(pick)
            scores.append(float(phi[best]))
            available[pick] = False

    return FeatureRanking(indices=selected,
                          scores=scores,
                          method='mrmr-' + variant,
                          k_requested=k,
                          timings=timers.dict())


def _redundancy_sums(mi, block: np.ndarray, selected: List[int]) -> np.ndarray:
    """ Σ MI(j, s) over the selected s, recomputed, for every j in the block """
    out = np.empty(len(block))
    for i, j in enumerate(block):
        total = 0.0
        for s in selected:
            total += mi(j, s)
        out[i] = total
    return out


def _criterion(relevance: np.ndarray, redundancy: np.ndarray, variant: str) -> np.ndarray:
    if variant == 'mid':
        return relevance - redundancy

    # miq: no redundancy at all is the best case, unless there's no relevance either
    with np.errstate(divide='ignore', invalid='ignore'):
        quotient = relevance / redundancy
    return np.where(redundancy > 0, quotient, np.where(relevance > 0, np.inf, 0.0))

# endregion


@register_selector
class MrmrSelector(FeatureSelectorBase):
    """ mRMR, difference form """

    method_name = 'mrmr-mid'
    variant = 'mid'

    def __init__(self, bins: int = 3, bin_width_sigmas: float = 1.0, memoize_redundancy: bool = False,
                 workers: Optional[int] = None):
        """ Init the greedy selector

        :param bins: Discretization bins per feature
        :param bin_width_sigmas: Edges span μ ± this many σ
        :param memoize_redundancy: Remember pairwise MI between greedy steps
        :param workers: Worker pool for the candidate scan
        """
        super(MrmrSelector, self).__init__(workers=workers)
        self.bins = bins
        self.bin_width_sigmas = bin_width_sigmas
        self.memoize_redundancy = memoize_redundancy

    def rank(self, train: Dataset, k: int) -> FeatureRanking:
        """ Select `k` features; the ranking lists them in selection order """
        if k is None:
            raise InvalidInputError('mRMR selects a fixed number of features: k is required')
        self.check_input(train, k)
        timers = Nanotimers()
        timers.start('total')

        with timers.measure('discretize'):
            disc = discretize(train, bins=self.bins, bin_width_sigmas=self.bin_width_sigmas)

        ranking = mrmr_select(disc, train.response, k,
                              variant=self.variant,
                              memoize_redundancy=self.memoize_redundancy,
                              workers=self.workers,
                              timers=timers)
        timers.stop('total')

        logger.debug('mRMR-%s selected k=%d of p=%d features in %.3fs',
                     self.variant, k, train.n_features, timers['total'])
        return FeatureRanking(indices=ranking.indices,
                              scores=ranking.scores,
                              method=ranking.method,
                              k_requested=k,
                              timings=timers.dict())


@register_selector
class MrmrQuotientSelector(MrmrSelector):
    """ mRMR, quotient form """

    method_name = 'mrmr-miq'
    variant = 'miq'
