"""
### Selection stability

How much do the selections of the jackknife folds agree?

* within a method: the mean overlap |Sᵢ ∩ Sⱼ| / k over all pairs of folds
* between two methods: the mean overlap |Sᵢᴬ ∩ Sᵢᴮ| / k over folds
* per feature: the share of folds that selected it

Features selected in every fold by both methods are listed as well.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .harness import loso_selections
from ..dataset import Dataset, ScalerKind
from ..exc import InvalidInputError, DimensionMismatchError
from ..selectors import FeatureSelectorBase

logger = logging.getLogger(__name__)

#: How the within-method statistic is computed; goes into report headers
WITHIN_METHOD_DEFINITION = 'mean pairwise overlap |Si ∩ Sj| / k over all pairs of folds'


@dataclass(frozen=True, eq=False)
class StabilityReport:
    """ Agreement of feature selections across folds and across methods """
    methods: Tuple[str, str]
    n_folds: int
    k: int
    #: Method -> mean pairwise overlap between its folds
    within: Dict[str, float]
    #: Mean overlap of the two methods' selections on the same fold
    between: float
    #: Columns: method, feature_index, feature, count, probability; sorted by method, then probability descending
    probabilities: pd.DataFrame
    #: Features every fold of both methods selected, by index
    always_selected_both: List[int] = field(default_factory=list)
    #: Method -> number of features every fold selected
    always_selected_counts: Dict[str, int] = field(default_factory=dict)
    feature_names: Optional[Tuple[str, ...]] = None
    definition: str = WITHIN_METHOD_DEFINITION

    @property
    def always_selected_names(self) -> List[str]:
        if self.feature_names is None:
            return [str(i) for i in self.always_selected_both]
        return [self.feature_names[i] for i in self.always_selected_both]


def stability_report(selections_a: Sequence[Sequence[int]], selections_b: Sequence[Sequence[int]],
                     methods: Tuple[str, str] = ('dcsis', 'mrmr-mid'),
                     feature_names: Sequence[str] = None,
                     n_features: int = None) -> StabilityReport:
    """ Compare the per-fold selections of two methods

    :param selections_a: Method A's selected feature indices, one list per fold
    :param selections_b: Method B's, same folds in the same order
    :param methods: Method names, for the report
    :param feature_names: Names for the probability table
    :param n_features: p; by default inferred from names or indices
    :raises DimensionMismatchError: different fold counts
    :raises InvalidInputError: fewer than 2 folds; empty selections
    """
    if len(selections_a) != len(selections_b):
        raise DimensionMismatchError('fold count', len(selections_a), len(selections_b))
    n_folds = len(selections_a)
    if n_folds < 2:
        raise InvalidInputError('stability needs at least 2 folds, got {}'.format(n_folds))

    if n_features is None:
        n_features = len(feature_names) if feature_names is not None else \
            1 + max(max(s) for s in list(selections_a) + list(selections_b) if len(s))
    a = _indicator(selections_a, n_features)
    b = _indicator(selections_b, n_features)

    # Overlaps
    k_a = a.sum(axis=1)
    k_b = b.sum(axis=1)
    within = {methods[0]: _within(a, k_a), methods[1]: _within(b, k_b)}
    between = float(np.mean((a & b).sum(axis=1) / np.minimum(k_a, k_b)))

    # Per-feature probabilities
    names = tuple(feature_names) if feature_names is not None else None
    tables = [_probability_table(method, m, names) for method, m in zip(methods, (a, b))]
    probabilities = pd.concat(tables, ignore_index=True)

    # Always selected
    always_a = a.all(axis=0)
    always_b = b.all(axis=0)
    report = StabilityReport(
        methods=tuple(methods),
        n_folds=n_folds,
        k=int(max(k_a.max(), k_b.max())),
        within=within,
        between=between,
        probabilities=probabilities,
        always_selected_both=[int(i) for i in np.flatnonzero(always_a & always_b)],
        always_selected_counts={methods[0]: int(always_a.sum()), methods[1]: int(always_b.sum())},
        feature_names=names,
    )
    logger.info('Stability over %d folds: within %s=%.3f %s=%.3f, between=%.3f, %d always selected by both',
                n_folds, methods[0], within[methods[0]], methods[1], within[methods[1]], between,
                len(report.always_selected_both))
    return report


def _indicator(selections: Sequence[Sequence[int]], n_features: int) -> np.ndarray:
    """ folds × p boolean matrix """
    m = np.zeros((len(selections), n_features), dtype=bool)
    for i, selected in enumerate(selections):
        if len(selected) == 0:
            raise InvalidInputError('fold {} selected no features'.format(i))
        m[i, np.asarray(selected, dtype=np.intp)] = True
    return m


def _within(m: np.ndarray, k: np.ndarray) -> float:
    """ Mean |Si ∩ Sj| / k over fold pairs i < j """
    counts = m.astype(np.int64)
    overlaps = counts @ counts.T
    i, j = np.triu_indices(m.shape[0], k=1)
    return float(np.mean(overlaps[i, j] / np.minimum(k[i], k[j])))


def _probability_table(method: str, m: np.ndarray, names: Optional[Tuple[str, ...]]) -> pd.DataFrame:
    counts = m.sum(axis=0)
    selected = np.flatnonzero(counts)
    df = pd.DataFrame({
        'method': method,
        'feature_index': selected,
        'feature': [names[i] for i in selected] if names is not None else [str(i) for i in selected],
        'count': counts[selected],
        'probability': counts[selected] / m.shape[0],
    })
    # Descending probability, ascending index
    return df.sort_values(['probability', 'feature_index'], ascending=[False, True], kind='mergesort') \
             .reset_index(drop=True)


def loso_stability(data: Dataset, k: int, selector_a: FeatureSelectorBase, selector_b: FeatureSelectorBase,
                   scaler: Union[str, ScalerKind] = ScalerKind.standardize,
                   workers: Optional[int] = None) -> StabilityReport:
    """ Select `k` features on every fold with two methods, and compare the selections """
    selections_a = loso_selections(data, selector_a, k, scaler=scaler, workers=workers)
    selections_b = loso_selections(data, selector_b, k, scaler=scaler, workers=workers)
    return stability_report([s.ranking.select(k) for s in selections_a],
                            [s.ranking.select(k) for s in selections_b],
                            methods=(selector_a.method_name, selector_b.method_name),
                            feature_names=data.feature_names,
                            n_features=data.n_features)
