import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Type

import numpy as np
import pandas as pd

from ..dataset import Dataset
from ..exc import InvalidInputError, EmptyDatasetError, RegistryError
from ..util.inspect import pluck_kwargs_from
from ..util.settings_dict import PipelineSettingsDict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FeatureRanking:
    """ Features ordered by a selection method

    DC-SIS ranks every feature by score; mRMR lists the first `k_requested` features in selection order.
    """
    #: Column indices, best first
    indices: np.ndarray
    #: Score of every listed feature
    scores: np.ndarray
    #: The method that produced it: 'dcsis', 'mrmr-mid', 'mrmr-miq'
    method: str
    #: How many features were asked for
    k_requested: int
    #: Wall clock of the selection, seconds: 'total', and one entry per phase
    timings: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'indices', np.asarray(self.indices, dtype=np.intp))
        object.__setattr__(self, 'scores', np.asarray(self.scores, dtype=np.float64))
        if self.indices.shape != self.scores.shape:
            raise InvalidInputError('a ranking needs one score per feature')

    @property
    def entries(self) -> List[Tuple[int, float]]:
        """ (feature index, score) pairs, best first """
        return [(int(i), float(s)) for i, s in zip(self.indices, self.scores)]

    def __len__(self):
        return len(self.indices)

    def select(self, k: int) -> List[int]:
        """ The first `k` features

        Selecting k and then k' > k is a prefix relation: the ranking is never recomputed.

        :raises InvalidInputError: k is out of range
        """
        if not 1 <= k <= len(self.indices):
            raise InvalidInputError('cannot select k={} features out of a ranking of {}'.format(k, len(self.indices)))
        return [int(i) for i in self.indices[:k]]

    def to_frame(self, feature_names: Sequence[str] = None) -> pd.DataFrame:
        """ The ranking as a table: rank, feature_index, feature_name, score, method """
        return pd.DataFrame({
            'rank': np.arange(1, len(self.indices) + 1),
            'feature_index': self.indices,
            'feature_name': [feature_names[i] for i in self.indices] if feature_names is not None else '',
            'score': self.scores,
            'method': self.method,
        })


RANKING_COLUMNS = ('rank', 'feature_index', 'feature_name', 'score', 'method')


def write_ranking(ranking: FeatureRanking, path, feature_names: Sequence[str] = None):
    """ Write a ranking as CSV: `rank,feature_index,feature_name,score,method` """
    ranking.to_frame(feature_names).to_csv(str(path), index=False, float_format='%.17g')


def read_ranking(path) -> FeatureRanking:
    """ Read a ranking written by write_ranking() """
    df = pd.read_csv(str(path), keep_default_na=False)
    missing = [c for c in RANKING_COLUMNS if c not in df.columns]
    if missing:
        raise InvalidInputError('"{}" is not a ranking file: no column "{}"'.format(path, missing[0]))
    methods = df['method'].unique()
    return FeatureRanking(indices=df['feature_index'].to_numpy(),
                          scores=df['score'].astype(float).to_numpy(),
                          method=str(methods[0]) if len(methods) else '',
                          k_requested=len(df))


class FeatureSelectorBase:
    """ A feature selection method

        Every subclass implements one method and is registered under `method_name`.
        Selectors keep no state between calls: one instance may serve many concurrent folds.
    """

    #: Name of the method, as used on the command line
    method_name = None

    #: Does rank() always order all p features, whatever k is?
    ranks_all_features = False

    def __init__(self, workers: Optional[int] = None):
        """ Initialize the selector with its settings

        :param workers: Worker pool size for the selection itself. `None`: all cores.

        NOTE: Any arguments that have default values will be treated as selector settings!!
        """
        self.workers = workers

    @classmethod
    def from_settings(cls, settings: Mapping, **overrides) -> 'FeatureSelectorBase':
        """ Build a selector, plucking the settings its __init__() understands

        A plain mapping is read with `PipelineSettingsDict.pluck_from()`: keys that are no settings are ignored.

        :raises InvalidInputError: an override is neither a setting nor an argument of this selector
        """
        if not isinstance(settings, PipelineSettingsDict):
            settings = PipelineSettingsDict.pluck_from(settings)
        return cls(**settings.pluck_for(cls, **overrides))

    def with_workers(self, workers: Optional[int]) -> 'FeatureSelectorBase':
        """ A copy of this selector with a different worker count """
        cls = self.__class__
        result = cls.__new__(cls)
        result.__dict__.update(self.__dict__)
        result.workers = workers
        return result

    def rank(self, train: Dataset, k: int) -> FeatureRanking:
        """ Rank the features of a training set

        :param train: Standardized training data. Caller's responsibility.
        :param k: The number of features the caller is going to select.
            Selectors that rank all features anyway ignore it.
        :raises InvalidInputError
        """
        raise NotImplementedError()

    def select(self, train: Dataset, k: int) -> List[int]:
        """ Select `k` features from a training set """
        return self.rank(train, k).select(k)

    def check_input(self, train: Dataset, k: Optional[int]):
        """ Validate the training set and k before anything is computed

        :raises EmptyDatasetError: no features
        :raises InvalidInputError: fewer than 2 observations; k out of range
        """
        if train.n_features == 0:
            raise EmptyDatasetError('there are no features to select from')
        if train.n_obs < 2:
            raise InvalidInputError('need at least 2 observations to select features, got {}'.format(train.n_obs))
        if k is not None and not 1 <= k <= train.n_features:
            raise InvalidInputError('k must be between 1 and p={}, got {}'.format(train.n_features, k))

    def get_settings(self) -> dict:
        """ Current settings, for report metadata """
        return pluck_kwargs_from(self.__dict__, for_func=self.__class__.__init__)

    def __repr__(self):
        return '{}({})'.format(self.__class__.__name__,
                               ', '.join('{}={!r}'.format(k, v) for k, v in self.get_settings().items()))


# region Registry

#: Selector classes by method name
SELECTORS: Dict[str, Type[FeatureSelectorBase]] = {}


def register_selector(cls: Type[FeatureSelectorBase]) -> Type[FeatureSelectorBase]:
    """ Class decorator: make a selector available by its `method_name` """
    name = cls.method_name
    if not name:
        raise RegistryError('{} has no method_name'.format(cls.__name__))
    if name in SELECTORS and SELECTORS[name] is not cls:
        raise RegistryError('selector "{}" is already registered'.format(name))
    SELECTORS[name] = cls
    return cls


#: Other names of registered methods
METHOD_ALIASES = {
    'mrmr': 'mrmr-mid',  # the default variant
}


def normalize_method_name(name: str) -> str:
    """ 'mrmr_mid', 'MRMR-MID', 'mrmr' -> 'mrmr-mid' """
    name = str(name).strip().lower().replace('_', '-')
    return METHOD_ALIASES.get(name, name)


def get_selector_class(name: str) -> Type[FeatureSelectorBase]:
    name = normalize_method_name(name)
    try:
        return SELECTORS[name]
    except KeyError:
        raise RegistryError('unknown selection method "{}"; use one of: {}'
                            .format(name, ', '.join(sorted(SELECTORS))))


def make_selector(name: str, settings: Mapping = None, **overrides) -> FeatureSelectorBase:
    """ Build a registered selector from settings

    Example:

        make_selector('mrmr-mid', PipelineSettingsDict(bins=3), workers=1)
    """
    return get_selector_class(name).from_settings(settings or {}, **overrides)

# endregion
