from typing import Mapping, Optional, Tuple

from .inspect import pluck_kwargs_from
from ..exc import InvalidInputError


class PipelineSettingsDict(dict):
    """ Pipeline settings container.

        Mostly exists for nice autocompletion and documentation purposes :)

        Every key is a plain kwarg name of some component's `__init__()`:
        selectors, the evaluation harness, the benchmark.
        Components pluck the settings they understand with `pluck_for()`,
        so one flat dict can configure the whole pipeline.

        Example:

            settings = PipelineSettingsDict(metric='minkowski:3', workers=4)
            selector = make_selector('dcsis', settings)
    """

    def __init__(self,
                 # --- selectors: dcsis
                 metric: str = 'euclidean',
                 # --- selectors: mrmr
                 bins: int = 3,
                 bin_width_sigmas: float = 1.0,
                 memoize_redundancy: bool = False,
                 # --- selectors & evaluation & bench
                 workers: Optional[int] = None,
                 # --- evaluation
                 scaler: str = 'standardize',
                 k: int = 50,
                 k_max: int = 50,
                 # --- bench
                 repeats: int = 3,
                 ):
        """ Settings for every stage of the pipeline.

        Args:
            metric (str): (for: dcsis)
                Distance used on every feature (the 0/1 response is always euclidean):
                `euclidean`, `manhattan`, `minkowski:<order>` or `cosine`.
            bins (int): (for: mrmr)
                Number of discretization bins per feature. The default 3 gives the
                below/inside/above codes around μ ± σ.
            bin_width_sigmas (float): (for: mrmr)
                Half-width of the discretization window, in standard deviations.
            memoize_redundancy (bool): (for: mrmr)
                Remember the mutual information between feature pairs across greedy steps.
                When `False`, every step recomputes the redundancy of each candidate
                against every selected feature. Selections are identical either way.
            workers (int | None): (for: everything)
                Size of the worker pools. `None` means all available cores.
                Results never depend on it.
            scaler (str): (for: evaluation)
                `standardize`, `predictor_normalize` or `sample_normalize`.
                Fitted on the training part of every fold.
            k (int): (for: evaluation)
                Number of features to select.
            k_max (int): (for: shrinkage)
                The largest model size to scan.
            repeats (int): (for: bench)
                How many times every timing is repeated; medians are reported.
        """
        super(PipelineSettingsDict, self).__init__()
        self.update({k: v
                     for k, v in locals().items()
                     if k not in {'__class__', 'self'}})

    def and_more(self, **settings) -> 'PipelineSettingsDict':
        """ Copy the object and add more settings to it """
        return self.__class__(**{**self, **settings})

    @classmethod
    def pluck_from(cls, dct: Mapping, skip: Tuple[str] = ()) -> 'PipelineSettingsDict':
        """ Initialize the class by plucking kwargs from a dictionary.

            Useful when a dict carries settings for other things as well (e.g. parsed CLI arguments).
        """
        kwargs = pluck_kwargs_from(dct,
                                   for_func=cls.__init__,
                                   skip=skip)
        return cls(**kwargs)

    def pluck_for(self, component_cls: type, **overrides) -> dict:
        """ Get the kwargs that `component_cls.__init__()` understands

            :raises InvalidInputError: an override is not a known setting
        """
        unknown = set(overrides) - set(self) - set(pluck_kwargs_from({}, component_cls.__init__))
        if unknown:
            raise InvalidInputError('unknown settings for {}: {}'
                                    .format(component_cls.__name__, ', '.join(sorted(unknown))))
        return pluck_kwargs_from({**self, **overrides}, for_func=component_cls.__init__)
