import re
from dataclasses import dataclass
from typing import Any, Callable, Dict, Mapping, NamedTuple, Optional, Tuple, Union

import numpy as np

from ..exc import (InvalidInputError, DimensionMismatchError, EmptyDatasetError, SingleClassError,
                   SpecSyntaxError, RegistryError)


class TrainedModel:
    """ A classifier fitted to a training set

    Trained models are immutable: predict() is a pure function of the model and its input,
    so one model may serve concurrent callers.
    Subclasses implement decision_function(): a margin where >= 0 means class 1.
    """

    #: Number of feature columns seen in training
    n_features: int

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """ Per-row margin; >= 0 predicts the positive class """
        raise NotImplementedError()

    def predict(self, X: np.ndarray) -> np.ndarray:
        """ One 0/1 label per row. Margins of exactly 0 go to class 1. """
        return (self.decision_function(X) >= 0).astype(np.int8)

    def check_predict_input(self, X: np.ndarray) -> np.ndarray:
        """ Validate a prediction matrix

        :raises DimensionMismatchError: the column count differs from training
        """
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features:
            raise DimensionMismatchError('feature count', self.n_features, X.shape[1])
        return X


def check_training_set(X: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ Validate a training set: finite numbers, at least one column, both classes present

    :raises EmptyDatasetError: no rows or no columns
    :raises DimensionMismatchError: X and y disagree in length
    :raises SingleClassError: only one class
    :raises InvalidInputError: non-finite values; labels other than 0 and 1
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
        raise EmptyDatasetError('a classifier needs at least one row and one column, got shape {}'.format(X.shape))
    if y.shape != (X.shape[0],):
        raise DimensionMismatchError('label count', X.shape[0], y.shape[0] if y.ndim else 0)
    if not np.isfinite(X).all():
        raise InvalidInputError('training features must be finite')
    if not np.isin(y, (0, 1)).all():
        raise InvalidInputError('labels must be 0 or 1')
    if len(np.unique(y)) < 2:
        raise SingleClassError('the training set has only class {}'.format(int(y[0])))
    return X, y.astype(np.int8)


class PluginModel(TrainedModel):
    """ A model trained by an external plug-in: its state plus the plug-in's predict function """

    __slots__ = ('name', 'state', 'predict_func', 'n_features')

    def __init__(self, name: str, state: Any, predict_func: Callable, n_features: int):
        self.name = name
        self.state = state
        self.predict_func = predict_func
        self.n_features = n_features

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = self.check_predict_input(X)
        return np.asarray(self.predict_func(self.state, X)).astype(np.int8)

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        # Plug-ins only promise labels: the margin is ±1
        return self.predict(X) * 2.0 - 1.0


# region Specs

@dataclass(frozen=True)
class ClassifierSpec:
    """ A classifier kind with its hyperparameters

    Parsed from strings like `nb`, `knn:k=18,p=3`, `logreg:l1=0.25,c=1.0`.
    """
    kind: str
    params: Tuple[Tuple[str, Any], ...] = ()

    @property
    def kwargs(self) -> Dict[str, Any]:
        return dict(self.params)

    @classmethod
    def parse(cls, value: Union[str, 'ClassifierSpec']) -> 'ClassifierSpec':
        """ Parse a classifier string and validate its hyperparameters

        :raises SpecSyntaxError: malformed string
        :raises RegistryError: unknown classifier
        :raises InvalidInputError: invalid hyperparameter values
        """
        if isinstance(value, ClassifierSpec):
            return value

        text = str(value).strip()
        m = re.fullmatch(r'([A-Za-z][\w\-]*)(?::(.*))?', text)
        if not m:
            raise SpecSyntaxError('classifier', text, 'expected <name>[:key=value,...]')
        name, args = m.group(1).lower(), m.group(2)
        plugin = get_classifier(name)

        params = {}
        for item in filter(None, (args or '').split(',')):
            key, eq, raw = item.partition('=')
            key = key.strip().lower()
            if not eq or not key:
                raise SpecSyntaxError('classifier', text, 'expected key=value, got {!r}'.format(item))
            key = plugin.param_aliases.get(key, key)
            if key in params:
                raise SpecSyntaxError('classifier', text, 'duplicate parameter {!r}'.format(key))
            params[key] = _parse_value(raw.strip())

        spec = cls(kind=plugin.name, params=tuple(sorted(params.items())))
        spec.validate()
        return spec

    def validate(self):
        """ Check the hyperparameters without training anything """
        plugin = get_classifier(self.kind)
        if plugin.check_params is None:
            return
        try:
            plugin.check_params(**self.kwargs)
        except TypeError as e:
            # Unknown parameter names, values of the wrong type
            raise SpecSyntaxError('classifier', str(self), str(e))

    def __str__(self):
        if not self.params:
            return self.kind
        return '{}:{}'.format(self.kind, ','.join('{}={}'.format(k, v) for k, v in self.params))


def _parse_value(raw: str):
    for convert in (int, float):
        try:
            return convert(raw)
        except ValueError:
            pass
    return raw

# endregion


# region Registry

class ClassifierPlugin(NamedTuple):
    """ A classifier as the evaluation harness sees it """
    name: str
    #: train(X, y, **params) -> state. A TrainedModel state is used as is.
    train: Callable[..., Any]
    #: predict(state, X) -> labels
    predict: Callable[[Any, np.ndarray], np.ndarray]
    #: check_params(**params): raise InvalidInputError on bad hyperparameters
    check_params: Optional[Callable[..., None]] = None
    #: Short parameter names: {'k': 'neighbors'}
    param_aliases: Mapping[str, str] = {}


#: Classifiers by name: native kinds and plug-ins alike
CLASSIFIERS: Dict[str, ClassifierPlugin] = {}

#: Alternative names
ALIASES = {'gaussian_nb': 'nb', 'gaussian-nb': 'nb', 'naive_bayes': 'nb'}


def register_classifier(name: str, train: Callable, predict: Callable,
                        check_params: Callable = None, param_aliases: Mapping[str, str] = None) -> ClassifierPlugin:
    """ Make a classifier available to the evaluation harness

    Example:

        register_classifier('majority',
                            train=lambda X, y: int(y.mean() >= 0.5),
                            predict=lambda label, X: np.full(len(X), label))

    :raises RegistryError: the name is taken
    """
    name = name.strip().lower()
    if name in CLASSIFIERS or name in ALIASES:
        raise RegistryError('classifier "{}" is already registered'.format(name))
    plugin = ClassifierPlugin(name=name, train=train, predict=predict,
                              check_params=check_params, param_aliases=dict(param_aliases or {}))
    CLASSIFIERS[name] = plugin
    return plugin


def unregister_classifier(name: str):
    """ Remove a classifier: tests use it to clean up """
    CLASSIFIERS.pop(name.strip().lower(), None)


def get_classifier(name: str) -> ClassifierPlugin:
    """ :raises RegistryError: unknown name """
    name = name.strip().lower()
    name = ALIASES.get(name, name)
    try:
        return CLASSIFIERS[name]
    except KeyError:
        raise RegistryError('unknown classifier "{}"; use one of: {}'.format(name, ', '.join(sorted(CLASSIFIERS))))


def train(spec: Union[str, ClassifierSpec], X: np.ndarray, y: np.ndarray) -> TrainedModel:
    """ Train a classifier

    :raises SingleClassError: only one class in y
    :raises InvalidInputError: non-finite inputs, bad hyperparameters
    """
    spec = ClassifierSpec.parse(spec)
    plugin = get_classifier(spec.kind)
    X, y = check_training_set(X, y)

    state = plugin.train(X, y, **spec.kwargs)
    if isinstance(state, TrainedModel):
        return state
    return PluginModel(plugin.name, state, plugin.predict, n_features=X.shape[1])


def predict(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    """ One 0/1 label per row

    :raises DimensionMismatchError: the column count differs from training
    """
    return model.predict(X)

# endregion
