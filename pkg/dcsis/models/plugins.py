"""
### scikit-learn plug-ins

Four more classifiers as plug-ins, with fixed hyperparameters:

* `rf`: random forest, 200 trees of at most 20 leaves, balanced class weights
* `mlp`: a 50-25-10-5 ReLU perceptron, learning rate 0.01
* `svc-linear`: linear support vector classifier, C = 0.5
* `svc-rbf`: RBF support vector classifier, C = 0.8

They are not registered by default:

```python
from dcsis.models.plugins import register_sklearn_plugins

register_sklearn_plugins()
evaluate_many(data, selector, 50, ['nb', 'rf:n_estimators=500'])
```

Parameters after the colon are passed to the estimator (`c` means `C`).
Random seeds are fixed: every run gives the same models.
"""
from typing import Callable, Dict

import numpy as np
from sklearn.base import clone
from sklearn.ensemble import RandomForestClassifier
from sklearn.neural_network import MLPClassifier
from sklearn.svm import SVC

from .base import CLASSIFIERS, register_classifier
from ..exc import InvalidInputError

#: Estimator prototypes, by plug-in name
SKLEARN_ESTIMATORS: Dict[str, Callable[[], object]] = {
    'rf': lambda: RandomForestClassifier(n_estimators=200, max_leaf_nodes=20, class_weight='balanced',
                                         random_state=0),
    'mlp': lambda: MLPClassifier(hidden_layer_sizes=(50, 25, 10, 5), activation='relu',
                                 learning_rate_init=0.01, max_iter=500, random_state=0),
    'svc-linear': lambda: SVC(kernel='linear', C=0.5),
    'svc-rbf': lambda: SVC(kernel='rbf', C=0.8),
}


def sklearn_plugin(make_estimator: Callable[[], object]):
    """ Turn an estimator factory into plug-in (train, predict, check_params) functions """
    def configure(**params):
        estimator = clone(make_estimator())
        try:
            return estimator.set_params(**params)
        except ValueError as e:
            raise InvalidInputError(str(e))

    def train(X: np.ndarray, y: np.ndarray, **params):
        return configure(**params).fit(X, y)

    def predict(estimator, X: np.ndarray) -> np.ndarray:
        return estimator.predict(X)

    def check_params(**params):
        configure(**params)

    return train, predict, check_params


def register_sklearn_plugins():
    """ Register the scikit-learn classifiers. Calling it twice is fine. """
    for name, make_estimator in SKLEARN_ESTIMATORS.items():
        if name in CLASSIFIERS:
            continue
        train, predict, check_params = sklearn_plugin(make_estimator)
        register_classifier(name, train=train, predict=predict, check_params=check_params,
                            param_aliases={'c': 'C'})
