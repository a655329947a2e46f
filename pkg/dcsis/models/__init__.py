"""
Classifiers.

Three are native:

* `nb`: Gaussian Naive Bayes with priors inferred from the training data
* `knn`: k nearest neighbors, `knn:k=18,p=3` = 18 neighbors under the L3 distance (the defaults)
* `logreg`: elastic-net logistic regression, `logreg:l1=0.25,c=1.0` (the defaults);
  `lambda=` sets the penalty strength directly, `iter=` and `tol=` control the optimizer

Anything else joins through `register_classifier()`: a (train, predict) pair under a name.
The evaluation harness does not tell native classifiers and plug-ins apart.

```python
from dcsis.models import train, predict

model = train('knn:k=18,p=3', X_train, y_train)
predict(model, X_test)
```
"""

from .base import TrainedModel, PluginModel, ClassifierSpec, ClassifierPlugin, \
    CLASSIFIERS, register_classifier, unregister_classifier, get_classifier, train, predict, check_training_set
from .naive_bayes import GaussianNaiveBayes
from .knn import KNearestNeighbors
from .logreg import ElasticNetLogisticRegression

# Native kinds
if 'nb' not in CLASSIFIERS:
    register_classifier('nb', train=GaussianNaiveBayes.train, predict=predict,
                        check_params=GaussianNaiveBayes.check_params,
                        param_aliases={'floor': 'var_floor'})
    register_classifier('knn', train=KNearestNeighbors.train, predict=predict,
                        check_params=KNearestNeighbors.check_params,
                        param_aliases={'k': 'neighbors', 'p': 'minkowski_order', 'order': 'minkowski_order'})
    register_classifier('logreg', train=ElasticNetLogisticRegression.train, predict=predict,
                        check_params=ElasticNetLogisticRegression.check_params,
                        param_aliases={'l1': 'l1_ratio', 'lambda': 'penalty_strength',
                                       'iter': 'max_iterations', 'tol': 'tolerance'})
