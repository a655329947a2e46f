from dataclasses import dataclass

import numpy as np

from .base import TrainedModel, check_training_set
from ..exc import InvalidInputError

#: Variances never go below this: selected features may be near-constant in a small fold
VAR_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class GaussianNaiveBayes(TrainedModel):
    """ Gaussian Naive Bayes

    Every feature is normal within each class, independently of the others.
    Class priors are the training frequencies.
    """
    #: log P(class), for classes 0 and 1
    log_priors: np.ndarray
    #: 2 × d per-class means
    means: np.ndarray
    #: 2 × d per-class population variances, floored
    variances: np.ndarray

    @property
    def n_features(self) -> int:
        return self.means.shape[1]

    @staticmethod
    def check_params(var_floor: float = VAR_FLOOR):
        if not var_floor > 0:
            raise InvalidInputError('nb: the variance floor must be positive, got {}'.format(var_floor))

    @classmethod
    def train(cls, X: np.ndarray, y: np.ndarray, var_floor: float = VAR_FLOOR) -> 'GaussianNaiveBayes':
        cls.check_params(var_floor)
        X, y = check_training_set(X, y)

        log_priors = np.empty(2)
        means = np.empty((2, X.shape[1]))
        variances = np.empty((2, X.shape[1]))
        for c in (0, 1):
            Xc = X[y == c]
            log_priors[c] = np.log(Xc.shape[0] / X.shape[0])
            means[c] = Xc.mean(axis=0)
            variances[c] = np.maximum(Xc.var(axis=0), var_floor)

        return cls(log_priors=log_priors, means=means, variances=variances)

    def joint_log_likelihood(self, X: np.ndarray) -> np.ndarray:
        """ n × 2: log P(class) + Σ log N(x | mean, variance) """
        X = self.check_predict_input(X)
        out = np.empty((X.shape[0], 2))
        for c in (0, 1):
            out[:, c] = (self.log_priors[c]
                         - 0.5 * np.sum(np.log(2 * np.pi * self.variances[c]))
                         - 0.5 * np.sum((X - self.means[c]) ** 2 / self.variances[c], axis=1))
        return out

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """ Posterior log-odds of class 1 """
        jll = self.joint_log_likelihood(X)
        return jll[:, 1] - jll[:, 0]
