from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .base import TrainedModel, check_training_set
from ..exc import InvalidInputError


@dataclass(frozen=True, eq=False)
class KNearestNeighbors(TrainedModel):
    """ k nearest neighbors under a Minkowski distance

    The neighborhood of a point is every training point no farther than its k-th nearest one,
    so that distance ties are included rather than broken by row order:
    predictions do not depend on the order of the training rows.
    A tied vote goes to class 1.
    """
    X: np.ndarray
    y: np.ndarray
    neighbors: int = 18
    minkowski_order: float = 3.0

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @staticmethod
    def check_params(neighbors: int = 18, minkowski_order: float = 3.0):
        if not (isinstance(neighbors, (int, np.integer)) and neighbors >= 1):
            raise InvalidInputError('knn: neighbors must be an integer >= 1, got {!r}'.format(neighbors))
        if not (isinstance(minkowski_order, (int, float)) and minkowski_order >= 1):
            raise InvalidInputError('knn: the Minkowski order must be >= 1, got {!r}'.format(minkowski_order))

    @classmethod
    def train(cls, X: np.ndarray, y: np.ndarray, neighbors: int = 18, minkowski_order: float = 3.0):
        """ Store the training set """
        cls.check_params(neighbors, minkowski_order)
        X, y = check_training_set(X, y)
        return cls(X=X.copy(), y=y.copy(), neighbors=int(neighbors), minkowski_order=float(minkowski_order))

    def vote_counts(self, X: np.ndarray) -> np.ndarray:
        """ n × 2: neighbors of class 0 and of class 1 """
        X = self.check_predict_input(X)
        d = cdist(X, self.X, 'minkowski', p=self.minkowski_order)

        # Distance to the k-th neighbor; more than k neighbors on ties
        k = min(self.neighbors, self.X.shape[0])
        kth = np.partition(d, k - 1, axis=1)[:, k - 1]
        inside = d <= kth[:, None]

        ones = (inside & (self.y == 1)).sum(axis=1)
        zeros = inside.sum(axis=1) - ones
        return np.stack([zeros, ones], axis=1)

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """ Class-1 votes minus class-0 votes """
        votes = self.vote_counts(X)
        return (votes[:, 1] - votes[:, 0]).astype(np.float64)
