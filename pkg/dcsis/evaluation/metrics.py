from typing import NamedTuple, Optional, Sequence

import numpy as np
from sklearn.metrics import accuracy_score, f1_score, matthews_corrcoef

from ..exc import InvalidInputError, DimensionMismatchError


class Metrics(NamedTuple):
    accuracy: float
    f1: float
    mcc: float


def majority_vote(predictions: Sequence[int]) -> np.ndarray:
    """ The most common label of one subject, broadcast to all of its observations

    Binary labels with an odd count never tie; an even split goes to class 1.

    :raises InvalidInputError: no predictions
    """
    predictions = np.asarray(predictions)
    if predictions.size == 0:
        raise InvalidInputError('majority vote over zero predictions')

    ones = np.count_nonzero(predictions == 1)
    label = 1 if 2 * ones >= predictions.size else 0
    return np.full(predictions.shape, label, dtype=np.int8)


def metrics(y_true: Sequence[int], y_pred: Sequence[int]) -> Metrics:
    """ Accuracy, F1 (positive class 1) and the Matthews correlation coefficient

    F1 is 0 when precision + recall is 0; MCC is 0 when any factor of its denominator is 0.

    :raises DimensionMismatchError: different lengths
    :raises InvalidInputError: empty, or labels other than 0 and 1
    """
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise DimensionMismatchError('prediction count', y_true.shape[0], y_pred.shape[0])
    if y_true.size == 0:
        raise InvalidInputError('metrics of zero predictions')
    if not (np.isin(y_true, (0, 1)).all() and np.isin(y_pred, (0, 1)).all()):
        raise InvalidInputError('metrics need binary 0/1 labels')

    return Metrics(
        accuracy=float(accuracy_score(y_true, y_pred)),
        f1=float(f1_score(y_true, y_pred, pos_label=1, labels=[0, 1], zero_division=0)),
        mcc=float(matthews_corrcoef(y_true, y_pred)),
    )


def jackknife_se(per_fold_accuracies: Sequence[float], weights: Optional[Sequence[float]] = None) -> float:
    """ Leave-one-subject-out jackknife standard error of the pooled accuracy

    Replicate i is the accuracy with fold i left out; the standard error is

        sqrt( (n − 1)/n · Σ (θ₍ᵢ₎ − θ̄)² )

    :param per_fold_accuracies: a_i, the fraction of fold i's observations predicted correctly
    :param weights: Observations per fold. Equal by default.
    :raises InvalidInputError: fewer than 2 folds
    """
    a = np.asarray(per_fold_accuracies, dtype=np.float64)
    n = a.shape[0]
    if n < 2:
        raise InvalidInputError('the jackknife needs at least 2 folds, got {}'.format(n))
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=np.float64)
    if w.shape != a.shape:
        raise DimensionMismatchError('fold weights', n, w.shape[0])

    # Replicates: pooled accuracy without fold i
    correct = a * w
    replicates = (correct.sum() - correct) / (w.sum() - w)

    # Equal folds, equal accuracies: exactly 0
    if np.all(replicates == replicates[0]):
        return 0.0
    return float(np.sqrt((n - 1) / n * np.sum((replicates - replicates.mean()) ** 2)))
