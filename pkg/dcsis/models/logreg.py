"""
### Elastic-net logistic regression

Minimizes the mean logistic loss plus an elastic-net penalty on the coefficients
(the intercept is not penalized):

    λ · [ α‖β‖₁ + (1 − α) ½‖β‖₂² ]

with α = `l1_ratio`. The strength λ is `penalty_strength` when given, otherwise `1 / (c · n)`
with `c` the inverse regularization strength familiar from scikit-learn.

The optimizer is accelerated proximal gradient descent on centered features, with the fixed step 1/L,
L being the Lipschitz constant of the smooth part. An iterate is only replaced by a better one, and the
momentum restarts when a step would not improve: the objective never increases from one iteration to the next.
The intercept is moved back to the raw features at the end.
It starts from zero coefficients and stops when a proximal step moves no coefficient more than
`tolerance` (relative), or after `max_iterations`.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import expit

from .base import TrainedModel, check_training_set
from ..exc import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ElasticNetLogisticRegression(TrainedModel):
    """ A trained elastic-net logistic regression """
    coef: np.ndarray
    intercept: float
    #: The penalty strength actually used
    penalty_strength: float
    l1_ratio: float
    #: Iterations run
    n_iterations: int
    #: Did the coefficients settle before the iteration cap
    converged: bool = False
    #: Objective value before the first step and after every step
    objective_history: Tuple[float, ...] = ()

    @property
    def n_features(self) -> int:
        return self.coef.shape[0]

    @staticmethod
    def check_params(l1_ratio: float = 0.25, c: float = 1.0, penalty_strength: Optional[float] = None,
                     max_iterations: int = 1000, tolerance: float = 1e-6):
        if not 0 <= l1_ratio <= 1:
            raise InvalidInputError('logreg: l1_ratio must be in [0, 1], got {!r}'.format(l1_ratio))
        if not c > 0:
            raise InvalidInputError('logreg: c must be positive, got {!r}'.format(c))
        if penalty_strength is not None and not penalty_strength >= 0:
            raise InvalidInputError('logreg: penalty strength must be >= 0, got {!r}'.format(penalty_strength))
        if not (isinstance(max_iterations, (int, np.integer)) and max_iterations >= 1):
            raise InvalidInputError('logreg: max_iterations must be a positive integer, got {!r}'.format(max_iterations))
        if not tolerance > 0:
            raise InvalidInputError('logreg: tolerance must be positive, got {!r}'.format(tolerance))

    @classmethod
    def train(cls, X: np.ndarray, y: np.ndarray,
              l1_ratio: float = 0.25, c: float = 1.0, penalty_strength: Optional[float] = None,
              max_iterations: int = 1000, tolerance: float = 1e-6) -> 'ElasticNetLogisticRegression':
        """ Fit by monotone accelerated proximal gradient descent

        :param l1_ratio: α, the L1 share of the penalty
        :param c: Inverse penalty strength: λ = 1 / (c · n). Ignored when `penalty_strength` is given.
        :param penalty_strength: λ itself
        :param max_iterations: Iteration cap
        :param tolerance: Stop when a proximal step moves every coefficient by at most tolerance · max(1, max |w|)
        """
        cls.check_params(l1_ratio, c, penalty_strength, max_iterations, tolerance)
        X, y = check_training_set(X, y)
        n, d = X.shape
        lam = penalty_strength if penalty_strength is not None else 1.0 / (c * n)

        # Centered design matrix with an intercept column; the objective is unchanged
        center = X.mean(axis=0)
        Xt = np.hstack([np.ones((n, 1)), X - center])
        y = y.astype(np.float64)
        l2 = lam * (1 - l1_ratio)
        l1 = lam * l1_ratio

        # Lipschitz constant of the smooth part
        lipschitz = np.linalg.norm(Xt, 2) ** 2 / (4 * n) + l2
        step = 1.0 / lipschitz

        def objective(w):
            z = Xt @ w
            loss = np.mean(np.logaddexp(0, z) - y * z)
            beta = w[1:]
            return float(loss + l1 * np.abs(beta).sum() + l2 * 0.5 * beta.dot(beta))

        def proximal_step(v):
            # Gradient step on the smooth part
            grad = Xt.T @ (expit(Xt @ v) - y) / n
            grad[1:] += l2 * v[1:]
            z = v - step * grad

            # Soft-threshold the coefficients, never the intercept
            z[1:] = np.sign(z[1:]) * np.maximum(np.abs(z[1:]) - step * l1, 0.0)
            return z

        w = np.zeros(d + 1)
        history = [objective(w)]
        v, t = w, 1.0
        iteration = 0
        converged = False
        for iteration in range(1, max_iterations + 1):
            z = proximal_step(v)
            delta = np.max(np.abs(z - v))

            # Monotone: a step that does not improve on the last iterate is dropped and the momentum restarts
            f_z = objective(z)
            if f_z <= history[-1]:
                w_prev, w = w, z
                t_next = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
                v = w + ((t - 1.0) / t_next) * (w - w_prev)
                t = t_next
                history.append(f_z)
            else:
                v, t = w, 1.0
                history.append(history[-1])

            if delta <= tolerance * max(1.0, np.max(np.abs(z))):
                converged = True
                break
        else:
            logger.debug('logreg: no convergence in %d iterations', max_iterations)

        # Back to the raw features
        return cls(coef=w[1:].copy(),
                   intercept=float(w[0] - center @ w[1:]),
                   penalty_strength=lam,
                   l1_ratio=l1_ratio,
                   n_iterations=iteration,
                   converged=converged,
                   objective_history=tuple(history))

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """ Log-odds of class 1 """
        X = self.check_predict_input(X)
        return X @ self.coef + self.intercept

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """ P(class 1) per row """
        return expit(self.decision_function(X))

    def predict(self, X: np.ndarray) -> np.ndarray:
        """ Class 1 when P(class 1) >= 0.5 """
        return (self.predict_proba(X) >= 0.5).astype(np.int8)
