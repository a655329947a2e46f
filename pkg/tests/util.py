import os
import unittest
from typing import List, Sequence

import numpy as np

from dcsis import Dataset
from dcsis.selectors.mrmr import mutual_information


# region Fixtures

#: A tiny CSV: three subjects with two observations each
SMALL_CSV = (
    'id,f1,f2,class\n'
    'a,1.0,2.0,1\n'
    'a,1.5,2.5,1\n'
    'b,0.0,0.1,0\n'
    'b,0.2,0.0,0\n'
    'c,3.0,1.0,1\n'
    'c,2.5,1.5,1\n'
)


def write_text(path, text: str) -> str:
    """ Write a file for a test, return its path as a string """
    with open(str(path), 'w', encoding='utf-8') as f:
        f.write(text)
    return str(path)


def make_dataset(features, response, subject_ids=None, feature_names=None) -> Dataset:
    """ A Dataset from plain lists. Every observation is its own subject unless told otherwise. """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim == 1:
        features = features[:, None]
    n, p = features.shape
    return Dataset(features=features,
                   feature_names=feature_names or ['f{}'.format(j) for j in range(p)],
                   subject_ids=subject_ids if subject_ids is not None else ['s{}'.format(i) for i in range(n)],
                   response=response)


def response_duplicate_dataset(n: int = 30, p: int = 6, seed: int = 0) -> Dataset:
    """ Feature 0 is a copy of the 0/1 response; the others are noise """
    rng = np.random.default_rng(seed)
    response = np.arange(n) % 2
    features = rng.standard_normal((n, p))
    features[:, 0] = response
    return make_dataset(features, response)

# endregion


# region Oracles

def brute_force_dcov_sq(x: Sequence[float], y: Sequence[float]) -> float:
    """ Squared distance covariance from its U-statistic-free definition:

        mean(a∘b) + mean(a)·mean(b) − 2/n³ · Σ_klm a_kl b_km

    No double centering involved.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.shape[0]
    a = np.abs(x[:, None] - x[None, :])
    b = np.abs(y[:, None] - y[None, :])
    return float(np.mean(a * b) + a.mean() * b.mean() - 2.0 / n ** 3 * np.einsum('kl,km->', a, b))


def brute_force_dcor_sq(x: Sequence[float], y: Sequence[float]) -> float:
    vxy = brute_force_dcov_sq(x, y)
    vx = brute_force_dcov_sq(x, x)
    vy = brute_force_dcov_sq(y, y)
    if vx < 1e-14 or vy < 1e-14:
        return 0.0
    return vxy / np.sqrt(vx * vy)


def exhaustive_mrmr(codes: np.ndarray, response: np.ndarray, k: int, variant: str = 'mid') -> List[int]:
    """ Greedy mRMR the slow way: every score from scratch, every step """
    p = codes.shape[1]
    selected = []
    for step in range(k):
        best, best_score = None, None
        for j in range(p):
            if j in selected:
                continue
            relevance = mutual_information(codes[:, j], response)
            if not selected:
                score = relevance
            else:
                redundancy = np.mean([mutual_information(codes[:, j], codes[:, s]) for s in selected])
                if variant == 'mid':
                    score = relevance - redundancy
                elif redundancy > 0:
                    score = relevance / redundancy
                else:
                    score = np.inf if relevance > 0 else 0.0
            # Strict: the lowest index keeps ties
            if best_score is None or score > best_score + 1e-12:
                best, best_score = j, score
        selected.append(best)
    return selected

# endregion


# region PD data

#: Path to the UCI Parkinson's Disease speech features CSV
PD_CSV = os.environ.get('DCSIS_PD_CSV')

skip_without_pd_data = unittest.skipUnless(PD_CSV and os.path.isfile(PD_CSV),
                                           'set DCSIS_PD_CSV to the PD speech features CSV to run this test')

# endregion
