"""
### Leave-one-subject-out evaluation

Every subject is held out in turn. For each fold:

1. The scaler is fitted on the training part only, then applied to both parts
2. The selector ranks features of the scaled training part only
3. Every classifier is trained on the selected columns of the training part
4. The held-out observations are predicted, and the subject's majority vote is
   given to all of its observations

The held-out rows never reach the scaler, the selector or the trainer.
Metrics are computed once, over the pooled predictions of all folds.

```python
from dcsis.evaluation import loso_evaluate
from dcsis.selectors import DcsisSelector

report = loso_evaluate(data, DcsisSelector(), k=50, spec='knn:k=18,p=3')
report.accuracy, report.accuracy_se
```

Folds run on a pool of `workers` threads. Results are identical for any worker count.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .metrics import Metrics, majority_vote, metrics, jackknife_se
from ..dataset import Dataset, Fold, ScalerKind, ScalerParams, loso_folds, fit_scaler, apply_scaler
from ..exc import BaseDcsisException, InvalidInputError, RuntimeFoldError
from ..models import ClassifierSpec, train, predict
from ..selectors import FeatureSelectorBase, FeatureRanking, DcsisSelector
from ..util.parallel import ordered_map
from ..util.timers import Nanotimers

logger = logging.getLogger(__name__)

#: Report metadata: hyperparameters are inputs here, not tuned
FIXED_HYPERPARAMETERS_NOTE = ('hyperparameters are fixed for the run; no grid search is performed, '
                              'neither per fold nor globally')


@dataclass(frozen=True, eq=False)
class FoldSelection:
    """ The selection made on one fold's training part """
    subject_id: str
    fold: Fold
    scaler_params: ScalerParams
    ranking: FeatureRanking

    @property
    def selection_time(self) -> float:
        return self.ranking.timings.get('total', 0.0)


@dataclass(frozen=True, eq=False)
class FoldResult:
    """ One fold, one classifier, one model size """
    subject_id: str
    #: Features the classifier was trained on, in ranking order
    selected_features: Tuple[int, ...]
    #: Positions of the held-out observations in the dataset
    test_indices: np.ndarray
    #: After the majority vote: one label, repeated
    per_observation_predictions: np.ndarray
    true_labels: np.ndarray
    selection_time: float
    train_time: float
    scaler_params: Optional[ScalerParams] = None

    @property
    def accuracy(self) -> float:
        """ Fraction of this subject's observations predicted correctly """
        return float(np.mean(self.per_observation_predictions == self.true_labels))


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    """ Pooled metrics of a leave-one-subject-out run """
    method: str
    classifier: str
    k: int
    scaler: str
    accuracy: float
    f1: float
    mcc: float
    accuracy_se: float
    per_fold: List[FoldResult]
    #: Pooled predictions, in dataset order
    predictions: np.ndarray
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def metrics(self) -> Metrics:
        return Metrics(self.accuracy, self.f1, self.mcc)

    @property
    def n_folds(self) -> int:
        return len(self.per_fold)


# region Per-fold selection

def loso_selections(data: Dataset, selector: FeatureSelectorBase, k: int,
                    scaler: Union[str, ScalerKind] = ScalerKind.standardize,
                    workers: Optional[int] = None) -> List[FoldSelection]:
    """ Scale and select on every fold's training part; no classifiers

    This is the unit of work that stability reports and jackknife benchmarks need.
    """
    scaler = ScalerKind.parse(scaler)
    folds = loso_folds(data)
    _check_k(data, k)
    subjects = data.subjects
    # The pool parallelizes folds; every selection is single-threaded
    inner = selector.with_workers(1)

    def run(i: int) -> FoldSelection:
        selection, _, _ = _guarded(subjects[i], _select_fold, data, subjects[i], folds[i], inner, k, scaler)
        return selection

    return ordered_map(run, range(len(folds)), workers=workers)


def _select_fold(data: Dataset, subject_id, fold: Fold, selector: FeatureSelectorBase, k: int,
                 scaler: ScalerKind) -> Tuple[FoldSelection, Dataset, ScalerParams]:
    train_part = data.take(fold.train)
    params = fit_scaler(train_part, scaler)
    train_scaled = apply_scaler(train_part, params)
    ranking = selector.rank(train_scaled, k)
    return FoldSelection(subject_id=subject_id, fold=fold, scaler_params=params, ranking=ranking), train_scaled, params

# endregion


# region Folds with classifiers

@dataclass(frozen=True, eq=False)
class _FoldRun:
    """ Everything one fold produced: predictions[spec][k] """
    selection: FoldSelection
    predictions: Dict[ClassifierSpec, Dict[int, np.ndarray]]
    train_times: Dict[ClassifierSpec, Dict[int, float]]


def _run_folds(data: Dataset, selector: FeatureSelectorBase, ks: Sequence[int], specs: Sequence[ClassifierSpec],
               scaler: ScalerKind, workers: Optional[int]) -> List[_FoldRun]:
    """ The shared code path of every evaluation: one selection per fold, many (classifier, k) models on it """
    folds = loso_folds(data)
    k_max = max(ks)
    _check_k(data, k_max)
    subjects = data.subjects
    inner = selector.with_workers(1)

    def run(i: int) -> _FoldRun:
        return _guarded(subjects[i], _run_fold, data, subjects[i], folds[i], inner, ks, specs, scaler)

    return ordered_map(run, range(len(folds)), workers=workers)


def _run_fold(data: Dataset, subject_id, fold: Fold, selector: FeatureSelectorBase, ks: Sequence[int],
              specs: Sequence[ClassifierSpec], scaler: ScalerKind) -> _FoldRun:
    selection, train_scaled, params = _select_fold(data, subject_id, fold, selector, max(ks), scaler)
    test_scaled = apply_scaler(data.take(fold.test), params)

    predictions = {}
    train_times = {}
    timers = Nanotimers()
    for spec in specs:
        predictions[spec] = {}
        train_times[spec] = {}
        for k in ks:
            columns = selection.ranking.select(k)
            name = '{}@{}'.format(spec, k)
            with timers.measure(name):
                model = train(spec, train_scaled.features[:, columns], train_scaled.response)
            predictions[spec][k] = majority_vote(predict(model, test_scaled.features[:, columns]))
            train_times[spec][k] = timers[name]

    logger.debug('Fold %r: selection %.3fs, %d models', subject_id, selection.selection_time,
                 len(specs) * len(ks))
    return _FoldRun(selection=selection, predictions=predictions, train_times=train_times)


def _guarded(subject_id, func, *args):
    """ Name the held-out subject in unexpected errors """
    try:
        return func(*args)
    except BaseDcsisException:
        raise
    except Exception as e:
        raise RuntimeFoldError(subject_id, e) from e


def check_coverage(n_obs: int, folds: Sequence[Fold]):
    """ Every observation is in the test part of exactly one fold

    :raises InvalidInputError: an observation is tested twice, or never
    """
    tested = np.concatenate([np.asarray(fold.test, dtype=np.intp) for fold in folds] or [np.zeros(0, np.intp)])
    counts = np.bincount(tested, minlength=n_obs)[:n_obs]
    bad = np.flatnonzero(counts != 1)
    if bad.size:
        raise InvalidInputError('folds must test every observation exactly once; observation {} is tested {} times'
                                .format(int(bad[0]), int(counts[bad[0]])))


def _build_report(data: Dataset, runs: List[_FoldRun], spec: ClassifierSpec, k: int, method: str,
                  scaler: ScalerKind, metadata: dict) -> EvaluationReport:
    """ Pool the predictions of all folds for one (classifier, k) """
    check_coverage(data.n_obs, [run.selection.fold for run in runs])
    pooled = np.full(data.n_obs, -1, dtype=np.int8)
    per_fold = []
    for run in runs:
        fold = run.selection.fold
        fold_predictions = run.predictions[spec][k]
        pooled[fold.test] = fold_predictions
        per_fold.append(FoldResult(subject_id=run.selection.subject_id,
                                   selected_features=tuple(run.selection.ranking.select(k)),
                                   test_indices=fold.test,
                                   per_observation_predictions=fold_predictions,
                                   true_labels=data.response[fold.test],
                                   selection_time=run.selection.selection_time,
                                   train_time=run.train_times[spec][k],
                                   scaler_params=run.selection.scaler_params))

    m = metrics(data.response, pooled)
    se = jackknife_se([f.accuracy for f in per_fold], weights=[len(f.test_indices) for f in per_fold])
    return EvaluationReport(method=method,
                            classifier=str(spec),
                            k=k,
                            scaler=scaler.value,
                            accuracy=m.accuracy,
                            f1=m.f1,
                            mcc=m.mcc,
                            accuracy_se=se,
                            per_fold=per_fold,
                            predictions=pooled,
                            metadata=metadata)

# endregion


# region Public API

def evaluate_many(data: Dataset, selector: FeatureSelectorBase, k: int,
                  specs: Sequence[Union[str, ClassifierSpec]],
                  scaler: Union[str, ScalerKind] = ScalerKind.standardize,
                  workers: Optional[int] = None) -> List[EvaluationReport]:
    """ Evaluate several classifiers on the same per-fold selections

    :returns: One report per classifier, in the given order
    """
    specs = _parse_specs(specs)
    scaler = ScalerKind.parse(scaler)
    timers = Nanotimers()

    with timers.measure('evaluate'):
        runs = _run_folds(data, selector, [k], specs, scaler, workers)
    reports = [_build_report(data, runs, spec, k, selector.method_name, scaler, _metadata(selector))
               for spec in specs]

    for report in reports:
        logger.info('Evaluated %s k=%d %s: accuracy=%.4f±%.4f f1=%.4f mcc=%.4f, %d folds in %.1fs',
                    report.method, k, report.classifier, report.accuracy, report.accuracy_se,
                    report.f1, report.mcc, report.n_folds, timers['evaluate'])
    return reports


def loso_evaluate(data: Dataset, selector: FeatureSelectorBase, k: int, spec: Union[str, ClassifierSpec],
                  scaler: Union[str, ScalerKind] = ScalerKind.standardize,
                  workers: Optional[int] = None) -> EvaluationReport:
    """ Leave-one-subject-out accuracy, F1 and MCC of one selector + classifier

    :raises InvalidInputError: k out of range, fewer than 2 subjects
    :raises SingleClassError: a fold's training part has one class
    :raises RuntimeFoldError: an unexpected error in a fold
    """
    return evaluate_many(data, selector, k, [spec], scaler=scaler, workers=workers)[0]


@dataclass(frozen=True, eq=False)
class ShrinkResult:
    """ The smallest model within one standard error of the largest one """
    classifier: str
    method: str
    k_star: int
    k_max: int
    #: accuracy(k_max) − SE(k_max)
    threshold: float
    #: Reports for k = 1..k_max
    curve: List[EvaluationReport]

    def at(self, k: int) -> EvaluationReport:
        return self.curve[k - 1]

    @property
    def reference(self) -> EvaluationReport:
        return self.at(self.k_max)

    @property
    def reduced(self) -> EvaluationReport:
        return self.at(self.k_star)


def shrink_scan_many(data: Dataset, specs: Sequence[Union[str, ClassifierSpec]], k_max: int = 50,
                     selector: FeatureSelectorBase = None,
                     scaler: Union[str, ScalerKind] = ScalerKind.standardize,
                     workers: Optional[int] = None) -> List[ShrinkResult]:
    """ Evaluate models of size 1..k_max, keep the smallest within one SE of size k_max

    The ranking is computed once per fold; every size uses a prefix of it.
    """
    specs = _parse_specs(specs)
    scaler = ScalerKind.parse(scaler)
    selector = selector or DcsisSelector()
    ks = list(range(1, k_max + 1))
    _check_k(data, k_max)

    runs = _run_folds(data, selector, ks, specs, scaler, workers)
    metadata = _metadata(selector)

    results = []
    for spec in specs:
        curve = [_build_report(data, runs, spec, k, selector.method_name, scaler, metadata) for k in ks]
        reference = curve[-1]
        threshold = reference.accuracy - reference.accuracy_se
        k_star = next(r.k for r in curve if r.accuracy >= threshold)
        logger.info('Shrinkage %s %s: k*=%d (accuracy %.4f) vs k=%d (accuracy %.4f±%.4f)',
                    selector.method_name, spec, k_star, curve[k_star - 1].accuracy,
                    k_max, reference.accuracy, reference.accuracy_se)
        results.append(ShrinkResult(classifier=str(spec), method=selector.method_name,
                                    k_star=k_star, k_max=k_max, threshold=threshold, curve=curve))
    return results


def shrink_scan(data: Dataset, spec: Union[str, ClassifierSpec], k_max: int = 50,
                selector: FeatureSelectorBase = None,
                scaler: Union[str, ScalerKind] = ScalerKind.standardize,
                workers: Optional[int] = None) -> ShrinkResult:
    """ One-SE model shrinkage for one classifier. DC-SIS unless another selector is given. """
    return shrink_scan_many(data, [spec], k_max=k_max, selector=selector, scaler=scaler, workers=workers)[0]

# endregion


def _parse_specs(specs) -> List[ClassifierSpec]:
    if isinstance(specs, (str, ClassifierSpec)):
        specs = [specs]
    specs = [ClassifierSpec.parse(s) for s in specs]
    if not specs:
        raise InvalidInputError('no classifiers to evaluate')
    return specs


def _check_k(data: Dataset, k: int):
    if not 1 <= k <= data.n_features:
        raise InvalidInputError('k must be between 1 and p={}, got {}'.format(data.n_features, k))


def _metadata(selector: FeatureSelectorBase) -> dict:
    return {
        'selector': selector.method_name,
        'selector_settings': {k: str(v) for k, v in selector.get_settings().items() if k != 'workers'},
        'validation': 'leave-one-subject-out jackknife, majority vote per subject',
        'hyperparameters': FIXED_HYPERPARAMETERS_NOTE,
    }
