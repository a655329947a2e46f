"""
### Benchmarks

How long do DC-SIS and mRMR take to select features?

* `bench_selection()`: one selection on the whole (standardized) dataset, repeated; medians reported
* `bench_jackknife()`: the selections of every leave-one-subject-out fold

```python
from dcsis import synth_generate
from dcsis.bench import bench_selection

report = bench_selection(synth_generate(74, 84, 10, seed=1), k=50, repeats=3, workers=1)
report.speedup  # median mRMR time / median DC-SIS time
```

Timings exclude dataset generation, scaling and I/O.
DC-SIS always ranks all p features: that is its natural unit of work, whatever k is.
mRMR recomputes redundancies at every greedy step unless `memoize_redundancy` is set.
"""
import logging
import platform
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from joblib import cpu_count

from .dataset import Dataset, ScalerKind, fit_scaler, apply_scaler, synth_generate
from .evaluation.harness import loso_selections
from .exc import InvalidInputError
from .selectors import make_selector
from .util.parallel import resolve_workers
from .util.timers import Nanotimers

logger = logging.getLogger(__name__)

#: The two methods every benchmark compares
METHODS = ('dcsis', 'mrmr-mid')


@dataclass(frozen=True)
class MethodTiming:
    """ Wall clock of one method, seconds """
    method: str
    median: float
    min: float
    max: float
    laps: Tuple[float, ...] = ()


@dataclass(frozen=True)
class BenchReport:
    """ Timings of DC-SIS and mRMR on one dataset shape """
    #: 'selection' or 'jackknife'
    kind: str
    shape: Tuple[int, int]
    k: int
    repeats: int
    workers: int
    timings: Dict[str, MethodTiming] = field(default_factory=dict)
    #: Folds per repeat; jackknife only
    folds: Optional[int] = None
    machine: str = ''

    @property
    def speedup(self) -> Optional[float]:
        """ Median mRMR time / median DC-SIS time; None when mRMR was skipped """
        if 'mrmr-mid' not in self.timings or 'dcsis' not in self.timings:
            return None
        return self.timings['mrmr-mid'].median / self.timings['dcsis'].median

    def rows(self) -> List[dict]:
        """ CSV rows: one per method """
        return [{
            'kind': self.kind,
            'n': self.shape[0],
            'p': self.shape[1],
            'k': self.k,
            'method': t.method,
            'median_s': t.median,
            'min_s': t.min,
            'max_s': t.max,
            'repeats': self.repeats,
            'workers': self.workers,
            'speedup': self.speedup,
        } for t in self.timings.values()]

    def to_dict(self) -> dict:
        return {
            'schema_version': 1,
            'kind': 'bench-' + self.kind,
            'shape': list(self.shape),
            'k': self.k,
            'repeats': self.repeats,
            'workers': self.workers,
            'folds': self.folds,
            'timings': {m: {'median': t.median, 'min': t.min, 'max': t.max, 'laps': list(t.laps)}
                        for m, t in self.timings.items()},
            'speedup': self.speedup,
            'machine': self.machine,
        }


def machine_note() -> str:
    """ Where the timings were taken """
    return '{} {}, {} cores, Python {}, numpy {}'.format(
        platform.system(), platform.machine(), cpu_count(), platform.python_version(), np.__version__)


def bench_selection(data: Dataset, k: int = 50, repeats: int = 3, workers: Optional[int] = 1,
                    settings: Mapping = None, skip_mrmr: bool = False) -> BenchReport:
    """ Time one selection per method on the standardized dataset

    :param data: The dataset; standardized here, outside of the timings
    :param k: Features to select
    :param repeats: Runs per method; medians are reported
    :param workers: Worker pool size of every selection, recorded in the report
    :param settings: Selector settings (metric, bins, ...)
    :param skip_mrmr: Time DC-SIS only
    """
    _check_repeats(repeats)
    workers = resolve_workers(workers)
    scaled = apply_scaler(data, fit_scaler(data, ScalerKind.standardize))

    timers = Nanotimers()
    for method in _methods(skip_mrmr):
        selector = make_selector(method, settings, workers=workers)
        for i in range(repeats):
            with timers.measure(method):
                selector.rank(scaled, k)

    report = BenchReport(kind='selection', shape=(data.n_obs, data.n_features), k=k, repeats=repeats,
                         workers=workers, timings=_summarize(timers, _methods(skip_mrmr)), machine=machine_note())
    _log(report)
    return report


def bench_jackknife(data: Dataset, k: int = 50, workers: Optional[int] = None, repeats: int = 1,
                    settings: Mapping = None, skip_mrmr: bool = False) -> BenchReport:
    """ Time the selections of all leave-one-subject-out folds, per method

    Full-fold mRMR at the scale of the PD data takes long: `skip_mrmr` times DC-SIS alone.

    :param workers: Folds run concurrently on this many threads
    """
    _check_repeats(repeats)
    workers = resolve_workers(workers)
    n_folds = len(data.subjects)

    timers = Nanotimers()
    for method in _methods(skip_mrmr):
        selector = make_selector(method, settings)
        for i in range(repeats):
            with timers.measure(method):
                loso_selections(data, selector, k, workers=workers)

    report = BenchReport(kind='jackknife', shape=(data.n_obs, data.n_features), k=k, repeats=repeats,
                         workers=workers, timings=_summarize(timers, _methods(skip_mrmr)), folds=n_folds,
                         machine=machine_note())
    _log(report)
    return report


def bench_shapes(shapes: Sequence[Tuple[int, int]], k: int = 50, repeats: int = 3, workers: Optional[int] = 1,
                 jackknife: bool = False, skip_mrmr: bool = False, seed: int = 0, n_informative: int = 10,
                 settings: Mapping = None) -> List[BenchReport]:
    """ Benchmark synthetic datasets of several shapes """
    reports = []
    for n, p in shapes:
        data = synth_generate(n, p, min(n_informative, p), seed=seed)
        kk = min(k, p)
        if jackknife:
            reports.append(bench_jackknife(data, kk, workers=workers, repeats=repeats, settings=settings,
                                           skip_mrmr=skip_mrmr))
        else:
            reports.append(bench_selection(data, kk, repeats=repeats, workers=workers, settings=settings,
                                           skip_mrmr=skip_mrmr))
    return reports


def p_scaling_exponent(n: int = 300, ps: Sequence[int] = (100, 200, 400, 800), repeats: int = 3,
                       workers: Optional[int] = 1, seed: int = 0, settings: Mapping = None) -> Tuple[float, List[float]]:
    """ The exponent of DC-SIS time in p: the log-log slope of the median time over `ps`

    :returns: (slope, median times)
    """
    _check_repeats(repeats)
    times = []
    for p in ps:
        data = synth_generate(n, p, min(10, p), seed=seed)
        scaled = apply_scaler(data, fit_scaler(data, ScalerKind.standardize))
        selector = make_selector('dcsis', settings, workers=workers)
        timers = Nanotimers()
        for i in range(repeats):
            with timers.measure('dcsis'):
                selector.rank(scaled, None)
        times.append(timers.median('dcsis'))

    slope = float(np.polyfit(np.log(ps), np.log(times), 1)[0])
    logger.info('DC-SIS time ~ p^%.2f at n=%d over p=%s', slope, n, list(ps))
    return slope, times


def _methods(skip_mrmr: bool) -> Tuple[str, ...]:
    return METHODS[:1] if skip_mrmr else METHODS


def _check_repeats(repeats: int):
    if repeats < 1:
        raise InvalidInputError('repeats must be >= 1, got {}'.format(repeats))


def _summarize(timers: Nanotimers, methods: Sequence[str]) -> Dict[str, MethodTiming]:
    return {m: MethodTiming(method=m,
                            median=timers.median(m),
                            min=min(timers.laps(m)),
                            max=max(timers.laps(m)),
                            laps=tuple(timers.laps(m)))
            for m in methods}


def _log(report: BenchReport):
    for t in report.timings.values():
        logger.info('Bench %s %dx%d k=%d %s: median %.3fs over %d runs, workers=%d',
                    report.kind, report.shape[0], report.shape[1], report.k, t.method, t.median,
                    report.repeats, report.workers)
    if report.speedup is not None:
        logger.info('Speedup of DC-SIS over mRMR: %.1fx', report.speedup)
