"""
### Command line

```
dcsis rank       --input pd.csv --method dcsis --out ranking.csv
dcsis evaluate   --input pd.csv --method dcsis --k 50 --model nb --model knn:k=18,p=3 --out report.json
dcsis shrink     --input pd.csv --model logreg:l1=0.25 --k-max 50 --out shrink.json --curve-out curve.csv
dcsis stability  --input pd.csv --k 50 --out probabilities.csv --summary-out stability.json
dcsis bench      --shape 74x84 --shape pd --k 50 --out bench.json --csv-out bench.csv
dcsis synth      --n 120 --p 40 --n-informative 8 --seed 5 --out synth.csv
```

Exit codes: 0 success, 1 computation failure, 2 usage error (bad flags, bad values, unreadable input).
Outputs go to standard output when `--out` is not given. Every output is deterministic for
fixed flags, except benchmark timings.
"""
import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from . import __version__
from .bench import bench_shapes
from .dataset import CsvSchema, Dataset, ScalerKind, load_csv, write_csv as write_dataset_csv, synth_generate, \
    parse_shape, fit_scaler, apply_scaler
from .evaluation import evaluate_many, shrink_scan_many, loso_stability, report_to_dict, format_table, \
    shrink_to_dict, curve_frame, stability_to_dict, stability_frame, write_json, write_csv
from .dcorr import Metric
from .exc import BaseDcsisException, InvalidInputError, DatasetFormatError
from .models import ClassifierSpec
from .models.plugins import register_sklearn_plugins
from .selectors import get_selector_class, make_selector, normalize_method_name
from .util.settings_dict import PipelineSettingsDict

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """ Invalid flags or inputs: exit code 2 """


@dataclass
class RunConfig:
    """ Everything a subcommand needs, validated before any computation starts """
    command: str
    input: Optional[str] = None
    id_col: str = 'id'
    response_col: str = 'class'
    positive_label: str = '1'
    skip_rows: Optional[int] = None
    method: str = 'dcsis'
    k: Optional[int] = None
    k_max: int = 50
    models: Tuple[str, ...] = ('nb',)
    scaler: str = 'standardize'
    metric: str = 'euclidean'
    bins: int = 3
    bin_width_sigmas: float = 1.0
    mrmr_memoize: bool = False
    workers: Optional[int] = None
    seed: int = 0
    out: Optional[str] = None
    curve_out: Optional[str] = None
    summary_out: Optional[str] = None
    csv_out: Optional[str] = None
    table_out: Optional[str] = None
    # bench
    shapes: Tuple[str, ...] = ()
    repeats: int = 3
    skip_mrmr: bool = False
    jackknife: bool = False
    # synth
    n: Optional[int] = None
    p: Optional[int] = None
    n_informative: Optional[int] = None
    verbose: int = 0
    # Parsed forms, filled by validate()
    parsed_models: List[ClassifierSpec] = field(default_factory=list, repr=False)
    parsed_shapes: List[Tuple[int, int]] = field(default_factory=list, repr=False)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        values = {k: v for k, v in vars(args).items() if k in cls.__dataclass_fields__ and v is not None}
        if 'models' in values:
            values['models'] = tuple(values['models'])
        if 'shapes' in values:
            values['shapes'] = tuple(values['shapes'])
        return cls(**values)

    def validate(self) -> 'RunConfig':
        """ Check every value; parse classifier strings, metric, shapes

        :raises UsageError
        """
        try:
            self._validate()
        except (InvalidInputError, KeyError) as e:
            raise UsageError(str(e)) from e
        return self

    def _validate(self):
        # Input
        if self.command in ('rank', 'evaluate', 'shrink', 'stability'):
            if not self.input:
                raise UsageError('{}: --input is required'.format(self.command))
            if not os.path.isfile(self.input):
                raise UsageError('input file not found: {}'.format(self.input))
        if self.skip_rows is not None and self.skip_rows < 0:
            raise UsageError('--skip-rows must be >= 0')

        # Numbers
        if self.k is not None and self.k < 1:
            raise UsageError('--k must be >= 1, got {}'.format(self.k))
        if self.k_max < 1:
            raise UsageError('--k-max must be >= 1, got {}'.format(self.k_max))
        if self.workers is not None and self.workers < 0:
            raise UsageError('--workers must be >= 0 (0: all cores), got {}'.format(self.workers))
        if self.repeats < 1:
            raise UsageError('--repeats must be >= 1, got {}'.format(self.repeats))
        if self.bins < 2:
            raise UsageError('--bins must be >= 2, got {}'.format(self.bins))
        if not self.bin_width_sigmas > 0:
            raise UsageError('--bin-width-sigmas must be positive, got {}'.format(self.bin_width_sigmas))

        # Components
        self.method = normalize_method_name(self.method)
        get_selector_class(self.method)
        Metric.parse(self.metric)
        self.scaler = ScalerKind.parse(self.scaler).value
        self.parsed_models = [ClassifierSpec.parse(m) for m in self.models]
        self.parsed_shapes = [parse_shape(s) for s in self.shapes]

        # synth
        if self.command == 'synth':
            if self.n is None or self.p is None:
                raise UsageError('synth: --n and --p are required')
            if self.n < 2 or self.p < 1:
                raise UsageError('synth: need --n >= 2 and --p >= 1')
            informative = self.n_informative if self.n_informative is not None else min(10, self.p)
            if not 1 <= informative <= self.p:
                raise UsageError('synth: need 1 <= --n-informative <= --p')

    @property
    def schema(self) -> CsvSchema:
        return CsvSchema(id_column=self.id_col, response_column=self.response_col,
                         positive_label=self.positive_label, skip_rows=self.skip_rows)

    @property
    def settings(self) -> PipelineSettingsDict:
        """ Pipeline settings for selectors and the harness """
        return PipelineSettingsDict(metric=self.metric,
                                    bins=self.bins,
                                    bin_width_sigmas=self.bin_width_sigmas,
                                    memoize_redundancy=self.mrmr_memoize,
                                    workers=self.workers,
                                    scaler=self.scaler,
                                    k=self.k or 50,
                                    k_max=self.k_max,
                                    repeats=self.repeats)

    def selector(self, method: str = None):
        return make_selector(method or self.method, self.settings)


# region Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='dcsis',
                                     description='Feature selection by distance correlation screening and mRMR, '
                                                 'with a leave-one-subject-out evaluation harness.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v: progress, -vv: every fold')
    common.add_argument('--workers', type=int, help='worker pool size; default: all cores')
    common.add_argument('--out', help='output file; default: standard output')

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument('--input', required=True, help='CSV file')
    data.add_argument('--id-col', default='id', help='subject id column (default: id)')
    data.add_argument('--response-col', default='class', help='response column (default: class)')
    data.add_argument('--positive-label', default='1', help='label of the positive class (default: 1)')
    data.add_argument('--skip-rows', type=int, help='lines above the header; default: detect')
    data.add_argument('--scaler', default='standardize', choices=['standardize', 'predictor-norm', 'sample-norm'])

    selection = argparse.ArgumentParser(add_help=False)
    selection.add_argument('--metric', default='euclidean',
                           help='euclidean, manhattan, minkowski:<order>, cosine (default: euclidean)')
    selection.add_argument('--bins', type=int, default=3, help='mRMR discretization bins (default: 3)')
    selection.add_argument('--bin-width-sigmas', type=float, default=1.0,
                           help='mRMR bins span the mean ± this many standard deviations (default: 1)')
    selection.add_argument('--mrmr-memoize', action='store_true',
                           help='remember pairwise MI between greedy steps (same selection, faster)')

    models = argparse.ArgumentParser(add_help=False)
    models.add_argument('--model', dest='models', action='append',
                        help='classifier, repeatable: nb, knn:k=18,p=3, logreg:l1=0.25,c=1.0, '
                             'rf, mlp, svc-linear, svc-rbf (default: nb)')

    # 'mrmr' is the default variant, mrmr-mid
    mrmr_methods = ['mrmr', 'mrmr-mid', 'mrmr-miq']
    methods = ['dcsis'] + mrmr_methods

    p = sub.add_parser('rank', parents=[common, data, selection], help='rank features; write a ranking CSV')
    p.add_argument('--method', default='dcsis', choices=methods)
    p.add_argument('--k', type=int, help='features to select; DC-SIS ranks all of them unless given (mRMR: 50)')

    p = sub.add_parser('evaluate', parents=[common, data, selection, models],
                       help='leave-one-subject-out evaluation; write a JSON report')
    p.add_argument('--method', default='dcsis', choices=methods)
    p.add_argument('--k', type=int, default=50, help='features to select (default: 50)')
    p.add_argument('--table-out', help='human-readable table; default: standard error')

    p = sub.add_parser('shrink', parents=[common, data, selection, models],
                       help='one-standard-error model shrinkage; write a JSON report')
    p.add_argument('--method', default='dcsis', choices=methods)
    p.add_argument('--k-max', type=int, default=50, help='largest model size (default: 50)')
    p.add_argument('--curve-out', help='per-k accuracy curve CSV')

    p = sub.add_parser('stability', parents=[common, data, selection],
                       help='selection stability of DC-SIS vs mRMR; write per-feature probabilities CSV')
    p.add_argument('--k', type=int, default=50, help='features to select (default: 50)')
    p.add_argument('--method', default='mrmr-mid', choices=mrmr_methods, help='the method compared to DC-SIS')
    p.add_argument('--summary-out', help='JSON summary; default: standard error')

    p = sub.add_parser('bench', parents=[common, selection], help='time DC-SIS vs mRMR on synthetic shapes')
    p.add_argument('--shape', dest='shapes', action='append',
                   help='NxP, or one of: pd, setap, ulc, arr; repeatable (default: setap)')
    p.add_argument('--k', type=int, default=50, help='features to select (default: 50)')
    p.add_argument('--repeats', type=int, default=3, help='runs per method; medians reported (default: 3)')
    p.add_argument('--jackknife', action='store_true', help='time the selections of all folds')
    p.add_argument('--skip-mrmr', action='store_true', help='time DC-SIS only')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--csv-out', help='one CSV row per (shape, method)')

    p = sub.add_parser('synth', parents=[common], help='generate a synthetic dataset CSV')
    p.add_argument('--n', type=int, required=True, help='observations')
    p.add_argument('--p', type=int, required=True, help='features')
    p.add_argument('--n-informative', type=int, help='response-dependent features (default: min(10, p))')
    p.add_argument('--seed', type=int, default=0)

    return parser

# endregion


# region Commands

def cmd_rank(config: RunConfig, data: Dataset):
    selector = config.selector()
    k = config.k
    if k is None and not selector.ranks_all_features:
        k = min(50, data.n_features)
    _check_k(k, data)
    ranking = selector.rank(scale_all(config, data), k)
    write_csv(ranking.to_frame(data.feature_names), config.out)


def cmd_evaluate(config: RunConfig, data: Dataset):
    settings = config.settings
    _check_k(settings['k'], data)
    reports = evaluate_many(data, config.selector(), settings['k'], config.parsed_models,
                            scaler=settings['scaler'], workers=settings['workers'])
    write_json({'schema_version': 1, 'kind': 'evaluation-run',
                'reports': [report_to_dict(r) for r in reports]}, config.out)
    _write_text(format_table(reports), config.table_out)


def cmd_shrink(config: RunConfig, data: Dataset):
    settings = config.settings
    _check_k(settings['k_max'], data)
    results = shrink_scan_many(data, config.parsed_models, k_max=settings['k_max'], selector=config.selector(),
                               scaler=settings['scaler'], workers=settings['workers'])
    write_json({'schema_version': 1, 'kind': 'shrinkage-run',
                'results': [shrink_to_dict(r) for r in results]}, config.out)
    if config.curve_out:
        write_csv(pd.concat([curve_frame(r) for r in results], ignore_index=True), config.curve_out)
    for r in results:
        _write_text('{} {}: k*={} accuracy {:.4f} (k={}: {:.4f} ± {:.4f})'.format(
            r.method, r.classifier, r.k_star, r.reduced.accuracy, r.k_max, r.reference.accuracy,
            r.reference.accuracy_se), None)


def cmd_stability(config: RunConfig, data: Dataset):
    settings = config.settings
    _check_k(settings['k'], data)
    report = loso_stability(data, settings['k'], config.selector('dcsis'), config.selector(config.method),
                            scaler=settings['scaler'], workers=settings['workers'])
    write_csv(stability_frame(report), config.out)
    if config.summary_out:
        write_json(stability_to_dict(report), config.summary_out)
    _write_text('within: {}; between: {:.3f}; always selected by both ({}): {}'.format(
        ', '.join('{}={:.3f}'.format(m, v) for m, v in report.within.items()),
        report.between, len(report.always_selected_both), ', '.join(report.always_selected_names)), None)


def cmd_bench(config: RunConfig):
    settings = config.settings
    shapes = config.parsed_shapes or [parse_shape('setap')]
    reports = bench_shapes(shapes, k=settings['k'], repeats=settings['repeats'], workers=settings['workers'],
                           jackknife=config.jackknife, skip_mrmr=config.skip_mrmr, seed=config.seed,
                           settings=settings)
    write_json({'schema_version': 1, 'kind': 'bench-run', 'reports': [r.to_dict() for r in reports]}, config.out)
    if config.csv_out:
        write_csv(pd.DataFrame([row for r in reports for row in r.rows()]), config.csv_out)
    for r in reports:
        _write_text('{}x{} k={}: {}{}'.format(
            r.shape[0], r.shape[1], r.k,
            ', '.join('{} {:.3f}s'.format(m, t.median) for m, t in r.timings.items()),
            '' if r.speedup is None else ', speedup {:.1f}x'.format(r.speedup)), None)


def cmd_synth(config: RunConfig):
    informative = config.n_informative if config.n_informative is not None else min(10, config.p)
    data = synth_generate(config.n, config.p, informative, seed=config.seed)
    write_dataset_csv(data, config.out if config.out else sys.stdout)

# endregion


def scale_all(config: RunConfig, data: Dataset) -> Dataset:
    """ The whole dataset, scaled: `rank` selects on everything """
    return apply_scaler(data, fit_scaler(data, config.settings['scaler']))


def _check_k(k: Optional[int], data: Dataset):
    if k is not None and k > data.n_features:
        raise UsageError('k={} is larger than the number of features, p={}'.format(k, data.n_features))


def _write_text(text: str, path: Optional[str]):
    if path:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
    else:
        print(text, file=sys.stderr)


def main(argv: Sequence[str] = None) -> int:
    """ Run the command line; returns the exit code """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help: 0; bad flags: 2
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(level={0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s', stream=sys.stderr)

    # Configure: everything is checked before anything is computed
    register_sklearn_plugins()
    try:
        config = RunConfig.from_args(args).validate()
        data = None
        if config.command not in ('bench', 'synth'):
            data = load_csv(config.input, config.schema)
            if config.command in ('rank', 'evaluate', 'stability'):
                _check_k(config.k, data)
            elif config.command == 'shrink':
                _check_k(config.k_max, data)
    except (UsageError, InvalidInputError, DatasetFormatError, OSError) as e:
        print('dcsis: error: {}'.format(e), file=sys.stderr)
        return EXIT_USAGE
    logger.debug('Config: %r', config)

    # Compute
    try:
        if config.command == 'rank':
            cmd_rank(config, data)
        elif config.command == 'evaluate':
            cmd_evaluate(config, data)
        elif config.command == 'shrink':
            cmd_shrink(config, data)
        elif config.command == 'stability':
            cmd_stability(config, data)
        elif config.command == 'bench':
            cmd_bench(config)
        elif config.command == 'synth':
            cmd_synth(config)
    except BaseDcsisException as e:
        print('dcsis: failed: {}'.format(e), file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def main_exit():
    """ Console script entry point """
    sys.exit(main())
