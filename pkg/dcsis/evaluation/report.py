""" Report writers: JSON documents, human-readable tables, CSV curves and tables

Every machine-readable output has a schema under `schemas/`.
Timings are left out of JSON documents unless asked for: they are the only
part of a report that changes from one run to the next.
"""
import json
import sys
from contextlib import contextmanager
from typing import Iterable, List, Sequence, Union

import pandas as pd

from .harness import EvaluationReport, ShrinkResult
from .stability import StabilityReport

#: Version of the JSON documents
SCHEMA_VERSION = 1


# region Evaluation

def report_to_dict(report: EvaluationReport, include_timings: bool = False) -> dict:
    """ An EvaluationReport as a JSON-compatible dict """
    folds = []
    for f in report.per_fold:
        fold = {
            'subject_id': str(f.subject_id),
            'selected_features': [int(i) for i in f.selected_features],
            'test_indices': [int(i) for i in f.test_indices],
            'predictions': [int(v) for v in f.per_observation_predictions],
            'true_labels': [int(v) for v in f.true_labels],
        }
        if include_timings:
            fold['selection_time'] = f.selection_time
            fold['train_time'] = f.train_time
        folds.append(fold)

    return {
        'schema_version': SCHEMA_VERSION,
        'kind': 'evaluation',
        'method': report.method,
        'classifier': report.classifier,
        'k': report.k,
        'scaler': report.scaler,
        'metrics': {
            'accuracy': report.accuracy,
            'f1': report.f1,
            'mcc': report.mcc,
            'accuracy_se': report.accuracy_se,
        },
        'n_folds': report.n_folds,
        'metadata': report.metadata,
        'folds': folds,
    }


def format_table(reports: Iterable[EvaluationReport]) -> str:
    """ A human-readable table: one row per report """
    df = pd.DataFrame([{
        'method': r.method,
        'classifier': r.classifier,
        'k': r.k,
        'accuracy': r.accuracy,
        'se': r.accuracy_se,
        'f1': r.f1,
        'mcc': r.mcc,
        'folds': r.n_folds,
    } for r in reports])
    return df.to_string(index=False, float_format=lambda v: '{:.4f}'.format(v))

# endregion


# region Shrinkage

def curve_frame(result: ShrinkResult) -> pd.DataFrame:
    """ The per-k accuracy curve: k, accuracy, accuracy_se, f1, mcc, classifier, method """
    return pd.DataFrame({
        'k': [r.k for r in result.curve],
        'accuracy': [r.accuracy for r in result.curve],
        'accuracy_se': [r.accuracy_se for r in result.curve],
        'f1': [r.f1 for r in result.curve],
        'mcc': [r.mcc for r in result.curve],
        'classifier': result.classifier,
        'method': result.method,
    })


def shrink_to_dict(result: ShrinkResult) -> dict:
    reduced, reference = result.reduced, result.reference
    return {
        'schema_version': SCHEMA_VERSION,
        'kind': 'shrinkage',
        'method': result.method,
        'classifier': result.classifier,
        'k_star': result.k_star,
        'k_max': result.k_max,
        'threshold': result.threshold,
        'reduced': {'k': reduced.k, 'accuracy': reduced.accuracy, 'f1': reduced.f1, 'mcc': reduced.mcc,
                    'accuracy_se': reduced.accuracy_se},
        'reference': {'k': reference.k, 'accuracy': reference.accuracy, 'f1': reference.f1, 'mcc': reference.mcc,
                      'accuracy_se': reference.accuracy_se},
        'curve': curve_frame(result).drop(columns=['classifier', 'method']).to_dict(orient='records'),
        'metadata': reference.metadata,
    }

# endregion


# region Stability

def stability_to_dict(report: StabilityReport) -> dict:
    return {
        'schema_version': SCHEMA_VERSION,
        'kind': 'stability',
        'methods': list(report.methods),
        'n_folds': report.n_folds,
        'k': report.k,
        'within': report.within,
        'between': report.between,
        'always_selected_both': report.always_selected_names,
        'always_selected_counts': report.always_selected_counts,
        'definition': report.definition,
    }


def stability_frame(report: StabilityReport) -> pd.DataFrame:
    """ The per-feature selection probabilities: feature, probability, method, count, feature_index """
    return report.probabilities[['feature', 'probability', 'method', 'count', 'feature_index']]

# endregion


# region Output

@contextmanager
def open_output(path=None):
    """ Open a file for writing; `None` or '-' is standard output """
    if path is None or str(path) == '-':
        yield sys.stdout
    else:
        with open(str(path), 'w', encoding='utf-8', newline='') as f:
            yield f


def write_json(document: Union[dict, List[dict]], path=None):
    with open_output(path) as f:
        json.dump(document, f, indent=2, default=_json_default)
        f.write('\n')


def write_csv(df: pd.DataFrame, path=None):
    with open_output(path) as f:
        df.to_csv(f, index=False, float_format='%.17g')


def _json_default(value):
    """ numpy scalars and arrays """
    if hasattr(value, 'tolist'):
        return value.tolist()
    raise TypeError('{!r} is not JSON serializable'.format(value))

# endregion
