"""
DCSIS selects features for high-dimensional tabular classification, and measures how well they work.

Two selectors are compared:

* DC-SIS, distance correlation sure independence screening: every feature is scored by its
  distance correlation with the response, and the best `k` are kept
* mRMR, minimum redundancy maximum relevance: a greedy forward selection by mutual information

They are evaluated the way small clinical datasets with repeated measurements require:
leave one subject out, predict its observations, vote.

```python
from dcsis import load_csv, CsvSchema
from dcsis.selectors import DcsisSelector
from dcsis.evaluation import loso_evaluate, shrink_scan

data = load_csv('pd_speech_features.csv', CsvSchema(id_column='id', response_column='class'))
report = loso_evaluate(data, DcsisSelector(), k=50, spec='nb')
report.accuracy, report.f1, report.mcc, report.accuracy_se

shrink_scan(data, 'logreg:l1=0.25', k_max=50).k_star
```

Everything is also available on the command line: see `dcsis --help`.
"""

__version__ = '1.0.0'

# Exceptions that are used here and there
from .exc import *

# Data: loading, scaling, folds, synthetic datasets
from .dataset import Dataset, CsvSchema, ScalerKind, ScalerParams, Fold, \
    load_csv, write_csv, fit_scaler, apply_scaler, loso_folds, synth_generate, parse_shape, SHAPES

# Kernels
from .dcorr import Metric, DistanceMatrix, pairwise_distances, double_center, \
    distance_covariance_sq, distance_correlation_sq, distance_correlation_sq_precentered

# Selectors, classifiers, evaluation
from . import selectors, models, evaluation

# Settings objects
from .util.settings_dict import PipelineSettingsDict
