"""
Evaluation: the leave-one-subject-out jackknife, metrics, one-SE shrinkage, selection stability, and report writers.
"""

from .metrics import Metrics, majority_vote, metrics, jackknife_se
from .harness import FoldSelection, FoldResult, EvaluationReport, ShrinkResult, \
    loso_selections, loso_evaluate, evaluate_many, shrink_scan, shrink_scan_many
from .stability import StabilityReport, stability_report, loso_stability
from .report import report_to_dict, format_table, curve_frame, shrink_to_dict, stability_to_dict, stability_frame, \
    write_json, write_csv
