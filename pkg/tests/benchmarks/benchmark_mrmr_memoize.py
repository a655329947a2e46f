"""
This benchmark compares two ways mRMR computes redundancy:
* recompute the MI of every candidate with every selected feature, at every greedy step
* remember pairwise MI between steps
"""
from tests.benchmarks.benchmark_utils import benchmark_parallel_funcs

from dcsis import synth_generate, parse_shape, fit_scaler, apply_scaler, ScalerKind
from dcsis.selectors import MrmrSelector

# Run me:
# $ python -m tests.benchmarks.benchmark_mrmr_memoize

# Init data: choose one
data = synth_generate(*parse_shape('setap'), 10, seed=0)
# data = synth_generate(*parse_shape('ulc'), 10, seed=0)
# data = synth_generate(*parse_shape('pd'), 10, seed=0)

# Prepare
N_REPEATS = 10
K = 50
scaled = apply_scaler(data, fit_scaler(data, ScalerKind.standardize))
recompute = MrmrSelector(memoize_redundancy=False, workers=1)
memoize = MrmrSelector(memoize_redundancy=True, workers=1)


# Tests
def test_recompute(n):
    for i in range(n):
        recompute.rank(scaled, K)

def test_memoize(n):
    for i in range(n):
        memoize.rank(scaled, K)


# Run
print('Running tests...')
res = benchmark_parallel_funcs(
    N_REPEATS, 5,
    test_recompute,
    test_memoize,
)

# Done
print(res)
