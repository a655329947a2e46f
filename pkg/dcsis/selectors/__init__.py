"""
Feature selectors.

Every selector is a class registered under a method name, the one used on the command line:

* `dcsis`: DC-SIS screening ranks all features by distance correlation with the response
* `mrmr-mid` (also `mrmr`), `mrmr-miq`: mRMR greedily selects `k` features by mutual information

```python
from dcsis.selectors import make_selector

selector = make_selector('dcsis', metric='euclidean', workers=4)
ranking = selector.rank(train, k=50)
ranking.select(23)  # a prefix: nothing is recomputed
```
"""

from .base import FeatureSelectorBase, FeatureRanking, \
    SELECTORS, RANKING_COLUMNS, register_selector, get_selector_class, make_selector, normalize_method_name, \
    write_ranking, read_ranking
from .screening import DcsisSelector, dcsis_rank, dcsis_select
from .mrmr import MrmrSelector, MrmrQuotientSelector, \
    DiscretizedMatrix, discretize, mutual_information, mrmr_select
