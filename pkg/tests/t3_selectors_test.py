import os
import tempfile
import unittest

import numpy as np

from dcsis import synth_generate, fit_scaler, apply_scaler, PipelineSettingsDict
from dcsis.dcorr import distance_correlation_sq, Metric
from dcsis.exc import InvalidInputError, EmptyDatasetError, DimensionMismatchError, RegistryError
from dcsis.selectors import (DcsisSelector, MrmrSelector, MrmrQuotientSelector, FeatureRanking,
                             DiscretizedMatrix, dcsis_rank, dcsis_select, discretize, mutual_information, mrmr_select,
                             make_selector, get_selector_class, write_ranking, read_ranking)

from .util import make_dataset, response_duplicate_dataset, exhaustive_mrmr


def standardized(data):
    return apply_scaler(data, fit_scaler(data, 'standardize'))


class FeatureRankingTest(unittest.TestCase):
    """ The common result of every selector """

    def test_ranking(self):
        r = FeatureRanking(indices=[2, 0, 1], scores=[0.9, 0.5, 0.1], method='dcsis', k_requested=3)

        self.assertEqual(len(r), 3)
        self.assertEqual(r.entries, [(2, 0.9), (0, 0.5), (1, 0.1)])
        self.assertEqual(r.select(1), [2])
        self.assertEqual(r.select(3), [2, 0, 1])

        # Prefixes
        self.assertEqual(r.select(2), r.select(3)[:2])

        with self.assertRaises(InvalidInputError):
            r.select(0)
        with self.assertRaises(InvalidInputError):
            r.select(4)
        with self.assertRaises(InvalidInputError):
            FeatureRanking(indices=[0, 1], scores=[0.5], method='dcsis', k_requested=2)

        #=== As a table
        df = r.to_frame(['a', 'b', 'c'])
        self.assertEqual(list(df.columns), ['rank', 'feature_index', 'feature_name', 'score', 'method'])
        self.assertEqual(df['feature_name'].tolist(), ['c', 'a', 'b'])
        self.assertEqual(df['rank'].tolist(), [1, 2, 3])

    def test_write_read(self):
        r = FeatureRanking(indices=[2, 0, 1], scores=[0.9, 1 / 3, 0.1], method='mrmr-mid', k_requested=3)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'ranking.csv')
            write_ranking(r, path, ['a', 'b', 'c'])
            back = read_ranking(path)

        self.assertEqual(back.entries, r.entries)
        self.assertEqual(back.method, 'mrmr-mid')


class DcsisTest(unittest.TestCase):
    """ DC-SIS screening """

    def test_response_duplicate(self):
        data = response_duplicate_dataset()
        ranking = dcsis_rank(data)

        self.assertEqual(ranking.indices[0], 0)
        self.assertAlmostEqual(ranking.scores[0], 1.0, places=12)
        self.assertEqual(dcsis_select(ranking, 1), [0])

        # All features, sorted descending
        self.assertEqual(sorted(ranking.indices.tolist()), list(range(data.n_features)))
        self.assertTrue(np.all(np.diff(ranking.scores) <= 0))
        self.assertTrue(np.all((ranking.scores >= 0) & (ranking.scores <= 1 + 1e-12)))
        self.assertEqual(ranking.method, 'dcsis')

    def test_scores(self):
        data = standardized(synth_generate(150, 8, 3, seed=2))
        ranking = dcsis_rank(data)

        # Every score is the from-scratch distance correlation
        y = data.response.astype(float)
        for j, score in ranking.entries:
            self.assertAlmostEqual(score, distance_correlation_sq(data.features[:, j], y), delta=1e-12)

        # Informative features rank first here
        self.assertEqual(set(ranking.select(3)), {0, 1, 2})

    def test_constant_features(self):
        data = make_dataset(np.full((6, 4), 2.5), [0, 1, 0, 1, 0, 1])
        ranking = dcsis_rank(data)

        self.assertEqual(ranking.indices.tolist(), [0, 1, 2, 3])
        self.assertEqual(ranking.scores.tolist(), [0, 0, 0, 0])

    def test_ties(self):
        # Identical columns: equal scores, ascending index
        x = np.random.default_rng(0).standard_normal(20)
        data = make_dataset(np.stack([x * 0, x, x, x], axis=1), np.arange(20) % 2)
        ranking = dcsis_rank(data)
        self.assertEqual(ranking.indices.tolist(), [1, 2, 3, 0])

    def test_workers(self):
        data = standardized(synth_generate(45, 30, 5, seed=3))
        one = dcsis_rank(data, workers=1)
        many = dcsis_rank(data, workers=4)

        np.testing.assert_array_equal(one.indices, many.indices)
        np.testing.assert_array_equal(one.scores, many.scores)

    def test_rescaling_invariance(self):
        data = synth_generate(45, 10, 4, seed=4)
        ranking = dcsis_rank(data)

        scales = np.arange(1, 11) * 3.7
        rescaled = data.with_features(data.features * scales)
        self.assertEqual(dcsis_rank(rescaled).indices.tolist(), ranking.indices.tolist())

    def test_metrics(self):
        data = standardized(synth_generate(30, 5, 2, seed=5))
        for metric in ('manhattan', 'minkowski:3', 'cosine'):
            ranking = DcsisSelector(metric=metric, workers=1).rank(data)
            self.assertEqual(len(ranking), 5)
            self.assertTrue(np.all(ranking.scores >= 0))

        # In one dimension, Minkowski-type metrics agree with euclidean
        np.testing.assert_allclose(DcsisSelector(metric='manhattan', workers=1).rank(data).scores,
                                   dcsis_rank(data).scores, atol=1e-12)

        #=== Cosine applies to the features, never to the 0/1 response
        data = standardized(synth_generate(600, 8, 3, seed=2))
        ranking = DcsisSelector(metric='cosine', workers=1).rank(data)
        self.assertEqual(set(ranking.select(3)), {0, 1, 2})
        self.assertTrue(np.all(ranking.scores[:3] > 0.02))

        # A feature's sign is all cosine sees of it
        y = data.response.astype(float)
        for j, score in ranking.entries:
            self.assertAlmostEqual(score, distance_correlation_sq(np.sign(data.features[:, j]), y), delta=1e-12)

    def test_column_permutation(self):
        data = standardized(synth_generate(60, 12, 4, seed=9))
        ranking = dcsis_rank(data, workers=1)

        # Permuting the columns permutes the ranking, scores untouched
        perm = np.random.default_rng(9).permutation(12)
        permuted = dcsis_rank(data.with_features(data.features[:, perm]), workers=1)
        self.assertEqual(perm[permuted.indices].tolist(), ranking.indices.tolist())
        np.testing.assert_array_equal(permuted.scores, ranking.scores)

    def test_timings(self):
        ranking = DcsisSelector(workers=1).rank(standardized(synth_generate(30, 5, 2, seed=5)), k=2)
        self.assertEqual(set(ranking.timings), {'total', 'response_matrix', 'screening', 'sort'})
        self.assertTrue(all(t >= 0 for t in ranking.timings.values()))

        # k does not change the work: the whole ranking is there
        self.assertEqual(len(ranking), 5)

    def test_errors(self):
        selector = DcsisSelector(workers=1)
        data = response_duplicate_dataset()

        with self.assertRaises(InvalidInputError):
            selector.rank(data, k=0)
        with self.assertRaises(InvalidInputError):
            selector.rank(data, k=data.n_features + 1)
        with self.assertRaises(EmptyDatasetError):
            selector.rank(make_dataset(np.zeros((data.n_obs, 0)), data.response), k=None)
        with self.assertRaises(InvalidInputError):
            selector.rank(data.take([0]), k=None)


class MrmrTest(unittest.TestCase):
    """ Discretization, mutual information, greedy mRMR """

    def test_mutual_information(self):
        self.assertAlmostEqual(mutual_information([0, 0, 1, 1], [0, 0, 1, 0]), 0.3112781244591328, places=12)

        # Self-information is the entropy; independence is 0
        self.assertAlmostEqual(mutual_information([0, 1, 0, 1], [0, 1, 0, 1]), 1.0, places=12)
        self.assertEqual(mutual_information([0, 0, 1, 1], [0, 1, 0, 1]), 0.0)

        # Symmetric, label-agnostic
        self.assertAlmostEqual(mutual_information([5, 5, 9, 9], [0, 0, 1, 0]),
                               mutual_information([0, 0, 1, 0], [0, 0, 1, 1]), places=12)

        with self.assertRaises(DimensionMismatchError):
            mutual_information([0, 1], [0, 1, 1])

    def test_discretize(self):
        data = make_dataset([[-2, 7], [-0.5, 7], [0.5, 7], [2, 7]], [0, 1, 0, 1])
        disc = discretize(data)

        # μ = 0, σ = √2.125: below, inside, inside, above
        self.assertEqual(disc.codes[:, 0].tolist(), [0, 1, 1, 2])
        np.testing.assert_allclose(disc.thresholds[0], [-np.sqrt(2.125), np.sqrt(2.125)])

        # Constant: the middle code
        self.assertEqual(disc.codes[:, 1].tolist(), [1, 1, 1, 1])

        # Held-out rows reuse the edges
        self.assertEqual(disc.apply(np.array([[10.0, 7.0], [-10.0, 0.0]])).tolist(), [[2, 1], [0, 0]])
        with self.assertRaises(DimensionMismatchError):
            disc.apply(np.zeros((1, 3)))

        #=== More bins, other widths
        disc = discretize(data, bins=2)
        self.assertEqual(disc.codes[:, 0].tolist(), [0, 0, 1, 1])
        disc = discretize(data, bins=5, bin_width_sigmas=2.0)
        self.assertEqual(disc.edges.shape, (2, 4))
        self.assertTrue(disc.codes.max() < 5)

        with self.assertRaises(InvalidInputError):
            discretize(data, bins=1)
        with self.assertRaises(InvalidInputError):
            discretize(data, bin_width_sigmas=0)

    def test_discretize_few_values(self):
        # Standardized balanced 0/1 sits exactly on μ ± σ; 3 values are fewer than 4 observations
        data = standardized(make_dataset([[0, -2], [1, 0], [0, 0], [1, 2]], [0, 1, 0, 1]))
        disc = discretize(data)

        self.assertEqual(disc.codes[:, 0].tolist(), [0, 1, 0, 1])
        self.assertEqual(disc.codes[:, 1].tolist(), [0, 1, 1, 2])
        np.testing.assert_array_equal(disc.edges[0], [0.0, np.inf])

        # Held-out values fall between the training ones
        self.assertEqual(disc.apply(np.array([[-5.0, -0.1], [0.5, 5.0]])).tolist(), [[0, 1], [1, 2]])

        # 2 bins: the 0/1 feature keeps its values, the other one is cut at the mean
        disc = discretize(data, bins=2)
        self.assertEqual(disc.codes[:, 0].tolist(), [0, 1, 0, 1])
        self.assertEqual(disc.codes[:, 1].tolist(), [0, 1, 1, 1])

    def test_response_duplicate(self):
        for data in (response_duplicate_dataset(), standardized(response_duplicate_dataset())):
            for cls in (MrmrSelector, MrmrQuotientSelector):
                ranking = cls(workers=1).rank(data, k=3)
                self.assertEqual(ranking.indices[0], 0)
                self.assertAlmostEqual(ranking.scores[0], 1.0, places=12)
                self.assertEqual(len(ranking), 3)
                self.assertEqual(len(set(ranking.indices)), 3)

    def test_prefix(self):
        data = standardized(synth_generate(90, 15, 4, seed=15))
        disc = discretize(data)

        # Greedy: the k-selection starts the (k + 1)-selection
        for variant in ('mid', 'miq'):
            longest = mrmr_select(disc, data.response, 8, variant=variant, workers=1)
            for k in range(1, 8):
                ranking = mrmr_select(disc, data.response, k, variant=variant, workers=1)
                self.assertEqual(ranking.indices.tolist(), longest.indices[:k].tolist())
                np.testing.assert_array_equal(ranking.scores, longest.scores[:k])

    def test_against_exhaustive_scan(self):
        data = standardized(synth_generate(210, 12, 4, seed=11))
        disc = discretize(data)

        for variant in ('mid', 'miq'):
            ranking = mrmr_select(disc, data.response, 6, variant=variant, workers=1)
            self.assertEqual(ranking.indices.tolist(),
                             exhaustive_mrmr(disc.codes, data.response, 6, variant=variant))
            self.assertEqual(ranking.method, 'mrmr-' + variant)

        # The first pick is the most relevant feature
        relevance = [mutual_information(disc.codes[:, j], data.response) for j in range(12)]
        self.assertEqual(ranking.indices[0], int(np.argmax(relevance)))
        self.assertAlmostEqual(ranking.scores[0], max(relevance), places=12)

    def test_random_fixtures(self):
        rng = np.random.default_rng(14)
        for i in range(20):
            codes = rng.integers(0, 3, size=(60, 6)).astype(np.int8)
            response = np.arange(60) % 2
            disc = DiscretizedMatrix(codes=codes, edges=np.zeros((6, 2)), n_bins=3)

            ranking = mrmr_select(disc, response, 4, variant='mid', workers=1)
            self.assertEqual(ranking.indices.tolist(), exhaustive_mrmr(codes, response, 4, variant='mid'))

    def test_memoize_and_workers(self):
        data = standardized(synth_generate(90, 25, 5, seed=12))
        disc = discretize(data)

        plain = mrmr_select(disc, data.response, 10, workers=1)
        memo = mrmr_select(disc, data.response, 10, memoize_redundancy=True, workers=1)
        pooled = mrmr_select(disc, data.response, 10, memoize_redundancy=True, workers=3)

        self.assertEqual(plain.indices.tolist(), memo.indices.tolist())
        self.assertEqual(plain.indices.tolist(), pooled.indices.tolist())
        np.testing.assert_array_equal(plain.scores, memo.scores)

    def test_selector(self):
        data = standardized(synth_generate(60, 10, 3, seed=13))
        ranking = MrmrSelector(workers=1).rank(data, k=4)

        self.assertEqual(ranking.method, 'mrmr-mid')
        self.assertEqual(ranking.k_requested, 4)
        self.assertEqual(len(ranking), 4)
        self.assertEqual(set(ranking.timings), {'total', 'discretize', 'relevance', 'greedy'})
        self.assertEqual(MrmrSelector(workers=1).select(data, 2), ranking.select(2))

        #=== Errors
        with self.assertRaises(InvalidInputError):
            MrmrSelector(workers=1).rank(data, k=None)
        with self.assertRaises(InvalidInputError):
            MrmrSelector(workers=1).rank(data, k=11)
        with self.assertRaises(InvalidInputError):
            mrmr_select(discretize(data), data.response, 2, variant='max')


class RecoveryTest(unittest.TestCase):
    """ Both selectors find the informative features of synthetic data """

    def test_top_ten(self):
        dcsis_hits, mrmr_hits = [], []
        for seed in range(1, 6):
            data = standardized(synth_generate(600, 200, 10, seed=seed))
            informative = set(range(10))
            dcsis_hits.append(len(informative & set(dcsis_rank(data, workers=1).select(10))))
            mrmr_hits.append(len(informative & set(MrmrSelector(memoize_redundancy=True, workers=1)
                                                   .rank(data, 10).select(10))))

        self.assertGreaterEqual(sum(h >= 9 for h in dcsis_hits), 4, dcsis_hits)
        self.assertGreaterEqual(sum(h >= 8 for h in mrmr_hits), 4, mrmr_hits)


class RegistryTest(unittest.TestCase):
    """ Selectors by name, from settings """

    def test_make_selector(self):
        self.assertIs(get_selector_class('dcsis'), DcsisSelector)
        self.assertIs(get_selector_class('MRMR_MID'), MrmrSelector)
        self.assertIs(get_selector_class('mrmr-miq'), MrmrQuotientSelector)
        with self.assertRaises(RegistryError):
            get_selector_class('lasso')

        settings = PipelineSettingsDict(metric='minkowski:3', bins=5, workers=2)
        dcsis = make_selector('dcsis', settings)
        self.assertEqual(dcsis.metric, Metric('minkowski', 3.0))
        self.assertEqual(dcsis.workers, 2)

        mrmr = make_selector('mrmr-miq', settings, workers=1)
        self.assertEqual((mrmr.bins, mrmr.bin_width_sigmas, mrmr.workers), (5, 1.0, 1))
        self.assertEqual(mrmr.get_settings(),
                         {'bins': 5, 'bin_width_sigmas': 1.0, 'memoize_redundancy': False, 'workers': 1})

        # Copies with another pool size
        copy = mrmr.with_workers(4)
        self.assertEqual((copy.workers, mrmr.workers), (4, 1))
        self.assertEqual(copy.bins, 5)

    def test_settings_dict(self):
        settings = PipelineSettingsDict(scaler='sample_normalize')
        self.assertEqual(settings['scaler'], 'sample_normalize')
        self.assertEqual(settings.and_more(k=10)['k'], 10)
        self.assertEqual(settings['k'], 50)

        plucked = PipelineSettingsDict.pluck_from({'bins': 4, 'unrelated': True})
        self.assertEqual(plucked['bins'], 4)
        self.assertNotIn('unrelated', plucked)

        self.assertEqual(settings.pluck_for(DcsisSelector, workers=1), {'metric': 'euclidean', 'workers': 1})
        with self.assertRaises(InvalidInputError):
            settings.pluck_for(DcsisSelector, colour='red')

    def test_settings_typo(self):
        # Overrides go through the same guard
        with self.assertRaises(InvalidInputError):
            make_selector('dcsis', PipelineSettingsDict(), metrc='cosine')
        with self.assertRaises(InvalidInputError):
            make_selector('mrmr', workers=1, bin=4)

        # Settings of other stages are fine; a plain dict may carry anything
        self.assertEqual(make_selector('dcsis', k=10, workers=1).workers, 1)
        self.assertEqual(make_selector('mrmr-mid', {'bins': 4, 'input': 'pd.csv'}).bins, 4)

    def test_method_alias(self):
        self.assertIs(get_selector_class('mrmr'), MrmrSelector)
        self.assertIs(get_selector_class(' MRMR '), MrmrSelector)
        self.assertEqual(make_selector('mrmr', workers=1).method_name, 'mrmr-mid')
