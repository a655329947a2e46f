import unittest

import numpy as np

from dcsis.dcorr import (Metric, DistanceMatrix, pairwise_distances, double_center, distance_covariance_sq,
                         distance_correlation_sq, distance_correlation_sq_precentered)
from dcsis.exc import InvalidInputError, DimensionMismatchError, SpecSyntaxError

from .util import brute_force_dcov_sq, brute_force_dcor_sq


class MetricTest(unittest.TestCase):
    """ Parsing distance metrics """

    def test_parse(self):
        self.assertEqual(Metric.parse('euclidean'), Metric('euclidean'))
        self.assertEqual(Metric.parse(' Manhattan '), Metric('manhattan'))
        self.assertEqual(Metric.parse('minkowski:3'), Metric('minkowski', 3.0))
        self.assertEqual(str(Metric.parse('minkowski:3')), 'minkowski:3')
        self.assertEqual(str(Metric.parse('cosine')), 'cosine')

        m = Metric('cosine')
        self.assertIs(Metric.parse(m), m)

    def test_errors(self):
        with self.assertRaises(InvalidInputError):
            Metric.parse('chebyshev')
        with self.assertRaises(SpecSyntaxError):
            Metric.parse('minkowski:three')
        with self.assertRaises(SpecSyntaxError):
            Metric.parse('euclidean:2')
        with self.assertRaises(InvalidInputError):
            Metric.parse('minkowski:0.5')
        with self.assertRaises(InvalidInputError):
            Metric('minkowski')


class KernelsTest(unittest.TestCase):
    """ Distance matrices, double centering, distance covariance and correlation """

    def test_pairwise_distances(self):
        d = pairwise_distances([0, 3])
        self.assertEqual(d.values.tolist(), [[0, 3], [3, 0]])
        self.assertFalse(d.centered)
        self.assertEqual(d.n, 2)

        #=== Multivariate
        x = np.array([[0, 0], [3, 4], [1, 1]])
        self.assertAlmostEqual(pairwise_distances(x).values[0, 1], 5.0)
        self.assertAlmostEqual(pairwise_distances(x, Metric.parse('manhattan')).values[0, 1], 7.0)
        self.assertAlmostEqual(pairwise_distances(x, Metric.parse('minkowski:1')).values[0, 1], 7.0)
        self.assertAlmostEqual(pairwise_distances(x, Metric.parse('minkowski:3')).values[0, 1], 91 ** (1 / 3))

        # Cosine: same direction is distance 0; a zero vector is "identical" to everything
        d = pairwise_distances(np.array([[1, 1], [2, 2], [1, -1], [0, 0]]), Metric.parse('cosine'))
        self.assertAlmostEqual(d.values[0, 1], 0.0)
        self.assertAlmostEqual(d.values[0, 2], 1.0)
        self.assertEqual(d.values[0, 3], 0.0)

        # Symmetric, zero diagonal
        rng = np.random.default_rng(0)
        d = pairwise_distances(rng.standard_normal((10, 3))).values
        np.testing.assert_array_equal(d, d.T)
        np.testing.assert_array_equal(np.diag(d), 0)

        #=== Too few samples
        with self.assertRaises(InvalidInputError):
            pairwise_distances([1.0])

    def test_double_center(self):
        a = double_center(pairwise_distances([0, 3]))
        self.assertTrue(a.centered)
        self.assertEqual(a.values.tolist(), [[-1.5, 1.5], [1.5, -1.5]])

        # Rows and columns sum to zero
        rng = np.random.default_rng(1)
        a = double_center(pairwise_distances(rng.standard_normal(12))).values
        np.testing.assert_allclose(a.sum(axis=0), 0, atol=1e-12)
        np.testing.assert_allclose(a.sum(axis=1), 0, atol=1e-12)

        # Idempotent
        m = double_center(pairwise_distances([1, 2, 4]))
        self.assertIs(double_center(m), m)

    def test_distance_covariance(self):
        a = double_center(pairwise_distances([0, 3]))
        self.assertEqual(distance_covariance_sq(a, a), 2.25)

        # Against the definition that does not center
        rng = np.random.default_rng(2)
        x, y = rng.standard_normal(15), rng.standard_normal(15)
        a = double_center(pairwise_distances(x))
        b = double_center(pairwise_distances(y))
        self.assertAlmostEqual(distance_covariance_sq(a, b), brute_force_dcov_sq(x, y), places=12)
        self.assertGreaterEqual(distance_covariance_sq(a, b), 0)

        #=== Errors
        with self.assertRaises(InvalidInputError):
            distance_covariance_sq(pairwise_distances(x), b)
        with self.assertRaises(DimensionMismatchError):
            distance_covariance_sq(a, double_center(pairwise_distances(y[:5])))

    def test_distance_correlation(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal(20)
        y = x ** 2 + 0.1 * rng.standard_normal(20)

        r = distance_correlation_sq(x, y)
        self.assertAlmostEqual(r, brute_force_dcor_sq(x, y), places=12)
        self.assertTrue(0 <= r <= 1)

        # Symmetric: exactly
        self.assertEqual(distance_correlation_sq(x, y), distance_correlation_sq(y, x))

        # Self: 1
        self.assertAlmostEqual(distance_correlation_sq(x, x), 1.0, places=12)

        # Affine invariance
        self.assertAlmostEqual(distance_correlation_sq(3 * x + 7, y), r, places=12)

        # Constant: 0
        self.assertEqual(distance_correlation_sq(np.full(20, 4.2), y), 0.0)

        # Two points, any two distinct values: perfectly dependent
        self.assertAlmostEqual(distance_correlation_sq([0, 3], [5, 1]), 1.0, places=12)

        with self.assertRaises(DimensionMismatchError):
            distance_correlation_sq(x, y[:10])

    def test_against_definition(self):
        rng = np.random.default_rng(7)
        for i in range(200):
            n = int(rng.integers(5, 51))
            x = rng.standard_normal(n)
            y = rng.standard_normal(n) + rng.uniform(-2, 2) * x ** 2
            self.assertAlmostEqual(distance_correlation_sq(x, y), brute_force_dcor_sq(x, y), delta=1e-10)

    def test_identities(self):
        rng = np.random.default_rng(8)
        for i in range(100):
            n = int(rng.integers(5, 51))
            x = rng.standard_normal(n)
            y = rng.standard_normal(n) + x
            self.assertAlmostEqual(distance_correlation_sq(x, x), 1.0, delta=1e-12)
            r = distance_correlation_sq(x, y)
            self.assertTrue(0 <= r <= 1 + 1e-12)
            self.assertAlmostEqual(distance_correlation_sq(-2.5 * x + 1, 0.5 * y - 3), r, delta=1e-10)

    def test_independent_samples(self):
        rng = np.random.default_rng(4)
        x, y = rng.standard_normal(500), rng.standard_normal(500)
        self.assertLess(distance_correlation_sq(x, y), 0.02)

    def test_precentered(self):
        rng = np.random.default_rng(5)
        response = (np.arange(25) % 2).astype(float)
        b = double_center(pairwise_distances(response))
        vy = distance_covariance_sq(b, b)

        for j in range(10):
            x = rng.standard_normal(25) + (j % 3) * response
            expected = distance_correlation_sq(x, response)

            # Centered or not, the shared response matrix gives the same result
            uncentered = pairwise_distances(x)
            self.assertAlmostEqual(distance_correlation_sq_precentered(uncentered, b, vy), expected, delta=1e-12)
            centered = double_center(uncentered)
            self.assertAlmostEqual(distance_correlation_sq_precentered(centered, b, vy), expected, delta=1e-12)

        #=== Degenerate response
        b0 = double_center(pairwise_distances(np.zeros(25)))
        self.assertEqual(distance_correlation_sq_precentered(uncentered, b0, 0.0), 0.0)

        #=== The response matrix must be centered
        with self.assertRaises(InvalidInputError):
            distance_correlation_sq_precentered(uncentered, pairwise_distances(response), vy)
        with self.assertRaises(DimensionMismatchError):
            distance_correlation_sq_precentered(pairwise_distances(np.arange(5)), b, vy)

    def test_metrics_in_correlation(self):
        rng = np.random.default_rng(6)
        x = rng.standard_normal(30)
        y = x + rng.standard_normal(30)

        # In one dimension, all Minkowski-type metrics are |x − y|
        base = distance_correlation_sq(x, y)
        for metric in ('manhattan', 'minkowski:3'):
            self.assertAlmostEqual(distance_correlation_sq(x, y, Metric.parse(metric)), base, places=12)

        self.assertIsInstance(pairwise_distances(x), DistanceMatrix)

    def test_row_permutation(self):
        rng = np.random.default_rng(9)
        x = rng.standard_normal((40, 2))
        y = x[:, 0] ** 2 + rng.standard_normal(40)
        perm = rng.permutation(40)

        # Distance matrices permute along, correlations do not move
        for metric in ('euclidean', 'manhattan', 'cosine'):
            d = pairwise_distances(x, Metric.parse(metric)).values
            np.testing.assert_allclose(pairwise_distances(x[perm], Metric.parse(metric)).values,
                                       d[np.ix_(perm, perm)], rtol=1e-14, atol=1e-15)
        self.assertAlmostEqual(distance_correlation_sq(x[perm], y[perm]), distance_correlation_sq(x, y), delta=1e-12)
