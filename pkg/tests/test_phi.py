import json
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase

import numpy as np

from igot.cli import RunConfig
from igot.corpus import WordCounts
from igot.exceptions import PreconditionError
from igot.fixtures import DOMAIN_TERMS, IDENTIFIERS, figure_one_tokenizer
from igot.gain import build_gain_table, select_threshold
from igot.phi import (AdamState, AnnotatedWord, AnnotationError, PhiModel, PhiModelFormatError, PhiTrainConfig,
                      ShapeMismatchError, adam_step, featurize, fit_phi, load_annotations, phi_gradients, phi_loss,
                      phi_predict, phi_score, score_percentile, score_table, select_heuristic, train_phi,
                      write_annotations)

from .mock import domain_gain_table, fixture_phi_model, numerical_gradient, relative_error


class TestFeatures(TestCase):
    def setUp(self):
        counts = WordCounts({'an': 5, 'EDA': 2, 'sky130A_sky130_fd_sc_hd_config': 1})
        self.table = build_gain_table(figure_one_tokenizer(), counts)

    def test_atomic_frequent_word(self):
        np.testing.assert_allclose(featurize(self.table.get('an'), self.table), [0, 2 / 32, 1, 1, 0])

    def test_identifier(self):
        features = featurize(self.table.get('sky130A_sky130_fd_sc_hd_config'), self.table)
        self.assertAlmostEqual(features[3], 19 / 30)
        self.assertAlmostEqual(features[4], 11 / 30)
        self.assertEqual(features[1], 30 / 32)
        self.assertEqual(features[0], 1.0)

    def test_zero_max_gain(self):
        table = build_gain_table(figure_one_tokenizer(), WordCounts({'an': 1, 'tool': 3}))
        for record in table:
            self.assertEqual(featurize(record, table)[0], 0.0)


class TestPhiModel(TestCase):
    def test_zero_model(self):
        model = PhiModel.zeros(hidden=4)
        self.assertEqual(phi_score(model, np.ones(5)), 0.0)
        model.output_bias = 3.0
        self.assertEqual(phi_score(model, np.arange(5.0)), 3.0)

    def test_loss(self):
        self.assertEqual(phi_loss(PhiModel.zeros(4), np.zeros((1, 5)), np.array([2.0])), 4.0)
        self.assertEqual(phi_loss(PhiModel.zeros(4, ridge_lambda=0.1), np.zeros((1, 5)), np.array([2.0])), 4.0)
        model = PhiModel.zeros(4)
        model.output_bias = 2.0
        self.assertEqual(phi_loss(model, np.ones((3, 5)), np.full(3, 2.0)), 0.0)
        with self.assertRaises(PreconditionError):
            phi_loss(model, np.zeros((0, 5)), np.zeros(0))

    def test_ridge_excludes_biases(self):
        model = PhiModel.init(hidden=3, seed=1, ridge_lambda=0.5)
        unregularized = PhiModel(model.hidden_weights, model.hidden_bias, model.output_weights, model.output_bias)
        features = np.zeros((1, 5))
        scores = np.array([1.0])
        weights = np.sum(model.hidden_weights ** 2) + np.sum(model.output_weights ** 2)
        self.assertAlmostEqual(
            phi_loss(model, features, scores), phi_loss(unregularized, features, scores) + 0.5 * weights)

    def test_invalid_shapes(self):
        with self.assertRaises(PreconditionError):
            PhiModel(np.zeros((4, 3)), np.zeros(3), np.zeros(3))
        with self.assertRaises(PreconditionError):
            PhiModel.zeros(hidden=0)

    def test_gradients(self):
        rng = np.random.default_rng(0)
        for seed in range(100):
            model = PhiModel.init(hidden=4, seed=seed, ridge_lambda=0.1, scale=1.0)
            features = rng.random((6, 5))
            scores = rng.uniform(1, 5, 6)
            analytic = phi_gradients(model, features, scores)
            numeric = numerical_gradient(lambda p: phi_loss(model.with_params(p), features, scores), model.params())
            for name in analytic:
                self.assertLess(relative_error(analytic[name], numeric[name]), 1e-4, name)

    def test_inference_is_pure(self):
        model = PhiModel.init(hidden=4, seed=2, scale=1.0)
        features = np.random.default_rng(0).random((10, 5))
        order = np.arange(10)[::-1]
        np.testing.assert_array_equal(phi_predict(model, features)[order], phi_predict(model, features[order]))

    def test_save_load(self):
        model = PhiModel.init(hidden=3, seed=5, ridge_lambda=0.01)
        model.metadata = {'final_loss': 0.5}
        with TemporaryDirectory() as directory:
            path = Path(directory) / 'phi.json'
            model.save(path)
            loaded = PhiModel.load(path)
            for name, value in model.params().items():
                np.testing.assert_array_equal(loaded.params()[name], value)
            self.assertEqual(loaded.ridge_lambda, 0.01)
            self.assertDictEqual(loaded.metadata, {'final_loss': 0.5})

    def test_incompatible_feature_spec(self):
        data = PhiModel.zeros(2).to_json()
        data['feature_spec'] = '2.0'
        with TemporaryDirectory() as directory:
            path = Path(directory) / 'phi.json'
            path.write_text(json.dumps(data), encoding='utf-8')
            with self.assertRaises(PhiModelFormatError):
                PhiModel.load(path)


class TestAdam(TestCase):
    def test_first_step(self):
        params, state = adam_step(AdamState(), {'x': np.array([0.0])}, {'x': np.array([1.0])})
        np.testing.assert_allclose(params['x'], [-0.001], rtol=1e-6)
        self.assertEqual(state.t, 1)

    def test_zero_gradient(self):
        params, _ = adam_step(AdamState(), {'x': np.array([1.5, -2.0])}, {'x': np.zeros(2)})
        np.testing.assert_array_equal(params['x'], [1.5, -2.0])

    def test_monotone_steps(self):
        params = {'x': np.array(0.0)}
        state = AdamState(lr=0.1)
        values = []
        for _ in range(3):
            params, state = adam_step(state, params, {'x': np.array(-2.0)})
            values.append(float(params['x']))
        self.assertTrue(0 < values[0] < values[1] < values[2])

    def test_inputs_unchanged(self):
        x = np.array([1.0])
        state = AdamState()
        adam_step(state, {'x': x}, {'x': np.array([1.0])})
        self.assertEqual(x[0], 1.0)
        self.assertEqual(state.t, 0)
        self.assertDictEqual(state.m, {})

    def test_shape_mismatch(self):
        with self.assertRaises(ShapeMismatchError):
            adam_step(AdamState(), {'x': np.zeros(2)}, {'x': np.zeros(3)})
        with self.assertRaises(ShapeMismatchError):
            adam_step(AdamState(), {'x': np.zeros(2)}, {'y': np.zeros(2)})


class TestTraining(TestCase):
    def test_default_hyperparameters(self):
        config = PhiTrainConfig()
        self.assertEqual(config.lr, 1e-3)
        self.assertEqual(config.lr, AdamState().lr)
        self.assertEqual(RunConfig().phi_lr, config.lr)

    def test_linear_target(self):
        rng = np.random.default_rng(0)
        features = rng.random((100, 5))
        scores = 1.0 + 4.0 * features[:, 0]
        model = fit_phi(features, scores, PhiTrainConfig(epochs=2000, lr=0.01))
        mse = np.mean((phi_predict(model, features) - scores) ** 2)
        self.assertLess(mse, 0.05)
        self.assertAlmostEqual(model.metadata['final_loss'], phi_loss(model, features, scores))

    def test_single_example(self):
        features = np.tile(np.array([[0.3, 0.5, 0.2, 0.9, 0.1]]), (5, 1))
        model = fit_phi(features, np.full(5, 4.0), PhiTrainConfig(epochs=2000, lr=0.01))
        self.assertLess(abs(phi_score(model, features[0]) - 4.0), 0.1)

    def test_zero_epochs(self):
        model = fit_phi(np.zeros((2, 5)), np.array([1.0, 2.0]), PhiTrainConfig(epochs=0, seed=3, hidden=4))
        initial = PhiModel.init(hidden=4, seed=3)
        for name, value in initial.params().items():
            np.testing.assert_array_equal(model.params()[name], value)

    def test_deterministic(self):
        rng = np.random.default_rng(1)
        features = rng.random((20, 5))
        scores = rng.uniform(1, 5, 20)
        config = PhiTrainConfig(epochs=200, seed=7)
        a = fit_phi(features, scores, config)
        b = fit_phi(features, scores, config)
        for name, value in a.params().items():
            np.testing.assert_array_equal(b.params()[name], value)

    def test_ridge_monotone(self):
        rng = np.random.default_rng(2)
        features = rng.random((30, 5))
        scores = 1.0 + 4.0 * features[:, 1]
        loose = fit_phi(features, scores, PhiTrainConfig(epochs=500, lr=0.01, ridge_lambda=0.0))
        tight = fit_phi(features, scores, PhiTrainConfig(epochs=500, lr=0.01, ridge_lambda=1.0))
        self.assertGreaterEqual(tight.metadata['final_loss'], loose.metadata['final_loss'])

    def test_empty_dataset(self):
        table = domain_gain_table()
        with self.assertRaises(PreconditionError):
            train_phi([], table)
        with self.assertRaises(PreconditionError):
            train_phi([AnnotatedWord('not-in-the-table', 3.0)], table)

    def test_fixture_model_prefers_terms(self):
        table = domain_gain_table()
        model = fixture_phi_model()
        term_scores = phi_predict(model, np.stack([featurize(table.get(word), table) for word in DOMAIN_TERMS]))
        identifier_scores = phi_predict(model, np.stack([featurize(table.get(word), table) for word in IDENTIFIERS]))
        self.assertLess(np.mean(identifier_scores), np.mean(term_scores))


class TestSelection(TestCase):
    def setUp(self):
        self.table = domain_gain_table()
        self.model = fixture_phi_model()

    def test_zero_model(self):
        model = PhiModel.zeros(4)
        self.assertEqual(len(select_heuristic(self.table, model, -1.0)), len(self.table))
        self.assertEqual(len(select_heuristic(self.table, model, 0.0)), 0)

    def test_sorted_by_score(self):
        selection = select_heuristic(self.table, self.model, 3.0)
        scores = [score for _, score in selection.entries]
        self.assertListEqual(scores, sorted(scores, reverse=True))
        self.assertTrue(all(score > 3.0 for score in scores))
        self.assertEqual(selection.threshold, 3.0)

    def test_monotone(self):
        small = set(select_heuristic(self.table, self.model, 3.5).words)
        large = set(select_heuristic(self.table, self.model, 2.5).words)
        self.assertTrue(small.issubset(large))

    def test_candidates(self):
        candidates = select_threshold(self.table, 0.0)
        selection = select_heuristic(self.table, self.model, 0.0, candidates)
        self.assertTrue(set(selection.words).issubset(set(candidates.words)))

    def test_percentile(self):
        epsilon_prime = score_percentile(self.table, self.model, 90)
        scores = score_table(self.table, self.model)
        selection = select_heuristic(self.table, self.model, epsilon_prime)
        n = len(self.table)
        self.assertEqual(len(selection), int((scores > epsilon_prime).sum()))
        self.assertLessEqual(len(selection), 0.1 * n + 1)
        self.assertGreaterEqual(int((scores >= epsilon_prime).sum()), 0.1 * n - 1)
        with self.assertRaises(PreconditionError):
            score_percentile(self.table, self.model, 101)


class TestAnnotations(TestCase):
    def setUp(self):
        self.dir = TemporaryDirectory()
        self.path = Path(self.dir.name) / 'annotations.tsv'

    def tearDown(self):
        self.dir.cleanup()

    def test_load(self):
        self.path.write_text('word\tscore\n# comment\n\nOpenLane\t5\nFP_CORE_UTIL\t1.5\n', encoding='utf-8')
        self.assertListEqual(
            load_annotations(self.path),
            [AnnotatedWord('OpenLane', 5.0), AnnotatedWord('FP_CORE_UTIL', 1.5)])

    def test_write_load(self):
        annotations = [AnnotatedWord('EDA', 4.0), AnnotatedWord('0.25', 1.0)]
        write_annotations(annotations, self.path)
        self.assertListEqual(load_annotations(self.path), annotations)

    def test_score_out_of_range(self):
        self.path.write_text('OpenLane\t5\nEDA\t6\n', encoding='utf-8')
        with self.assertRaises(AnnotationError) as context:
            load_annotations(self.path)
        self.assertEqual(context.exception.line, 2)

    def test_malformed(self):
        self.path.write_text('OpenLane\tfive\n', encoding='utf-8')
        with self.assertRaises(AnnotationError):
            load_annotations(self.path)
        self.path.write_text('OpenLane 5\n', encoding='utf-8')
        with self.assertRaises(AnnotationError):
            load_annotations(self.path)

    def test_invalid_word_score(self):
        with self.assertRaises(PreconditionError):
            AnnotatedWord('EDA', 0.5)
