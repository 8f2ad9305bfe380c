import contextlib
import io
import json
import os
from unittest import TestCase
from unittest.mock import patch

from igot.__main__ import main
from igot.augment import Selection, SelectionKind, plan_extension
from igot.cli import COMMANDS, RunConfig, default_output_root
from igot.cli.config import ConfigError
from igot.exceptions import InvariantViolationError
from igot.fixtures import (FIGURE_ONE_SENTENCE, domain_corpus_texts, figure_one_tokenizer, fixture_annotations,
                           general_corpus_texts)
from igot.phi import write_annotations
from igot.report import REPORT_FILES
from igot.tokenizer import save

from .mock import MockCorpusDirectory


def run(*argv: str) -> int:
    ' Runs the command line with stdout and stderr captured. '
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return main(list(argv))


class TestConfig(TestCase):
    def test_merge_ignores_none(self):
        config = RunConfig(alpha=3).merge({'alpha': None, 'epsilon': 0.5})
        self.assertEqual(config.alpha, 3)
        self.assertEqual(config.epsilon, 0.5)

    def test_unknown_field(self):
        with self.assertRaises(ConfigError):
            RunConfig.from_json({'alpha': 2, 'colour': 'blue'})

    def test_invalid_values(self):
        with self.assertRaises(ConfigError):
            RunConfig().merge({'alpha': 'many'})
        with self.assertRaises(ConfigError):
            RunConfig().merge({'mode': 'random'})
        with self.assertRaises(ConfigError):
            RunConfig().merge({'num_jobs': 0})

    def test_output_root_variable(self):
        with patch.dict(os.environ, {'IGOT_OUTPUT_ROOT': '/tmp/igot-test-root'}):
            self.assertEqual(default_output_root(), '/tmp/igot-test-root')
            self.assertEqual(RunConfig().out, '/tmp/igot-test-root')
        with patch.dict(os.environ, {'IGOT_OUTPUT_ROOT': ''}):
            self.assertEqual(default_output_root(), 'igot-out')

    def test_input_path(self):
        config = RunConfig(out='out')
        self.assertEqual(str(config.input_path(None, 'gain_table.tsv')), os.path.join('out', 'gain_table.tsv'))
        self.assertEqual(str(config.input_path('table.tsv', 'gain_table.tsv')), 'table.tsv')


class TestExitCodes(TestCase):
    def setUp(self):
        self.files = MockCorpusDirectory()
        self.files.setup()
        self.corpus = self.files.write('corpus.txt', 'Introduce OpenLane, an EDA tool. OpenLane runs Yosys.')
        self.out = str(self.files.root / 'out')

    def tearDown(self):
        self.files.cleanup()

    def test_alpha_zero(self):
        self.assertEqual(run('analyze', '--corpus', str(self.corpus), '--train-size', '260', '--alpha', '0',
                             '--out', self.out), 2)

    def test_missing_corpus(self):
        self.assertEqual(run('analyze', '--corpus', str(self.files.root / 'missing.txt'), '--train-size', '260',
                             '--out', self.out), 2)

    def test_tokenizer_or_train_size(self):
        self.assertEqual(run('analyze', '--corpus', str(self.corpus), '--out', self.out), 2)

    def test_missing_previous_stage(self):
        self.assertEqual(run('select', '--out', self.out), 2)
        self.assertEqual(run('augment', '--corpus', str(self.corpus), '--out', self.out), 2)

    def test_malformed_tokenizer(self):
        tokenizer = self.files.write('tokenizer.json', '{"vocab": [}')
        self.assertEqual(run('analyze', '--corpus', str(self.corpus), '--tokenizer', str(tokenizer),
                             '--out', self.out), 2)

    def test_bad_flag(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as context:
                main(['analyze', '--alpha', 'many'])
        self.assertEqual(context.exception.code, 2)

    def test_bad_config_file(self):
        config = self.files.write('config.json', json.dumps({'alpha': 2, 'colour': 'blue'}))
        self.assertEqual(run('demo', '--config', str(config), '--out', self.out), 2)

    def test_invariant_violation(self):
        def broken(config):
            raise InvariantViolationError('broken')
        with patch.dict(COMMANDS, {'demo': broken}):
            self.assertEqual(run('demo', '--out', self.out), 3)

    def test_success(self):
        self.assertEqual(run('analyze', '--corpus', str(self.corpus), '--train-size', '260',
                             '--out', self.out), 0)


class TestCommands(TestCase):
    def setUp(self):
        self.files = MockCorpusDirectory()
        self.files.setup()
        self.out = self.files.root / 'out'

    def tearDown(self):
        self.files.cleanup()

    def test_demo_builtin(self):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            self.assertEqual(main(['demo', '--out', str(self.out)]), 0)
        self.assertIn('13 -> 8 tokens, 38.46% reduction', stdout.getvalue())
        demo = json.loads((self.out / 'demo.json').read_text(encoding='utf-8'))
        self.assertEqual(demo['base']['count'], 13)
        self.assertEqual(demo['augmented']['count'], 8)
        self.assertEqual(demo['reduction_pct'], 38.46)

    def test_fixtures(self):
        self.assertEqual(run('fixtures', '--out', str(self.out)), 0)
        for name in ('general.txt', 'annotations.tsv', 'figure_one_tokenizer.json', 'run_config.json'):
            self.assertTrue((self.out / name).is_file(), name)
        self.assertEqual(len(list((self.out / 'domain').glob('*.txt'))), 17)

    def test_augment_plans_extension_once(self):
        self.out.mkdir()
        save(figure_one_tokenizer(), self.out / 'tokenizer.json')
        Selection(SelectionKind.THRESHOLD, 0.0, (
            ('OpenLane', 0.9), ('Introduce', 0.7), ('tool', 0.6), ('EDA', 0.5))).save(self.out / 'selection.json')
        corpus = self.files.write('corpus.txt', FIGURE_ONE_SENTENCE)
        with patch('igot.augment.extension.plan_extension', wraps=plan_extension) as planner:
            self.assertEqual(run('augment', '--corpus', str(corpus), '--out', str(self.out)), 0)
        self.assertEqual(planner.call_count, 1)
        plan = json.loads((self.out / 'embedding_plan.json').read_text(encoding='utf-8'))
        self.assertListEqual([entry['token'] for entry in plan['entries']], ['OpenLane', 'Introduce', 'EDA'])
        self.assertListEqual(plan['skipped'], ['tool'])
        savings = json.loads((self.out / 'savings.json').read_text(encoding='utf-8'))
        self.assertEqual(savings['saved_tokens'], 5)

    def test_config_precedence(self):
        corpus = self.files.write('corpus.txt', 'OpenLane runs Yosys and OpenROAD on the design.')
        config = self.files.write('config.json', json.dumps({'alpha': 3, 'train_size': 270, 'epsilon': 0.25}))
        self.assertEqual(run('analyze', '--config', str(config), '--corpus', str(corpus), '--alpha', '4',
                             '--out', str(self.out)), 0)
        saved = json.loads((self.out / 'run_config.json').read_text(encoding='utf-8'))
        self.assertEqual(saved['alpha'], 4)
        self.assertEqual(saved['train_size'], 270)
        self.assertEqual(saved['epsilon'], 0.25)
        self.assertEqual(saved['command'], 'analyze')
        replay = RunConfig.load(self.out / 'run_config.json')
        self.assertEqual(replay.alpha, 4)

    def test_pipeline(self):
        general = self.files.write('general.txt', '\n\n'.join(general_corpus_texts(num_documents=1, document_chars=20_000)))
        domain = str(self.files.write_documents('domain', domain_corpus_texts(num_documents=2, document_chars=8_000)))
        annotations = self.files.root / 'annotations.tsv'
        write_annotations(fixture_annotations(), annotations)
        out = str(self.out)

        self.assertEqual(run('analyze', '--corpus', domain, '--general-corpus', str(general),
                             '--train-size', '400', '--out', out), 0)
        for name in ('tokenizer.json', 'gain_table.tsv', 'analysis.json'):
            self.assertTrue((self.out / name).is_file(), name)
        analysis = json.loads((self.out / 'analysis.json').read_text(encoding='utf-8'))
        self.assertEqual(analysis['vocab_size'], 400)
        self.assertGreater(analysis['conditional_entropy_nats'], 0.0)

        self.assertEqual(run('train-phi', '--annotations', str(annotations), '--phi-epochs', '300', '--phi-lr', '0.01',
                             '--out', out), 0)
        self.assertTrue((self.out / 'phi_model.json').is_file())

        self.assertEqual(run('select', '--mode', 'heuristic', '--percentile', '50', '--out', out), 0)
        heuristic = json.loads((self.out / 'selection.json').read_text(encoding='utf-8'))
        self.assertEqual(heuristic['kind'], 'igot-tau')

        self.assertEqual(run('select', '--out', out), 0)
        selection = json.loads((self.out / 'selection.json').read_text(encoding='utf-8'))
        self.assertEqual(selection['kind'], 'igot')
        self.assertGreaterEqual(len(selection['entries']), 50)

        self.assertEqual(run('augment', '--corpus', domain, '--cap', '50', '--out', out), 0)
        savings = json.loads((self.out / 'savings.json').read_text(encoding='utf-8'))
        self.assertGreater(savings['saved_tokens'], 0)
        plan = json.loads((self.out / 'embedding_plan.json').read_text(encoding='utf-8'))
        self.assertEqual(len(plan['entries']) + len(plan['skipped']), 50)

        self.assertEqual(run('lm', '--corpus', domain, '--lm-epochs', '1', '--context', '2', '--dim', '8',
                             '--window', '64', '--out', out), 0)
        comparison = json.loads((self.out / 'comparison.json').read_text(encoding='utf-8'))
        self.assertLess(comparison['tokens']['delta_pct'], 0.0)
        self.assertNotIn('wall_seconds', json.dumps(comparison))
        timing = json.loads((self.out / 'timing.json').read_text(encoding='utf-8'))
        self.assertSetEqual(set(timing['wall_seconds']), {'baseline', 'augmented'})
        for name in ('train_baseline.json', 'train_augmented.json', 'loss_baseline.csv', 'loss_augmented.csv'):
            self.assertTrue((self.out / name).is_file(), name)

        self.assertEqual(run('report', '--out', out), 0)
        for name in REPORT_FILES:
            self.assertTrue((self.out / 'report' / name).is_file(), name)
        selections = json.loads((self.out / 'report' / 'selections.json').read_text(encoding='utf-8'))
        self.assertSetEqual(set(selections), {'igot', 'igot-tau'})

        self.assertEqual(run('demo', '--text', 'OpenLane runs sky130_fd_sc_hd__inv_2', '--out', out), 0)
        demo = json.loads((self.out / 'demo.json').read_text(encoding='utf-8'))
        self.assertLessEqual(demo['augmented']['count'], demo['base']['count'])
