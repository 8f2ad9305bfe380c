''' Implementations of the subcommands.

Every command reads its inputs from explicit paths or, if they are not
configured, from the files earlier commands left in the output directory,
and writes its outputs together with the effective `run_config.json`.
'''
import collections
import json
import logging
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

from tqdm import tqdm

from ..augment import Selection, SelectionKind, SavingsStats, embedding_init_plan, extend_vocab, savings_report
from ..corpus import Corpus, load_corpus, resolve_corpus_paths, word_counts
from ..exceptions import InputError, PreconditionError
from ..fixtures import FIGURE_ONE_SENTENCE, figure_one_augmented, figure_one_tokenizer, write_fixtures
from ..gain import (NATS_PER_BIT, GainTable, bigram_counts, build_gain_table, conditional_entropy,
                    load_gain_table, select_threshold, window_gains, write_gain_table)
from ..lm import LmModel, LmTrainConfig, MaskMode, TrainReport, compare_runs, timing_summary, train_lm
from ..phi import PhiModel, PhiTrainConfig, load_annotations, score_percentile, select_heuristic, train_phi
from ..report import bundle_report, histogram_comparison, render_demo, write_json
from ..tokenizer import Tokenizer, fingerprint, load, save, train_bpe
from .config import RunConfig

log = logging.getLogger(__name__)

__all__ = ['analyze', 'select', 'train_phi_cmd', 'augment', 'lm', 'report', 'demo', 'fixtures', 'COMMANDS']

DEFAULT_EPSILON_PRIME = 3.0

LM_RUNS = ('baseline', 'augmented')


def _progressfn(config: RunConfig, title: str) -> Optional[Callable]:
    if not config.show_progress:
        return None

    def progressfn(it):
        log.debug('Progress "%s"', title)
        return tqdm(it, desc=title)
    return progressfn


def _prepare(config: RunConfig) -> Path:
    out_dir = config.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    config.save(out_dir / 'run_config.json')
    return out_dir


def _load_corpus(config: RunConfig, paths) -> Corpus:
    if not paths:
        raise InputError('No corpus given, use --corpus.')
    return load_corpus(resolve_corpus_paths(paths, config.pattern), _progressfn(config, 'Reading corpus'))


def _require(path: Path, what: str, flag: str) -> Path:
    if not path.is_file():
        raise InputError(f'Missing {what} "{path}", run the previous stage or use {flag}.')
    return path


def analyze(config: RunConfig) -> Path:
    ''' Builds or loads the baseline tokenizer and writes the gain table and corpus diagnostics. '''
    if (config.tokenizer is None) == (config.train_size is None):
        raise InputError('Exactly one of --tokenizer and --train-size is required.')
    if config.alpha < 1:
        raise PreconditionError(f'Context size alpha must be at least 1, got {config.alpha}.')
    out_dir = _prepare(config)
    corpus = _load_corpus(config, config.corpus)
    if config.tokenizer is not None:
        tok = load(config.tokenizer)
    else:
        general = _load_corpus(config, config.general_corpus) if config.general_corpus else corpus
        tok = train_bpe(general, config.train_size, _progressfn(config, 'Training tokenizer'))
    save(tok, out_dir / 'tokenizer.json')

    counts = word_counts(corpus, config.num_jobs)
    table = build_gain_table(tok, counts, config.alpha, config.num_jobs, _progressfn(config, 'Gain table'))
    write_gain_table(table, out_dir / 'gain_table.tsv')

    pairs: Dict[Tuple[int, int], int] = collections.Counter()
    tokens = 0
    for document in corpus.documents:
        ids = tok.encode(document)
        tokens += len(ids)
        pairs.update(bigram_counts(ids))
    entropy = conditional_entropy(pairs) if pairs else None
    windows = window_gains(tok, corpus, config.alpha)
    analysis = {
        'documents': len(corpus),
        'total_words': corpus.total_words,
        'total_chars': corpus.total_chars,
        'distinct_words': len(counts),
        'total_tokens': tokens,
        'fertility': tokens / corpus.total_words if corpus.total_words else 0.0,
        'tokenizer': fingerprint(tok),
        'vocab_size': len(tok),
        'alpha': config.alpha,
        'max_gain_nats': table.max_gain,
        'multi_token_words': sum(1 for record in table if record.subtokens > 1),
        'top_word': table.records[0].word if len(table) else None,
        'conditional_entropy_nats': entropy,
        'conditional_entropy_bits': entropy / NATS_PER_BIT if entropy is not None else None,
        'window_gain_nats': {
            'windows': int(windows.size),
            'mean': float(windows.mean()) if windows.size else None,
            'min': float(windows.min()) if windows.size else None,
            'max': float(windows.max()) if windows.size else None,
        },
    }
    write_json(analysis, out_dir / 'analysis.json')
    log.info('Analysis of %i words written to "%s"', corpus.total_words, out_dir)
    return out_dir / 'gain_table.tsv'


def _load_table(config: RunConfig) -> GainTable:
    path = _require(config.input_path(config.gain_table, 'gain_table.tsv'), 'gain table', '--gain-table')
    return load_gain_table(path, config.alpha)


def _heuristic_selection(config: RunConfig, table: GainTable, model: PhiModel) -> Selection:
    ' Heuristic selection among the words above the gain threshold. '
    candidates = select_threshold(table, config.epsilon)
    if config.epsilon_prime is not None:
        epsilon_prime = config.epsilon_prime
    elif config.percentile is not None:
        epsilon_prime = score_percentile(table, model, config.percentile, candidates) if len(candidates) else 0.0
    else:
        epsilon_prime = DEFAULT_EPSILON_PRIME
    return select_heuristic(table, model, epsilon_prime, candidates)


def select(config: RunConfig) -> Path:
    ''' Writes the threshold or heuristic selection of the gain table. '''
    table = _load_table(config)
    if config.mode == 'heuristic':
        model_path = _require(config.input_path(config.phi_model, 'phi_model.json'), 'phi model', '--phi-model')
        selection = _heuristic_selection(config, table, PhiModel.load(model_path))
    else:
        selection = select_threshold(table, config.epsilon)
    out_dir = _prepare(config)
    selection.save(out_dir / 'selection.json')
    log.info('Selected %i of %i words', len(selection), len(table))
    return out_dir / 'selection.json'


def train_phi_cmd(config: RunConfig) -> Path:
    ''' Trains the heuristic scorer on an annotation file. '''
    if not config.annotations:
        raise InputError('No annotation file given, use --annotations.')
    dataset = load_annotations(config.annotations)
    table = _load_table(config)
    model = train_phi(
        dataset, table,
        PhiTrainConfig(
            epochs=config.phi_epochs, lr=config.phi_lr, ridge_lambda=config.ridge_lambda,
            hidden=config.hidden, seed=config.seed),
        _progressfn(config, 'Training phi'))
    out_dir = _prepare(config)
    model.save(out_dir / 'phi_model.json')
    return out_dir / 'phi_model.json'


def augment(config: RunConfig) -> Path:
    ''' Extends the baseline tokenizer and reports the token savings on the corpus. '''
    base = load(_require(config.input_path(config.tokenizer, 'tokenizer.json'), 'tokenizer', '--tokenizer'))
    selection = Selection.load(_require(config.input_path(config.selection, 'selection.json'), 'selection', '--selection'))
    corpus = _load_corpus(config, config.corpus)
    augmented = extend_vocab(base, selection, config.cap)
    added = set(augmented.added_tokens[len(base.added_tokens):])
    skipped = [word for word in selection.words[:config.cap] if word not in added]
    out_dir = _prepare(config)
    save(augmented, out_dir / 'augmented_tokenizer.json')
    plan = embedding_init_plan(base, augmented)
    write_json({**plan.to_json(), 'skipped': skipped}, out_dir / 'embedding_plan.json')
    savings = savings_report(base, augmented, corpus, config.num_jobs)
    write_json(savings.to_json(), out_dir / 'savings.json')
    return out_dir / 'augmented_tokenizer.json'


def lm(config: RunConfig) -> Path:
    ''' Trains one language model per tokenizer and compares the runs. '''
    base = load(_require(config.input_path(config.tokenizer, 'tokenizer.json'), 'tokenizer', '--tokenizer'))
    augmented = load(_require(
        config.input_path(config.augmented_tokenizer, 'augmented_tokenizer.json'),
        'augmented tokenizer', '--augmented-tokenizer'))
    corpus = _load_corpus(config, config.corpus)
    out_dir = _prepare(config)
    train_config = LmTrainConfig(
        epochs=config.lm_epochs, lr=config.lm_lr, seed=config.seed,
        mask_mode=MaskMode(config.mask_mode), window=config.window)
    reports: Dict[str, TrainReport] = {}
    for label, tok in zip(LM_RUNS, (base, augmented)):
        model = LmModel.init(len(tok), config.context, config.dim, config.seed)
        reports[label] = train_lm(model, corpus, tok, train_config, _progressfn(config, f'Training {label}'))
        reports[label].save(out_dir / f'train_{label}.json')
        reports[label].write_loss_csv(out_dir / f'loss_{label}.csv')
    comparison = compare_runs(reports['baseline'], reports['augmented'])
    write_json(comparison.to_json(), out_dir / 'comparison.json')
    write_json(timing_summary(reports, comparison), out_dir / 'timing.json')
    log.info('Augmented run processed %.2f%% tokens', comparison.tokens_delta_pct)
    return out_dir / 'comparison.json'


def report(config: RunConfig) -> Path:
    ''' Collects the outputs of the other stages into the report directory. '''
    out_dir = config.out_dir
    table = _load_table(config)
    selections: Dict[str, Selection] = {}
    selection_path = config.input_path(config.selection, 'selection.json')
    if selection_path.is_file():
        saved = Selection.load(selection_path)
        selections[saved.kind.value] = saved
    if SelectionKind.THRESHOLD.value not in selections:
        selections[SelectionKind.THRESHOLD.value] = select_threshold(table, config.epsilon)
    model_path = config.input_path(config.phi_model, 'phi_model.json')
    if SelectionKind.HEURISTIC.value not in selections and model_path.is_file():
        selections[SelectionKind.HEURISTIC.value] = _heuristic_selection(config, table, PhiModel.load(model_path))
    histograms = histogram_comparison(dict(sorted(selections.items())), table, config.bins)

    savings_path = out_dir / 'savings.json'
    savings = SavingsStats.from_json(json.loads(savings_path.read_text(encoding='utf-8'))) \
        if savings_path.is_file() else None
    train_reports = {
        label: TrainReport.load(out_dir / f'train_{label}.json')
        for label in LM_RUNS
        if (out_dir / f'train_{label}.json').is_file()
    }
    comparison = compare_runs(train_reports['baseline'], train_reports['augmented']) \
        if len(train_reports) == len(LM_RUNS) else None
    analysis_path = out_dir / 'analysis.json'
    analysis = {}
    if analysis_path.is_file():
        analysis = {
            key: value
            for key, value in json.loads(analysis_path.read_text(encoding='utf-8')).items()
            if not isinstance(value, (dict, list))
        }
    report_dir = out_dir / 'report'
    bundle_report(
        report_dir, table, dict(sorted(selections.items())), histograms,
        savings, train_reports or None, comparison, analysis)
    _prepare(config)
    return report_dir


def demo(config: RunConfig) -> Path:
    ''' Prints the tokens of a text under the baseline and the augmented tokenizer. '''
    base_path = config.input_path(config.tokenizer, 'tokenizer.json')
    augmented_path = config.input_path(config.augmented_tokenizer, 'augmented_tokenizer.json')
    if base_path.is_file() and augmented_path.is_file():
        base: Tokenizer = load(base_path)
        augmented: Tokenizer = load(augmented_path)
    elif config.tokenizer or config.augmented_tokenizer:
        raise InputError(f'Missing tokenizer "{base_path}" or "{augmented_path}".')
    else:
        log.info('No tokenizers found, using the built-in demonstration tokenizers')
        base, augmented = figure_one_tokenizer(), figure_one_augmented()
    output = render_demo(base, augmented, FIGURE_ONE_SENTENCE if config.text is None else config.text)
    out_dir = _prepare(config)
    write_json(output.to_json(), out_dir / 'demo.json')
    print(output.to_text())
    return out_dir / 'demo.json'


def fixtures(config: RunConfig) -> Path:
    ''' Writes the bundled synthetic corpora, annotations and demonstration tokenizer. '''
    out_dir = _prepare(config)
    write_fixtures(out_dir, config.seed)
    return out_dir


COMMANDS: Dict[str, Callable[[RunConfig], Path]] = {
    'analyze': analyze,
    'select': select,
    'train-phi': train_phi_cmd,
    'augment': augment,
    'lm': lm,
    'report': report,
    'demo': demo,
    'fixtures': fixtures,
}
