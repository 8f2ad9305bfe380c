''' Training harness for comparing tokenizers on the same corpus. '''
from __future__ import annotations

import enum
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from ..corpus import Corpus
from ..exceptions import PreconditionError
from ..phi.optim import AdamState, adam_step
from ..tokenizer import Tokenizer, fingerprint
from .exceptions import CorpusTooSmallError
from .model import LmModel, lm_gradients

log = logging.getLogger(__name__)

__all__ = [
    'MaskMode', 'LmTrainConfig', 'TrainReport', 'ComparisonStats',
    'train_lm', 'compare_runs', 'moving_average', 'encode_corpus', 'make_windows', 'timing_summary',
]

MOVING_AVERAGE_STEPS = 50


class MaskMode(enum.Enum):
    ' Which positions of a window contribute to the loss. '
    CLM = 'clm'
    DAP = 'dap'


@dataclass
class LmTrainConfig:
    epochs: int = 3
    lr: float = 0.01
    seed: int = 0
    mask_mode: MaskMode = MaskMode.CLM
    window: int = 32


def moving_average(losses: Sequence[float], n: int = MOVING_AVERAGE_STEPS) -> np.ndarray:
    ''' Trailing means over n consecutive values.

    >>> moving_average([1.0, 2.0, 3.0, 4.0], 2).tolist()
    [1.5, 2.5, 3.5]
    '''
    values = np.asarray(losses, dtype=np.float64)
    if n < 1:
        raise PreconditionError(f'Moving average width must be at least 1, got {n}.')
    if not values.size:
        return values
    n = min(n, values.size)
    return np.convolve(values, np.ones(n) / n, mode='valid')


@dataclass
class TrainReport:
    losses: List[float]
    tokens_processed: int
    wall_seconds: float
    epochs: int
    tokenizer: str
    window: int = 32
    mask_mode: str = MaskMode.CLM.value
    seed: int = 0
    corpus_tokens: int = 0
    model: Optional[LmModel] = field(default=None, compare=False, repr=False)

    @property
    def initial_loss(self) -> float:
        return self.losses[0] if self.losses else 0.0

    @property
    def final_moving_average(self) -> float:
        ' Mean of the last 50 step losses. '
        tail = self.losses[-MOVING_AVERAGE_STEPS:]
        return float(np.mean(tail)) if tail else 0.0

    def to_json(self, timing: bool = True) -> Dict[str, Any]:
        ' Without timing the output only depends on the corpus, the tokenizer and the config. '
        data: Dict[str, Any] = {
            'losses': self.losses,
            'steps': len(self.losses),
            'tokens_processed': self.tokens_processed,
            'corpus_tokens': self.corpus_tokens,
            'epochs': self.epochs,
            'tokenizer': self.tokenizer,
            'window': self.window,
            'mask_mode': self.mask_mode,
            'seed': self.seed,
            'initial_loss': self.initial_loss,
            'final_moving_average': self.final_moving_average,
        }
        if timing:
            data['wall_seconds'] = self.wall_seconds
        return data

    @staticmethod
    def from_json(data: Dict[str, Any]) -> TrainReport:
        return TrainReport(
            losses=[float(loss) for loss in data['losses']],
            tokens_processed=int(data['tokens_processed']),
            wall_seconds=float(data.get('wall_seconds', 0.0)),
            epochs=int(data['epochs']),
            tokenizer=str(data['tokenizer']),
            window=int(data.get('window', 32)),
            mask_mode=str(data.get('mask_mode', MaskMode.CLM.value)),
            seed=int(data.get('seed', 0)),
            corpus_tokens=int(data.get('corpus_tokens', 0)))

    def save(self, path: Union[str, Path]):
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + '\n', encoding='utf-8')

    @staticmethod
    def load(path: Union[str, Path]) -> TrainReport:
        return TrainReport.from_json(json.loads(Path(path).read_text(encoding='utf-8')))

    def write_loss_csv(self, path: Union[str, Path]):
        ' Writes the loss curve as "step,loss" lines. '
        lines = ['step,loss'] + [f'{step},{loss:.9f}' for step, loss in enumerate(self.losses)]
        Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')


def encode_corpus(tok: Tokenizer, corpus: Corpus) -> np.ndarray:
    ' Concatenation of the encodings of every document. '
    ids: List[int] = []
    for document in corpus.documents:
        ids.extend(tok.encode(document))
    return np.array(ids, dtype=np.int64)


def make_windows(ids: np.ndarray, window: int) -> np.ndarray:
    ''' Splits ids into non-overlapping windows. A trailing partial window is dropped.

    >>> make_windows(np.arange(7), 3).tolist()
    [[0, 1, 2], [3, 4, 5]]
    '''
    count = len(ids) // window
    return ids[:count * window].reshape(count, window)


def train_lm(
        model: LmModel,
        corpus: Corpus,
        tok: Tokenizer,
        config: LmTrainConfig = None,
        progress: Optional[Callable] = None) -> TrainReport:
    ''' Trains the model on the corpus encoded with tok.

    Every epoch visits all windows of `min(window, n)` tokens in an order
    shuffled with the run seed and takes one Adam step per window. The loss
    of a step is recorded before its update.

    Parameters:
        model: Initial model. Its vocabulary size must equal the tokenizer size.
        corpus: Training corpus.
        tok: Tokenizer that encodes the corpus.
        config: Training configuration.
        progress: Optional progress indicator wrapping the range of epochs.

    Returns:
        Report with the step losses, the number of tokens processed and the trained model.

    Raises:
        CorpusTooSmallError: If the corpus encodes to at most k tokens.
    '''
    config = config or LmTrainConfig()
    if model.vocab_size != len(tok):
        raise PreconditionError(f'Model vocabulary size {model.vocab_size} does not match tokenizer size {len(tok)}.')
    if config.window < 1 or config.epochs < 0:
        raise PreconditionError('Window must be positive and epochs must not be negative.')
    ids = encode_corpus(tok, corpus)
    if len(ids) < model.context + 1:
        raise CorpusTooSmallError(len(ids), model.context + 1)
    window = min(config.window, len(ids))
    windows = make_windows(ids, window)
    mask = None
    if MaskMode(config.mask_mode) is MaskMode.DAP:
        mask = list(range(window // 2, window))
    rng = np.random.default_rng(config.seed)
    params = model.params()
    state = AdamState(lr=config.lr)
    losses: List[float] = []
    tokens = 0
    log.info('Training on %i windows of %i tokens for %i epochs', len(windows), window, config.epochs)
    start = time.perf_counter()
    epochs = range(config.epochs)
    for epoch in (progress(epochs) if progress else epochs):
        for index in rng.permutation(len(windows)):
            loss, grads = lm_gradients(model, windows[index], mask)
            losses.append(loss)
            params, state = adam_step(state, params, grads)
            model = model.with_params(params)
            tokens += window
        log.debug('Epoch %i mean loss %f', epoch, np.mean(losses[-len(windows):]))
    elapsed = time.perf_counter() - start
    report = TrainReport(
        losses=losses,
        tokens_processed=tokens,
        wall_seconds=elapsed,
        epochs=config.epochs,
        tokenizer=fingerprint(tok),
        window=window,
        mask_mode=MaskMode(config.mask_mode).value,
        seed=config.seed,
        corpus_tokens=len(ids),
        model=model)
    log.info('Processed %i tokens in %.2fs, final moving average loss %f',
             tokens, elapsed, report.final_moving_average)
    return report


def _delta_pct(a: float, b: float) -> float:
    return 100.0 * (b - a) / a if a else 0.0


@dataclass(frozen=True)
class ComparisonStats:
    tokens_a: int
    tokens_b: int
    seconds_a: float
    seconds_b: float
    loss_a: float
    loss_b: float

    @property
    def tokens_delta_pct(self) -> float:
        return _delta_pct(self.tokens_a, self.tokens_b)

    @property
    def time_delta_pct(self) -> float:
        return _delta_pct(self.seconds_a, self.seconds_b)

    @property
    def loss_delta_pct(self) -> float:
        return _delta_pct(self.loss_a, self.loss_b)

    def to_json(self) -> Dict[str, Any]:
        return {
            'tokens': {'a': self.tokens_a, 'b': self.tokens_b, 'delta_pct': round(self.tokens_delta_pct, 4)},
            'final_moving_average': {'a': self.loss_a, 'b': self.loss_b, 'delta_pct': round(self.loss_delta_pct, 4)},
        }


def compare_runs(report_a: TrainReport, report_b: TrainReport) -> ComparisonStats:
    ' Percentage change from run a to run b of tokens, wall-clock time and final loss. '
    return ComparisonStats(
        tokens_a=report_a.tokens_processed,
        tokens_b=report_b.tokens_processed,
        seconds_a=report_a.wall_seconds,
        seconds_b=report_b.wall_seconds,
        loss_a=report_a.final_moving_average,
        loss_b=report_b.final_moving_average)


def timing_summary(
        reports: Dict[str, TrainReport], comparison: Optional[ComparisonStats] = None) -> Dict[str, Any]:
    ' Wall-clock seconds of the runs by label and their percentage change. '
    data: Dict[str, Any] = {'wall_seconds': {label: report.wall_seconds for label, report in reports.items()}}
    if comparison is not None:
        data['delta_pct'] = round(comparison.time_delta_pct, 4)
    return data
