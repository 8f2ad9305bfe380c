''' Fixed context feedforward language model.

The last k token ids are embedded, concatenated, projected to the embedding
width, squashed by tanh and projected to one logit per vocabulary entry.
Row `vocab_size` of the embedding matrix is the begin-of-sequence token that
pads histories shorter than k.
'''
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import PreconditionError
from ..phi.optim import Params
from ..tokenizer import TokenIdError

__all__ = ['LmModel', 'logits', 'token_nll', 'clm_loss', 'dap_loss', 'lm_gradients', 'context_matrix']


@dataclass(frozen=True, eq=False)
class LmModel:
    embeddings: np.ndarray
    context_weights: np.ndarray
    context_bias: np.ndarray
    output_weights: np.ndarray
    output_bias: np.ndarray

    def __post_init__(self):
        rows, dim = self.embeddings.shape
        if rows < 2:
            raise PreconditionError('Vocabulary size must be at least 1.')
        if self.context_weights.shape[0] < dim:
            raise PreconditionError('Context length must be at least 1.')
        if self.context_weights.shape[1] != dim or self.context_weights.shape[0] % dim:
            raise PreconditionError(f'Context projection of shape {self.context_weights.shape} does not fit dim {dim}.')
        if self.context_bias.shape != (dim,) \
                or self.output_weights.shape != (dim, rows - 1) \
                or self.output_bias.shape != (rows - 1,):
            raise PreconditionError('Inconsistent language model parameter shapes.')

    @property
    def vocab_size(self) -> int:
        return self.embeddings.shape[0] - 1

    @property
    def bos(self) -> int:
        ' Id of the begin-of-sequence padding token. '
        return self.vocab_size

    @property
    def dim(self) -> int:
        return self.embeddings.shape[1]

    @property
    def context(self) -> int:
        return self.context_weights.shape[0] // self.dim

    @staticmethod
    def zeros(vocab_size: int, context: int = 8, dim: int = 32) -> LmModel:
        return LmModel(
            embeddings=np.zeros((vocab_size + 1, dim)),
            context_weights=np.zeros((context * dim, dim)),
            context_bias=np.zeros(dim),
            output_weights=np.zeros((dim, vocab_size)),
            output_bias=np.zeros(vocab_size))

    @staticmethod
    def init(vocab_size: int, context: int = 8, dim: int = 32, seed: int = 0, scale: float = 0.1) -> LmModel:
        ' Parameters drawn uniformly from [-scale, scale] with a seeded generator. '
        rng = np.random.default_rng(seed)
        return LmModel(
            embeddings=rng.uniform(-scale, scale, (vocab_size + 1, dim)),
            context_weights=rng.uniform(-scale, scale, (context * dim, dim)),
            context_bias=np.zeros(dim),
            output_weights=rng.uniform(-scale, scale, (dim, vocab_size)),
            output_bias=np.zeros(vocab_size))

    def params(self) -> Params:
        return {
            'embeddings': self.embeddings,
            'context_weights': self.context_weights,
            'context_bias': self.context_bias,
            'output_weights': self.output_weights,
            'output_bias': self.output_bias,
        }

    def with_params(self, params: Params) -> LmModel:
        return LmModel(**params)

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(value)) for value in self.params().values())


def _check_ids(model: LmModel, ids: Sequence[int]) -> np.ndarray:
    array = np.asarray(ids, dtype=np.int64).reshape(-1)
    if array.size and (array.min() < 0 or array.max() >= model.vocab_size):
        bad = int(array[(array < 0) | (array >= model.vocab_size)][0])
        raise TokenIdError(bad, model.vocab_size)
    return array


def context_matrix(model: LmModel, sequence: np.ndarray) -> np.ndarray:
    ''' Histories of every position of the sequence, one row of k ids each.

    >>> context_matrix(LmModel.zeros(5, context=2, dim=1), np.array([3, 1, 4]))
    array([[5, 5],
           [5, 3],
           [3, 1]])
    '''
    k = model.context
    padded = np.concatenate([np.full(k, model.bos, dtype=np.int64), sequence.astype(np.int64)])
    return np.stack([padded[i:i + k] for i in range(len(sequence))]) if len(sequence) else np.zeros((0, k), np.int64)


def _forward(model: LmModel, contexts: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    inputs = model.embeddings[contexts].reshape(contexts.shape[0], -1)
    hidden = np.tanh(inputs @ model.context_weights + model.context_bias)
    return inputs, hidden, hidden @ model.output_weights + model.output_bias


def _log_softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def logits(model: LmModel, history: Sequence[int]) -> np.ndarray:
    ''' Next token logits after a history of token ids.

    Only the last k ids are used. Shorter histories are padded with the
    begin-of-sequence token.

    Raises:
        TokenIdError: If an id is not in the vocabulary.
    '''
    ids = _check_ids(model, history)[-model.context:]
    contexts = context_matrix(model, np.append(ids, 0))[-1:]
    _, _, scores = _forward(model, contexts)
    return scores[0]


def token_nll(model: LmModel, sequence: Sequence[int]) -> np.ndarray:
    ' Negative log-likelihood of every token of the sequence given its history. '
    ids = _check_ids(model, sequence)
    _, _, scores = _forward(model, context_matrix(model, ids))
    return -_log_softmax(scores)[np.arange(len(ids)), ids]


def _mask_positions(sequence: Sequence[int], output_mask: Iterable[int]) -> np.ndarray:
    positions = np.array(sorted(set(output_mask)), dtype=np.int64)
    if not positions.size:
        raise PreconditionError('The output mask is empty.')
    if positions[0] < 0 or positions[-1] >= len(sequence):
        raise PreconditionError(f'Output mask positions must be in [0, {len(sequence)}).')
    return positions


def clm_loss(model: LmModel, sequence: Sequence[int]) -> float:
    ''' Mean negative log-likelihood per token in nats.

    Raises:
        PreconditionError: If the sequence is empty.
    '''
    if not len(sequence):
        raise PreconditionError('Loss of an empty sequence is undefined.')
    return float(token_nll(model, sequence).mean())


def dap_loss(model: LmModel, sequence: Sequence[int], output_mask: Iterable[int]) -> float:
    ''' Mean negative log-likelihood of the tokens at the masked positions.

    Unmasked tokens still serve as history of the masked ones.

    Raises:
        PreconditionError: If the mask is empty or has positions outside the sequence.
    '''
    positions = _mask_positions(sequence, output_mask)
    return float(token_nll(model, sequence)[positions].mean())


def lm_gradients(
        model: LmModel,
        sequence: Sequence[int],
        output_mask: Optional[Iterable[int]] = None) -> Tuple[float, Params]:
    ''' Loss and analytic gradients of clm_loss, or of dap_loss if a mask is given. '''
    ids = _check_ids(model, sequence)
    if not ids.size:
        raise PreconditionError('Loss of an empty sequence is undefined.')
    positions = np.arange(len(ids)) if output_mask is None else _mask_positions(ids, output_mask)
    contexts = context_matrix(model, ids)[positions]
    targets = ids[positions]
    inputs, hidden, scores = _forward(model, contexts)
    log_probs = _log_softmax(scores)
    rows = np.arange(len(positions))
    loss = float(-log_probs[rows, targets].mean())

    d_scores = np.exp(log_probs)
    d_scores[rows, targets] -= 1.0
    d_scores /= len(positions)
    d_hidden = (d_scores @ model.output_weights.T) * (1.0 - hidden ** 2)
    d_inputs = d_hidden @ model.context_weights.T
    d_embeddings = np.zeros_like(model.embeddings)
    np.add.at(d_embeddings, contexts.reshape(-1), d_inputs.reshape(-1, model.dim))
    grads: Dict[str, np.ndarray] = {
        'embeddings': d_embeddings,
        'context_weights': inputs.T @ d_hidden,
        'context_bias': d_hidden.sum(axis=0),
        'output_weights': hidden.T @ d_scores,
        'output_bias': d_scores.sum(axis=0),
    }
    return loss, grads
