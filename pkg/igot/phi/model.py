''' Regression scorer of candidate words.

A single hidden layer network with tanh activation maps the five word
features to a desirability score. It is trained on human scores with the
mean squared error plus a ridge penalty on the weights.
'''
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from packaging.version import parse as parse_version

from ..exceptions import PreconditionError
from ..gain import GainTable
from .annotations import AnnotatedWord
from .exceptions import PhiModelFormatError
from .features import FEATURE_NAMES, FeatureModel
from .optim import AdamState, Params, adam_step

log = logging.getLogger(__name__)

__all__ = [
    'PhiModel', 'PhiTrainConfig', 'phi_score', 'phi_predict', 'phi_loss', 'phi_gradients',
    'fit_phi', 'train_phi', 'annotated_batch', 'FEATURE_SPEC_VERSION',
]

FEATURE_SPEC_VERSION = '1.0'

NUM_FEATURES = len(FEATURE_NAMES)


@dataclass
class PhiModel:
    hidden_weights: np.ndarray
    hidden_bias: np.ndarray
    output_weights: np.ndarray
    output_bias: float = 0.0
    ridge_lambda: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.hidden_weights = np.asarray(self.hidden_weights, dtype=np.float64)
        self.hidden_bias = np.asarray(self.hidden_bias, dtype=np.float64)
        self.output_weights = np.asarray(self.output_weights, dtype=np.float64)
        self.output_bias = float(self.output_bias)
        hidden = self.hidden
        if hidden < 1:
            raise PreconditionError('Hidden width must be at least 1.')
        if self.hidden_weights.shape != (NUM_FEATURES, hidden) \
                or self.hidden_bias.shape != (hidden,) \
                or self.output_weights.shape != (hidden,):
            raise PreconditionError(
                f'Inconsistent parameter shapes {self.hidden_weights.shape}, '
                f'{self.hidden_bias.shape} and {self.output_weights.shape}.')
        if self.ridge_lambda < 0:
            raise PreconditionError(f'Ridge lambda must not be negative, got {self.ridge_lambda}.')

    @property
    def hidden(self) -> int:
        return self.hidden_bias.shape[0] if self.hidden_bias.ndim == 1 else 0

    @staticmethod
    def zeros(hidden: int = 16, ridge_lambda: float = 0.0) -> PhiModel:
        return PhiModel(
            np.zeros((NUM_FEATURES, hidden)), np.zeros(hidden), np.zeros(hidden), 0.0, ridge_lambda)

    @staticmethod
    def init(hidden: int = 16, seed: int = 0, ridge_lambda: float = 0.0, scale: float = 0.1) -> PhiModel:
        ' Parameters drawn uniformly from [-scale, scale]. '
        rng = np.random.default_rng(seed)
        return PhiModel(
            hidden_weights=rng.uniform(-scale, scale, (NUM_FEATURES, hidden)),
            hidden_bias=rng.uniform(-scale, scale, hidden),
            output_weights=rng.uniform(-scale, scale, hidden),
            output_bias=float(rng.uniform(-scale, scale)),
            ridge_lambda=ridge_lambda)

    def params(self) -> Params:
        return {
            'hidden_weights': self.hidden_weights,
            'hidden_bias': self.hidden_bias,
            'output_weights': self.output_weights,
            'output_bias': np.asarray(self.output_bias),
        }

    def with_params(self, params: Params) -> PhiModel:
        return PhiModel(
            hidden_weights=params['hidden_weights'],
            hidden_bias=params['hidden_bias'],
            output_weights=params['output_weights'],
            output_bias=float(params['output_bias']),
            ridge_lambda=self.ridge_lambda,
            metadata=dict(self.metadata))

    def to_json(self) -> Dict[str, Any]:
        return {
            'feature_spec': FEATURE_SPEC_VERSION,
            'features': list(FEATURE_NAMES),
            'activation': 'tanh',
            'hidden': self.hidden,
            'ridge_lambda': self.ridge_lambda,
            'hidden_weights': self.hidden_weights.tolist(),
            'hidden_bias': self.hidden_bias.tolist(),
            'output_weights': self.output_weights.tolist(),
            'output_bias': self.output_bias,
            'metadata': self.metadata,
        }

    @staticmethod
    def from_json(data: Dict[str, Any]) -> PhiModel:
        return PhiModel(
            hidden_weights=np.array(data['hidden_weights'], dtype=np.float64),
            hidden_bias=np.array(data['hidden_bias'], dtype=np.float64),
            output_weights=np.array(data['output_weights'], dtype=np.float64),
            output_bias=data['output_bias'],
            ridge_lambda=data.get('ridge_lambda', 0.0),
            metadata=data.get('metadata', {}))

    def save(self, path: Union[str, Path]):
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + '\n', encoding='utf-8')

    @staticmethod
    def load(path: Union[str, Path]) -> PhiModel:
        ''' Loads a model written by save().

        Raises:
            PhiModelFormatError: If the file is malformed or written for other features.
        '''
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
        except json.JSONDecodeError as err:
            raise PhiModelFormatError(path, f'line {err.lineno}: {err.msg}') from err
        if not isinstance(data, dict):
            raise PhiModelFormatError(path, 'Expected a JSON object.')
        version = parse_version(str(data.get('feature_spec', '0')))
        if version.major != parse_version(FEATURE_SPEC_VERSION).major:
            raise PhiModelFormatError(
                path, f'Feature set {version} is not compatible with {FEATURE_SPEC_VERSION}.')
        try:
            model = PhiModel.from_json(data)
        except (KeyError, TypeError, ValueError) as err:
            raise PhiModelFormatError(path, str(err)) from err
        if not all(np.all(np.isfinite(value)) for value in model.params().values()):
            raise PhiModelFormatError(path, 'Parameters are not finite.')
        return model


def _forward(model: PhiModel, features: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    hidden = np.tanh(features @ model.hidden_weights + model.hidden_bias)
    return hidden, hidden @ model.output_weights + model.output_bias


def phi_score(model: PhiModel, features: np.ndarray) -> float:
    ' Score of a single feature vector. '
    _, score = _forward(model, np.asarray(features, dtype=np.float64))
    return float(score)


def phi_predict(model: PhiModel, features: np.ndarray) -> np.ndarray:
    ' Scores of the rows of a feature matrix. '
    _, scores = _forward(model, np.atleast_2d(np.asarray(features, dtype=np.float64)))
    return scores


def _check_batch(features: np.ndarray, scores: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    scores = np.atleast_1d(np.asarray(scores, dtype=np.float64))
    if scores.size == 0:
        raise PreconditionError('Loss of an empty batch is undefined.')
    if features.shape != (scores.shape[0], NUM_FEATURES):
        raise PreconditionError(f'Expected features of shape ({scores.shape[0]}, {NUM_FEATURES}), got {features.shape}.')
    return features, scores


def phi_loss(model: PhiModel, features: np.ndarray, scores: np.ndarray) -> float:
    ''' Mean squared error plus ridge_lambda times the squared weights.

    Biases are excluded from the ridge term.

    Parameters:
        model: Scorer.
        features: Feature matrix, one row per example.
        scores: Target score of each row.
    '''
    features, scores = _check_batch(features, scores)
    _, predictions = _forward(model, features)
    ridge = np.sum(model.hidden_weights ** 2) + np.sum(model.output_weights ** 2)
    return float(np.mean((scores - predictions) ** 2) + model.ridge_lambda * ridge)


def phi_gradients(model: PhiModel, features: np.ndarray, scores: np.ndarray) -> Params:
    ' Analytic gradient of phi_loss with respect to every parameter. '
    features, scores = _check_batch(features, scores)
    hidden, predictions = _forward(model, features)
    d_predictions = 2.0 * (predictions - scores) / scores.shape[0]
    d_hidden = np.outer(d_predictions, model.output_weights) * (1.0 - hidden ** 2)
    return {
        'hidden_weights': features.T @ d_hidden + 2.0 * model.ridge_lambda * model.hidden_weights,
        'hidden_bias': d_hidden.sum(axis=0),
        'output_weights': hidden.T @ d_predictions + 2.0 * model.ridge_lambda * model.output_weights,
        'output_bias': np.asarray(d_predictions.sum()),
    }


@dataclass
class PhiTrainConfig:
    epochs: int = 2000
    lr: float = 1e-3
    ridge_lambda: float = 1e-4
    hidden: int = 16
    seed: int = 0


def fit_phi(
        features: np.ndarray,
        scores: np.ndarray,
        config: PhiTrainConfig = None,
        progress: Optional[Callable] = None) -> PhiModel:
    ''' Full batch Adam training on a feature matrix.

    Parameters:
        features: Feature matrix, one row per example.
        scores: Target scores.
        config: Training hyperparameters.
        progress: Optional progress indicator wrapping the range of epochs.

    Returns:
        Trained model. Its metadata records the final training loss.
    '''
    config = config or PhiTrainConfig()
    if config.epochs < 0:
        raise PreconditionError(f'Epochs must not be negative, got {config.epochs}.')
    features, scores = _check_batch(features, scores)
    model = PhiModel.init(config.hidden, config.seed, config.ridge_lambda)
    params = model.params()
    state = AdamState(lr=config.lr)
    epochs = range(config.epochs)
    for epoch in (progress(epochs) if progress else epochs):
        grads = phi_gradients(model, features, scores)
        params, state = adam_step(state, params, grads)
        model = model.with_params(params)
        if epoch % 500 == 0:
            log.debug('Epoch %i loss %f', epoch, phi_loss(model, features, scores))
    final_loss = phi_loss(model, features, scores)
    model.metadata = {
        'epochs': config.epochs,
        'lr': config.lr,
        'seed': config.seed,
        'examples': int(scores.shape[0]),
        'final_loss': final_loss,
    }
    log.info('Trained phi model for %i epochs, final loss %f', config.epochs, final_loss)
    return model


def annotated_batch(dataset: Sequence[AnnotatedWord], table: GainTable) -> Tuple[np.ndarray, np.ndarray, List[str]]:
    ''' Feature matrix and targets of the annotated words found in the table.

    Returns:
        Features, scores and the words that are missing from the table.
    '''
    records = []
    targets = []
    missing = []
    for item in dataset:
        record = table.get(item.word)
        if record is None:
            missing.append(item.word)
        else:
            records.append(record)
            targets.append(item.score)
    return FeatureModel(table).transform(records), np.array(targets, dtype=np.float64), missing


def train_phi(
        dataset: Sequence[AnnotatedWord],
        table: GainTable,
        config: PhiTrainConfig = None,
        progress: Optional[Callable] = None) -> PhiModel:
    ''' Trains the scorer on annotated words.

    Annotated words absent from the gain table are skipped with a warning.

    Raises:
        PreconditionError: If no annotated word is found in the table.
    '''
    if not dataset:
        raise PreconditionError('The annotation dataset is empty.')
    features, scores, missing = annotated_batch(dataset, table)
    if missing:
        log.warning('%i annotated words are not in the gain table, first is "%s"', len(missing), missing[0])
    if not scores.size:
        raise PreconditionError('None of the annotated words occur in the gain table.')
    return fit_phi(features, scores, config, progress)
