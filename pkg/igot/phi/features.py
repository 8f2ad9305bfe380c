from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..gain import GainTable, WordRecord

__all__ = ['FEATURE_NAMES', 'FeatureModel', 'featurize', 'MAX_WORD_LENGTH']

FEATURE_NAMES = ('gain_norm', 'length_norm', 'log_freq_norm', 'alpha_fraction', 'separator_density')

MAX_WORD_LENGTH = 32

_SEPARATORS = frozenset('_-.')


class FeatureModel:
    def __init__(self, table: GainTable = None):
        """ Feature extraction for candidate words.

        The corpus level normalization constants are taken from a gain table.
        Calls fit(table) if table is not None.
        """
        self.max_gain = 0.0
        self.max_freq = 0
        if table is not None:
            self.fit(table)

    def fit(self, table: GainTable) -> FeatureModel:
        self.max_gain = table.max_gain
        self.max_freq = table.max_freq
        return self

    def _vector(self, record: WordRecord) -> np.ndarray:
        word = record.word
        length = len(word)
        gain_norm = record.gain / self.max_gain if self.max_gain > 0 else 0.0
        log_freq_norm = math.log1p(record.freq) / math.log1p(self.max_freq) if self.max_freq > 0 else 0.0
        alpha = sum(char.isalpha() for char in word)
        separators = sum(char in _SEPARATORS or char.isdigit() for char in word)
        return np.array([
            gain_norm,
            min(length, MAX_WORD_LENGTH) / MAX_WORD_LENGTH,
            log_freq_norm,
            alpha / length if length else 0.0,
            separators / length if length else 0.0,
        ], dtype=np.float64)

    def transform(self, records: Sequence[WordRecord]) -> np.ndarray:
        """ Transforms records to a feature matrix of shape (len(records), 5). """
        if not records:
            return np.zeros((0, len(FEATURE_NAMES)), dtype=np.float64)
        return np.stack([self._vector(record) for record in records])

    def fit_transform(self, table: GainTable) -> np.ndarray:
        return self.fit(table).transform(table.records)


def featurize(record: WordRecord, table: GainTable) -> np.ndarray:
    ''' Feature vector of a record normalized by the statistics of its table.

    [gain_norm, length_norm, log_freq_norm, alpha_fraction, separator_density]
    '''
    return FeatureModel(table).transform([record])[0]
