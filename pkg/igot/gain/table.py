''' Per-word gain table and threshold selection. '''
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Tuple, Union

from ..augment.selection import Selection, SelectionKind
from ..corpus import WordCounts
from ..exceptions import InvariantViolationError, PreconditionError
from ..tokenizer import Tokenizer
from .exceptions import GainTableFormatError
from .gain import subtoken_count, word_gain

log = logging.getLogger(__name__)

__all__ = ['WordRecord', 'GainTable', 'build_gain_table', 'select_threshold', 'write_gain_table', 'load_gain_table']

GAIN_TABLE_HEADER = ('word', 'freq', 'subtokens', 'gain_nats')


@dataclass(frozen=True)
class WordRecord:
    word: str
    freq: int
    subtokens: int
    gain: float

    @staticmethod
    def create(word: str, freq: int, subtokens: int) -> WordRecord:
        ' Creates the record with its gain computed from freq and subtokens. '
        return WordRecord(word, freq, subtokens, word_gain(freq, subtokens))

    def sort_key(self) -> Tuple[float, int, str]:
        return -self.gain, -self.freq, self.word


@dataclass(frozen=True)
class GainTable:
    ''' Word records sorted by descending gain.

    Ties are broken by descending frequency and then by the word itself.
    `alpha` is the context size used for context level reporting.
    '''
    records: Tuple[WordRecord, ...]
    alpha: int = 1

    def __post_init__(self):
        if self.alpha < 1:
            raise PreconditionError(f'Context size alpha must be at least 1, got {self.alpha}.')
        keys = [record.sort_key() for record in self.records]
        if any(a > b for a, b in zip(keys, keys[1:])):
            raise InvariantViolationError('Gain table records are not sorted.')

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[WordRecord]:
        return iter(self.records)

    @functools.cached_property
    def max_gain(self) -> float:
        return max((record.gain for record in self.records), default=0.0)

    @functools.cached_property
    def max_freq(self) -> int:
        return max((record.freq for record in self.records), default=0)

    def get(self, word: str) -> Optional[WordRecord]:
        return self._index.get(word)

    @functools.cached_property
    def _index(self):
        return {record.word: record for record in self.records}


def build_gain_table(
        tok: Tokenizer,
        counts: WordCounts,
        alpha: int = 1,
        num_jobs: int = 1,
        progress: Optional[Callable] = None) -> GainTable:
    ''' Builds one record per distinct word of the counts.

    Parameters:
        tok: Baseline tokenizer that determines the subtoken counts.
        counts: Word frequencies.
        alpha: Context size stored with the table.
        num_jobs: Number of processes used for the subtoken counts.
        progress: Optional progress indicator wrapping the words.

    Returns:
        Sorted gain table.
    '''
    if alpha < 1:
        raise PreconditionError(f'Context size alpha must be at least 1, got {alpha}.')
    words = sorted(counts)
    if num_jobs > 1 and len(words) > 1:
        with Pool(num_jobs) as pool:
            subtokens: List[int] = pool.map(functools.partial(subtoken_count, tok), words, chunksize=256)
    else:
        it = progress(words) if progress else words
        subtokens = [subtoken_count(tok, word) for word in it]
    records = [
        WordRecord.create(word, counts[word], n)
        for word, n in zip(words, subtokens)
    ]
    records.sort(key=WordRecord.sort_key)
    log.info('Built gain table with %i words', len(records))
    return GainTable(tuple(records), alpha)


def select_threshold(table: GainTable, epsilon: float) -> Selection:
    ''' Selects every word with gain strictly greater than epsilon, in table order. '''
    entries = tuple(
        (record.word, record.gain)
        for record in table.records
        if record.gain > epsilon
    )
    log.debug('Threshold %f selects %i of %i words', epsilon, len(entries), len(table))
    return Selection(SelectionKind.THRESHOLD, float(epsilon), entries)


def write_gain_table(table: GainTable, path: Union[str, Path]):
    ' Writes the table as tab separated values in stored order. '
    lines = ['\t'.join(GAIN_TABLE_HEADER)]
    lines.extend(
        f'{record.word}\t{record.freq}\t{record.subtokens}\t{record.gain:.9f}'
        for record in table.records)
    Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')


def load_gain_table(path: Union[str, Path], alpha: int = 1) -> GainTable:
    ''' Loads a table written by write_gain_table.

    Gains are recomputed from freq and subtokens and must agree with the stored values.

    Raises:
        GainTableFormatError: If a line can not be parsed.
    '''
    lines = Path(path).read_text(encoding='utf-8').splitlines()
    if not lines or tuple(lines[0].split('\t')) != GAIN_TABLE_HEADER:
        raise GainTableFormatError(path, 1, 'Expected header "' + '\\t'.join(GAIN_TABLE_HEADER) + '".')
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split('\t')
        if len(fields) != len(GAIN_TABLE_HEADER):
            raise GainTableFormatError(path, lineno, f'Expected {len(GAIN_TABLE_HEADER)} fields, found {len(fields)}.')
        word, freq, subtokens, gain = fields
        try:
            record = WordRecord.create(word, int(freq), int(subtokens))
            stored = float(gain)
        except (ValueError, PreconditionError) as err:
            raise GainTableFormatError(path, lineno, str(err)) from err
        if not math.isclose(record.gain, stored, abs_tol=1e-6):
            raise GainTableFormatError(path, lineno, f'Stored gain {stored} does not match computed gain {record.gain}.')
        records.append(record)
    records.sort(key=WordRecord.sort_key)
    return GainTable(tuple(records), alpha)
