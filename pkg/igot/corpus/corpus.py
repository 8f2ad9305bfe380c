''' Ingestion of raw domain text.

Documents are read as UTF-8, line endings are normalized to LF and the text
is NFC normalized with casing preserved. Words are whitespace separated
fragments with leading and trailing punctuation removed, so that long
identifiers like "sky130A_sky130_fd_sc_hd_config" survive as one word while
"OpenLane," does not pollute the candidate set.
'''
from __future__ import annotations

import collections
import logging
import re
import unicodedata
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import CorpusEncodingError, CorpusFileNotFoundError

log = logging.getLogger(__name__)

__all__ = ['Corpus', 'WordCounts', 'load_corpus', 'pre_tokenize', 'word_spans', 'word_counts', 'normalize']

# A word starts and ends with a letter or digit and never crosses whitespace.
# Anything between the first and the last alphanumeric character of a
# whitespace separated fragment is kept verbatim. Combining marks that
# follow the last character belong to the word (see word_spans).
WORD_PATTERN = re.compile(r'[^\W_](?:\S*[^\W_])?')


def normalize(text: str) -> str:
    ' Normalizes line endings to LF and applies NFC normalization. '
    text = text.replace('\r\n', '\n').replace('\r', '\n')
    return unicodedata.normalize('NFC', text)


def _is_mark(char: str) -> bool:
    return unicodedata.category(char).startswith('M')


def word_spans(text: str) -> Iterator[Tuple[int, int]]:
    ''' Yields the (begin, end) character offsets of every word in text.

    >>> list(word_spans('Introduce OpenLane, an EDA tool'))
    [(0, 9), (10, 18), (20, 22), (23, 26), (27, 31)]
    '''
    for match in WORD_PATTERN.finditer(text):
        begin, end = match.span()
        while end < len(text) and _is_mark(text[end]):
            end += 1
        yield begin, end


def pre_tokenize(text: str) -> List[str]:
    ''' Splits text into candidate words.

    >>> pre_tokenize('Introduce OpenLane, an EDA tool')
    ['Introduce', 'OpenLane', 'an', 'EDA', 'tool']
    >>> pre_tokenize('"sky130A_sky130_fd_sc_hd_config".')
    ['sky130A_sky130_fd_sc_hd_config']
    >>> pre_tokenize('   ')
    []
    '''
    return [text[begin:end] for begin, end in word_spans(text)]


@dataclass(frozen=True)
class Corpus:
    ''' Immutable collection of normalized documents. '''
    documents: Tuple[str, ...]
    total_words: int
    total_chars: int

    @staticmethod
    def from_texts(texts: Iterable[str]) -> Corpus:
        ' Normalizes the texts and counts their words and characters. '
        documents = tuple(map(normalize, texts))
        return Corpus(
            documents=documents,
            total_words=sum(len(pre_tokenize(doc)) for doc in documents),
            total_chars=sum(map(len, documents)))

    def words(self) -> Iterator[str]:
        ' Yields the words of all documents in document order. '
        for document in self.documents:
            yield from pre_tokenize(document)

    def __add__(self, other: Corpus) -> Corpus:
        return Corpus(
            documents=self.documents + other.documents,
            total_words=self.total_words + other.total_words,
            total_chars=self.total_chars + other.total_chars)

    def __len__(self) -> int:
        return len(self.documents)


class WordCounts(Mapping[str, int]):
    ''' Immutable map from word to its frequency in a corpus.

    Partial counts merge with `+`, which is associative and commutative.
    '''

    def __init__(self, entries: Optional[Mapping[str, int]] = None):
        self._entries: Dict[str, int] = {
            word: count
            for word, count in (entries or {}).items()
            if count > 0
        }

    def __getitem__(self, word: str) -> int:
        return self._entries[word]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __add__(self, other: WordCounts) -> WordCounts:
        merged = collections.Counter(self._entries)
        merged.update(other._entries)
        return WordCounts(merged)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WordCounts):
            return self._entries == other._entries
        return super().__eq__(other)

    def __repr__(self) -> str:
        return f'[WordCounts distinct={len(self)} total={self.total}]'

    @property
    def total(self) -> int:
        ' Number of word occurrences. '
        return sum(self._entries.values())

    def most_common(self, n: Optional[int] = None) -> List[Tuple[str, int]]:
        ' Words by descending count, ties broken lexicographically. '
        ranked = sorted(self._entries.items(), key=lambda item: (-item[1], item[0]))
        return ranked if n is None else ranked[:n]


def _count_document(document: str) -> WordCounts:
    return WordCounts(collections.Counter(pre_tokenize(document)))


def word_counts(corpus: Corpus, num_jobs: int = 1) -> WordCounts:
    ''' Counts every word emitted by pre_tokenize over all documents.

    Parameters:
        corpus: Corpus to count.
        num_jobs: Number of processes. Partial counts are merged in document order.

    Returns:
        Word frequencies.
    '''
    if num_jobs > 1 and len(corpus) > 1:
        with Pool(num_jobs) as pool:
            partials: Iterable[WordCounts] = pool.map(_count_document, corpus.documents)
    else:
        partials = map(_count_document, corpus.documents)
    total = WordCounts()
    for partial in partials:
        total = total + partial
    log.debug('Counted %i distinct words in %i documents', len(total), len(corpus))
    return total


def _read_document(path: Path) -> str:
    if not path.is_file():
        raise CorpusFileNotFoundError(path)
    data = path.read_bytes()
    try:
        return data.decode('utf-8')
    except UnicodeDecodeError as err:
        raise CorpusEncodingError(path, err.start, err.reason) from err


def load_corpus(
        paths: Sequence[Union[str, Path]],
        progress: Optional[Callable] = None) -> Corpus:
    ''' Loads a corpus with one document per file.

    Parameters:
        paths: Files to read, in order.
        progress: Optional progress indicator wrapping the list of paths.

    Returns:
        Normalized corpus.

    Raises:
        CorpusFileNotFoundError: If a path does not name a readable file.
        CorpusEncodingError: If a file is not valid UTF-8.
    '''
    files = [Path(path) for path in paths]
    it = progress(files) if progress else files
    texts = []
    for path in it:
        log.debug('Reading corpus document "%s"', path)
        texts.append(_read_document(path))
    corpus = Corpus.from_texts(texts)
    log.info('Loaded %i documents with %i words', len(corpus), corpus.total_words)
    return corpus
