''' Fertility and information gain.

All logarithms are natural logarithms, gains are in nats.
'''
import collections
import math
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from ..corpus import Corpus
from ..exceptions import PreconditionError
from ..tokenizer import Tokenizer

__all__ = [
    'subtoken_count', 'context_gain', 'word_gain', 'conditional_entropy',
    'bigram_counts', 'window_gains', 'NATS_PER_BIT',
]

NATS_PER_BIT = math.log(2)


def subtoken_count(tok: Tokenizer, word: str) -> int:
    ''' Number of tokens the tokenizer assigns to the word on its own.

    Raises:
        PreconditionError: If word is empty.
    '''
    if not word:
        raise PreconditionError('Subtoken count of the empty word is undefined.')
    return len(tok.encode(word))


def context_gain(subtoken_counts: Sequence[int], alpha: int) -> float:
    ''' Information gain of a context: ln(1 + sum of subtoken counts) - ln(1 + alpha).

    >>> context_gain([1] * 8, 8)
    0.0
    >>> round(context_gain([5], 1), 5)
    1.09861
    '''
    if alpha < 1:
        raise PreconditionError(f'Context size alpha must be at least 1, got {alpha}.')
    if not subtoken_counts:
        raise PreconditionError('Context gain of an empty context is undefined.')
    if min(subtoken_counts) < 1:
        raise PreconditionError('Subtoken counts must be at least 1.')
    return math.log1p(sum(subtoken_counts)) - math.log1p(alpha)


def word_gain(freq: int, subtokens: int) -> float:
    ''' Information gain of a word: ln(1 + freq * subtokens) - ln(1 + freq).

    Zero exactly when the word is a single token.

    >>> word_gain(5, 1)
    0.0
    >>> round(word_gain(10, 4), 5)
    1.31585
    '''
    if freq < 1 or subtokens < 1:
        raise PreconditionError(f'Frequency and subtoken count must be at least 1, got {freq} and {subtokens}.')
    if subtokens == 1:
        return 0.0
    return math.log1p(freq * subtokens) - math.log1p(freq)


def conditional_entropy(pair_counts: Mapping[Tuple[Hashable, Hashable], int]) -> float:
    ''' Empirical conditional entropy H(Y|X) in nats of a bigram distribution.

    >>> conditional_entropy({('a', 'b'): 10})
    0.0
    >>> round(conditional_entropy({('a', 'b'): 3, ('a', 'c'): 1}), 5)
    0.56233

    Raises:
        PreconditionError: If there are no pairs or a count is not positive.
    '''
    if not pair_counts:
        raise PreconditionError('Conditional entropy of an empty distribution is undefined.')
    if min(pair_counts.values()) <= 0:
        raise PreconditionError('Pair counts must be positive.')
    marginal: Dict[Hashable, int] = collections.Counter()
    for (x, _), count in pair_counts.items():
        marginal[x] += count
    counts = np.array(list(pair_counts.values()), dtype=np.float64)
    given = np.array([marginal[x] for x, _ in pair_counts], dtype=np.float64)
    total = counts.sum()
    # -P(x,y) log P(y|x) with P(y|x) = c(x,y) / c(x)
    return float(np.sum(counts / total * (np.log(given) - np.log(counts))))


def bigram_counts(ids: Sequence[int]) -> Dict[Tuple[int, int], int]:
    ' Counts adjacent token pairs. '
    return collections.Counter(zip(ids, ids[1:]))


def window_gains(tok: Tokenizer, corpus: Corpus, alpha: int) -> np.ndarray:
    ''' Context gain of consecutive non-overlapping windows of alpha words.

    The words of all documents are treated as one stream and a trailing
    window with less than alpha words is dropped.
    '''
    if alpha < 1:
        raise PreconditionError(f'Context size alpha must be at least 1, got {alpha}.')
    fertility: Dict[str, int] = {}
    window: List[int] = []
    gains: List[float] = []
    for word in corpus.words():
        if word not in fertility:
            fertility[word] = subtoken_count(tok, word)
        window.append(fertility[word])
        if len(window) == alpha:
            gains.append(context_gain(window, alpha))
            window = []
    return np.array(gains, dtype=np.float64)
