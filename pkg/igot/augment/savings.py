import collections
import functools
import logging
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Any, Dict, List, Tuple

from ..corpus import Corpus
from ..tokenizer import Tokenizer

log = logging.getLogger(__name__)

__all__ = ['SavingsStats', 'DocumentSavings', 'savings_report', 'percent_saved']


def percent_saved(base: int, augmented: int) -> float:
    ' Percentage of tokens saved. Zero if base is zero. '
    return 100.0 * (base - augmented) / base if base > 0 else 0.0


@dataclass(frozen=True)
class DocumentSavings:
    index: int
    base_tokens: int
    augmented_tokens: int

    @property
    def saved_tokens(self) -> int:
        return self.base_tokens - self.augmented_tokens


@dataclass(frozen=True)
class SavingsStats:
    base_tokens: int
    augmented_tokens: int
    per_document: Tuple[DocumentSavings, ...] = ()
    added_token_hits: Dict[str, int] = field(default_factory=dict)

    @property
    def saved_tokens(self) -> int:
        return self.base_tokens - self.augmented_tokens

    @property
    def saved_pct(self) -> float:
        return round(percent_saved(self.base_tokens, self.augmented_tokens), 4)

    def to_json(self) -> Dict[str, Any]:
        return {
            'base_tokens': self.base_tokens,
            'augmented_tokens': self.augmented_tokens,
            'saved_tokens': self.saved_tokens,
            'saved_pct': self.saved_pct,
            'per_document': [
                {
                    'index': doc.index,
                    'base_tokens': doc.base_tokens,
                    'augmented_tokens': doc.augmented_tokens,
                    'saved_tokens': doc.saved_tokens,
                }
                for doc in self.per_document
            ],
            'added_token_hits': dict(sorted(self.added_token_hits.items())),
        }

    @staticmethod
    def from_json(data: Dict[str, Any]) -> 'SavingsStats':
        return SavingsStats(
            base_tokens=int(data['base_tokens']),
            augmented_tokens=int(data['augmented_tokens']),
            per_document=tuple(
                DocumentSavings(int(doc['index']), int(doc['base_tokens']), int(doc['augmented_tokens']))
                for doc in data.get('per_document', ())),
            added_token_hits={str(k): int(v) for k, v in data.get('added_token_hits', {}).items()})


def _count_document(base: Tokenizer, augmented: Tokenizer, document: str) -> Tuple[int, List[int]]:
    return len(base.encode(document)), augmented.encode(document)


def savings_report(base: Tokenizer, augmented: Tokenizer, corpus: Corpus, num_jobs: int = 1) -> SavingsStats:
    ''' Token counts of every document under both tokenizers.

    Parameters:
        base: Baseline tokenizer.
        augmented: Tokenizer extended with added tokens.
        corpus: Corpus to encode. Every document is encoded on its own.
        num_jobs: Number of processes. Results are aggregated in document order.

    Returns:
        Total and per document counts and the number of hits of each added token.
    '''
    count = functools.partial(_count_document, base, augmented)
    if num_jobs > 1 and len(corpus) > 1:
        with Pool(num_jobs) as pool:
            results = pool.map(count, corpus.documents)
    else:
        results = list(map(count, corpus.documents))
    hits: Dict[str, int] = collections.Counter()
    first_added = len(augmented.vocab)
    per_document = []
    for index, (base_count, ids) in enumerate(results):
        per_document.append(DocumentSavings(index, base_count, len(ids)))
        for i in ids:
            if i >= first_added:
                hits[augmented.added_tokens[i - first_added]] += 1
    stats = SavingsStats(
        base_tokens=sum(doc.base_tokens for doc in per_document),
        augmented_tokens=sum(doc.augmented_tokens for doc in per_document),
        per_document=tuple(per_document),
        added_token_hits=dict(hits))
    log.info('Token savings %i of %i (%.4f%%)', stats.saved_tokens, stats.base_tokens, stats.saved_pct)
    return stats
