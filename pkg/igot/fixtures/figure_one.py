''' A tiny tokenizer that splits the demonstration sentence the way a general
purpose tokenizer does: "Introduce" into "Int", "rodu", "ce" and "OpenLane"
into "Open", "L", "ane".
'''
from typing import List, Tuple

from ..tokenizer import BYTE_TOKENS, MergeRule, Tokenizer, Vocab

__all__ = ['SENTENCE', 'DOMAIN_TERMS', 'MERGES', 'figure_one_tokenizer', 'figure_one_augmented']

SENTENCE = 'Introduce OpenLane, an EDA tool'

# Words that the augmented tokenizer keeps as single tokens.
DOMAIN_TERMS = ('Introduce', 'OpenLane', 'EDA')

MERGES: Tuple[Tuple[str, str], ...] = (
    ('I', 'n'), ('In', 't'),
    ('r', 'o'), ('ro', 'd'), ('rod', 'u'),
    ('c', 'e'),
    ('e', 'n'), ('O', 'p'), ('Op', 'en'),
    ('a', 'n'), ('an', 'e'), (' ', 'an'),
    ('D', 'A'),
    ('t', 'o'), ('to', 'o'), ('too', 'l'), (' ', 'tool'),
)


def figure_one_tokenizer() -> Tokenizer:
    ' Baseline tokenizer: the sentence encodes to 13 tokens. '
    tokens: List[bytes] = list(BYTE_TOKENS)
    merges: List[MergeRule] = []
    for rank, (left, right) in enumerate(MERGES):
        merge = MergeRule(left.encode(), right.encode(), rank)
        merges.append(merge)
        if merge.merged not in tokens:
            tokens.append(merge.merged)
    return Tokenizer(Vocab(tokens), merges)


def figure_one_augmented() -> Tokenizer:
    ' Baseline plus the domain terms: the sentence encodes to 8 tokens. '
    return figure_one_tokenizer().with_added_tokens(DOMAIN_TERMS)
