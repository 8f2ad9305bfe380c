from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from ..tokenizer import Tokenizer
from .exceptions import EmbeddingPlanError

__all__ = ['EmbeddingInitPlan', 'embedding_init_plan', 'apply_embedding_plan']


@dataclass(frozen=True)
class EmbeddingInitPlan:
    ''' For every added token the baseline ids whose embedding mean initializes its row. '''
    entries: Tuple[Tuple[int, str, Tuple[int, ...]], ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> Dict[str, Any]:
        return {
            'entries': [
                {'new_id': new_id, 'token': token, 'subtoken_ids': list(ids)}
                for new_id, token, ids in self.entries
            ]
        }


def embedding_init_plan(base: Tokenizer, augmented: Tokenizer) -> EmbeddingInitPlan:
    ''' Maps every token added on top of base to its baseline encoding.

    Raises:
        EmbeddingPlanError: If augmented does not extend base or a baseline encoding is empty or invalid.
    '''
    if augmented.vocab != base.vocab or augmented.merges != base.merges \
            or augmented.added_tokens[:len(base.added_tokens)] != base.added_tokens:
        raise EmbeddingPlanError('<all>', 'belongs to a tokenizer that does not extend the base')
    entries = []
    for token in augmented.added_tokens[len(base.added_tokens):]:
        ids = tuple(base.encode(token))
        if not ids:
            raise EmbeddingPlanError(token)
        if any(not 0 <= i < len(base) for i in ids):
            raise EmbeddingPlanError(token, 'maps to ids outside of the base vocabulary')
        entries.append((augmented.added_token_id(token), token, ids))
    return EmbeddingInitPlan(tuple(entries))


def apply_embedding_plan(embeddings: np.ndarray, plan: EmbeddingInitPlan) -> np.ndarray:
    ''' Appends one row per planned token, initialized as the mean of its subtoken rows.

    Parameters:
        embeddings: Baseline embedding matrix with one row per base token id.
        plan: Plan created by embedding_init_plan.

    Returns:
        Extended copy of the embedding matrix.
    '''
    rows = [embeddings[list(ids)].mean(axis=0) for _, _, ids in plan.entries]
    if not rows:
        return embeddings.copy()
    return np.concatenate([embeddings, np.stack(rows)], axis=0)
