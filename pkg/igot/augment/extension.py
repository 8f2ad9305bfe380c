''' Vocabulary extension with selected words. '''
import logging
from typing import List, Optional, Tuple

from ..exceptions import PreconditionError
from ..tokenizer import Tokenizer
from .selection import Selection

log = logging.getLogger(__name__)

__all__ = ['plan_extension', 'extend_vocab']


def plan_extension(base: Tokenizer, selection: Selection, cap: Optional[int] = None) -> Tuple[List[str], List[str]]:
    ''' Splits the top `cap` entries of the selection into words to add and words to skip.

    Words are skipped if they already encode to a single token with the base
    tokenizer, are already added tokens of the base or were accepted before.

    Raises:
        PreconditionError: If cap is negative or larger than the selection.
    '''
    if cap is not None and not 0 <= cap <= len(selection):
        raise PreconditionError(f'Cap {cap} must be between 0 and the selection size {len(selection)}.')
    accepted: List[str] = []
    skipped: List[str] = []
    known = set(base.added_tokens)
    for word in selection.words[:cap]:
        if not word or word in known or len(base.encode(word)) <= 1:
            skipped.append(word)
        else:
            accepted.append(word)
            known.add(word)
    return accepted, skipped


def extend_vocab(base: Tokenizer, selection: Selection, cap: Optional[int] = None) -> Tokenizer:
    ''' Appends the top `cap` selected words as added tokens in selection order.

    The vocabulary, merges and ids of the base tokenizer are not changed.
    Selected words that are already single tokens are skipped with a warning.

    Parameters:
        base: Baseline tokenizer.
        selection: Ranked selection.
        cap: Maximum number of entries to consider. All entries if None.

    Returns:
        Augmented tokenizer.
    '''
    accepted, skipped = plan_extension(base, selection, cap)
    if skipped:
        log.warning('Skipped %i selected words that are already single tokens: %s', len(skipped), ', '.join(skipped[:10]))
    log.info('Extending vocabulary of size %i by %i tokens', len(base), len(accepted))
    if not accepted:
        return base
    return base.with_added_tokens(accepted)
