''' Byte level byte-pair-encoding tokenizer with verbatim added tokens.

Text is segmented into word pieces and gap pieces. Word boundaries are the
ones produced by `igot.corpus.pre_tokenize`. A single space directly in front
of a word belongs to the word's piece, everything else between two words is a
gap piece. Every piece is byte encoded and merged by ascending merge rank,
merges never cross piece boundaries.

Added tokens are matched before BPE, greedily and longest first, and only on
whole words. They never change the ids of the trained vocabulary, so a model
trained with the base tokenizer keeps its embedding rows.
'''
from __future__ import annotations

import collections
import heapq
import logging
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from ..corpus import Corpus, pre_tokenize, word_counts, word_spans
from ..exceptions import InvariantViolationError, PreconditionError
from .escapes import escape_token
from .exceptions import TokenIdError

log = logging.getLogger(__name__)

__all__ = ['MergeRule', 'Vocab', 'Tokenizer', 'train_bpe', 'encode', 'decode', 'BYTE_TOKENS']

BYTE_TOKENS: Tuple[bytes, ...] = tuple(bytes([byte]) for byte in range(256))


class MergeRule(NamedTuple):
    left: bytes
    right: bytes
    rank: int

    @property
    def merged(self) -> bytes:
        return self.left + self.right


class Vocab:
    ''' Dense bijection between token bytes and ids. '''

    def __init__(self, tokens: Iterable[bytes]):
        self.token_of: Tuple[bytes, ...] = tuple(tokens)
        self.id_of: Dict[bytes, int] = {
            token: index for index, token in enumerate(self.token_of)
        }
        if len(self.id_of) != len(self.token_of):
            raise InvariantViolationError('Vocabulary contains duplicate tokens.')
        missing = [token for token in BYTE_TOKENS if token not in self.id_of]
        if missing:
            raise InvariantViolationError(
                f'Vocabulary is missing {len(missing)} single byte tokens.')

    def __len__(self) -> int:
        return len(self.token_of)

    def __contains__(self, token: bytes) -> bool:
        return token in self.id_of

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vocab) and self.token_of == other.token_of

    def __repr__(self) -> str:
        return f'[Vocab size={len(self)}]'


class Tokenizer:
    def __init__(
            self,
            vocab: Vocab,
            merges: Sequence[MergeRule],
            added_tokens: Sequence[str] = ()):
        """ Creates an immutable tokenizer.

        Parameters:
            vocab: Trained vocabulary. Must contain every single byte token.
            merges: Merge rules ordered by rank.
            added_tokens: Verbatim words matched before BPE. Their ids follow the vocabulary.
        """
        self.vocab = vocab
        self.merges: Tuple[MergeRule, ...] = tuple(merges)
        self.added_tokens: Tuple[str, ...] = tuple(added_tokens)
        for rank, merge in enumerate(self.merges):
            if merge.rank != rank:
                raise InvariantViolationError(f'Merge ranks are not contiguous at rank {rank}.')
            if merge.merged not in vocab:
                raise InvariantViolationError(f'Merge rank {rank} produces a token missing from the vocabulary.')
        self._ranks: Dict[Tuple[bytes, bytes], int] = {
            (merge.left, merge.right): merge.rank for merge in self.merges
        }
        self._added_ids: Dict[str, int] = {}
        for token in self.added_tokens:
            if not token or token in self._added_ids:
                raise InvariantViolationError(f'Invalid or duplicate added token "{token}".')
            self._added_ids[token] = len(vocab) + len(self._added_ids)
        # Number of words spanned by the longest added token
        self._added_span = max((len(pre_tokenize(token)) for token in self.added_tokens), default=0)
        self._cache: Dict[bytes, Tuple[int, ...]] = {}

    @property
    def base_size(self) -> int:
        ' Size of the trained vocabulary without added tokens. '
        return len(self.vocab)

    def __len__(self) -> int:
        return len(self.vocab) + len(self.added_tokens)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Tokenizer)
            and self.vocab == other.vocab
            and self.merges == other.merges
            and self.added_tokens == other.added_tokens)

    def __repr__(self) -> str:
        return f'[Tokenizer vocab={len(self.vocab)} merges={len(self.merges)} added={len(self.added_tokens)}]'

    def __getstate__(self):
        # do not ship the piece cache to worker processes
        return self.vocab, self.merges, self.added_tokens

    def __setstate__(self, state):
        vocab, merges, added_tokens = state
        self.__init__(vocab, merges, added_tokens)  # type: ignore

    def with_added_tokens(self, tokens: Iterable[str]) -> Tokenizer:
        ' Returns a new tokenizer with `tokens` appended to the added tokens. '
        return Tokenizer(self.vocab, self.merges, self.added_tokens + tuple(tokens))

    def added_token_id(self, token: str) -> Optional[int]:
        return self._added_ids.get(token)

    def token_bytes(self, token_id: int) -> bytes:
        ' Byte content of a token id. '
        if not 0 <= token_id < len(self):
            raise TokenIdError(token_id, len(self))
        if token_id < len(self.vocab):
            return self.vocab.token_of[token_id]
        return self.added_tokens[token_id - len(self.vocab)].encode('utf-8')

    def tokens(self, ids: Iterable[int], visible_space: Optional[str] = None) -> List[str]:
        ' Printable strings of the tokens in ids. '
        return [escape_token(self.token_bytes(i), visible_space=visible_space) for i in ids]

    def _bpe(self, piece: bytes) -> Tuple[int, ...]:
        ' Encodes a single piece by applying merges in ascending rank order. '
        cached = self._cache.get(piece)
        if cached is not None:
            return cached
        parts = [piece[i:i + 1] for i in range(len(piece))]
        while len(parts) > 1:
            best: Optional[int] = None
            for pair in zip(parts, parts[1:]):
                rank = self._ranks.get(pair)
                if rank is not None and (best is None or rank < best):
                    best = rank
            if best is None:
                break
            left, right, _ = self.merges[best]
            merged: List[bytes] = []
            i = 0
            while i < len(parts):
                if i + 1 < len(parts) and parts[i] == left and parts[i + 1] == right:
                    merged.append(left + right)
                    i += 2
                else:
                    merged.append(parts[i])
                    i += 1
            parts = merged
        ids = tuple(self.vocab.id_of[part] for part in parts)
        self._cache[piece] = ids
        return ids

    def _bpe_text(self, text: str) -> Tuple[int, ...]:
        if not text:
            return ()
        return self._bpe(text.encode('utf-8'))

    def _match_added(self, text: str, spans: Sequence[Tuple[int, int]], index: int) -> Optional[Tuple[int, int]]:
        ' Longest added token starting at word `index`. Returns the last word index and the token id. '
        longest = min(self._added_span, len(spans) - index)
        begin = spans[index][0]
        for count in range(longest, 0, -1):
            last = index + count - 1
            token_id = self._added_ids.get(text[begin:spans[last][1]])
            if token_id is not None:
                return last, token_id
        return None

    def _encode(self, text: str, use_added: bool) -> List[int]:
        ids: List[int] = []
        spans = list(word_spans(text))
        cursor = 0
        index = 0
        while index < len(spans):
            begin, end = spans[index]
            match = self._match_added(text, spans, index) if use_added and self._added_ids else None
            if match is not None:
                last, token_id = match
                end = spans[last][1]
                index = last + 1
            else:
                index += 1
            lead = begin - 1 if begin > cursor and text[begin - 1] == ' ' else begin
            ids.extend(self._bpe_text(text[cursor:lead]))
            if match is None:
                ids.extend(self._bpe_text(text[lead:end]))
            else:
                plain = self._encode(text[lead:end], use_added=False)
                added = list(self._bpe_text(text[lead:begin])) + [token_id]
                # an added token is only used where it does not lengthen the encoding
                ids.extend(added if len(added) <= len(plain) else plain)
            cursor = end
        ids.extend(self._bpe_text(text[cursor:]))
        return ids

    def encode(self, text: str) -> List[int]:
        ''' Encodes text into token ids. Total on every string via byte fallback.

        Parameters:
            text: Text to encode.

        Returns:
            List of token ids.
        '''
        return self._encode(text, use_added=True)

    def encode_plain(self, text: str) -> List[int]:
        ' Encodes text with the trained vocabulary only, ignoring added tokens. '
        return self._encode(text, use_added=False)

    def decode(self, ids: Iterable[int]) -> str:
        ''' Decodes token ids to text. Invalid UTF-8 is replaced.

        Raises:
            TokenIdError: If an id is out of range.
        '''
        data = b''.join(self.token_bytes(i) for i in ids)
        return data.decode('utf-8', errors='replace')


def encode(tok: Tokenizer, text: str) -> List[int]:
    return tok.encode(text)


def decode(tok: Tokenizer, ids: Iterable[int]) -> str:
    return tok.decode(ids)


def _merge_parts(parts: List[bytes], left: bytes, right: bytes) -> List[bytes]:
    merged: List[bytes] = []
    i = 0
    while i < len(parts):
        if i + 1 < len(parts) and parts[i] == left and parts[i + 1] == right:
            merged.append(left + right)
            i += 2
        else:
            merged.append(parts[i])
            i += 1
    return merged


def train_bpe(
        corpus: Corpus,
        target_vocab_size: int,
        progress: Optional[Callable] = None) -> Tokenizer:
    ''' Trains a byte level BPE tokenizer on the words of a corpus.

    The most frequent adjacent pair is merged until the vocabulary reaches
    `target_vocab_size` or no pair is left. Ties are broken by the
    lexicographically smallest (left, right) pair, which makes training
    deterministic.

    Parameters:
        corpus: Training corpus. Only words produced by pre_tokenize are seen.
        target_vocab_size: Size of the trained vocabulary including the 256 byte tokens.
        progress: Optional progress indicator wrapping the range of merges to learn.

    Returns:
        Tokenizer without added tokens.

    Raises:
        PreconditionError: If target_vocab_size is less than 257.
    '''
    if target_vocab_size < len(BYTE_TOKENS) + 1:
        raise PreconditionError(
            f'Target vocabulary size must be at least {len(BYTE_TOKENS) + 1}, got {target_vocab_size}.')
    counts = word_counts(corpus)
    words: List[List[bytes]] = []
    freqs: List[int] = []
    for word, count in sorted(counts.items()):
        words.append([bytes([byte]) for byte in word.encode('utf-8')])
        freqs.append(count)

    pair_counts: Dict[Tuple[bytes, bytes], int] = collections.Counter()
    pair_words: Dict[Tuple[bytes, bytes], Set[int]] = collections.defaultdict(set)
    for index, parts in enumerate(words):
        for pair in zip(parts, parts[1:]):
            pair_counts[pair] += freqs[index]
            pair_words[pair].add(index)
    heap = [(-count, left, right) for (left, right), count in pair_counts.items()]
    heapq.heapify(heap)

    tokens: List[bytes] = list(BYTE_TOKENS)
    known = set(tokens)
    merges: List[MergeRule] = []
    it = range(target_vocab_size - len(tokens))
    bar = iter(progress(it) if progress else it)
    while len(tokens) < target_vocab_size and heap:
        negative_count, left, right = heapq.heappop(heap)
        if pair_counts.get((left, right), 0) != -negative_count:
            # stale entry, the current count has been pushed separately
            continue
        merges.append(MergeRule(left, right, len(merges)))
        if left + right not in known:
            tokens.append(left + right)
            known.add(left + right)
            next(bar, None)
        changed = set()
        for index in sorted(pair_words.pop((left, right))):
            parts = words[index]
            freq = freqs[index]
            for pair in zip(parts, parts[1:]):
                pair_counts[pair] -= freq
                changed.add(pair)
            parts = _merge_parts(parts, left, right)
            words[index] = parts
            for pair in zip(parts, parts[1:]):
                pair_counts[pair] += freq
                pair_words[pair].add(index)
                changed.add(pair)
        for pair in changed:
            count = pair_counts[pair]
            if count > 0:
                heapq.heappush(heap, (-count, pair[0], pair[1]))
            else:
                del pair_counts[pair]
        if len(merges) % 100 == 0:
            log.debug('Learned %i merges, vocabulary size %i', len(merges), len(tokens))
    log.info('Trained BPE tokenizer: %i tokens, %i merges', len(tokens), len(merges))
    return Tokenizer(Vocab(tokens), merges)
