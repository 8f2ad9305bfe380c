''' JSON persistence of tokenizers.

The file is a single JSON object:

    {
      "format": "igot-bpe",
      "version": "1.0",
      "vocab": ["\\x00", ..., "Open", ...],
      "merges": ["O p", "Op en", ...],
      "added_tokens": ["OpenLane", ...]
    }

Token strings use the escapes of `igot.tokenizer.escapes`, so a merge is
always two escaped tokens separated by exactly one space.
'''
import json
import logging
from hashlib import sha1
from pathlib import Path
from typing import Any, Dict, List, Union

from packaging.version import parse as parse_version

from ..exceptions import InvariantViolationError
from .bpe import BYTE_TOKENS, MergeRule, Tokenizer, Vocab
from .escapes import escape_token, unescape_token
from .exceptions import EscapeError, TokenizerFormatError

log = logging.getLogger(__name__)

__all__ = ['to_json', 'from_json', 'save', 'load', 'fingerprint', 'FORMAT_NAME', 'FORMAT_VERSION']

FORMAT_NAME = 'igot-bpe'
FORMAT_VERSION = '1.0'


def to_json(tok: Tokenizer) -> Dict[str, Any]:
    return {
        'format': FORMAT_NAME,
        'version': FORMAT_VERSION,
        'vocab': [escape_token(token) for token in tok.vocab.token_of],
        'merges': [
            f'{escape_token(merge.left)} {escape_token(merge.right)}'
            for merge in tok.merges
        ],
        'added_tokens': list(tok.added_tokens),
    }


def _string_list(source, data: Dict[str, Any], field: str) -> List[str]:
    if field not in data:
        raise TokenizerFormatError(source, 'Missing field.', field=field)
    values = data[field]
    if not isinstance(values, list):
        raise TokenizerFormatError(source, 'Expected an array.', field=field)
    for index, value in enumerate(values):
        if not isinstance(value, str):
            raise TokenizerFormatError(source, f'Expected a string, found {type(value).__name__}.', field=field, index=index)
    return values


def _unescape(source, text: str, field: str, index: int) -> bytes:
    try:
        return unescape_token(text)
    except EscapeError as err:
        raise TokenizerFormatError(source, str(err), field=field, index=index) from err


def from_json(data: Any, source: Union[str, Path] = '<json>') -> Tokenizer:
    ''' Creates a tokenizer from the parsed contents of a tokenizer file.

    Parameters:
        data: Parsed JSON object.
        source: Name of the origin used in error messages.

    Raises:
        TokenizerFormatError: If a field is missing or an invariant does not hold.
    '''
    if not isinstance(data, dict):
        raise TokenizerFormatError(source, 'Expected a JSON object.')
    if data.get('format', FORMAT_NAME) != FORMAT_NAME:
        raise TokenizerFormatError(source, f'Unknown format "{data.get("format")}".', field='format')
    version = str(data.get('version', FORMAT_VERSION))
    if parse_version(version) > parse_version(FORMAT_VERSION):
        raise TokenizerFormatError(
            source, f'Version {version} is newer than the supported version {FORMAT_VERSION}.', field='version')

    tokens: List[bytes] = []
    seen: Dict[bytes, int] = {}
    for index, text in enumerate(_string_list(source, data, 'vocab')):
        token = _unescape(source, text, 'vocab', index)
        if not token:
            raise TokenizerFormatError(source, 'Empty token.', field='vocab', index=index)
        if token in seen:
            raise TokenizerFormatError(
                source, f'Duplicate token "{text}", first defined at index {seen[token]}.', field='vocab', index=index)
        seen[token] = index
        tokens.append(token)
    missing = [token for token in BYTE_TOKENS if token not in seen]
    if missing:
        raise TokenizerFormatError(
            source, f'{len(missing)} single byte tokens are missing, first is "{escape_token(missing[0])}".', field='vocab')

    merges: List[MergeRule] = []
    produced = set(BYTE_TOKENS)
    for rank, text in enumerate(_string_list(source, data, 'merges')):
        parts = text.split(' ')
        if len(parts) != 2 or not all(parts):
            raise TokenizerFormatError(source, f'Expected "left right", found "{text}".', field='merges', index=rank)
        left = _unescape(source, parts[0], 'merges', rank)
        right = _unescape(source, parts[1], 'merges', rank)
        for part, escaped in ((left, parts[0]), (right, parts[1])):
            if part not in produced:
                raise TokenizerFormatError(
                    source, f'Token "{escaped}" is used before a merge of lower rank produces it.',
                    field='merges', index=rank)
        if left + right not in seen:
            raise TokenizerFormatError(source, 'Merged token is missing from the vocabulary.', field='merges', index=rank)
        produced.add(left + right)
        merges.append(MergeRule(left, right, rank))

    added = _string_list(source, data, 'added_tokens')
    for index, token in enumerate(added):
        if not token or added.index(token) != index:
            raise TokenizerFormatError(source, f'Empty or duplicate added token "{token}".', field='added_tokens', index=index)

    try:
        return Tokenizer(Vocab(tokens), merges, added)
    except InvariantViolationError as err:
        raise TokenizerFormatError(source, str(err)) from err


def save(tok: Tokenizer, path: Union[str, Path]):
    ' Writes the tokenizer file. Equal tokenizers produce identical bytes. '
    path = Path(path)
    log.debug('Saving tokenizer %s to "%s"', tok, path)
    path.write_text(json.dumps(to_json(tok), indent=1, ensure_ascii=False) + '\n', encoding='utf-8')


def load(path: Union[str, Path]) -> Tokenizer:
    ''' Loads a tokenizer file.

    Raises:
        FileNotFoundError: If the file does not exist.
        TokenizerFormatError: If the file is not valid JSON or malformed.
    '''
    path = Path(path)
    text = path.read_text(encoding='utf-8')
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise TokenizerFormatError(path, err.msg, line=err.lineno) from err
    tok = from_json(data, source=path)
    log.debug('Loaded tokenizer %s from "%s"', tok, path)
    return tok


def fingerprint(tok: Tokenizer) -> str:
    ' Identity of a tokenizer: sha1 of its canonical JSON. '
    canonical = json.dumps(to_json(tok), sort_keys=True, separators=(',', ':'), ensure_ascii=True)
    return sha1(canonical.encode()).hexdigest()
