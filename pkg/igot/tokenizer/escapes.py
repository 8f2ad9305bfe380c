''' Printable representation of byte tokens.

Token bytes are not always valid UTF-8 because merges may split multi byte
characters. Valid printable characters are written as they are, everything
else, including the space character, is written as "\\xHH" per byte and a
literal backslash is doubled. The space is escaped so that a merge rule can
be serialized as "left right".
'''
import re
from typing import Optional

from .exceptions import EscapeError

__all__ = ['escape_token', 'unescape_token']

_ESCAPE = re.compile(r'\\x([0-9a-fA-F]{2})|\\\\|[^\\]+')


def escape_token(token: bytes, visible_space: Optional[str] = None) -> str:
    ''' Escapes a byte token.

    Parameters:
        token: Token bytes.
        visible_space: If given, spaces are shown as this string instead of escaped.
            The result is then for display only and can not be unescaped.

    >>> escape_token(b' Open')
    '\\\\x20Open'
    >>> escape_token(b'\\xc3')
    '\\\\xc3'
    >>> escape_token(b' Open', visible_space='_')
    '_Open'
    '''
    parts = []
    for char in token.decode('utf-8', errors='surrogateescape'):
        code = ord(char)
        if 0xDC80 <= code <= 0xDCFF:
            parts.append(f'\\x{code - 0xDC00:02x}')
        elif char == '\\':
            parts.append('\\\\')
        elif char == ' ' and visible_space is not None:
            parts.append(visible_space)
        elif char == ' ' or not char.isprintable():
            parts.extend(f'\\x{byte:02x}' for byte in char.encode('utf-8'))
        else:
            parts.append(char)
    return ''.join(parts)


def unescape_token(text: str) -> bytes:
    ''' Inverse of escape_token.

    >>> unescape_token('\\\\x20Open')
    b' Open'

    Raises:
        EscapeError: If a backslash does not start a valid escape.
    '''
    data = bytearray()
    position = 0
    while position < len(text):
        match = _ESCAPE.match(text, position)
        if match is None:
            raise EscapeError(text, position)
        if match.group(1) is not None:
            data.append(int(match.group(1), 16))
        elif match.group() == '\\\\':
            data.extend(b'\\')
        else:
            data.extend(match.group().encode('utf-8'))
        position = match.end()
    return bytes(data)
