from pathlib import Path
from typing import Optional, Union

from ..exceptions import InputError


class TokenizerFormatError(InputError, ValueError):
    ' Raised when a tokenizer file is malformed. Carries the offending field and index or line. '

    def __init__(
            self,
            source: Union[str, Path],
            message: str,
            field: Optional[str] = None,
            index: Optional[int] = None,
            line: Optional[int] = None):
        location = ''
        if field is not None:
            location = f' field "{field}"' + (f' index {index}' if index is not None else '')
        elif line is not None:
            location = f' line {line}'
        super().__init__(f'Malformed tokenizer file "{source}"{location}: {message}')
        self.source = source
        self.field = field
        self.index = index
        self.line = line


class TokenIdError(InputError, IndexError):
    def __init__(self, token_id: int, size: int):
        super().__init__(f'Token id {token_id} is out of range for a vocabulary of size {size}')
        self.token_id = token_id
        self.size = size


class EscapeError(InputError, ValueError):
    def __init__(self, text: str, position: int):
        super().__init__(f'Invalid escape sequence in token "{text}" at position {position}')
        self.text = text
        self.position = position
