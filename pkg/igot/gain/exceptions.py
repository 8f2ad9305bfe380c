from pathlib import Path
from typing import Union

from ..exceptions import InputError


class GainTableFormatError(InputError, ValueError):
    ' Raised when a gain table file can not be parsed. '

    def __init__(self, path: Union[str, Path], line: int, message: str):
        super().__init__(f'Malformed gain table "{path}" line {line}: {message}')
        self.path = path
        self.line = line
